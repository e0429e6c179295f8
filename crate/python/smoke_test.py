"""Smoke test for the planted_rgg_py extension module.

Builds the extension with cargo if needed, loads it from a temporary
directory and exercises the main entry points. Run from anywhere:

    python3 python/smoke_test.py
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def build_and_stage():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "planted-rgg-py"],
        cwd=ROOT,
        check=True,
    )
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    for name in ("libplanted_rgg_py.so", "libplanted_rgg_py.dylib", "planted_rgg_py.dll"):
        lib = os.path.join(target, "release", name)
        if os.path.exists(lib):
            break
    else:
        sys.exit("built library not found under " + target)
    stage = tempfile.mkdtemp(prefix="planted_rgg_py_")
    ext = ".pyd" if lib.endswith(".dll") else ".so"
    shutil.copy(lib, os.path.join(stage, "planted_rgg_py" + ext))
    sys.path.insert(0, stage)
    return stage


def main():
    try:
        import planted_rgg_py as m
    except ImportError:
        build_and_stage()
        import planted_rgg_py as m

    c = m.constants(1e4, 2, mu=20.0)
    assert abs(c["radius"] - 0.025231) < 1e-6, c
    assert abs(c["T"] - 42.0) < 0.1, c
    assert abs(c["phi_d"] - math.pi) < 1e-15

    assert m.lambert_w0(0.0) == 0.0
    assert abs(m.inverse_entropy_plus(1.0) - math.e) < 1e-10
    assert abs(m.torus_distance([0.05], [0.95]) - 0.1) < 1e-12

    g = m.sample_instance(2000.0, 2, mu=6.0, seed=3)
    assert g.vertex_count > 0 and sum(g.degrees()) == 2 * g.edge_count
    again = m.sample_instance(2000.0, 2, mu=6.0, seed=3)
    assert g.edges() == again.edges()

    inst = m.plant_clique(g, 40, seed=1)
    assert inst.graph.is_clique(inst.clique)
    vd = m.vd_recover(inst.graph, 40, truth=inst.clique)
    cn = m.cn_recover(inst.graph, 40, truth=inst.clique)
    assert vd["exact_match"] and cn["exact_match"], (vd, cn)

    edge = m.Graph.from_edges(2, [(0, 1)])
    assert m.cn_recover(edge, 2)["output"] == [0, 1]

    try:
        m.sample_instance(100.0, 2, radius=0.3)
    except ValueError as e:
        assert "[domain]" in str(e)
    else:
        raise AssertionError("radius 0.3 accepted")

    v = m.classify_regime(1e4, 2, 30, mu=1.0)
    assert v["vd"] == "SUCCESS", v

    csv = m.run_experiment(1e4, 2, [5.0], [2, 12], trials=5, master_seed=1)
    assert csv.splitlines()[0] == "n,d,mu,r,k,trials,skipped,method,success_rate,mean_N,master_seed"
    assert csv == m.run_experiment(1e4, 2, [5.0], [2, 12], trials=5, master_seed=1, threads=2)

    pd = m.phase_diagram(1e9, 2, 0.1, 1e4, 5, 2, 1000, 4)
    assert len(pd.splitlines()) == 1 + 20

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "p.txt")
        inst.save(path)
        back = m.load(path)
        assert back.clique == inst.clique and back.graph.edges() == inst.graph.edges()

    print("python smoke test passed")


if __name__ == "__main__":
    main()
