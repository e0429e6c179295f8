use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use planted_rgg::rgg::io::{load, Instance};
use planted_rgg::rgg::{plant_clique, sample_instance_with, VertexCount};
use planted_rgg::{cn_recover, vd_recover, ModelParams};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planted-rgg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn constants_for_the_reference_point() {
    let out = cli(&["constants", "--n", "1e4", "-d", "2", "--mu", "20"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}: ")))
            .unwrap_or_else(|| panic!("no {key} in {text}"))
            .parse()
            .unwrap()
    };
    assert!((value("r") - 0.025231).abs() < 1e-6);
    assert!((value("T(n)") - 42.0).abs() < 0.1);
    assert!((value("phi_d") - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn run_cn_on_a_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("edge.txt");
    fs::write(&file, "rggraph v1 1 0.1 2\n0.5\n0.55\nedges 1\n0 1\n").unwrap();
    let out = cli(&["run-cn", "-i", path(&file), "-k", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("output: {0, 1}"));
}

#[test]
fn file_pipeline_matches_in_memory_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let graph_file = dir.path().join("g.txt");
    let planted_file = dir.path().join("p.txt");
    let out = cli(&[
        "generate", "--n", "1500", "--mu", "6", "-d", "2", "--seed", "21", "-o", path(&graph_file),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = cli(&["plant", "-i", path(&graph_file), "-k", "9", "--seed", "4", "-o", path(&planted_file)]);
    assert!(out.status.success(), "{}", stderr(&out));

    let params = ModelParams::from_mu(1500.0, 2, 6.0).unwrap();
    let graph = sample_instance_with(&params, VertexCount::Poisson, 21).unwrap();
    let planted = plant_clique(&graph, 9, 4).unwrap();
    match load(&planted_file).unwrap() {
        Instance::Planted(p) => assert_eq!(p, planted),
        Instance::Graph(_) => panic!("plant wrote a bare graph"),
    }

    for (sub, expected) in [
        ("run-vd", vd_recover(planted.graph(), 9).unwrap()),
        ("run-cn", cn_recover(planted.graph(), 9).unwrap()),
    ] {
        let out = cli(&[sub, "-i", path(&planted_file)]);
        assert!(out.status.success(), "{}", stderr(&out));
        let items: Vec<String> = expected.output.iter().map(|v| v.to_string()).collect();
        let text = stdout(&out);
        assert!(text.contains(&format!("output: {{{}}}", items.join(", "))), "{text}");
        let hit = expected.output == planted.clique();
        assert!(text.contains(&format!("exact_match: {hit}")), "{text}");
    }
}

#[test]
fn experiment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.toml");
    fs::write(
        &config,
        "n = 2000.0\nd = 2\nmu = [3.0, 9.0]\nk = [2, 6, 12]\ntrials = 15\nmaster_seed = 5\n",
    )
    .unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (file, threads) in [(&a, "1"), (&b, "3")] {
        let out = cli(&["experiment", "--config", path(&config), "--threads", threads, "-o", path(file)]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert_eq!(csv.lines().count(), 1 + 2 * 3 * 2);
    assert!(csv.starts_with("n,d,mu,r,k,trials,skipped,method,success_rate,mean_N,master_seed"));

    let out = cli(&["experiment", "--n", "2000", "--mu", "3,9", "-k", "2,6,12", "--trials", "15", "--seed", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), csv);
}

#[test]
fn phase_diagram_csv() {
    let out = cli(&["phase-diagram", "--n", "1e9", "--mu-count", "4", "--k-count", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("n,d,mu,k,alpha,T,t,vd_verdict,cn_verdict\n"));
    assert_eq!(text.lines().count(), 1 + 12);
}

#[test]
fn error_classes_and_exit_codes() {
    let cases: [(&[&str], i32, &str); 5] = [
        (&["constants", "--n", "1e4", "--radius", "0.3"], 2, "error[domain]"),
        (&["constants", "--n", "1e4", "--mu", "2", "--radius", "0.1"], 1, "error[usage]"),
        (&["constants", "--n", "1e4", "--bogus"], 1, "error[usage]"),
        (&["run-cn", "-i", "/nonexistent/file", "-k", "2"], 1, "error[io]"),
        (&["frobnicate"], 1, "error[usage]"),
    ];
    for (args, code, prefix) in cases {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(prefix), "{args:?}: {err}");
    }
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "rggraph v1 1 0.1 2\n0.5\nnot-a-number\nedges 0\n").unwrap();
    let out = cli(&["run-vd", "-i", path(&file), "-k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error[parse]: line 3:"));
}
