//! Monte Carlo success-rate sweeps and theoretical phase diagrams.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Deserialize;

use crate::algorithms::{cn_recover, evaluate, vd_recover, Method};
use crate::error::{Error, Result};
use crate::rgg::{plant_clique, sample_instance_with, VertexCount};
use crate::seed::derive_seed;
use crate::theory::{classify_regime, ClassifierConfig, ModelParams};

fn default_trials() -> usize {
    200
}

fn default_methods() -> Vec<Method> {
    vec![Method::Vd, Method::Cn]
}

/// A `μ × k` grid of planted instances.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: f64,
    pub d: usize,
    pub mu: Vec<f64>,
    pub k: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    /// Use exactly this many vertices instead of `Poisson(n)`.
    #[serde(default)]
    pub fixed_n: Option<usize>,
    /// Worker threads; `None` lets rayon decide.
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(n: f64, d: usize, mu: Vec<f64>, k: Vec<usize>) -> Self {
        ExperimentConfig {
            n,
            d,
            mu,
            k,
            trials: default_trials(),
            master_seed: 0,
            methods: default_methods(),
            fixed_n: None,
            threads: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::usage(format!("bad experiment config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu.is_empty() || self.k.is_empty() || self.methods.is_empty() {
            return Err(Error::usage("experiment grid is empty"));
        }
        if self.trials == 0 {
            return Err(Error::usage("trials must be at least 1"));
        }
        if let Some(&k) = self.k.iter().find(|&&k| k < 2) {
            return Err(Error::usage(format!("every k must be at least 2, got {k}")));
        }
        if self.threads == Some(0) {
            return Err(Error::usage("threads must be at least 1"));
        }
        for &mu in &self.mu {
            self.params(mu)?;
        }
        Ok(())
    }

    fn params(&self, mu: f64) -> Result<ModelParams> {
        if !(mu > 0.0) {
            return Err(Error::domain(format!("μ must be positive, got {mu}")));
        }
        ModelParams::from_mu(self.n, self.d, mu)
    }

    fn vertex_count(&self) -> VertexCount {
        match self.fixed_n {
            Some(v) => VertexCount::Fixed(v),
            None => VertexCount::Poisson,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub n: f64,
    pub d: usize,
    pub mu: f64,
    pub r: f64,
    pub k: usize,
    pub mu_index: usize,
    pub k_index: usize,
    pub trial: usize,
    pub seed: u64,
    /// Vertices actually drawn.
    pub vertex_count: usize,
    /// `k > N`: nothing was planted.
    pub skipped: bool,
    pub vd: Option<bool>,
    pub cn: Option<bool>,
    pub wall_time: Duration,
}

impl TrialRecord {
    pub fn exact_match(&self, method: Method) -> Option<bool> {
        match method {
            Method::Vd => self.vd,
            Method::Cn => self.cn,
        }
    }
}

/// One trial of cell `(mu_index, k_index)`.
pub fn run_trial(
    config: &ExperimentConfig,
    mu_index: usize,
    k_index: usize,
    trial: usize,
) -> Result<TrialRecord> {
    let (mu, k) = match (config.mu.get(mu_index), config.k.get(k_index)) {
        (Some(&mu), Some(&k)) => (mu, k),
        _ => return Err(Error::usage(format!("no grid cell ({mu_index}, {k_index})"))),
    };
    let params = config.params(mu)?;
    let seed = derive_seed(config.master_seed, mu_index, k_index, trial);
    let start = Instant::now();
    let graph = sample_instance_with(&params, config.vertex_count(), seed)?;
    let mut record = TrialRecord {
        n: config.n,
        d: config.d,
        mu,
        r: params.radius(),
        k,
        mu_index,
        k_index,
        trial,
        seed,
        vertex_count: graph.vertex_count(),
        skipped: false,
        vd: None,
        cn: None,
        wall_time: Duration::ZERO,
    };
    let planted = match plant_clique(&graph, k, seed) {
        Ok(p) => p,
        Err(Error::Instance(_)) => {
            record.skipped = true;
            record.wall_time = start.elapsed();
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    for &method in &config.methods {
        let result = match method {
            Method::Vd => vd_recover(planted.graph(), k)?,
            Method::Cn => cn_recover(planted.graph(), k)?,
        };
        let hit = evaluate(result, planted.clique()).exact_match;
        match method {
            Method::Vd => record.vd = hit,
            Method::Cn => record.cn = hit,
        }
    }
    record.wall_time = start.elapsed();
    Ok(record)
}

/// Aggregated outcome of one `(μ, k, method)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub mu: f64,
    pub r: f64,
    pub k: usize,
    pub method: Method,
    pub trials: usize,
    pub skipped: usize,
    pub successes: usize,
    /// Mean vertex count over all trials of the cell.
    pub mean_n: f64,
}

impl CellSummary {
    /// `successes / (trials - skipped)`; NaN when every trial was skipped.
    pub fn success_rate(&self) -> f64 {
        let run = self.trials - self.skipped;
        if run == 0 {
            f64::NAN
        } else {
            self.successes as f64 / run as f64
        }
    }

    /// Binomial standard error of the rate.
    pub fn std_error(&self) -> f64 {
        let p = self.success_rate();
        (p * (1.0 - p) / (self.trials - self.skipped) as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub config: ExperimentConfig,
    /// Ordered by μ index, then k index, then method as configured.
    pub cells: Vec<CellSummary>,
}

impl GridResult {
    pub fn cell(&self, mu: f64, k: usize, method: Method) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.mu == mu && c.k == k && c.method == method)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "n",
            "d",
            "mu",
            "r",
            "k",
            "trials",
            "skipped",
            "method",
            "success_rate",
            "mean_N",
            "master_seed",
        ])
        .map_err(io)?;
        for c in &self.cells {
            w.write_record([
                self.config.n.to_string(),
                self.config.d.to_string(),
                c.mu.to_string(),
                c.r.to_string(),
                c.k.to_string(),
                c.trials.to_string(),
                c.skipped.to_string(),
                c.method.to_string(),
                c.success_rate().to_string(),
                c.mean_n.to_string(),
                self.config.master_seed.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Runs every trial of every cell and aggregates.
pub fn run_grid(config: &ExperimentConfig) -> Result<GridResult> {
    config.validate()?;
    let tasks: Vec<(usize, usize, usize)> = (0..config.mu.len())
        .flat_map(|m| {
            (0..config.k.len()).flat_map(move |k| (0..config.trials).map(move |t| (m, k, t)))
        })
        .collect();
    let run = || -> Result<Vec<TrialRecord>> {
        tasks
            .par_iter()
            .map(|&(m, k, t)| run_trial(config, m, k, t))
            .collect()
    };
    let records = match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Io(format!("cannot start worker pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let mut cells = Vec::new();
    for cell in records.chunks(config.trials) {
        let first = &cell[0];
        let skipped = cell.iter().filter(|r| r.skipped).count();
        let mean_n = cell.iter().map(|r| r.vertex_count as f64).sum::<f64>() / cell.len() as f64;
        for &method in &config.methods {
            let successes = cell
                .iter()
                .filter(|r| r.exact_match(method) == Some(true))
                .count();
            cells.push(CellSummary {
                mu: first.mu,
                r: first.r,
                k: first.k,
                method,
                trials: cell.len(),
                skipped,
                successes,
                mean_n,
            });
        }
    }
    Ok(GridResult {
        config: config.clone(),
        cells,
    })
}

/// `count` points spaced evenly in `log10` between `lo` and `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) || count == 0 {
        return Err(Error::usage(format!(
            "log grid needs 0 < lo <= hi and count >= 1 (got {lo}, {hi}, {count})"
        )));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    Ok((0..count)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect())
}

/// Log-spaced integers in `[lo, hi]`, rounded and deduplicated.
pub fn log_grid_int(lo: usize, hi: usize, count: usize) -> Result<Vec<usize>> {
    let mut ks: Vec<usize> = log_grid(lo as f64, hi as f64, count)?
        .into_iter()
        .map(|x| x.round() as usize)
        .collect();
    ks.dedup();
    Ok(ks)
}

/// Verdict label for cells where the classifier refuses the parameters.
pub const ILL_POSED: &str = "ILL_POSED";

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCell {
    pub mu: f64,
    pub k: usize,
    pub alpha: f64,
    /// `T(n)`; NaN on ill-posed cells.
    pub max_degree: f64,
    /// `t(n)`; NaN on ill-posed cells.
    pub min_degree: f64,
    pub vd: &'static str,
    pub cn: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub n: f64,
    pub d: usize,
    pub cells: Vec<PhaseCell>,
}

/// Classifies every `(μ, k)` pair; cells the classifier rejects are kept
/// and labelled [`ILL_POSED`].
pub fn phase_diagram(
    n: f64,
    d: usize,
    mu_grid: &[f64],
    k_grid: &[usize],
    config: &ClassifierConfig,
) -> Result<PhaseDiagram> {
    if mu_grid.is_empty() || k_grid.is_empty() {
        return Err(Error::usage("phase diagram grid is empty"));
    }
    if mu_grid.iter().any(|&m| !(m > 0.0)) || k_grid.iter().any(|&k| k < 2) {
        return Err(Error::usage("phase diagram needs positive μ and k >= 2"));
    }
    if d == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    let mut cells = Vec::with_capacity(mu_grid.len() * k_grid.len());
    for &mu in mu_grid {
        for &k in k_grid {
            let verdict = ModelParams::from_mu(n, d, mu).and_then(|p| classify_regime(&p, k, config));
            cells.push(match verdict {
                Ok(v) => PhaseCell {
                    mu,
                    k,
                    alpha: v.alpha,
                    max_degree: v.max_degree,
                    min_degree: v.min_degree,
                    vd: v.vd.as_str(),
                    cn: v.cn.as_str(),
                },
                Err(Error::Domain(_)) => PhaseCell {
                    mu,
                    k,
                    alpha: mu / n.ln(),
                    max_degree: f64::NAN,
                    min_degree: f64::NAN,
                    vd: ILL_POSED,
                    cn: ILL_POSED,
                },
                Err(e) => return Err(e),
            });
        }
    }
    Ok(PhaseDiagram { n, d, cells })
}

impl PhaseDiagram {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["n", "d", "mu", "k", "alpha", "T", "t", "vd_verdict", "cn_verdict"])
            .map_err(io)?;
        for c in &self.cells {
            w.write_record([
                self.n.to_string(),
                self.d.to_string(),
                c.mu.to_string(),
                c.k.to_string(),
                c.alpha.to_string(),
                c.max_degree.to_string(),
                c.min_degree.to_string(),
                c.vd.to_string(),
                c.cn.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
