//! Benchmark harness: multi-run campaigns, SR/AES aggregation, edge-density
//! sweeps, local-search ablation, and CSV emission.
//!
//! A campaign runs the solver with seeds `base_seed .. base_seed + runs`;
//! runs execute in parallel but results are ordered by seed, so reports are
//! byte-identical regardless of the worker count.

use rayon::prelude::*;

use crate::graph::{generate, Graph, GraphType};
use crate::solver::{solve, RunResult, SolverConfig};
use crate::Result;

/// Aggregate for one edge density.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub p: f64,
    pub runs: usize,
    pub successes: usize,
    /// Fraction of runs reaching penalty 0.
    pub sr: f64,
    /// Mean evaluations over successful runs; `None` when none succeeded.
    pub aes: Option<f64>,
}

/// Sweep report: one row per density, plus the generation metadata needed
/// to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub graph_type: GraphType,
    pub n: usize,
    pub gen_seed: u64,
    pub rows: Vec<DensityRow>,
}

/// Matched-seed comparison of the solver without and with local search.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationReport {
    pub none: BenchReport,
    pub ls: BenchReport,
}

/// Runs `runs` independent solves with seeds `base_seed + 0 .. base_seed +
/// runs - 1`. `jobs` caps the rayon worker count; `None` uses the default.
pub fn run_campaign(
    g: &Graph,
    cfg: &SolverConfig,
    runs: usize,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<RunResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    pool.install(|| {
        (0..runs as u64)
            .into_par_iter()
            .map(|k| {
                let run_cfg = SolverConfig {
                    seed: base_seed + k,
                    ..cfg.clone()
                };
                solve(g, &run_cfg)
            })
            .collect()
    })
}

/// SR and AES over a campaign's results.
pub fn aggregate(p: f64, results: &[RunResult]) -> DensityRow {
    let runs = results.len();
    let successes = results.iter().filter(|r| r.success).count();
    let aes = if successes > 0 {
        let total: u64 = results.iter().filter(|r| r.success).map(|r| r.evals).sum();
        Some(total as f64 / successes as f64)
    } else {
        None
    };
    DensityRow {
        p,
        runs,
        successes,
        sr: successes as f64 / runs as f64,
        aes,
    }
}

/// For each density, generates one graph instance `(type, n, p, gen_seed)`
/// and aggregates a campaign over it.
#[allow(clippy::too_many_arguments)]
pub fn sweep(
    ty: GraphType,
    n: usize,
    p_values: &[f64],
    cfg: &SolverConfig,
    runs: usize,
    gen_seed: u64,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(p_values.len());
    for &p in p_values {
        let g = generate(ty, n, p, gen_seed)?;
        let results = run_campaign(&g, cfg, runs, base_seed, jobs)?;
        rows.push(aggregate(p, &results));
    }
    Ok(BenchReport {
        graph_type: ty,
        n,
        gen_seed,
        rows,
    })
}

/// Runs the sweep twice with identical graphs and matched seeds: once with
/// local search disabled ("NONE") and once enabled ("LS").
#[allow(clippy::too_many_arguments)]
pub fn ablation(
    ty: GraphType,
    n: usize,
    p_values: &[f64],
    cfg: &SolverConfig,
    runs: usize,
    gen_seed: u64,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<AblationReport> {
    let none_cfg = SolverConfig {
        ls_enabled: false,
        ..cfg.clone()
    };
    let ls_cfg = SolverConfig {
        ls_enabled: true,
        ..cfg.clone()
    };
    Ok(AblationReport {
        none: sweep(ty, n, p_values, &none_cfg, runs, gen_seed, base_seed, jobs)?,
        ls: sweep(ty, n, p_values, &ls_cfg, runs, gen_seed, base_seed, jobs)?,
    })
}

fn aes_field(aes: Option<f64>) -> String {
    match aes {
        Some(v) => format!("{v:.2}"),
        None => String::new(),
    }
}

/// CSV: `type,n,p,runs,successes,SR,AES`; SR with 4 decimals, AES with 2,
/// empty AES when no run succeeded. Byte-deterministic.
pub fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from("type,n,p,runs,successes,SR,AES\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.4},{}\n",
            report.graph_type,
            report.n,
            row.p,
            row.runs,
            row.successes,
            row.sr,
            aes_field(row.aes),
        ));
    }
    out
}

/// Paired CSV for an ablation: both arms per density, then an `avg` row
/// (mean SR per arm; mean AES over densities where it is defined).
pub fn emit_ablation_csv(report: &AblationReport) -> String {
    let mut out =
        String::from("type,n,p,runs,none_successes,none_SR,none_AES,ls_successes,ls_SR,ls_AES\n");
    for (a, b) in report.none.rows.iter().zip(&report.ls.rows) {
        out.push_str(&format!(
            "{},{},{},{},{},{:.4},{},{},{:.4},{}\n",
            report.none.graph_type,
            report.none.n,
            a.p,
            a.runs,
            a.successes,
            a.sr,
            aes_field(a.aes),
            b.successes,
            b.sr,
            aes_field(b.aes),
        ));
    }
    let mean_sr = |rows: &[DensityRow]| {
        rows.iter().map(|r| r.sr).sum::<f64>() / rows.len().max(1) as f64
    };
    let mean_aes = |rows: &[DensityRow]| {
        let defined: Vec<f64> = rows.iter().filter_map(|r| r.aes).collect();
        if defined.is_empty() {
            None
        } else {
            Some(defined.iter().sum::<f64>() / defined.len() as f64)
        }
    };
    if !report.none.rows.is_empty() {
        out.push_str(&format!(
            "{},{},avg,,,{:.4},{},,{:.4},{}\n",
            report.none.graph_type,
            report.none.n,
            mean_sr(&report.none.rows),
            aes_field(mean_aes(&report.none.rows)),
            mean_sr(&report.ls.rows),
            aes_field(mean_aes(&report.ls.rows)),
        ));
    }
    out
}

/// Convergence trace CSV: `evals,best_uncolored,mean_uncolored`, one row per
/// sampled generation.
pub fn emit_trace(result: &RunResult) -> String {
    let mut out = String::from("evals,best_uncolored,mean_uncolored\n");
    for pt in &result.trace {
        out.push_str(&format!(
            "{},{},{:.4}\n",
            pt.evals, pt.best_penalty, pt.mean_penalty
        ));
    }
    out
}
