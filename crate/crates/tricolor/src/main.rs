use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tricolor::bench::{ablation, emit_ablation_csv, emit_csv, emit_trace, sweep};
use tricolor::graph::{generate, load_dimacs, save_dimacs, GraphType};
use tricolor::solver::{solve, SolverConfig};
use tricolor::{Error, Result};

#[derive(Parser)]
#[command(name = "tricolor", about = "Graph 3-coloring via self-adaptive differential evolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random 3-colorable graph and write it as DIMACS text.
    Generate {
        #[arg(long = "type")]
        ty: GraphType,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: String,
    },
    /// Solve a DIMACS graph file; prints the outcome on stdout.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 15)]
        np: usize,
        #[arg(long = "fes-max", default_value_t = 300_000)]
        fes_max: u64,
        #[arg(long = "pls", default_value_t = 0.02)]
        p_ls: f64,
        #[arg(long = "sigma-init", default_value_t = 30.0)]
        sigma_init: f64,
        #[arg(long, default_value_t = 0.001)]
        eps0: f64,
        /// Disable the local-search hybridization.
        #[arg(long = "no-ls")]
        no_ls: bool,
        /// Write the convergence trace CSV to this file.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Sweep edge densities, aggregate SR/AES, and write a CSV report.
    Bench {
        #[arg(long = "type")]
        ty: GraphType,
        #[arg(long)]
        n: usize,
        #[arg(long = "p-min")]
        p_min: f64,
        #[arg(long = "p-max")]
        p_max: f64,
        #[arg(long = "p-step")]
        p_step: f64,
        #[arg(long, default_value_t = 25)]
        runs: usize,
        #[arg(long = "gen-seed", default_value_t = 5)]
        gen_seed: u64,
        #[arg(long = "base-seed")]
        base_seed: u64,
        #[arg(long)]
        out: String,
        /// Run both arms (local search off and on) with matched seeds.
        #[arg(long)]
        ablation: bool,
        /// Cap the number of parallel workers.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn density_grid(p_min: f64, p_max: f64, p_step: f64) -> Result<Vec<f64>> {
    if p_step <= 0.0 {
        return Err(Error::InvalidParameter(format!("p-step = {p_step}")));
    }
    if p_max < p_min {
        return Err(Error::InvalidParameter(format!(
            "p-max {p_max} below p-min {p_min}"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u32;
    loop {
        let p = p_min + k as f64 * p_step;
        if p > p_max + 1e-12 {
            break;
        }
        values.push(p);
        k += 1;
    }
    Ok(values)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { ty, n, p, seed, out } => {
            let g = generate(ty, n, p, seed)?;
            fs::write(&out, save_dimacs(&g))?;
            println!(
                "generated {ty} graph: n={} m={} seed={seed} -> {out}",
                g.n(),
                g.edge_count()
            );
        }
        Command::Solve {
            graph,
            seed,
            np,
            fes_max,
            p_ls,
            sigma_init,
            eps0,
            no_ls,
            trace,
        } => {
            let text = fs::read_to_string(&graph)?;
            let g = load_dimacs(&text)?;
            let cfg = SolverConfig {
                np,
                fes_max,
                p_ls,
                sigma_init,
                eps0,
                seed,
                ls_enabled: !no_ls,
                ..SolverConfig::default()
            };
            let result = solve(&g, &cfg)?;
            if let Some(path) = trace {
                fs::write(&path, emit_trace(&result))?;
            }
            println!(
                "{} evals={} best_penalty={}",
                if result.success { "solved" } else { "unsolved" },
                result.evals,
                result.best_penalty
            );
        }
        Command::Bench {
            ty,
            n,
            p_min,
            p_max,
            p_step,
            runs,
            gen_seed,
            base_seed,
            out,
            ablation: ablate,
            jobs,
        } => {
            let p_values = density_grid(p_min, p_max, p_step)?;
            let cfg = SolverConfig::default();
            let csv = if ablate {
                let report =
                    ablation(ty, n, &p_values, &cfg, runs, gen_seed, base_seed, jobs)?;
                emit_ablation_csv(&report)
            } else {
                let report = sweep(ty, n, &p_values, &cfg, runs, gen_seed, base_seed, jobs)?;
                emit_csv(&report)
            };
            fs::write(&out, csv)?;
            println!("wrote {out}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
