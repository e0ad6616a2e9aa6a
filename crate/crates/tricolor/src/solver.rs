//! Self-adaptive DE/rand/1/bin over weight vectors.
//!
//! Each individual carries its own control parameters `(F, sigma0, CR,
//! sigma1)`. Before a trial is produced, the control parameters are mutated
//! log-normally (one shared global Gaussian draw per individual, independent
//! per-parameter draws), and the trial is built with the new `F` and `CR`,
//! inheriting them on acceptance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decode::{dsatur_decode_full, weights_to_permutation, Coloring, Decoded};
use crate::graph::Graph;
use crate::local_search::local_search;
use crate::{Error, Result};

/// One DE individual: weight vector plus self-adapted control parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Genotype {
    pub weights: Vec<f64>,
    /// Scale factor, kept in [0.1, 1.0].
    pub f: f64,
    /// Mutation strength of `f`, kept >= eps0.
    pub sigma0: f64,
    /// Crossover rate, kept in [0.0, 1.0].
    pub cr: f64,
    /// Mutation strength of `cr`, kept >= eps0.
    pub sigma1: f64,
}

/// Solver parameters. Defaults follow the reference configuration:
/// NP = 15, 300,000 evaluations, p_ls = 0.02, sigma_init = 30.0,
/// eps0 = 0.001, weights in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub np: usize,
    pub fes_max: u64,
    pub p_ls: f64,
    pub sigma_init: f64,
    pub b_lower: f64,
    pub b_upper: f64,
    pub eps0: f64,
    pub seed: u64,
    pub ls_enabled: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            np: 15,
            fes_max: 300_000,
            p_ls: 0.02,
            sigma_init: 30.0,
            b_lower: 0.0,
            b_upper: 1.0,
            eps0: 0.001,
            seed: 0,
            ls_enabled: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.np < 4 {
            return Err(Error::InvalidParameter(format!(
                "np = {}, need at least 4 (three donors plus target)",
                self.np
            )));
        }
        if !(0.0..=1.0).contains(&self.p_ls) {
            return Err(Error::InvalidParameter(format!("p_ls = {}", self.p_ls)));
        }
        if self.b_lower >= self.b_upper {
            return Err(Error::InvalidParameter(format!(
                "weight bounds [{}, {}] are empty",
                self.b_lower, self.b_upper
            )));
        }
        if self.eps0 <= 0.0 {
            return Err(Error::InvalidParameter(format!("eps0 = {}", self.eps0)));
        }
        if self.fes_max < self.np as u64 {
            return Err(Error::InvalidParameter(format!(
                "fes_max = {} cannot cover initialization of {} members",
                self.fes_max, self.np
            )));
        }
        Ok(())
    }
}

/// Decodes a weight vector and scores it, counting one evaluation per call.
/// An optional hook fires on every decode-and-score, so a test can verify
/// the budget accounting externally.
pub struct Evaluator<'a> {
    graph: &'a Graph,
    evals: u64,
    hook: Option<&'a mut dyn FnMut()>,
}

impl<'a> Evaluator<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        Self { graph, evals: 0, hook: None }
    }

    pub fn with_hook(graph: &'a Graph, hook: &'a mut dyn FnMut()) -> Self {
        Self { graph, evals: 0, hook: Some(hook) }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn count(&self) -> u64 {
        self.evals
    }

    /// Decode the weights, return the phenotype and its penalty.
    pub fn eval(&mut self, weights: &[f64]) -> (Decoded, usize) {
        let perm = weights_to_permutation(weights);
        let decoded = dsatur_decode_full(self.graph, &perm);
        let pen = decoded.coloring.uncolored_count();
        self.evals += 1;
        if let Some(hook) = self.hook.as_mut() {
            hook();
        }
        (decoded, pen)
    }
}

/// The current generation with cached fitness.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<Genotype>,
    pub fitness: Vec<usize>,
    pub evals_used: u64,
    pub best: usize,
}

/// Random initial population: weights uniform in `[b_lower, b_upper]`,
/// `F` uniform in [0.1, 1.0], `CR` uniform in [0.0, 1.0], both sigmas at
/// `sigma_init`. Every member is decoded and scored.
pub fn init_population(g: &Graph, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Population {
    let mut ev = Evaluator::new(g);
    init_with(&mut ev, cfg, rng).0
}

fn init_with(
    ev: &mut Evaluator<'_>,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> (Population, Vec<Decoded>) {
    let n = ev.graph().n();
    let mut members = Vec::with_capacity(cfg.np);
    let mut fitness = Vec::with_capacity(cfg.np);
    let mut decoded = Vec::with_capacity(cfg.np);
    for _ in 0..cfg.np {
        let weights: Vec<f64> = (0..n)
            .map(|_| rng.gen::<f64>() * (cfg.b_upper - cfg.b_lower) + cfg.b_lower)
            .collect();
        let geno = Genotype {
            weights,
            f: rng.gen::<f64>() * 0.9 + 0.1,
            sigma0: cfg.sigma_init,
            cr: rng.gen::<f64>(),
            sigma1: cfg.sigma_init,
        };
        let (dec, pen) = ev.eval(&geno.weights);
        members.push(geno);
        fitness.push(pen);
        decoded.push(dec);
    }
    let best = (0..cfg.np).min_by_key(|&i| fitness[i]).unwrap();
    (
        Population {
            members,
            fitness,
            evals_used: ev.count(),
            best,
        },
        decoded,
    )
}

/// The Gaussian draws consumed by one control-parameter mutation. `global`
/// is shared between the sigma0 and sigma1 updates; the rest are
/// independent per-parameter draws.
#[derive(Debug, Clone, Copy, Default)]
pub struct ControlDraws {
    pub global: f64,
    pub sigma0_local: f64,
    pub f_local: f64,
    pub sigma1_local: f64,
    pub cr_local: f64,
}

/// Log-normal mutation of the control parameters with explicit draws.
///
/// sigma' = sigma * exp(tau' * global + tau * local), the parameter moves by
/// sigma' * local, then sigmas are floored at `eps0` and `F`/`CR` are
/// clamped to [0.1, 1.0] / [0.0, 1.0]. Learning rates: tau' = 1/sqrt(2n),
/// tau = 1/sqrt(2 sqrt(n)).
pub fn mutate_control_params_with(
    ind: &Genotype,
    n: usize,
    eps0: f64,
    draws: &ControlDraws,
) -> Genotype {
    let tau_prime = 1.0 / (2.0 * n as f64).sqrt();
    let tau = 1.0 / (2.0 * (n as f64).sqrt()).sqrt();

    let sigma0 = ind.sigma0 * (tau_prime * draws.global + tau * draws.sigma0_local).exp();
    let f = ind.f + sigma0 * draws.f_local;
    let sigma1 = ind.sigma1 * (tau_prime * draws.global + tau * draws.sigma1_local).exp();
    let cr = ind.cr + sigma1 * draws.cr_local;

    Genotype {
        weights: ind.weights.clone(),
        f: f.clamp(0.1, 1.0),
        sigma0: sigma0.max(eps0),
        cr: cr.clamp(0.0, 1.0),
        sigma1: sigma1.max(eps0),
    }
}

/// [`mutate_control_params_with`] sampling fresh standard-normal draws.
pub fn mutate_control_params(
    ind: &Genotype,
    n: usize,
    eps0: f64,
    rng: &mut ChaCha8Rng,
) -> Genotype {
    let draws = ControlDraws {
        global: rng.sample(StandardNormal),
        sigma0_local: rng.sample(StandardNormal),
        f_local: rng.sample(StandardNormal),
        sigma1_local: rng.sample(StandardNormal),
        cr_local: rng.sample(StandardNormal),
    };
    mutate_control_params_with(ind, n, eps0, &draws)
}

/// DE/rand/1 mutant: `w_r0 + F * (w_r1 - w_r2)` over three random members,
/// mutually distinct and distinct from the target, componentwise clamped to
/// the weight bounds.
pub fn differential_mutation(
    members: &[Genotype],
    target: usize,
    f: f64,
    bounds: (f64, f64),
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let np = members.len();
    debug_assert!(np >= 4);
    let mut pick = |taken: &[usize]| loop {
        let r = rng.gen_range(0..np);
        if r != target && !taken.contains(&r) {
            break r;
        }
    };
    let r0 = pick(&[]);
    let r1 = pick(&[r0]);
    let r2 = pick(&[r0, r1]);

    let (lo, hi) = bounds;
    members[r0]
        .weights
        .iter()
        .zip(&members[r1].weights)
        .zip(&members[r2].weights)
        .map(|((&a, &b), &c)| (a + f * (b - c)).clamp(lo, hi))
        .collect()
}

/// Binomial crossover: coordinate `j` comes from the mutant when
/// `rand_j <= CR` or `j == j_rand`, otherwise from the target.
pub fn differential_crossover(
    target: &[f64],
    mutant: &[f64],
    cr: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    assert_eq!(target.len(), mutant.len());
    let j_rand = rng.gen_range(0..target.len());
    (0..target.len())
        .map(|j| {
            let r = rng.gen::<f64>();
            if r <= cr || j == j_rand {
                mutant[j]
            } else {
                target[j]
            }
        })
        .collect()
}

/// Replaces member `i` when the trial is no worse (accepts ties).
pub fn differential_selection(
    pop: &mut Population,
    i: usize,
    trial: Genotype,
    trial_fitness: usize,
) {
    if trial_fitness <= pop.fitness[i] {
        pop.members[i] = trial;
        pop.fitness[i] = trial_fitness;
        if trial_fitness <= pop.fitness[pop.best] {
            pop.best = i;
        }
    }
}

/// One sampled point of a run's convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub evals: u64,
    pub best_penalty: usize,
    pub mean_penalty: f64,
}

/// Outcome of one solver run.
#[derive(Debug, Clone)]
pub struct RunResult {
    /// True when a complete proper 3-coloring was found.
    pub success: bool,
    /// Objective evaluations consumed at termination.
    pub evals: u64,
    pub best_penalty: usize,
    pub best_coloring: Coloring,
    /// One sample per generation: (evals, best penalty, population mean).
    pub trace: Vec<TracePoint>,
    pub seed: u64,
}

/// Runs the solver until a proper coloring is found or the evaluation
/// budget is exhausted.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<RunResult> {
    let mut noop = || {};
    solve_with_hook(g, cfg, &mut noop)
}

/// [`solve`] with a hook fired on every decode-and-score, including the
/// ones local search performs.
pub fn solve_with_hook(g: &Graph, cfg: &SolverConfig, hook: &mut dyn FnMut()) -> Result<RunResult> {
    cfg.validate()?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ev = Evaluator::with_hook(g, hook);

    let (mut pop, decoded) = init_with(&mut ev, cfg, &mut rng);
    let mut best_penalty = pop.fitness[pop.best];
    let mut best_coloring = decoded[pop.best].coloring.clone();
    let mut trace = Vec::new();

    let sample = |pop: &Population, ev: &Evaluator, trace: &mut Vec<TracePoint>| {
        let mean = pop.fitness.iter().sum::<usize>() as f64 / pop.fitness.len() as f64;
        trace.push(TracePoint {
            evals: ev.count(),
            best_penalty: pop.fitness[pop.best],
            mean_penalty: mean,
        });
    };
    sample(&pop, &ev, &mut trace);

    let mut done = best_penalty == 0;
    while !done {
        for i in 0..cfg.np {
            if ev.count() >= cfg.fes_max {
                done = true;
                break;
            }
            let params = mutate_control_params(&pop.members[i], n, cfg.eps0, &mut rng);
            let mutant = differential_mutation(
                &pop.members,
                i,
                params.f,
                (cfg.b_lower, cfg.b_upper),
                &mut rng,
            );
            let weights =
                differential_crossover(&pop.members[i].weights, &mutant, params.cr, &mut rng);
            let mut trial = Genotype { weights, ..params };
            let (mut dec, mut pen) = ev.eval(&trial.weights);

            if cfg.ls_enabled && rng.gen::<f64>() < cfg.p_ls {
                let budget = cfg.fes_max - ev.count();
                let out = local_search(trial, dec, pen, budget, &mut ev, &mut rng);
                trial = out.genotype;
                dec = out.decoded;
                pen = out.penalty;
            }

            if pen < best_penalty {
                best_penalty = pen;
                best_coloring = dec.coloring.clone();
            }
            differential_selection(&mut pop, i, trial, pen);

            if pen == 0 {
                done = true;
                break;
            }
        }
        pop.evals_used = ev.count();
        sample(&pop, &ev, &mut trace);
    }
    pop.evals_used = ev.count();

    Ok(RunResult {
        success: best_penalty == 0,
        evals: ev.count(),
        best_penalty,
        best_coloring,
        trace,
        seed: cfg.seed,
    })
}
