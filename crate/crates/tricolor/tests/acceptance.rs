//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities. Run with `cargo test --test acceptance`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricolor::bench::{ablation, aggregate, run_campaign, sweep};
use tricolor::decode::{dsatur_decode, penalty, weights_to_permutation, UNCOLORED};
use tricolor::graph::{generate, Graph, GraphType};
use tricolor::solver::{
    differential_crossover, differential_mutation, differential_selection, init_population,
    mutate_control_params_with, solve, solve_with_hook, ControlDraws, Genotype, SolverConfig,
};

const ALL_TYPES: [GraphType; 3] = [GraphType::EquiPartite, GraphType::Uniform, GraphType::Flat];

/// Exhaustive check over all 3^n color assignments.
fn brute_force_3colorable(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 12, "brute force oracle is for small graphs");
    (0..3usize.pow(n as u32)).any(|mut a| {
        let mut colors = vec![0u8; n];
        for c in colors.iter_mut() {
            *c = (a % 3) as u8;
            a /= 3;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| colors[u as usize] != colors[v as usize])
    })
}

#[test]
fn criterion_1_decoder_soundness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    for i in 0..1000u64 {
        let ty = ALL_TYPES[(i % 3) as usize];
        let n = rng.gen_range(10..=100);
        let p = rng.gen_range(0.0..=0.3);
        let g = generate(ty, n, p, i).unwrap();
        let weights: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let c = dsatur_decode(&g, &weights_to_permutation(&weights));
        for &(u, v) in g.edges() {
            let (cu, cv) = (c.color(u), c.color(v));
            assert!(
                cu == UNCOLORED || cv == UNCOLORED || cu != cv,
                "conflict on edge ({u}, {v}) of graph {i}"
            );
        }
        assert_eq!(
            penalty(&g, &c),
            c.uncolored_count(),
            "penalty != uncolored count on graph {i}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, limit 10 s");
    println!(
        "ACCEPTANCE 1 PASS: decoder sound on 1000 random graphs, penalty == uncolored, {:.2?}",
        elapsed
    );
}

#[test]
fn criterion_2_brute_force_oracle_equivalence() {
    let start = Instant::now();

    // Fixed corpus on <= 7 vertices.
    let mut corpus: Vec<(String, Graph)> = vec![
        ("K4".into(), Graph::complete(4)),
        ("C5".into(), Graph::cycle(5)),
        ("C7".into(), Graph::cycle(7)),
    ];
    // Petersen graph induced on vertices 0..=6: outer cycle 0-4, spokes
    // 0-5 and 1-6 (inner edges 5-7, 5-8, 6-8, 6-9 leave the vertex set).
    corpus.push((
        "Petersen[0..7]".into(),
        Graph::new(
            7,
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6)],
            None,
        )
        .unwrap(),
    ));
    corpus.push((
        "Petersen[0..6]".into(),
        Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)], None).unwrap(),
    ));
    // Random instances, including dense ones that are not 3-colorable.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    for k in 0..12 {
        let n = rng.gen_range(4..=7usize);
        let pe = rng.gen_range(0.3..=0.9f64);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen::<f64>() < pe {
                    edges.push((u, v));
                }
            }
        }
        corpus.push((format!("rand{k}"), Graph::new(n, edges, None).unwrap()));
    }

    let cfg = SolverConfig {
        fes_max: 50_000,
        ..SolverConfig::default()
    };
    let mut colorable_count = 0;
    for (name, g) in &corpus {
        let colorable = brute_force_3colorable(g);
        colorable_count += colorable as usize;
        let results = run_campaign(g, &cfg, 25, 0, None).unwrap();
        for r in &results {
            if colorable {
                assert!(
                    r.success,
                    "{name}: 3-colorable by brute force but seed {} failed",
                    r.seed
                );
            } else {
                assert!(
                    !r.success,
                    "{name}: not 3-colorable but seed {} claimed success",
                    r.seed
                );
                assert!(r.best_penalty > 0);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, limit 1 min");
    println!(
        "ACCEPTANCE 2 PASS: solver agrees with the 3^n oracle on {} graphs \
         ({colorable_count} colorable), 25/25 seeds each, {:.2?}",
        corpus.len(),
        elapsed
    );
}

/// Easy-hard-easy checks shared by the desk-scale and CI-scale sweeps.
fn assert_easy_hard_easy(
    rows: &[tricolor::bench::DensityRow],
    easy_low: f64,
    easy_high: f64,
    band: std::ops::RangeInclusive<f64>,
) -> String {
    for row in rows {
        if row.p <= easy_low || row.p >= easy_high {
            assert_eq!(row.sr, 1.0, "expected SR = 1 at easy density p = {}", row.p);
        }
    }
    // The minimum SR over the sweep is attained inside the band.
    let min_in_band = rows
        .iter()
        .filter(|r| band.contains(&r.p))
        .map(|r| r.sr)
        .fold(f64::INFINITY, f64::min);
    let min_outside = rows
        .iter()
        .filter(|r| !band.contains(&r.p))
        .map(|r| r.sr)
        .fold(f64::INFINITY, f64::min);
    assert!(
        min_in_band <= min_outside,
        "min SR {min_in_band} in band vs {min_outside} outside"
    );
    // AES peaks inside the band.
    let peak = rows
        .iter()
        .max_by(|a, b| {
            a.aes
                .unwrap_or(f64::INFINITY)
                .total_cmp(&b.aes.unwrap_or(f64::INFINITY))
        })
        .unwrap();
    assert!(
        band.contains(&peak.p),
        "AES peak at p = {} outside the hard band",
        peak.p
    );
    rows.iter()
        .map(|r| {
            format!(
                "p={} SR={:.2} AES={}",
                r.p,
                r.sr,
                r.aes.map_or_else(|| "-".into(), |a| format!("{a:.0}"))
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn criterion_3_phase_transition_desk_scale() {
    // Desk-scale sweep: n = 200, 25 runs, hard band 7/n..8/n = 0.035..0.04.
    let p_values = [0.01, 0.02, 0.03, 0.035, 0.04, 0.05, 0.06];
    let report = sweep(
        GraphType::EquiPartite,
        200,
        &p_values,
        &SolverConfig::default(),
        25,
        5,
        1000,
        None,
    )
    .unwrap();
    let summary = assert_easy_hard_easy(&report.rows, 0.02, 0.06, 0.03..=0.045);
    println!("ACCEPTANCE 3 PASS: easy-hard-easy ordering at n = 200: {summary}");
}

#[test]
fn criterion_3_phase_transition_ci_scale() {
    // CI-reduced variant: n = 100, 10 runs; band 7/n..8/n = 0.07..0.08.
    let p_values = [0.02, 0.04, 0.06, 0.07, 0.08, 0.10, 0.12];
    let report = sweep(
        GraphType::EquiPartite,
        100,
        &p_values,
        &SolverConfig::default(),
        10,
        5,
        1000,
        None,
    )
    .unwrap();
    let summary = assert_easy_hard_easy(&report.rows, 0.04, 0.10, 0.06..=0.09);
    println!("ACCEPTANCE 3 PASS (CI scale): easy-hard-easy ordering at n = 100: {summary}");
}

#[test]
fn criterion_4_local_search_ablation_direction() {
    // Hard-region density at n = 200 (band 7/n..8/n = 0.035..0.04),
    // 25 matched seeds per arm.
    let report = ablation(
        GraphType::EquiPartite,
        200,
        &[0.035],
        &SolverConfig::default(),
        25,
        5,
        2000,
        None,
    )
    .unwrap();
    let none_sr = report.none.rows[0].sr;
    let ls_sr = report.ls.rows[0].sr;
    assert!(
        ls_sr >= none_sr - 0.04,
        "LS arm SR {ls_sr} worse than NONE arm SR {none_sr} by more than 0.04"
    );
    println!(
        "ACCEPTANCE 4 PASS: ablation at n = 200, p = 0.035: NONE SR = {none_sr:.2}, LS SR = {ls_sr:.2}"
    );
}

#[test]
fn criterion_5_self_adaptation_mechanics() {
    let ind = Genotype {
        weights: vec![0.0; 4],
        f: 0.5,
        sigma0: 0.2,
        cr: 0.4,
        sigma1: 0.1,
    };

    // Hand-computed arithmetic with pinned draws (n = 4: tau' = 1/sqrt(8),
    // tau = 0.5).
    let draws = ControlDraws {
        global: 1.0,
        sigma0_local: 0.5,
        f_local: 0.25,
        sigma1_local: -0.5,
        cr_local: 1.0,
    };
    let out = mutate_control_params_with(&ind, 4, 0.001, &draws);
    assert!((out.sigma0 - 0.36572100348).abs() < 1e-9);
    assert!((out.f - 0.59143025087).abs() < 1e-9);
    assert!((out.sigma1 - 0.11091050076).abs() < 1e-9);
    assert!((out.cr - 0.51091050076).abs() < 1e-9);

    // All draws zeroed: identity.
    let same = mutate_control_params_with(&ind, 4, 0.001, &ControlDraws::default());
    assert_eq!(same, ind);

    // Sigma floor.
    let floored = mutate_control_params_with(
        &ind,
        4,
        0.001,
        &ControlDraws {
            global: -20.0,
            ..ControlDraws::default()
        },
    );
    assert_eq!(floored.sigma0, 0.001);
    assert_eq!(floored.sigma1, 0.001);

    // F and CR stay inside their consumption ranges under extreme draws.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut cur = ind.clone();
    for _ in 0..10_000 {
        let draws = ControlDraws {
            global: rng.gen_range(-5.0..5.0),
            sigma0_local: rng.gen_range(-5.0..5.0),
            f_local: rng.gen_range(-5.0..5.0),
            sigma1_local: rng.gen_range(-5.0..5.0),
            cr_local: rng.gen_range(-5.0..5.0),
        };
        cur = mutate_control_params_with(&cur, 4, 0.001, &draws);
        assert!((0.1..=1.0).contains(&cur.f));
        assert!((0.0..=1.0).contains(&cur.cr));
        assert!(cur.sigma0 >= 0.001 && cur.sigma1 >= 0.001);
    }
    println!("ACCEPTANCE 5 PASS: self-adaptation arithmetic, floor, clamps, and zero-draw identity");
}

#[test]
fn criterion_6_de_operator_contracts() {
    let g = generate(GraphType::Uniform, 12, 0.15, 1).unwrap();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let pop = init_population(&g, &cfg, &mut rng);

    // F = 0: the mutant is exactly one of the donors' weight vectors.
    let mutant = differential_mutation(&pop.members, 0, 0.0, (0.0, 1.0), &mut rng);
    assert!(pop
        .members
        .iter()
        .enumerate()
        .any(|(i, m)| i != 0 && m.weights == mutant));

    // CR = 1: full crossover; CR = 0: exactly one mutant coordinate.
    let target = vec![0.0; 12];
    let donor = vec![1.0; 12];
    assert_eq!(
        differential_crossover(&target, &donor, 1.0, &mut rng),
        donor
    );
    let single = differential_crossover(&target, &donor, 0.0, &mut rng);
    assert_eq!(single.iter().filter(|&&x| x == 1.0).count(), 1);

    // Selection accepts ties.
    let mut pop2 = pop.clone();
    let tie_fit = pop2.fitness[2];
    let mut trial = pop2.members[0].clone();
    trial.sigma0 = 123.456;
    differential_selection(&mut pop2, 2, trial.clone(), tie_fit);
    assert_eq!(pop2.members[2], trial);

    // Best-penalty monotonicity over 100 random runs.
    for seed in 0..100 {
        let g = generate(GraphType::Uniform, 20, 0.2, seed).unwrap();
        let cfg = SolverConfig {
            fes_max: 600,
            seed,
            ..SolverConfig::default()
        };
        let r = solve(&g, &cfg).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1].best_penalty <= w[0].best_penalty);
        }
    }
    println!("ACCEPTANCE 6 PASS: DE operator contracts and 100-run monotonicity");
}

#[test]
fn criterion_7_reproducible_bench_csv() {
    // Same arguments, different worker counts: byte-identical CSV.
    let cfg = SolverConfig::default();
    let p_values = [0.05, 0.1, 0.15];
    let mk = |jobs| {
        let report = sweep(
            GraphType::EquiPartite,
            40,
            &p_values,
            &cfg,
            10,
            5,
            42,
            Some(jobs),
        )
        .unwrap();
        tricolor::bench::emit_csv(&report)
    };
    let a = mk(1);
    let b = mk(4);
    let c = mk(2);
    assert_eq!(a, b);
    assert_eq!(a, c);
    println!("ACCEPTANCE 7 PASS: bench CSV byte-identical across jobs = 1, 2, 4");
}

#[test]
fn criterion_8_budget_accounting() {
    // Count decode-and-score invocations externally; force local search
    // often so its decodes are covered.
    for (seed, p_ls) in [(1u64, 0.02), (2, 0.5), (3, 1.0)] {
        let g = generate(GraphType::EquiPartite, 40, 0.06, seed).unwrap();
        let cfg = SolverConfig {
            fes_max: 3_000,
            p_ls,
            seed,
            ..SolverConfig::default()
        };
        let mut counted = 0u64;
        let mut hook = || counted += 1;
        let r = solve_with_hook(&g, &cfg, &mut hook).unwrap();
        assert_eq!(
            r.evals, counted,
            "reported evals differ from instrumented count (p_ls = {p_ls})"
        );
        assert!(r.evals <= cfg.fes_max);
    }
    // Aggregates also stay within [NP, FEs_max].
    let g = generate(GraphType::EquiPartite, 30, 0.1, 9).unwrap();
    let cfg = SolverConfig {
        fes_max: 2_000,
        ..SolverConfig::default()
    };
    let results = run_campaign(&g, &cfg, 10, 0, None).unwrap();
    let row = aggregate(0.1, &results);
    if let Some(aes) = row.aes {
        assert!(aes >= cfg.np as f64 && aes <= cfg.fes_max as f64);
    }
    println!("ACCEPTANCE 8 PASS: evals == instrumented decode count, never exceeding the budget");
}
