//! Order local search: swap the first uncolored vertex with its most
//! saturated neighbor in the permutation, re-decode, and keep going while
//! each swap strictly improves the penalty.
//!
//! Swaps exchange the two vertices' weight values, so an accepted
//! improvement is written back into the genotype and survives selection.

use rand::Rng;

use crate::decode::{weights_to_permutation, Decoded, UNCOLORED};
use crate::graph::Graph;
use crate::solver::{Evaluator, Genotype};

/// One 1-swap move. Returns `None` when the coloring is complete.
///
/// `decoded` must be the decode of `geno`'s permutation; its saturation
/// degrees rank the swap candidates. Among the uncolored vertex's neighbors
/// the highest saturation wins, ties resolved uniformly at random.
pub fn swap_step(
    g: &Graph,
    geno: &Genotype,
    decoded: &Decoded,
    rng: &mut impl Rng,
) -> Option<(Genotype, (u32, u32))> {
    let perm = weights_to_permutation(&geno.weights);
    let v = *perm
        .order()
        .iter()
        .find(|&&v| decoded.coloring.color(v) == UNCOLORED)?;

    let mut best_sat = 0u8;
    let mut ties = 0usize;
    let mut chosen = None;
    for &u in g.neighbors(v) {
        let sat = decoded.saturation[u as usize];
        if chosen.is_none() || sat > best_sat {
            best_sat = sat;
            ties = 1;
            chosen = Some(u);
        } else if sat == best_sat {
            ties += 1;
            if rng.gen_range(0..ties) == 0 {
                chosen = Some(u);
            }
        }
    }
    let u = chosen.expect("an uncolored vertex always has neighbors");

    let mut swapped = geno.clone();
    swapped.weights.swap(v as usize, u as usize);
    Some((swapped, (v, u)))
}

/// Result of a local-search descent.
#[derive(Debug)]
pub struct LocalSearchResult {
    pub genotype: Genotype,
    pub decoded: Decoded,
    pub penalty: usize,
    /// Decode-and-score calls consumed.
    pub evals: u64,
}

/// Repeats [`swap_step`] + re-decode while the penalty strictly improves.
/// Stops at the first non-improving swap (reverting it), on a complete
/// coloring, when `budget` evaluations are spent, or after `n` iterations.
pub fn local_search(
    geno: Genotype,
    decoded: Decoded,
    penalty: usize,
    budget: u64,
    ev: &mut Evaluator<'_>,
    rng: &mut impl Rng,
) -> LocalSearchResult {
    let g = ev.graph();
    let mut cur = LocalSearchResult {
        genotype: geno,
        decoded,
        penalty,
        evals: 0,
    };
    for _ in 0..g.n() {
        if cur.penalty == 0 || cur.evals >= budget {
            break;
        }
        let Some((candidate, _)) = swap_step(g, &cur.genotype, &cur.decoded, rng) else {
            break;
        };
        let (dec, pen) = ev.eval(&candidate.weights);
        cur.evals += 1;
        if pen < cur.penalty {
            cur.genotype = candidate;
            cur.decoded = dec;
            cur.penalty = pen;
        } else {
            break;
        }
    }
    cur
}
