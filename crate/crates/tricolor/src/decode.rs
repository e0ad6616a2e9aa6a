//! Genotype-phenotype mapping: weights to a vertex permutation, a
//! permutation-guided DSatur decode into a partial 3-coloring, and the
//! constraint-violation penalty.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;

/// Sentinel for an uncolored vertex; colors are 1, 2, 3.
pub const UNCOLORED: u8 = 0;

/// A bijection on `0..n` with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<u32>,
    rank: Vec<u32>,
}

impl Permutation {
    /// Vertices in visit order.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Position of vertex `v` in the order.
    pub fn rank(&self, v: u32) -> u32 {
        self.rank[v as usize]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Orders vertices by weight descending; equal weights break toward the
/// lower vertex id.
pub fn weights_to_permutation(weights: &[f64]) -> Permutation {
    let mut order: Vec<u32> = (0..weights.len() as u32).collect();
    order.sort_by(|&a, &b| {
        weights[b as usize]
            .total_cmp(&weights[a as usize])
            .then(a.cmp(&b))
    });
    let mut rank = vec![0u32; weights.len()];
    for (pos, &v) in order.iter().enumerate() {
        rank[v as usize] = pos as u32;
    }
    Permutation { order, rank }
}

/// A partial 3-coloring. Colored vertices never conflict with a colored
/// neighbor; the decoder leaves a vertex at [`UNCOLORED`] when all three
/// colors already appear among its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    color: Vec<u8>,
    uncolored: usize,
}

impl Coloring {
    /// A coloring with every vertex uncolored.
    pub fn all_uncolored(n: usize) -> Self {
        Self {
            color: vec![UNCOLORED; n],
            uncolored: n,
        }
    }

    /// Builds a coloring from raw per-vertex values: 0 means uncolored,
    /// otherwise the value must be 1, 2 or 3.
    pub fn from_colors(color: Vec<u8>) -> Self {
        assert!(color.iter().all(|&c| c <= 3), "colors must be 0..=3");
        let uncolored = color.iter().filter(|&&c| c == UNCOLORED).count();
        Self { color, uncolored }
    }

    pub fn color(&self, v: u32) -> u8 {
        self.color[v as usize]
    }

    pub fn colors(&self) -> &[u8] {
        &self.color
    }

    pub fn uncolored_count(&self) -> usize {
        self.uncolored
    }

    pub fn is_complete(&self) -> bool {
        self.uncolored == 0
    }
}

/// Decode result plus the final per-vertex saturation degrees, which the
/// local search uses to rank swap candidates.
#[derive(Debug, Clone)]
pub struct Decoded {
    pub coloring: Coloring,
    pub saturation: Vec<u8>,
}

/// DSatur decode guided by a permutation.
///
/// Repeatedly picks the unprocessed vertex with the highest saturation
/// degree, breaking ties by earlier permutation rank, and gives it the
/// smallest color absent from its colored neighbors. A vertex whose
/// neighbors already show all three colors stays uncolored and does not
/// contribute to anyone's saturation.
pub fn dsatur_decode(g: &Graph, perm: &Permutation) -> Coloring {
    dsatur_decode_full(g, perm).coloring
}

/// [`dsatur_decode`] that also returns the final saturation degrees.
pub fn dsatur_decode_full(g: &Graph, perm: &Permutation) -> Decoded {
    let n = g.n();
    assert_eq!(perm.len(), n, "permutation length must match vertex count");

    let mut color = vec![UNCOLORED; n];
    let mut processed = vec![false; n];
    let mut sat = vec![0u8; n];
    // Bitmask of colors seen among colored neighbors; bit k = color k+1.
    let mut seen = vec![0u8; n];
    let mut uncolored = 0usize;

    // Saturation is at most 3, so keep one min-rank heap per level with
    // lazy deletion: a popped entry is stale if the vertex was processed
    // or has since moved to a higher level.
    let mut levels: [BinaryHeap<Reverse<u32>>; 4] = Default::default();
    for &v in perm.order() {
        levels[0].push(Reverse(perm.rank(v)));
    }

    for _ in 0..n {
        let v = loop {
            let lvl = levels
                .iter()
                .rposition(|h| !h.is_empty())
                .expect("an unprocessed vertex always remains");
            let Reverse(rank) = levels[lvl].pop().unwrap();
            let v = perm.order()[rank as usize];
            if !processed[v as usize] && sat[v as usize] as usize == lvl {
                break v;
            }
        };
        processed[v as usize] = true;

        let mask = seen[v as usize];
        if mask == 0b111 {
            uncolored += 1;
            continue;
        }
        let c = (mask.trailing_ones() + 1) as u8;
        color[v as usize] = c;
        let bit = 1u8 << (c - 1);
        for &u in g.neighbors(v) {
            let u = u as usize;
            if seen[u] & bit == 0 {
                seen[u] |= bit;
                sat[u] += 1;
                if !processed[u] {
                    levels[sat[u] as usize].push(Reverse(perm.rank(u as u32)));
                }
            }
        }
    }

    Decoded {
        coloring: Coloring { color, uncolored },
        saturation: sat,
    }
}

/// Number of vertices violating at least one constraint: a vertex counts if
/// it is uncolored or shares its color with a colored neighbor. Zero exactly
/// when the coloring is a complete proper 3-coloring.
pub fn penalty(g: &Graph, c: &Coloring) -> usize {
    (0..g.n() as u32)
        .filter(|&v| {
            let cv = c.color(v);
            cv == UNCOLORED
                || g.neighbors(v)
                    .iter()
                    .any(|&u| c.color(u) == cv)
        })
        .count()
}
