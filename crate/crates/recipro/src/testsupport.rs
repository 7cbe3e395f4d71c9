//! Deterministic generators and brute-force reference checkers for the
//! test suites. Not part of the stable API.
//!
//! The realizability checkers here deliberately avoid the library's own
//! graphicality tests and pruned searches: they enumerate directly, so
//! they can serve as independent ground truth.

use crate::bisequence::BiSequence;
use crate::digraph::{Digraph, NodeId};

/// SplitMix64: a tiny deterministic generator for corpus construction.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform value in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

/// A random simple digraph on `n` nodes with exactly `m` edges.
pub fn random_digraph(rng: &mut SplitMix64, n: usize, m: usize) -> Digraph {
    assert!(m <= n.saturating_sub(1) * n, "too many edges requested");
    let mut chosen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.below(n) as u32;
        let v = rng.below(n) as u32;
        if u != v && chosen.insert((u, v)) {
            edges.push((NodeId(u), NodeId(v)));
        }
    }
    Digraph::from_edges(n, edges).expect("sampled edges are simple")
}

/// A perfectly balanced bi-sequence (equal out- and in-degrees per node)
/// that some digraph realizes, with `2 <= n <= max_n` and entries
/// `<= max_deg`. Rejection-sampled against the brute-force realizability
/// check, independent of the library's graphicality test.
pub fn random_balanced_realizable(
    rng: &mut SplitMix64,
    max_n: usize,
    max_deg: usize,
) -> BiSequence {
    loop {
        let n = rng.range(2, max_n);
        let d: Vec<usize> = (0..n).map(|_| rng.range(0, max_deg)).collect();
        let bs = BiSequence::new(d.clone(), d).expect("equal lengths");
        if digraph_realizable(&bs) {
            return bs;
        }
    }
}

/// A realizable bi-sequence with total imbalance exactly 1: one node one
/// unit heavier on the out side, another node on the in side.
pub fn random_nu1_realizable(rng: &mut SplitMix64, max_n: usize, max_deg: usize) -> BiSequence {
    loop {
        let n = rng.range(2, max_n);
        let base: Vec<usize> = (0..n).map(|_| rng.range(0, max_deg)).collect();
        let i = rng.below(n);
        let j = rng.below(n);
        if i == j || base[i] == max_deg || base[j] == max_deg {
            continue;
        }
        let mut d_plus = base.clone();
        let mut d_minus = base;
        d_plus[i] += 1;
        d_minus[j] += 1;
        let bs = BiSequence::new(d_plus, d_minus).expect("equal lengths");
        if digraph_realizable(&bs) {
            return bs;
        }
    }
}

fn place_digraph(
    row: usize,
    col: usize,
    n: usize,
    r_out: &mut [usize],
    r_in: &mut [usize],
) -> bool {
    if row == n {
        // Equal sums plus satisfied rows force satisfied columns.
        return true;
    }
    if col == n {
        if r_out[row] != 0 {
            return false;
        }
        return place_digraph(row + 1, 0, n, r_out, r_in);
    }
    if row == col {
        return place_digraph(row, col + 1, n, r_out, r_in);
    }
    // Cells left in this row, excluding a diagonal cell still ahead.
    let cells_left = n - col - usize::from(row >= col);
    if r_out[row] > cells_left {
        return false;
    }
    if r_out[row] > 0 && r_in[col] > 0 {
        r_out[row] -= 1;
        r_in[col] -= 1;
        let ok = place_digraph(row, col + 1, n, r_out, r_in);
        r_out[row] += 1;
        r_in[col] += 1;
        if ok {
            return true;
        }
    }
    // Leave the cell empty if the column can still be filled below.
    if r_in[col] < n - row {
        return place_digraph(row, col + 1, n, r_out, r_in);
    }
    false
}

/// Whether any simple digraph has this bi-sequence, by direct
/// backtracking over the adjacency matrix.
pub fn digraph_realizable(bs: &BiSequence) -> bool {
    if bs.sum_out() != bs.sum_in() {
        return false;
    }
    let n = bs.len();
    if bs.d_plus().iter().chain(bs.d_minus()).any(|&d| d + 1 > n) {
        return false;
    }
    let mut r_out = bs.d_plus().to_vec();
    let mut r_in = bs.d_minus().to_vec();
    place_digraph(0, 0, n, &mut r_out, &mut r_in)
}

fn place_undirected(i: usize, j: usize, n: usize, residual: &mut [usize]) -> bool {
    if i + 1 >= n {
        return residual.iter().all(|&r| r == 0);
    }
    if j == n {
        if residual[i] != 0 {
            return false;
        }
        return place_undirected(i + 1, i + 2, n, residual);
    }
    if residual[i] > n - j {
        return false;
    }
    if residual[i] > 0 && residual[j] > 0 {
        residual[i] -= 1;
        residual[j] -= 1;
        let ok = place_undirected(i, j + 1, n, residual);
        residual[i] += 1;
        residual[j] += 1;
        if ok {
            return true;
        }
    }
    place_undirected(i, j + 1, n, residual)
}

/// Whether any simple undirected graph has this degree sequence, by
/// direct backtracking over vertex pairs.
pub fn undirected_realizable(d: &[usize]) -> bool {
    let n = d.len();
    if d.iter().any(|&x| x + 1 > n) {
        return false;
    }
    if d.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    if n == 0 {
        return true;
    }
    let mut residual = d.to_vec();
    place_undirected(0, 1, n, &mut residual)
}
