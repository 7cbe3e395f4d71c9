//! The reciprocity upper bound and when it is achieved.
//!
//! For a bi-sequence with equal sums, the number of reciprocated edges of
//! any realization is at most the total balanced degree `beta`. This
//! module computes that bound with its necessary conditions, a sufficient
//! condition certifying equality, exact values for balanced and nearly
//! balanced bi-sequences, and the encoding of 3-color tomography
//! instances whose feasibility coincides with bound achievability (the
//! reduction behind the hardness of deciding it).
//!
//! Certified packing values count reciprocated *edges*, the same
//! convention as [`Digraph::rho`](crate::Digraph::rho): an undirected
//! packing graph with degree sequence `d0` pins `sum(d0) / 2` mutual
//! pairs, i.e. `sum(d0)` reciprocated edges.

use std::collections::BTreeSet;

use crate::bisequence::{degree_summary, BiSequence};
use crate::digraph::{Digraph, NodeId};
use crate::error::{Error, Result};
use crate::graphicality::{erdos_gallai, fulkerson_chen_anstee};

/// Upper-bound report for a bi-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Total balanced degree; the bound itself.
    pub beta: usize,
    /// Total edges of any realization.
    pub epsilon: usize,
    /// Whether the element-wise min sequence is graphic (necessary for
    /// the bound to be achieved).
    pub min_graphic: bool,
    /// Whether the element-wise max sequence is graphic (necessary for
    /// the bound to be achieved).
    pub max_graphic: bool,
    /// Whether the sufficient condition certifies achievement.
    pub sufficient_holds: bool,
    /// Exact maximum when a special case pins it down.
    pub exact_value: Option<usize>,
    /// For total imbalance 1, the possible values of `epsilon - rho`.
    pub gap_candidates: Option<BTreeSet<usize>>,
}

/// Computes beta with the necessary and sufficient achievability flags
/// plus any special-case exact value.
pub fn upper_bound(bs: &BiSequence) -> Result<BoundReport> {
    let summary = degree_summary(bs)?;
    let min_graphic = erdos_gallai(&summary.min_seq);
    let max_graphic = erdos_gallai(&summary.max_seq);
    let sufficient_holds = sufficient_condition(bs)?;
    let exact_value = balanced_exact(bs)?.or(if sufficient_holds {
        Some(summary.beta)
    } else {
        None
    });
    let gap_candidates = nu1_gap_candidates(bs)?;
    if sufficient_holds {
        // Achievement implies both necessary conditions.
        assert!(min_graphic && max_graphic);
    }
    Ok(BoundReport {
        beta: summary.beta,
        epsilon: summary.epsilon,
        min_graphic,
        max_graphic,
        sufficient_holds,
        exact_value,
        gap_candidates,
    })
}

/// Sufficient condition for `rho = beta`: the min sequence packs as
/// mutual pairs and the leftover bi-sequence is still graphic, with the
/// support degrees spread enough that both witnesses coexist.
///
/// An empty support is vacuously true: beta is zero and the empty graph
/// achieves it.
pub fn sufficient_condition(bs: &BiSequence) -> Result<bool> {
    let summary = degree_summary(bs)?;
    Ok(packing_lower_bound(&summary.min_seq, bs)?.is_some())
}

/// Certified lower bound from packing an undirected graph into a digraph.
///
/// If `d0` is graphic, the residual bi-sequence `(d+ - d0, d- - d0)` is
/// graphic, and over the support `V0 = {i : max(d+, d-) > 0}` the spread
/// condition `max < sqrt(min*|V0| + (min - 1/2)^2) + 3/2 - min` holds for
/// the per-node totals `d+ + d- - d0`, then some realization reciprocates
/// at least `sum(d0)` edges; that certified value is returned. Returns
/// `None` when any condition fails.
///
/// The inequality is evaluated in exact integer arithmetic (scaled by 4
/// to clear the halves) since it is strict and floats could tip the
/// boundary cases.
pub fn packing_lower_bound(d0: &[usize], bs: &BiSequence) -> Result<Option<usize>> {
    if d0.len() != bs.len() {
        return Err(Error::DimensionMismatch {
            left: d0.len(),
            right: bs.len(),
        });
    }
    for (i, &d) in d0.iter().enumerate() {
        if d > bs.d_plus()[i] || d > bs.d_minus()[i] {
            return Err(Error::NegativeResidual { index: i });
        }
    }
    if !erdos_gallai(d0) {
        return Ok(None);
    }
    let residual = BiSequence::new(
        bs.d_plus().iter().zip(d0).map(|(&p, &d)| p - d).collect(),
        bs.d_minus().iter().zip(d0).map(|(&m, &d)| m - d).collect(),
    )
    .expect("lengths checked");
    if !fulkerson_chen_anstee(&residual) {
        return Ok(None);
    }
    let support: Vec<usize> = (0..bs.len())
        .filter(|&i| bs.d_plus()[i].max(bs.d_minus()[i]) > 0)
        .collect();
    if support.is_empty() {
        return Ok(Some(0));
    }
    let totals: Vec<u128> = support
        .iter()
        .map(|&i| (bs.d_plus()[i] + bs.d_minus()[i] - d0[i]) as u128)
        .collect();
    let delta_max = *totals.iter().max().expect("support nonempty");
    let delta_min = *totals.iter().min().expect("support nonempty");
    let n0 = support.len() as u128;
    // max + min - 3/2 < sqrt(min*n0 + (min - 1/2)^2), squared at scale 4:
    // (2*max + 2*min - 3)^2 < 4*min*n0 + (2*min - 1)^2.
    let lhs = 2 * delta_max as i128 + 2 * delta_min as i128 - 3;
    let holds = if lhs < 0 {
        true
    } else {
        let rhs = 4 * delta_min * n0 + (2 * delta_min - 1).pow(2);
        (lhs as u128).pow(2) < rhs
    };
    if holds {
        Ok(Some(d0.iter().sum()))
    } else {
        Ok(None)
    }
}

/// Exact maximum for perfectly balanced bi-sequences: every edge can be
/// reciprocated when the edge total is even; an odd total strands one
/// 3-cycle of unreciprocated edges.
///
/// Returns `None` when the bi-sequence is unbalanced or has no
/// realization at all.
pub fn balanced_exact(bs: &BiSequence) -> Result<Option<usize>> {
    let summary = degree_summary(bs)?;
    if summary.nu != 0 || !fulkerson_chen_anstee(bs) {
        return Ok(None);
    }
    if summary.epsilon % 2 == 0 {
        Ok(Some(summary.epsilon))
    } else {
        debug_assert!(summary.epsilon >= 3, "odd graphic balanced total is >= 3");
        Ok(Some(summary.epsilon - 3))
    }
}

/// For total imbalance exactly 1, the two possible values of the gap
/// `epsilon - rho`: `{2, 4}` when `epsilon` is even, `{1, 5}` when odd.
/// The realized gap is guaranteed to be one of them.
///
/// Returns `None` when the imbalance differs from 1 or the bi-sequence
/// has no realization.
pub fn nu1_gap_candidates(bs: &BiSequence) -> Result<Option<BTreeSet<usize>>> {
    let summary = degree_summary(bs)?;
    if summary.nu != 1 {
        return Ok(None);
    }
    // Imbalance 1 with equal sums forces exactly one node a unit over on
    // each side; verify rather than trusting positions.
    let over: Vec<usize> = (0..bs.len())
        .filter(|&i| bs.d_plus()[i] > bs.d_minus()[i])
        .collect();
    let under: Vec<usize> = (0..bs.len())
        .filter(|&i| bs.d_minus()[i] > bs.d_plus()[i])
        .collect();
    assert!(
        over.len() == 1
            && under.len() == 1
            && bs.d_plus()[over[0]] - bs.d_minus()[over[0]] == 1
            && bs.d_minus()[under[0]] - bs.d_plus()[under[0]] == 1,
        "imbalance 1 must sit on exactly two unit-skewed nodes"
    );
    if !fulkerson_chen_anstee(bs) {
        return Ok(None);
    }
    let gaps = if summary.epsilon % 2 == 0 {
        BTreeSet::from([2, 4])
    } else {
        BTreeSet::from([1, 5])
    };
    Ok(Some(gaps))
}

/// A 3-color tomography instance: per-row and per-column counts of white
/// and black cells for an `n x m` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TomographyInstance {
    n: usize,
    m: usize,
    r_w: Vec<usize>,
    r_b: Vec<usize>,
    s_w: Vec<usize>,
    s_b: Vec<usize>,
}

impl TomographyInstance {
    pub fn new(
        r_w: Vec<usize>,
        r_b: Vec<usize>,
        s_w: Vec<usize>,
        s_b: Vec<usize>,
    ) -> Result<TomographyInstance> {
        let n = r_w.len();
        let m = s_w.len();
        let fail = |reason: &str| Error::InvalidInstance {
            reason: reason.to_string(),
        };
        if r_b.len() != n || s_b.len() != m {
            return Err(fail("color count vectors have mismatched lengths"));
        }
        if n == 0 || m == 0 {
            return Err(fail("grid dimensions must be positive"));
        }
        if (0..n).any(|i| r_w[i] + r_b[i] > m) {
            return Err(fail("row counts exceed the row length"));
        }
        if (0..m).any(|j| s_w[j] + s_b[j] > n) {
            return Err(fail("column counts exceed the column length"));
        }
        let sum = |v: &[usize]| v.iter().map(|&x| x as u128).sum::<u128>();
        if sum(&r_w) != sum(&s_w) {
            return Err(fail("white totals differ between rows and columns"));
        }
        if sum(&r_b) != sum(&s_b) {
            return Err(fail("black totals differ between rows and columns"));
        }
        Ok(TomographyInstance {
            n,
            m,
            r_w,
            r_b,
            s_w,
            s_b,
        })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn r_w(&self) -> &[usize] {
        &self.r_w
    }

    pub fn r_b(&self) -> &[usize] {
        &self.r_b
    }

    pub fn s_w(&self) -> &[usize] {
        &self.s_w
    }

    pub fn s_b(&self) -> &[usize] {
        &self.s_b
    }
}

/// Cell color of a tomography solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
    Blank,
}

/// A filled `n x m` color grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMatrix {
    n: usize,
    m: usize,
    cells: Vec<Color>,
}

impl ColorMatrix {
    pub(crate) fn new(n: usize, m: usize, cells: Vec<Color>) -> ColorMatrix {
        assert_eq!(cells.len(), n * m);
        ColorMatrix { n, m, cells }
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Color {
        self.cells[i * self.m + j]
    }

    fn row_count(&self, i: usize, c: Color) -> usize {
        (0..self.m).filter(|&j| self.get(i, j) == c).count()
    }

    fn col_count(&self, j: usize, c: Color) -> usize {
        (0..self.n).filter(|&i| self.get(i, j) == c).count()
    }

    /// True when every row and column count of the instance is met.
    pub fn satisfies(&self, inst: &TomographyInstance) -> bool {
        self.n == inst.n
            && self.m == inst.m
            && (0..self.n).all(|i| {
                self.row_count(i, Color::White) == inst.r_w[i]
                    && self.row_count(i, Color::Black) == inst.r_b[i]
            })
            && (0..self.m).all(|j| {
                self.col_count(j, Color::White) == inst.s_w[j]
                    && self.col_count(j, Color::Black) == inst.s_b[j]
            })
    }
}

/// Encodes a tomography instance as a bi-sequence on `n + m` nodes whose
/// bound `beta` equals `n(n-1) + 2*sum(r_w)`; the instance is feasible
/// exactly when that bound is achieved by some realization.
///
/// Row node `i` gets out-degree `r_w[i] + r_b[i] + n - 1` and in-degree
/// `r_w[i] + n - 1`; column node `n + j` gets out-degree `s_w[j]` and
/// in-degree `s_w[j] + s_b[j]`.
pub fn tomography_to_bisequence(inst: &TomographyInstance) -> (BiSequence, usize) {
    let (n, m) = (inst.n, inst.m);
    let mut d_plus = Vec::with_capacity(n + m);
    let mut d_minus = Vec::with_capacity(n + m);
    for i in 0..n {
        d_plus.push(inst.r_w[i] + inst.r_b[i] + n - 1);
        d_minus.push(inst.r_w[i] + n - 1);
    }
    for j in 0..m {
        d_plus.push(inst.s_w[j]);
        d_minus.push(inst.s_w[j] + inst.s_b[j]);
    }
    let bs = BiSequence::new(d_plus, d_minus).expect("equal lengths by construction");
    let beta_target = n * (n - 1) + 2 * inst.r_w.iter().sum::<usize>();
    debug_assert_eq!(
        bs.summary().expect("encoded sums balance").beta,
        beta_target
    );
    (bs, beta_target)
}

/// Recovers the color matrix from a bound-achieving realization of an
/// encoded instance.
///
/// Such a realization is forced into block form: the row block is the
/// complete digraph, the column block is empty, every column-to-row edge
/// is matched by its reverse (those pairs are the white cells), and the
/// unmatched row-to-column edges are the black cells. Any violation means
/// the graph is not a valid certificate.
pub fn decode_tomography_solution(g: &Digraph, inst: &TomographyInstance) -> Result<ColorMatrix> {
    let (bs, beta_target) = tomography_to_bisequence(inst);
    let (n, m) = (inst.n, inst.m);
    if g.node_count() != n + m {
        return Err(Error::DimensionMismatch {
            left: g.node_count(),
            right: n + m,
        });
    }
    if g.bi_sequence() != bs || g.rho() != beta_target {
        return Err(Error::NotBoundAchieving);
    }
    let node = |i: usize| NodeId(i as u32);
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.has_edge(node(i), node(j)) {
                return Err(Error::NotBoundAchieving);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i != j && g.has_edge(node(n + i), node(n + j)) {
                return Err(Error::NotBoundAchieving);
            }
        }
    }
    let mut cells = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let forward = g.has_edge(node(i), node(n + j));
            let backward = g.has_edge(node(n + j), node(i));
            let color = match (forward, backward) {
                (true, true) => Color::White,
                (true, false) => Color::Black,
                (false, false) => Color::Blank,
                // A column-to-row edge without its reverse breaks the
                // forced structure.
                (false, true) => return Err(Error::NotBoundAchieving),
            };
            cells.push(color);
        }
    }
    let matrix = ColorMatrix::new(n, m, cells);
    if !matrix.satisfies(inst) {
        return Err(Error::NotBoundAchieving);
    }
    Ok(matrix)
}
