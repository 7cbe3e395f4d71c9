//! Exhaustive ground truth on small instances.
//!
//! Backtracking over 0/1 adjacency matrices with zero diagonal and
//! prescribed row/column sums yields the exact maximum number of
//! reciprocated edges a bi-sequence allows, the number of labeled
//! realizations, and brute-force feasibility for 3-color tomography
//! instances. Branching is deterministic (cells in row-major order,
//! value 1 before 0), so witnesses are reproducible.

use crate::bisequence::BiSequence;
use crate::bounds::{Color, ColorMatrix, TomographyInstance};
use crate::digraph::{Digraph, NodeId};
use crate::error::{Error, Result};
use crate::graphicality::fulkerson_chen_anstee;

/// Size and effort caps for the exhaustive searches.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Budget in branch visits; exceeding it aborts the search.
    pub max_expansions: u64,
}

impl Default for OracleLimits {
    fn default() -> OracleLimits {
        OracleLimits {
            max_nodes: 10,
            max_edges: 20,
            max_expansions: 100_000_000,
        }
    }
}

/// Result of [`max_reciprocity_exact`].
#[derive(Debug, Clone)]
pub struct MaxReciprocity {
    /// Largest number of reciprocated edges found.
    pub rho_max: usize,
    /// A realization attaining `rho_max`.
    pub witness: Digraph,
    /// False when the expansion budget ran out; `rho_max` is then only a
    /// lower bound on the true maximum.
    pub exact: bool,
    /// Branch visits spent.
    pub expansions: u64,
}

struct Search<'a> {
    /// Off-diagonal cells in row-major order.
    cells: Vec<(usize, usize)>,
    adj: Vec<Vec<u8>>,
    r_out: Vec<usize>,
    r_in: Vec<usize>,
    row_remaining: Vec<usize>,
    col_remaining: Vec<usize>,
    /// Out-edges placed whose reverse cell is still undecided, per node.
    pend_out: Vec<usize>,
    /// In-edges placed whose reverse cell is still undecided, per node.
    pend_in: Vec<usize>,
    /// Reciprocated edges among fully decided pairs.
    decided_rho: usize,
    /// Per-node term of the admissible bound, and their sum.
    bound_term: Vec<usize>,
    bound_sum: usize,
    expansions: u64,
    budget: u64,
    limit_hit: bool,
    mode: Mode<'a>,
}

enum Mode<'a> {
    /// Maximize decided_rho; prune against the incumbent, stop at target.
    Max {
        best: Option<(usize, Vec<Vec<u8>>)>,
        target: usize,
        done: bool,
    },
    Count {
        count: &'a mut u64,
    },
}

const UNDECIDED: u8 = 2;

impl<'a> Search<'a> {
    fn new(bs: &BiSequence, budget: u64, mode: Mode<'a>) -> Search<'a> {
        let n = bs.len();
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cells.push((i, j));
                }
            }
        }
        let r_out = bs.d_plus().to_vec();
        let r_in = bs.d_minus().to_vec();
        // The bound term starts at min(d+, d-) per node, summing to beta.
        let bound_term: Vec<usize> = r_out.iter().zip(&r_in).map(|(&o, &i)| o.min(i)).collect();
        let bound_sum = bound_term.iter().sum();
        Search {
            cells,
            adj: vec![vec![UNDECIDED; n]; n],
            row_remaining: vec![n.saturating_sub(1); n],
            col_remaining: vec![n.saturating_sub(1); n],
            r_out,
            r_in,
            pend_out: vec![0; n],
            pend_in: vec![0; n],
            decided_rho: 0,
            bound_term,
            bound_sum,
            expansions: 0,
            budget,
            limit_hit: false,
            mode,
        }
    }

    fn refresh_bound(&mut self, v: usize) {
        // Upper bound on reciprocated edges at v not yet fully decided:
        // every future mutual pair at v consumes one out slot (pending or
        // residual) and one in slot. Summed over nodes this counts each
        // future pair twice, once per endpoint, matching rho's convention.
        let term = (self.pend_out[v] + self.r_out[v]).min(self.pend_in[v] + self.r_in[v]);
        self.bound_sum = self.bound_sum - self.bound_term[v] + term;
        self.bound_term[v] = term;
    }

    fn set(&mut self, i: usize, j: usize, value: u8) {
        self.adj[i][j] = value;
        self.row_remaining[i] -= 1;
        self.col_remaining[j] -= 1;
        let twin = self.adj[j][i];
        if value == 1 {
            self.r_out[i] -= 1;
            self.r_in[j] -= 1;
            match twin {
                UNDECIDED => {
                    self.pend_out[i] += 1;
                    self.pend_in[j] += 1;
                }
                1 => {
                    self.decided_rho += 2;
                    self.pend_out[j] -= 1;
                    self.pend_in[i] -= 1;
                }
                _ => {}
            }
        } else if twin == 1 {
            self.pend_out[j] -= 1;
            self.pend_in[i] -= 1;
        }
        self.refresh_bound(i);
        self.refresh_bound(j);
    }

    fn unset(&mut self, i: usize, j: usize) {
        let value = self.adj[i][j];
        self.adj[i][j] = UNDECIDED;
        self.row_remaining[i] += 1;
        self.col_remaining[j] += 1;
        let twin = self.adj[j][i];
        if value == 1 {
            self.r_out[i] += 1;
            self.r_in[j] += 1;
            match twin {
                UNDECIDED => {
                    self.pend_out[i] -= 1;
                    self.pend_in[j] -= 1;
                }
                1 => {
                    self.decided_rho -= 2;
                    self.pend_out[j] += 1;
                    self.pend_in[i] += 1;
                }
                _ => {}
            }
        } else if twin == 1 {
            self.pend_out[j] += 1;
            self.pend_in[i] += 1;
        }
        self.refresh_bound(i);
        self.refresh_bound(j);
    }

    fn feasible_after(&self, i: usize, j: usize) -> bool {
        self.row_remaining[i] >= self.r_out[i] && self.col_remaining[j] >= self.r_in[j]
    }

    fn run(&mut self, t: usize) {
        if let Mode::Max { done: true, .. } = self.mode {
            return;
        }
        if self.limit_hit {
            return;
        }
        if t == self.cells.len() {
            match &mut self.mode {
                Mode::Max { best, target, done } => {
                    let rho = self.decided_rho;
                    if best.as_ref().is_none_or(|(b, _)| rho > *b) {
                        *best = Some((rho, self.adj.clone()));
                        if rho >= *target {
                            *done = true;
                        }
                    }
                }
                Mode::Count { count } => **count += 1,
            }
            return;
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            self.limit_hit = true;
            return;
        }
        if let Mode::Max {
            best: Some((incumbent, _)),
            ..
        } = &self.mode
        {
            // Admissible prune: decided pairs plus the per-node residual
            // capacity can never understate the best completion.
            if self.decided_rho + self.bound_sum <= *incumbent {
                return;
            }
        }
        let (i, j) = self.cells[t];
        if self.r_out[i] > 0 && self.r_in[j] > 0 {
            self.set(i, j, 1);
            if self.feasible_after(i, j) {
                self.run(t + 1);
            }
            self.unset(i, j);
        }
        self.set(i, j, 0);
        if self.feasible_after(i, j) {
            self.run(t + 1);
        }
        self.unset(i, j);
    }
}

fn validate(bs: &BiSequence, limits: &OracleLimits) -> Result<()> {
    if !fulkerson_chen_anstee(bs) {
        return Err(Error::NotGraphic);
    }
    let edges = bs.sum_out() as usize;
    if bs.len() > limits.max_nodes || edges > limits.max_edges {
        return Err(Error::TooLarge {
            nodes: bs.len(),
            edges,
        });
    }
    Ok(())
}

fn matrix_to_digraph(adj: &[Vec<u8>]) -> Digraph {
    let n = adj.len();
    let edges = adj.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|&(_, &v)| v == 1)
            .map(move |(j, _)| (NodeId(i as u32), NodeId(j as u32)))
    });
    Digraph::from_edges(n, edges).expect("search matrix is a simple digraph")
}

/// Exact maximum number of reciprocated edges over all realizations of
/// `bs`, with a witness attaining it.
///
/// When the expansion budget runs out the best realization seen so far is
/// returned with `exact = false`; if none was seen the search fails with
/// [`Error::BudgetExhausted`].
pub fn max_reciprocity_exact(bs: &BiSequence, limits: &OracleLimits) -> Result<MaxReciprocity> {
    validate(bs, limits)?;
    let beta = bs
        .summary()
        .expect("graphic bi-sequence has equal sums")
        .beta;
    let mode = Mode::Max {
        best: None,
        target: beta,
        done: false,
    };
    let mut search = Search::new(bs, limits.max_expansions, mode);
    search.run(0);
    let expansions = search.expansions;
    let limit_hit = search.limit_hit;
    let Mode::Max { best, .. } = search.mode else {
        unreachable!()
    };
    match best {
        Some((rho_max, adj)) => {
            let witness = matrix_to_digraph(&adj);
            debug_assert_eq!(witness.rho(), rho_max);
            debug_assert_eq!(&witness.bi_sequence(), bs);
            Ok(MaxReciprocity {
                rho_max,
                witness,
                exact: !limit_hit,
                expansions,
            })
        }
        None => Err(Error::BudgetExhausted),
    }
}

/// Exact number of labeled digraphs realizing `bs`.
pub fn count_realizations(bs: &BiSequence, limits: &OracleLimits) -> Result<u64> {
    validate(bs, limits)?;
    let mut count = 0u64;
    let mut search = Search::new(bs, limits.max_expansions, Mode::Count { count: &mut count });
    search.run(0);
    if search.limit_hit {
        return Err(Error::BudgetExhausted);
    }
    Ok(count)
}

/// Brute-force feasibility for a 3-color tomography instance: the first
/// matrix over {white, black, blank} meeting every row and column count,
/// or `None` when the instance is infeasible.
///
/// Exhaustive over `3^(n*m)` assignments with row/column pruning; limited
/// to `n*m <= 16`.
pub fn tomography_feasible_bruteforce(inst: &TomographyInstance) -> Result<Option<ColorMatrix>> {
    let (n, m) = (inst.rows(), inst.cols());
    if n * m > 16 {
        return Err(Error::TooLarge { nodes: n, edges: m });
    }
    struct Fill {
        n: usize,
        m: usize,
        cells: Vec<Color>,
        need_rw: Vec<usize>,
        need_rb: Vec<usize>,
        need_sw: Vec<usize>,
        need_sb: Vec<usize>,
    }

    impl Fill {
        fn take(&mut self, color: Color, i: usize, j: usize) {
            match color {
                Color::White => {
                    self.need_rw[i] -= 1;
                    self.need_sw[j] -= 1;
                }
                Color::Black => {
                    self.need_rb[i] -= 1;
                    self.need_sb[j] -= 1;
                }
                Color::Blank => {}
            }
        }

        fn put_back(&mut self, color: Color, i: usize, j: usize) {
            match color {
                Color::White => {
                    self.need_rw[i] += 1;
                    self.need_sw[j] += 1;
                }
                Color::Black => {
                    self.need_rb[i] += 1;
                    self.need_sb[j] += 1;
                }
                Color::Blank => {}
            }
        }

        fn assign(&mut self, t: usize) -> bool {
            if t == self.n * self.m {
                return true;
            }
            let (i, j) = (t / self.m, t % self.m);
            let row_left = self.m - j;
            let col_left = self.n - i;
            for color in [Color::White, Color::Black, Color::Blank] {
                let available = match color {
                    Color::White => self.need_rw[i] > 0 && self.need_sw[j] > 0,
                    Color::Black => self.need_rb[i] > 0 && self.need_sb[j] > 0,
                    Color::Blank => true,
                };
                if !available {
                    continue;
                }
                self.take(color, i, j);
                // Remaining cells must still be able to host the needs.
                let fits = self.need_rw[i] + self.need_rb[i] < row_left
                    && self.need_sw[j] + self.need_sb[j] < col_left;
                if fits {
                    self.cells[t] = color;
                    if self.assign(t + 1) {
                        return true;
                    }
                }
                self.put_back(color, i, j);
            }
            false
        }
    }

    let mut fill = Fill {
        n,
        m,
        cells: vec![Color::Blank; n * m],
        need_rw: inst.r_w().to_vec(),
        need_rb: inst.r_b().to_vec(),
        need_sw: inst.s_w().to_vec(),
        need_sb: inst.s_b().to_vec(),
    };
    if fill.assign(0) {
        let matrix = ColorMatrix::new(n, m, fill.cells);
        debug_assert!(matrix.satisfies(inst));
        Ok(Some(matrix))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(p: &[usize], m: &[usize]) -> BiSequence {
        BiSequence::new(p.to_vec(), m.to_vec()).unwrap()
    }

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn nearly_balanced_five_nodes() {
        let b = bs(&[1, 3, 2, 2, 2], &[0, 4, 2, 2, 2]);
        let res = max_reciprocity_exact(&b, &limits()).unwrap();
        assert!(res.exact);
        assert_eq!(res.rho_max, 6);
        assert_eq!(res.witness.rho(), 6);
        assert_eq!(res.witness.bi_sequence(), b);
    }

    #[test]
    fn forced_six_node_realization() {
        // The hub's out-set {b,d,e,f} and in-set {a,d,e,f} are forced,
        // leaving a residual (1,1) triple that admits exactly the two
        // 3-cycle orientations: two labeled realizations, isomorphic to
        // each other, both with six reciprocated edges.
        let b = bs(&[1, 0, 4, 2, 2, 2], &[0, 1, 4, 2, 2, 2]);
        let res = max_reciprocity_exact(&b, &limits()).unwrap();
        assert_eq!(res.rho_max, 6);
        assert_eq!(count_realizations(&b, &limits()).unwrap(), 2);
    }

    #[test]
    fn relay_star_allows_no_reciprocity() {
        let b = bs(&[4, 1, 1, 1, 1, 0], &[0, 1, 1, 1, 1, 4]);
        let res = max_reciprocity_exact(&b, &limits()).unwrap();
        assert_eq!(res.rho_max, 0);
    }

    #[test]
    fn unique_chain_counting() {
        let b = bs(&[4, 3, 2, 1, 0], &[0, 1, 2, 3, 4]);
        assert_eq!(count_realizations(&b, &limits()).unwrap(), 1);
        let res = max_reciprocity_exact(&b, &limits()).unwrap();
        assert_eq!(res.rho_max, 0);
    }

    #[test]
    fn reciprocal_pair_is_forced() {
        let b = bs(&[1, 1], &[1, 1]);
        assert_eq!(count_realizations(&b, &limits()).unwrap(), 1);
        assert_eq!(max_reciprocity_exact(&b, &limits()).unwrap().rho_max, 2);
    }

    #[test]
    fn non_graphic_is_rejected() {
        let b = bs(&[1], &[1]);
        assert!(matches!(
            max_reciprocity_exact(&b, &limits()),
            Err(Error::NotGraphic)
        ));
    }

    #[test]
    fn size_limits_enforced() {
        let b = bs(&[1; 11], &[1; 11]);
        assert!(matches!(
            max_reciprocity_exact(&b, &limits()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let b = bs(&[2, 2, 2, 2], &[2, 2, 2, 2]);
        let mut tight = limits();
        tight.max_expansions = 3;
        match max_reciprocity_exact(&b, &tight) {
            Ok(res) => assert!(!res.exact),
            Err(Error::BudgetExhausted) => {}
            other => panic!("unexpected outcome: {other:?}"),
        }
    }

    #[test]
    fn witnesses_are_deterministic() {
        let b = bs(&[2, 2, 1, 1], &[1, 1, 2, 2]);
        let a = max_reciprocity_exact(&b, &limits()).unwrap();
        let c = max_reciprocity_exact(&b, &limits()).unwrap();
        assert_eq!(a.witness, c.witness);
        assert_eq!(a.rho_max % 2, 0);
    }
}
