//! Graphicality tests and witness constructions.
//!
//! [`erdos_gallai`] decides whether an integer sequence is the degree
//! sequence of some simple undirected graph; [`fulkerson_chen_anstee`]
//! decides the directed analogue for a bi-sequence. Both come with a
//! verdict variant reporting the first violated inequality, and with
//! constructive counterparts ([`realize_undirected`], [`realize_digraph`])
//! that build a witness when the test passes.

use crate::bisequence::BiSequence;
use crate::digraph::{Digraph, NodeId};
use crate::error::{Error, Result};

/// A simple undirected graph with sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<u32>>,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> UndirectedGraph {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u.index()].binary_search(&v.0).is_ok()
    }

    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[u.index()].iter().copied().map(NodeId)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        let pos = self.adj[u].binary_search(&(v as u32)).unwrap_err();
        self.adj[u].insert(pos, v as u32);
        let pos = self.adj[v].binary_search(&(u as u32)).unwrap_err();
        self.adj[v].insert(pos, u as u32);
    }
}

/// Outcome of a graphicality test, keeping the first failed condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graphicality {
    Graphic,
    /// The degree total is odd (undirected test only).
    OddSum,
    /// The out- and in-degree totals differ (directed test only).
    UnequalSums,
    /// The first violated inequality, with `k` 1-based.
    ViolatedAt {
        k: usize,
    },
}

impl Graphicality {
    pub fn is_graphic(&self) -> bool {
        matches!(self, Graphicality::Graphic)
    }
}

/// True when `d` is the degree sequence of some simple undirected graph.
pub fn erdos_gallai(d: &[usize]) -> bool {
    erdos_gallai_verdict(d).is_graphic()
}

/// Erdős–Gallai test with the first violated condition.
///
/// Sorts a copy nonincreasingly; graphic iff the total is even and for
/// every `k`, the top-`k` degrees fit within `k(k-1)` internal slots plus
/// what the remaining nodes can absorb.
pub fn erdos_gallai_verdict(d: &[usize]) -> Graphicality {
    let n = d.len();
    if n == 0 {
        return Graphicality::Graphic;
    }
    let odd = d.iter().fold(false, |acc, &x| acc ^ (x % 2 == 1));
    if odd {
        return Graphicality::OddSum;
    }
    let mut s = d.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    if s[0] >= n {
        // A degree of n or more cannot fit in a simple graph on n nodes.
        return Graphicality::ViolatedAt { k: 1 };
    }
    // count_ge[k] = number of entries >= k, for k in 0..=n.
    let mut count_ge = vec![0usize; n + 2];
    for &x in &s {
        count_ge[x.min(n)] += 1;
    }
    for k in (0..=n).rev() {
        count_ge[k] += count_ge[k + 1];
    }
    let mut suffix_sum = vec![0usize; n + 1];
    for i in (0..n).rev() {
        suffix_sum[i] = suffix_sum[i + 1] + s[i];
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += s[k - 1];
        // Entries after position k that are >= k contribute k each; the
        // smaller tail contributes its raw values.
        let big = count_ge[k].max(k);
        let rhs = k * (k - 1) + k * (big - k) + suffix_sum[big];
        if prefix > rhs {
            return Graphicality::ViolatedAt { k };
        }
    }
    Graphicality::Graphic
}

/// True when `bs` is the degree bi-sequence of some simple digraph.
pub fn fulkerson_chen_anstee(bs: &BiSequence) -> bool {
    fulkerson_chen_anstee_verdict(bs).is_graphic()
}

/// Fulkerson–Chen–Anstee test with the first violated condition.
///
/// Pairs are sorted by out-degree descending, ties by in-degree
/// descending, so the verdict and the realizer are reproducible.
pub fn fulkerson_chen_anstee_verdict(bs: &BiSequence) -> Graphicality {
    let n = bs.len();
    if n == 0 {
        return Graphicality::Graphic;
    }
    if bs.sum_out() != bs.sum_in() {
        return Graphicality::UnequalSums;
    }
    let mut pairs: Vec<(usize, usize)> = bs
        .d_plus()
        .iter()
        .copied()
        .zip(bs.d_minus().iter().copied())
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    if pairs[0].0 >= n {
        return Graphicality::ViolatedAt { k: 1 };
    }
    for k in 1..=n {
        let lhs: usize = pairs[..k].iter().map(|p| p.0).sum();
        let head: usize = pairs[..k].iter().map(|p| p.1.min(k - 1)).sum();
        let tail: usize = pairs[k..].iter().map(|p| p.1.min(k)).sum();
        if lhs > head + tail {
            return Graphicality::ViolatedAt { k };
        }
    }
    Graphicality::Graphic
}

/// Builds an undirected witness for a graphic sequence, Havel–Hakimi
/// style: repeatedly satisfy the node of largest residual degree by
/// connecting it to the next-largest residuals.
///
/// The witness realizes `d` index by index.
pub fn realize_undirected(d: &[usize]) -> Result<UndirectedGraph> {
    if !erdos_gallai(d) {
        return Err(Error::NotGraphic);
    }
    let n = d.len();
    let mut residual: Vec<usize> = d.to_vec();
    let mut g = UndirectedGraph::empty(n);
    while let Some(v) = (0..n)
        .filter(|&v| residual[v] > 0)
        .max_by_key(|&v| (residual[v], std::cmp::Reverse(v)))
    {
        let need = residual[v];
        residual[v] = 0;
        let mut targets: Vec<usize> = (0..n).filter(|&w| w != v && residual[w] > 0).collect();
        targets.sort_by_key(|&w| (std::cmp::Reverse(residual[w]), w));
        assert!(targets.len() >= need, "graphic sequence ran out of targets");
        for &w in &targets[..need] {
            residual[w] -= 1;
            g.add_edge(v, w);
        }
    }
    debug_assert_eq!(g.degree_sequence(), d);
    Ok(g)
}

/// Builds a digraph witness for a graphic bi-sequence.
///
/// Kleitman–Wang schedule: repeatedly pick the node with largest residual
/// out-degree (ties by larger residual in-degree, then smaller index) and
/// point it at the nodes of lexicographically largest residual
/// (in-degree, out-degree) other than itself, final ties by smaller
/// index. The out-degree tie-break on targets is load-bearing: breaking
/// in-degree ties by index alone strands high-out-degree nodes whose
/// remaining in-capacity sits on themselves (first such failure:
/// out (0,0,1,2), in (1,1,1,0)).
pub fn realize_digraph(bs: &BiSequence) -> Result<Digraph> {
    if !fulkerson_chen_anstee(bs) {
        return Err(Error::NotGraphic);
    }
    let n = bs.len();
    let mut r_out: Vec<usize> = bs.d_plus().to_vec();
    let mut r_in: Vec<usize> = bs.d_minus().to_vec();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(bs.sum_out() as usize);
    while let Some(v) = (0..n)
        .filter(|&v| r_out[v] > 0)
        .max_by_key(|&v| (r_out[v], r_in[v], std::cmp::Reverse(v)))
    {
        let need = r_out[v];
        r_out[v] = 0;
        let mut targets: Vec<usize> = (0..n).filter(|&w| w != v && r_in[w] > 0).collect();
        targets.sort_by_key(|&w| (std::cmp::Reverse(r_in[w]), std::cmp::Reverse(r_out[w]), w));
        assert!(
            targets.len() >= need,
            "graphic bi-sequence ran out of targets"
        );
        for &w in &targets[..need] {
            r_in[w] -= 1;
            edges.push((NodeId(v as u32), NodeId(w as u32)));
        }
    }
    let g = Digraph::from_edges(n, edges)?;
    debug_assert_eq!(&g.bi_sequence(), bs);
    Ok(g)
}
