//! Simple directed graphs on dense integer node ids.
//!
//! A [`Digraph`] stores per-node sorted out-neighbor lists plus cached
//! degree counts, so edge membership costs a binary search. Values are
//! immutable through the public API and can be shared freely across
//! threads; the rewiring machinery mutates private working copies.

use std::fmt;

use crate::bisequence::BiSequence;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Identifier of a node in a [`Digraph`].
///
/// Ids are dense: a graph on `n` nodes uses exactly the ids `0..n`.
/// External labels, if any, live in the ingestion layer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(id: u32) -> NodeId {
        NodeId(id)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeId({})", self.0)
    }
}

/// A simple digraph: no self-loops, no duplicate edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    /// Sorted out-neighbors per node.
    out_adj: Vec<Vec<u32>>,
    /// Cached in-degrees.
    in_deg: Vec<u32>,
    /// Edge count.
    m: usize,
}

impl Digraph {
    /// A graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Digraph {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_deg: vec![0; n],
            m: 0,
        }
    }

    /// Builds a graph on `n` nodes from ordered edge pairs.
    ///
    /// Rejects out-of-range endpoints, self-loops and duplicate pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            for id in [u, v] {
                if id.index() >= n {
                    return Err(Error::NodeOutOfRange { id: id.0, nodes: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { id: u.0 });
            }
            g.out_adj[u.index()].push(v.0);
            g.in_deg[v.index()] += 1;
            g.m += 1;
        }
        for (u, row) in g.out_adj.iter_mut().enumerate() {
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge {
                    from: u as u32,
                    to: w[0],
                });
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.out_adj.len() as u32).map(NodeId)
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_deg[v.index()] as usize
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.out_adj[u.index()].binary_search(&v.0).is_ok()
    }

    pub fn out_neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.out_adj[u.index()].iter().copied().map(NodeId)
    }

    /// All edges in (source, target) order, sources ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&v| (NodeId(u as u32), NodeId(v))))
    }

    /// True when `(u, v)` is present and reciprocated.
    pub fn in_symmetric(&self, u: NodeId, v: NodeId) -> bool {
        self.has_edge(u, v) && self.has_edge(v, u)
    }

    /// True when `(u, v)` is present but its reverse is not.
    pub fn in_antisymmetric(&self, u: NodeId, v: NodeId) -> bool {
        self.has_edge(u, v) && !self.has_edge(v, u)
    }

    /// Splits the edge set into the symmetric part (edges whose reverse is
    /// also present) and the anti-symmetric part (edges whose reverse is
    /// absent). Every edge lands in exactly one part.
    pub fn decompose(&self) -> (EdgeSet, EdgeSet) {
        let mut symmetric = Vec::new();
        let mut antisymmetric = Vec::new();
        for (u, v) in self.edges() {
            if self.has_edge(v, u) {
                symmetric.push((u, v));
            } else {
                antisymmetric.push((u, v));
            }
        }
        (
            EdgeSet { edges: symmetric },
            EdgeSet {
                edges: antisymmetric,
            },
        )
    }

    /// Number of reciprocated edges. Each mutual pair contributes two.
    pub fn rho(&self) -> usize {
        self.edges().filter(|&(u, v)| self.has_edge(v, u)).count()
    }

    /// Fraction of edges that are reciprocated, as an exact ratio.
    pub fn reciprocity(&self) -> Result<Ratio> {
        if self.m == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Ratio::new(self.rho() as u64, self.m as u64))
    }

    /// The paired out-/in-degree sequences of this graph.
    pub fn bi_sequence(&self) -> BiSequence {
        let d_plus: Vec<usize> = self.out_adj.iter().map(Vec::len).collect();
        let d_minus: Vec<usize> = self.in_deg.iter().map(|&d| d as usize).collect();
        BiSequence::new(d_plus, d_minus).expect("degree sequences have equal length")
    }

    /// Inserts an edge that must not already exist. Internal to rewiring.
    pub(crate) fn add_edge(&mut self, u: NodeId, v: NodeId) {
        assert!(u != v, "rewiring introduced a self-loop at {u}");
        let row = &mut self.out_adj[u.index()];
        match row.binary_search(&v.0) {
            Ok(_) => panic!("rewiring introduced a duplicate edge ({u}, {v})"),
            Err(pos) => row.insert(pos, v.0),
        }
        self.in_deg[v.index()] += 1;
        self.m += 1;
    }

    /// Removes an edge that must exist. Internal to rewiring.
    pub(crate) fn remove_edge(&mut self, u: NodeId, v: NodeId) {
        let row = &mut self.out_adj[u.index()];
        match row.binary_search(&v.0) {
            Ok(pos) => {
                row.remove(pos);
            }
            Err(_) => panic!("rewiring removed a missing edge ({u}, {v})"),
        }
        self.in_deg[v.index()] -= 1;
        self.m -= 1;
    }

    /// Exhaustive structural check, used by tests and debug assertions.
    pub(crate) fn check_invariants(&self) {
        let n = self.node_count();
        let mut in_deg = vec![0u32; n];
        let mut m = 0usize;
        for (u, row) in self.out_adj.iter().enumerate() {
            assert!(row.windows(2).all(|w| w[0] < w[1]), "adjacency unsorted");
            for &v in row {
                assert!((v as usize) < n, "neighbor out of range");
                assert!(v as usize != u, "self-loop");
                in_deg[v as usize] += 1;
                m += 1;
            }
        }
        assert_eq!(in_deg, self.in_deg, "cached in-degrees stale");
        assert_eq!(m, self.m, "cached edge count stale");
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.node_count(), self.m)
    }
}

/// An ordered collection of directed edges, used for the symmetric and
/// anti-symmetric parts of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<(NodeId, NodeId)>,
}

impl EdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.binary_search(&(u, v)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }
}
