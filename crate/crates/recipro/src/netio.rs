//! Edge-list ingestion and per-network report rows.
//!
//! Input files are plain text: `#`-prefixed comment lines, otherwise two
//! whitespace-separated labels per line meaning a directed edge.
//! Self-loops and repeated pairs are dropped (and counted); labels are
//! assigned dense node ids in first-appearance order.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::bounds::upper_bound;
use crate::digraph::{Digraph, NodeId};
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::rewire::AuditReport;

/// Bijection between original labels and dense node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, u32>,
}

impl LabelMap {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied().map(NodeId)
    }

    fn intern(&mut self, label: &str) -> u32 {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }
}

/// What ingestion skipped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub comment_lines: usize,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

/// A parsed edge list: the graph, its label map, and skip counts.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Digraph,
    pub labels: LabelMap,
    pub stats: ParseStats,
}

/// Parses an edge list. Empty input yields the empty graph.
///
/// Fails with [`Error::MalformedLine`] on any non-comment, non-blank line
/// that does not hold exactly two labels.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedGraph> {
    let mut labels = LabelMap::default();
    let mut stats = ParseStats::default();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: std::collections::HashSet<(u32, u32)> = std::collections::HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            stats.comment_lines += 1;
            continue;
        }
        let mut tokens = text.split_whitespace();
        let (first, second) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(Error::MalformedLine { line: idx + 1 }),
        };
        let u = labels.intern(first);
        let v = labels.intern(second);
        if u == v {
            stats.self_loops_dropped += 1;
            continue;
        }
        if !seen.insert((u, v)) {
            stats.duplicate_edges_dropped += 1;
            continue;
        }
        edges.push((u, v));
    }
    let graph = Digraph::from_edges(
        labels.len(),
        edges.into_iter().map(|(u, v)| (NodeId(u), NodeId(v))),
    )
    .expect("deduplicated edges build a simple digraph");
    Ok(ParsedGraph {
        graph,
        labels,
        stats,
    })
}

/// Writes the graph as an edge list using the original labels, sources in
/// dense-id order and targets ascending.
pub fn write_edge_list<W: Write>(mut w: W, g: &Digraph, labels: &LabelMap) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", labels.label(u), labels.label(v))?;
    }
    Ok(())
}

/// One row of the batch analysis report.
#[derive(Debug, Clone)]
pub struct AnalysisRecord {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub rho: usize,
    pub reciprocity: Ratio,
    pub beta: usize,
    /// Bound normalized by the edge count.
    pub bound_ratio: Ratio,
    pub nu: usize,
    /// Reciprocity relative to the normalized bound (zero when the bound
    /// itself is zero).
    pub reciprocity_over_bound: Ratio,
    pub rewired_rho: usize,
    pub rewired_reciprocity: Ratio,
    pub rewired_over_bound: Ratio,
    pub ga_acyclic: bool,
    pub min_graphic: bool,
    pub max_graphic: bool,
}

/// Column order of [`AnalysisRecord::csv_row`].
pub const CSV_HEADER: &str = "name,nodes,edges,rho,reciprocity,beta,bound_ratio,nu,\
reciprocity_over_bound,rewired_rho,rewired_reciprocity,rewired_over_bound,ga_acyclic,\
min_graphic,max_graphic";

impl AnalysisRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.name,
            self.nodes,
            self.edges,
            self.rho,
            self.reciprocity,
            self.beta,
            self.bound_ratio,
            self.nu,
            self.reciprocity_over_bound,
            self.rewired_rho,
            self.rewired_reciprocity,
            self.rewired_over_bound,
            self.ga_acyclic,
            self.min_graphic,
            self.max_graphic,
        )
    }
}

/// Builds the report row for a graph and its rewired counterpart.
///
/// `rewired` must come from `greedy_rewire(g)` and `audit` from a
/// structural audit of `rewired`.
pub fn build_record(
    name: &str,
    g: &Digraph,
    rewired: &Digraph,
    audit: &AuditReport,
) -> Result<AnalysisRecord> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let bs = g.bi_sequence();
    assert_eq!(
        rewired.bi_sequence(),
        bs,
        "rewired graph must preserve the bi-sequence"
    );
    let report = upper_bound(&bs).expect("realized graphs have balanced sums");
    let rho = g.rho();
    let rewired_rho = rewired.rho();
    assert!(rewired_rho >= rho, "rewiring never loses reciprocity");
    assert!(rewired_rho <= report.beta, "bound violated by rewiring");
    let over_bound = |value: usize| {
        if report.beta == 0 {
            Ratio::zero()
        } else {
            Ratio::new(value as u64, report.beta as u64)
        }
    };
    Ok(AnalysisRecord {
        name: name.to_string(),
        nodes: g.node_count(),
        edges: m,
        rho,
        reciprocity: Ratio::new(rho as u64, m as u64),
        beta: report.beta,
        bound_ratio: Ratio::new(report.beta as u64, m as u64),
        nu: report.epsilon - report.beta,
        reciprocity_over_bound: over_bound(rho),
        rewired_rho,
        rewired_reciprocity: Ratio::new(rewired_rho as u64, m as u64),
        rewired_over_bound: over_bound(rewired_rho),
        ga_acyclic: audit.ga_acyclic,
        min_graphic: report.min_graphic,
        max_graphic: report.max_graphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewire::{greedy_rewire, structural_audit};

    fn parse(text: &str) -> ParsedGraph {
        parse_edge_list(text.as_bytes()).unwrap()
    }

    #[test]
    fn parses_comments_and_reciprocal_pair() {
        let parsed = parse("# c\n0 1\n1 0\n");
        assert_eq!(parsed.graph.node_count(), 2);
        assert_eq!(parsed.graph.rho(), 2);
        assert_eq!(parsed.stats.comment_lines, 1);
    }

    #[test]
    fn drops_duplicates_and_self_loops() {
        let parsed = parse("a b\na b\na a\n");
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.stats.duplicate_edges_dropped, 1);
        assert_eq!(parsed.stats.self_loops_dropped, 1);
        assert_eq!(parsed.labels.label(NodeId(0)), "a");
        assert_eq!(parsed.labels.label(NodeId(1)), "b");
    }

    #[test]
    fn malformed_line_reports_position() {
        let err = parse_edge_list("0 1\n0 1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 2 }));
        let err = parse_edge_list("lonely\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 1 }));
    }

    #[test]
    fn empty_input_is_the_empty_graph() {
        let parsed = parse("");
        assert_eq!(parsed.graph.node_count(), 0);
        assert_eq!(parsed.graph.edge_count(), 0);
    }

    #[test]
    fn accepts_tabs_and_crlf() {
        let parsed = parse("x\ty\r\ny  x\r\n");
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(parsed.graph.rho(), 2);
    }

    #[test]
    fn parsing_is_deterministic() {
        let text = "# c\nb a\na c\nc b\nb c\nb a\n";
        let first = parse(text);
        let second = parse(text);
        assert_eq!(first.graph, second.graph);
        assert_eq!(first.labels, second.labels);
        assert_eq!(first.stats, second.stats);
    }

    #[test]
    fn round_trip_preserves_labeled_edges() {
        let parsed = parse("# header\nb a\na c\nc b\nb c\n");
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &parsed.graph, &parsed.labels).unwrap();
        let reparsed = parse_edge_list(buf.as_slice()).unwrap();
        assert_eq!(reparsed.graph.edge_count(), parsed.graph.edge_count());
        assert_eq!(reparsed.graph.node_count(), parsed.graph.node_count());
        for (u, v) in parsed.graph.edges() {
            let ru = reparsed.labels.id(parsed.labels.label(u)).unwrap();
            let rv = reparsed.labels.id(parsed.labels.label(v)).unwrap();
            assert!(reparsed.graph.has_edge(ru, rv));
        }
    }

    #[test]
    fn record_for_reciprocal_pair() {
        let parsed = parse("0 1\n1 0\n");
        let (rewired, _) = greedy_rewire(&parsed.graph);
        let audit = structural_audit(&rewired, 0);
        let record = build_record("pair", &parsed.graph, &rewired, &audit).unwrap();
        assert_eq!(record.reciprocity, Ratio::new(1, 1));
        assert_eq!(record.bound_ratio, Ratio::new(1, 1));
        assert_eq!(record.reciprocity_over_bound, Ratio::new(1, 1));
        assert!(record.ga_acyclic);
    }

    #[test]
    fn record_for_four_cycle() {
        let parsed = parse("0 1\n1 2\n2 3\n3 0\n");
        let (rewired, _) = greedy_rewire(&parsed.graph);
        let audit = structural_audit(&rewired, 0);
        let record = build_record("cycle4", &parsed.graph, &rewired, &audit).unwrap();
        assert_eq!(record.reciprocity, Ratio::zero());
        assert_eq!(record.bound_ratio, Ratio::new(1, 1));
        assert_eq!(record.rewired_reciprocity, Ratio::new(1, 1));
    }

    #[test]
    fn record_for_middleman_has_no_slack() {
        // Sources into a hub and out to sinks: the bi-sequence allows no
        // reciprocity at all, so rewiring changes nothing.
        let parsed = parse("s1 h\ns2 h\nh t1\nh t2\n");
        let (rewired, _) = greedy_rewire(&parsed.graph);
        let audit = structural_audit(&rewired, 0);
        let record = build_record("middleman", &parsed.graph, &rewired, &audit).unwrap();
        assert_eq!(record.reciprocity, Ratio::zero());
        assert_eq!(record.bound_ratio, Ratio::new(1, 2));
        assert_eq!(record.rewired_reciprocity, Ratio::zero());
    }

    #[test]
    fn record_rejects_empty_graph() {
        let parsed = parse("");
        let (rewired, _) = greedy_rewire(&parsed.graph);
        let audit = structural_audit(&rewired, 0);
        assert!(matches!(
            build_record("empty", &parsed.graph, &rewired, &audit),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn csv_row_shape_matches_header() {
        let parsed = parse("0 1\n1 0\n");
        let (rewired, _) = greedy_rewire(&parsed.graph);
        let audit = structural_audit(&rewired, 0);
        let record = build_record("pair", &parsed.graph, &rewired, &audit).unwrap();
        let row = record.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("pair,2,2,2,1.000000000,"));
    }
}
