//! Plain-text edge list: an optional `# order N` line, then one `u v` pair
//! per line, 0-indexed.

use std::fmt::Write;

use super::{Graph, GraphBuilder};
use crate::error::GraphError;

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the edge-list format. Without an `# order` line the order is one
/// more than the largest vertex mentioned.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(n) = rest.trim().strip_prefix("order") {
                let n = n.trim().parse::<usize>().map_err(|e| GraphError::EdgeList {
                    line: line_no,
                    reason: format!("bad order: {e}"),
                })?;
                order = Some(n);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut endpoint = || -> Result<usize, GraphError> {
            let tok = parts.next().ok_or_else(|| GraphError::EdgeList {
                line: line_no,
                reason: "expected two vertices".into(),
            })?;
            tok.parse().map_err(|e| GraphError::EdgeList {
                line: line_no,
                reason: format!("bad vertex `{tok}`: {e}"),
            })
        };
        let u = endpoint()?;
        let v = endpoint()?;
        if parts.next().is_some() {
            return Err(GraphError::EdgeList { line: line_no, reason: "more than two fields".into() });
        }
        edges.push((line_no, u, v));
    }
    let order = order.unwrap_or_else(|| edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut b = GraphBuilder::try_new(order)?;
    for (line, u, v) in edges {
        b.add_edge(u, v).map_err(|e| GraphError::EdgeList { line, reason: e.to_string() })?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_isolated_vertices() {
        let g = Graph::disjoint_union(&Graph::cycle(4), &Graph::empty(3));
        let text = to_edge_list(&g);
        assert!(text.starts_with("# order 7\n0 1\n"));
        assert_eq!(from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn infers_order() {
        let g = from_edge_list("0 1\n\n2 5\n").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(from_edge_list("0 1\n2\n"), Err(GraphError::EdgeList { line: 2, .. })));
        assert!(matches!(from_edge_list("# order 3\n0 7\n"), Err(GraphError::EdgeList { line: 2, .. })));
        assert!(matches!(from_edge_list("1 1\n"), Err(GraphError::EdgeList { line: 1, .. })));
        assert!(matches!(from_edge_list("0 x\n"), Err(GraphError::EdgeList { line: 1, .. })));
    }
}
