//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, read column by column and packed into 6-bit groups
//! offset by 63.

use super::{Graph, GraphBuilder};
use crate::error::GraphError;

const BIAS: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Encodes `g` without the optional `>>graph6<<` header or trailing newline.
pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

fn sextet(bytes: &[u8], pos: usize, offset: usize) -> Result<u8, GraphError> {
    match bytes.get(pos) {
        None => Err(GraphError::Graph6 { position: offset + pos, reason: "unexpected end of input" }),
        Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok(b - BIAS),
        Some(_) => Err(GraphError::Graph6 { position: offset + pos, reason: "byte outside 63..=126" }),
    }
}

/// Decodes one graph6 record. Accepts the optional `>>graph6<<` header and
/// a single trailing newline. Error positions index into `input`.
pub fn from_graph6(input: &[u8]) -> Result<Graph, GraphError> {
    let mut offset = 0;
    let mut bytes = input;
    if bytes.starts_with(HEADER) {
        offset = HEADER.len();
        bytes = &bytes[HEADER.len()..];
    }
    if let Some(stripped) = bytes.strip_suffix(b"\n") {
        bytes = stripped.strip_suffix(b"\r").unwrap_or(stripped);
    }

    let (n, mut pos) = match bytes.first() {
        None => return Err(GraphError::Graph6 { position: offset, reason: "empty input" }),
        Some(126) if bytes.get(1) == Some(&126) => {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | sextet(bytes, i, offset)? as usize;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sextet(bytes, i, offset)? as usize;
            }
            (n, 4)
        }
        Some(_) => (sextet(bytes, 0, offset)? as usize, 1),
    };

    let mut b = GraphBuilder::try_new(n)?;
    let body_len = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let body_end = pos + body_len;
    let mut bit = 0;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit == 0 {
                cur = sextet(bytes, pos, offset)?;
                pos += 1;
            }
            if (cur >> (5 - bit)) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            bit = (bit + 1) % 6;
        }
    }
    debug_assert_eq!(pos, body_end);
    if bytes.len() > body_end {
        return Err(GraphError::Graph6 { position: offset + body_end, reason: "trailing bytes after graph" });
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference strings produced by networkx.to_graph6_bytes(..., header=False).
    #[test]
    fn matches_reference_encoder() {
        assert_eq!(to_graph6(&Graph::path(4)), b"Ch");
        assert_eq!(to_graph6(&Graph::complete(4)), b"C~");
        assert_eq!(to_graph6(&Graph::empty(0)), b"?");
        assert_eq!(to_graph6(&Graph::complete_bipartite(4, 4)), b"G?~vf_");
    }

    #[test]
    fn long_header_form() {
        let g = Graph::path(70);
        let enc = to_graph6(&g);
        assert_eq!(&enc[..4], b"~?@E");
        assert_eq!(enc.len(), 4 + (70 * 69 / 2usize).div_ceil(6));
        assert_eq!(from_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn accepts_header_and_newline() {
        assert_eq!(from_graph6(b">>graph6<<C~\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn reports_first_invalid_byte() {
        assert_eq!(
            from_graph6(b"C!").unwrap_err(),
            GraphError::Graph6 { position: 1, reason: "byte outside 63..=126" }
        );
        assert_eq!(
            from_graph6(b">>graph6<<D").unwrap_err(),
            GraphError::Graph6 { position: 11, reason: "unexpected end of input" }
        );
        assert!(matches!(from_graph6(b"C~~"), Err(GraphError::Graph6 { position: 2, .. })));
        assert!(matches!(from_graph6(b""), Err(GraphError::Graph6 { position: 0, .. })));
    }

    fn arb_graph(max_p: usize) -> impl Strategy<Value = Graph> {
        (0..=max_p).prop_flat_map(|p| {
            let slots = p * p.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
                let mut b = GraphBuilder::new(p);
                let mut k = 0;
                for v in 1..p {
                    for u in 0..v {
                        if bits[k] {
                            b.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph(62)) {
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
