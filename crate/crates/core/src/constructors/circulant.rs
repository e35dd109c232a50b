//! Graphs of order p with maximum degree at most n-2 and ⌊(n-2)p/2⌋ edges.
//!
//! For even p the graph is a circulant on {1, …, p} with differences
//! {1, p-1, k, k±1, …}, minus a perfect matching when n is even. For odd p
//! an (n-2)-regular graph on p+1 vertices is built first and one vertex is
//! removed, its neighbors being re-paired by a short list of edge swaps.
//! Labels below are 1-based to match that description; the builder index of
//! label `i` is `i - 1`.

use crate::error::ConstructError;
use crate::graph::{Graph, GraphBuilder};

fn audit_err(msg: String) -> ConstructError {
    ConstructError::Audit(msg)
}

struct Labeled {
    b: GraphBuilder,
}

impl Labeled {
    fn new(order: usize) -> Labeled {
        Labeled { b: GraphBuilder::new(order) }
    }

    fn add(&mut self, i: usize, j: usize) -> Result<(), ConstructError> {
        if self.b.add_edge(i - 1, j - 1)? {
            Ok(())
        } else {
            Err(audit_err(format!("edge {i}{j} added twice")))
        }
    }

    fn remove(&mut self, i: usize, j: usize) -> Result<(), ConstructError> {
        if self.b.remove_edge(i - 1, j - 1)? {
            Ok(())
        } else {
            Err(audit_err(format!("edge {i}{j} missing before removal")))
        }
    }

    fn drop_label_one(mut self) -> Result<GraphBuilder, ConstructError> {
        self.b.remove_vertex(0)?;
        Ok(self.b)
    }
}

/// Vertices {1..2k}, edge ij (i < j) iff j-i ∈ {1, 2k-1, k-t, …, k+t}.
fn circulant(k: usize, t: usize) -> Result<Labeled, ConstructError> {
    let order = 2 * k;
    let mut g = Labeled::new(order);
    for i in 1..=order {
        for j in i + 1..=order {
            let d = j - i;
            if d == 1 || d == order - 1 || (d + t >= k && d <= k + t) {
                g.add(i, j)?;
            }
        }
    }
    Ok(g)
}

/// (n-2)-regular graph on 2k vertices for even n: the circulant with
/// t = (n-4)/2 minus the matching {12, 34, …, (2k-1)(2k)}.
fn even_order_even_n(k: usize, n: usize) -> Result<Labeled, ConstructError> {
    let mut g = circulant(k, (n - 4) / 2)?;
    for i in 1..=k {
        g.remove(2 * i - 1, 2 * i)?;
    }
    Ok(g)
}

/// (n-2)-regular graph of odd order p = 2k-1 for even n, returned on labels
/// {1..2k} with label 1 isolated.
fn odd_order_even_n(k: usize, n: usize) -> Result<Labeled, ConstructError> {
    let p = 2 * k - 1;
    if p + 1 == n {
        // (n-2) = p-1: the complete graph on labels 2..2k
        let mut g = Labeled::new(2 * k);
        for i in 2..=2 * k {
            for j in i + 1..=2 * k {
                g.add(i, j)?;
            }
        }
        return Ok(g);
    }
    let mut g = even_order_even_n(k, n)?;
    let half = n / 2;
    // neighbors of label 1: v_1..v_{n-3} consecutive from k - n/2 + 3, then v_{n-2} = 2k
    let v = |i: usize| if i == n - 2 { 2 * k } else { k + 2 + i - half };
    for i in 1..=n - 2 {
        g.remove(1, v(i))?;
    }
    if (k - half) % 2 == 0 {
        for i in (1..=n - 5).step_by(2) {
            g.add(v(i), v(i + 1))?;
        }
        g.add(v(n - 3), v(n - 2))?;
    } else {
        for i in (2..=n - 4).step_by(2) {
            g.add(v(i), v(i + 1))?;
        }
        g.remove(2, 3)?;
        g.add(3, v(1))?;
        g.add(2, v(n - 2))?;
    }
    Ok(g)
}

/// The degree-capped extremal graph on `p` vertices avoiding K_{1,n-1}.
/// Requires `p ≥ n - 1 ≥ 1`.
pub(crate) fn star_free_graph(p: usize, n: usize) -> Result<Graph, ConstructError> {
    if n < 2 || p + 1 < n {
        return Err(ConstructError::OutOfRange(format!("star-free construction needs p ≥ n-1 ≥ 1, got p={p}, n={n}")));
    }
    if p + 1 == n {
        return Ok(Graph::complete(p));
    }
    let g = match n {
        2 => Graph::empty(p),
        3 => {
            let mut b = GraphBuilder::new(p);
            for i in 0..p / 2 {
                b.add_edge(2 * i, 2 * i + 1)?;
            }
            b.build()
        }
        4 => Graph::cycle(p),
        _ => {
            let k = p.div_ceil(2);
            match (p % 2, n % 2) {
                (0, 1) => circulant(k, (n - 5) / 2)?.b.build(),
                (0, _) => even_order_even_n(k, n)?.b.build(),
                (_, 0) => odd_order_even_n(k, n)?.drop_label_one()?.build(),
                _ => {
                    // (n-1)-regular graph of order p, then a matching M1 removed
                    let mut g = odd_order_even_n(k, n + 1)?;
                    let half = (n + 1) / 2;
                    if (k - half) % 2 == 0 {
                        for i in (2..=2 * k - 2).step_by(2) {
                            g.remove(i, i + 1)?;
                        }
                        g.remove(k, 2 * k)?;
                    } else {
                        g.remove(2, 2 * k)?;
                        g.remove(3, k + 3 - half)?;
                        for i in (4..=2 * k - 2).step_by(2) {
                            g.remove(i, i + 1)?;
                        }
                    }
                    g.drop_label_one()?.build()
                }
            }
        }
    };
    let want = (n - 2) * p / 2;
    if g.order() != p || g.edge_count() != want || g.max_degree() > n - 2 {
        return Err(audit_err(format!(
            "star-free graph p={p}, n={n}: order {}, {} edges (want {want}), max degree {} (cap {})",
            g.order(),
            g.edge_count(),
            g.max_degree(),
            n - 2
        )));
    }
    Ok(g)
}

/// Graph on `order` vertices with maximum degree ≤ `max_degree` and as many
/// edges as that allows.
pub fn degree_capped_graph(order: usize, max_degree: usize) -> Result<Graph, ConstructError> {
    if order <= max_degree + 1 {
        return Ok(Graph::complete(order));
    }
    star_free_graph(order, max_degree + 2)
}
