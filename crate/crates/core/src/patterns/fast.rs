use super::{contains, TreePattern, Variant};
use crate::graph::Graph;

/// A host whose adjacency is available as bit rows.
pub trait BitRows {
    fn order(&self) -> usize;
    fn row(&self, v: usize) -> &[u64];

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl BitRows for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn row(&self, v: usize) -> &[u64] {
        Graph::row(self, v)
    }

    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }
}

/// Same answer as [`contains`], decided by counting instead of search for
/// stars, brooms and spiders. Paths use the general embedder.
pub fn contains_fast(g: &Graph, pattern: &TreePattern) -> bool {
    if g.order() < pattern.order() {
        return false;
    }
    counting_check(g, pattern).unwrap_or_else(|| contains(g, pattern))
}

/// The counting decision for stars, brooms and spiders; `None` for paths.
pub fn counting_check<G: BitRows>(g: &G, pattern: &TreePattern) -> Option<bool> {
    let n = pattern.order();
    if g.order() < n {
        return Some(false);
    }
    match pattern.variant() {
        Variant::Star => Some((0..g.order()).any(|v| g.degree(v) + 1 >= n)),
        Variant::Broom => Some(has_broom(g, n)),
        Variant::Spider => Some(has_spider(g, n)),
        Variant::Path => None,
    }
}

fn bit(row: &[u64], v: usize) -> bool {
    row[v / 64] >> (v % 64) & 1 == 1
}

/// Is there a vertex in `row` outside `exclude` and other than `skip`?
fn any_outside(row: &[u64], exclude: Option<&[u64]>, skip: &[usize]) -> bool {
    let mut extra = 0usize;
    for &s in skip {
        if bit(row, s) && exclude.map_or(true, |ex| !bit(ex, s)) {
            extra += 1;
        }
    }
    let count: usize = match exclude {
        Some(ex) => row.iter().zip(ex).map(|(a, b)| (a & !b).count_ones() as usize).sum(),
        None => row.iter().map(|a| a.count_ones() as usize).sum(),
    };
    count > extra
}

// Center c with an edge cu and w ∈ Γ(u)\{c} leaving n-3 further neighbors of c.
fn has_broom<G: BitRows>(g: &G, n: usize) -> bool {
    for c in 0..g.order() {
        let dc = g.degree(c);
        if dc + 2 < n {
            continue;
        }
        let rc = g.row(c);
        for u in g.neighbors(c) {
            let ru = g.row(u);
            // |Γ(c)\{u,w}| = dc - 1 - [w ∈ Γ(c)]
            let found = if dc >= n - 1 {
                any_outside(ru, None, &[c])
            } else {
                any_outside(ru, Some(rc), &[c])
            };
            if found {
                return true;
            }
        }
    }
    false
}

// Center c with a path c-u-w-x leaving n-4 further neighbors of c.
fn has_spider<G: BitRows>(g: &G, n: usize) -> bool {
    for c in 0..g.order() {
        let dc = g.degree(c);
        if dc + 3 < n {
            continue;
        }
        // |Γ(c)\{u,w,x}| = dc - 1 - [w ∈ Γ(c)] - [x ∈ Γ(c)] must reach n-4
        let slack = dc + 3 - n;
        let rc = g.row(c);
        for u in g.neighbors(c) {
            for w in g.neighbors(u) {
                if w == c {
                    continue;
                }
                let w_inside = bit(rc, w) as usize;
                if w_inside > slack {
                    continue;
                }
                let rw = g.row(w);
                let found = if slack - w_inside >= 1 {
                    any_outside(rw, None, &[c, u])
                } else {
                    any_outside(rw, Some(rc), &[c, u])
                };
                if found {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_embedder_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let p = rng.gen_range(1..=10);
            let density: f64 = rng.gen();
            let mut b = GraphBuilder::new(p);
            for u in 0..p {
                for v in u + 1..p {
                    if rng.gen_bool(density) {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
            let g = b.build();
            for variant in [Variant::Star, Variant::Broom, Variant::Spider] {
                let n = rng.gen_range(variant.min_order()..=p.max(variant.min_order()) + 1);
                let pat = TreePattern::new(variant, n).unwrap();
                assert_eq!(contains_fast(&g, &pat), contains(&g, &pat), "{pat} in {g:?}");
            }
        }
    }

    #[test]
    fn spider_needs_outside_tail() {
        // K_5 plus a pendant path 4-5-6 hanging off vertex 4
        let mut b = GraphBuilder::new(7);
        for (u, v) in Graph::complete(5).edges() {
            b.add_edge(u, v).unwrap();
        }
        b.add_edge(4, 5).unwrap();
        b.add_edge(5, 6).unwrap();
        let g = b.build();
        let s7 = TreePattern::spider(7).unwrap();
        assert_eq!(contains_fast(&g, &s7), contains(&g, &s7));
        assert!(contains_fast(&g, &s7));
    }
}
