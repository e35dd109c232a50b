use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::constructors::degree_capped_graph;
use crate::error::ConstructError;
use crate::util::binom2;

/// Symbolic description of a witness graph.
///
/// `claimed_edges` is computed from the expression alone; `materialize`
/// builds the actual graph. The two must agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recipe {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Isolated(usize),
    /// Graph of the given order with maximum degree at most `max_degree` and
    /// the largest possible edge count, built from circulant differences.
    DegreeCapped { order: usize, max_degree: usize },
    /// `count` disjoint copies.
    Copies(usize, Box<Recipe>),
    Union(Vec<Recipe>),
    Join(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    /// `count` copies; a single copy is the recipe itself.
    pub fn copies(count: usize, of: Recipe) -> Recipe {
        match count {
            0 => Recipe::Isolated(0),
            1 => of,
            _ => Recipe::Copies(count, Box::new(of)),
        }
    }

    pub fn join(a: Recipe, b: Recipe) -> Recipe {
        Recipe::Join(Box::new(a), Box::new(b))
    }

    /// Union that drops parts without vertices and flattens nested unions.
    pub fn union(parts: impl IntoIterator<Item = Recipe>) -> Recipe {
        let mut flat = Vec::new();
        for part in parts {
            match part {
                Recipe::Union(inner) => flat.extend(inner),
                p if p.order() == 0 => {}
                p => flat.push(p),
            }
        }
        match flat.len() {
            0 => Recipe::Isolated(0),
            1 => flat.pop().unwrap(),
            _ => Recipe::Union(flat),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Recipe::Complete(a) | Recipe::Isolated(a) => *a,
            Recipe::CompleteBipartite(a, b) => a + b,
            Recipe::DegreeCapped { order, .. } => *order,
            Recipe::Copies(k, r) => k * r.order(),
            Recipe::Union(parts) => parts.iter().map(Recipe::order).sum(),
            Recipe::Join(a, b) => a.order() + b.order(),
        }
    }

    pub fn claimed_edges(&self) -> usize {
        match self {
            Recipe::Complete(a) => binom2(*a),
            Recipe::CompleteBipartite(a, b) => a * b,
            Recipe::Isolated(_) => 0,
            Recipe::DegreeCapped { order, max_degree } => {
                if *order <= max_degree + 1 {
                    binom2(*order)
                } else {
                    max_degree * order / 2
                }
            }
            Recipe::Copies(k, r) => k * r.claimed_edges(),
            Recipe::Union(parts) => parts.iter().map(Recipe::claimed_edges).sum(),
            Recipe::Join(a, b) => a.claimed_edges() + b.claimed_edges() + a.order() * b.order(),
        }
    }

    pub fn materialize(&self) -> Result<Graph, ConstructError> {
        Ok(match self {
            Recipe::Complete(a) => Graph::complete(*a),
            Recipe::CompleteBipartite(a, b) => Graph::complete_bipartite(*a, *b),
            Recipe::Isolated(a) => Graph::empty(*a),
            Recipe::DegreeCapped { order, max_degree } => degree_capped_graph(*order, *max_degree)?,
            Recipe::Copies(k, r) => {
                let one = r.materialize()?;
                (0..*k).fold(Graph::empty(0), |acc, _| Graph::disjoint_union(&acc, &one))
            }
            Recipe::Union(parts) => {
                let mut acc = Graph::empty(0);
                for part in parts {
                    acc = Graph::disjoint_union(&acc, &part.materialize()?);
                }
                acc
            }
            Recipe::Join(a, b) => Graph::complete_join(&a.materialize()?, &b.materialize()?),
        })
    }

    fn is_compound(&self) -> bool {
        matches!(self, Recipe::Union(_) | Recipe::Join(..))
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, r: &Recipe| {
            if r.is_compound() {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        };
        match self {
            Recipe::Complete(a) => write!(f, "K{a}"),
            Recipe::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            Recipe::Isolated(a) => write!(f, "{a}K1"),
            Recipe::DegreeCapped { order, max_degree } => write!(f, "D({order};{max_degree})"),
            Recipe::Copies(k, r) => {
                write!(f, "{k}")?;
                paren(f, r)
            }
            Recipe::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ∪ ")?;
                    }
                    paren(f, p)?;
                }
                Ok(())
            }
            Recipe::Join(a, b) => {
                paren(f, a)?;
                write!(f, " ∨ ")?;
                paren(f, b)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        let r = Recipe::union([Recipe::copies(2, Recipe::Complete(6)), Recipe::CompleteBipartite(4, 4)]);
        assert_eq!(r.to_string(), "2K6 ∪ K4,4");
        let j = Recipe::join(Recipe::Isolated(5), Recipe::union([Recipe::CompleteBipartite(3, 3), Recipe::Isolated(2)]));
        assert_eq!(j.to_string(), "5K1 ∨ (K3,3 ∪ 2K1)");
        assert_eq!(j.claimed_edges(), 49);
    }

    #[test]
    fn union_drops_empty_parts() {
        let r = Recipe::union([Recipe::Complete(0), Recipe::Complete(4), Recipe::copies(0, Recipe::Complete(6))]);
        assert_eq!(r, Recipe::Complete(4));
    }

    fn arb_recipe() -> impl Strategy<Value = Recipe> {
        let leaf = prop_oneof![
            (0usize..7).prop_map(Recipe::Complete),
            (0usize..5, 0usize..5).prop_map(|(a, b)| Recipe::CompleteBipartite(a, b)),
            (0usize..4).prop_map(Recipe::Isolated),
            (1usize..16, 0usize..8).prop_map(|(order, max_degree)| Recipe::DegreeCapped { order, max_degree }),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                (0usize..3, inner.clone()).prop_map(|(k, r)| Recipe::copies(k, r)),
                proptest::collection::vec(inner.clone(), 1..3).prop_map(Recipe::Union),
                (inner.clone(), inner).prop_map(|(a, b)| Recipe::join(a, b)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn materialized_edges_match_claim(r in arb_recipe()) {
            let g = r.materialize().unwrap();
            prop_assert_eq!(g.order(), r.order());
            prop_assert_eq!(g.edge_count(), r.claimed_edges());
        }
    }
}
