//! Extremal witness graphs: for each family and order `p`, a graph that
//! avoids the family and has exactly as many edges as the closed form.
//!
//! Every witness is described by a [`Recipe`] and materialized. With
//! [`Audit::Full`] (the default used by the convenience functions) the
//! result is checked before it is returned: the edge count must equal the
//! formula, the recipe's symbolic count must equal the graph's, and the
//! graph must avoid the pattern.

mod circulant;

pub use circulant::degree_capped_graph;

use serde::Serialize;

use crate::error::ConstructError;
use crate::formulas::{ex_mixed, ex_pattern, mixed_is_base};
use crate::graph::{Graph, Recipe};
use crate::patterns::{contains, contains_fast, TreePattern, Variant};
use crate::util::split;

/// Graphs up to this order are additionally checked with the general embedder.
const EMBEDDER_AUDIT_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Audit {
    #[default]
    Full,
    Off,
}

/// A witness graph together with the recipe it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub recipe: Recipe,
    #[serde(skip)]
    pub graph: Graph,
}

impl Witness {
    fn build(recipe: Recipe) -> Result<Witness, ConstructError> {
        let graph = recipe.materialize()?;
        Ok(Witness { recipe, graph })
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

fn audit_failure(msg: String) -> ConstructError {
    ConstructError::Audit(msg)
}

fn audit_shape(w: &Witness, p: usize, want_edges: u64, what: &str) -> Result<(), ConstructError> {
    if w.graph.order() != p {
        return Err(audit_failure(format!("{what}: order {} instead of {p}", w.graph.order())));
    }
    if w.recipe.claimed_edges() != w.graph.edge_count() {
        return Err(audit_failure(format!(
            "{what}: recipe {} claims {} edges, graph has {}",
            w.recipe,
            w.recipe.claimed_edges(),
            w.graph.edge_count()
        )));
    }
    if w.graph.edge_count() as u64 != want_edges {
        return Err(audit_failure(format!("{what}: {} edges, formula says {want_edges}", w.graph.edge_count())));
    }
    Ok(())
}

fn audit_avoids(w: &Witness, pattern: &TreePattern, what: &str) -> Result<(), ConstructError> {
    let hit = contains_fast(&w.graph, pattern)
        || (w.graph.order() <= EMBEDDER_AUDIT_MAX_ORDER && contains(&w.graph, pattern));
    if hit {
        return Err(audit_failure(format!("{what}: {} contains {pattern}", w.recipe)));
    }
    Ok(())
}

fn cliques_recipe(k: usize, n: usize, r: usize) -> Recipe {
    Recipe::union([Recipe::copies(k, Recipe::Complete(n - 1)), Recipe::Complete(r)])
}

fn larger(a: Recipe, b: Recipe) -> Recipe {
    if b.claimed_edges() > a.claimed_edges() {
        b
    } else {
        a
    }
}

/// The symbolic witness for ex(p; pattern), without building the graph.
pub fn witness_recipe(pattern: &TreePattern, p: usize) -> Result<Recipe, ConstructError> {
    let n = pattern.order();
    if p < n {
        return Ok(Recipe::Complete(p));
    }
    let (k, r) = split(p, n - 1);
    Ok(match pattern.variant() {
        Variant::Star => Recipe::DegreeCapped { order: p, max_degree: n - 2 },
        Variant::Path => cliques_recipe(k, n, r),
        Variant::Broom if n == 4 => cliques_recipe(k, n, r),
        Variant::Broom if n >= 7 && (2..=n - 4).contains(&r) => Recipe::union([
            Recipe::copies(k - 1, Recipe::Complete(n - 1)),
            Recipe::DegreeCapped { order: n - 1 + r, max_degree: n - 3 },
        ]),
        Variant::Broom => cliques_recipe(k, n, r),
        Variant::Spider if n <= 5 => cliques_recipe(k, n, r),
        Variant::Spider if r <= 1 || r + 4 >= n => cliques_recipe(k, n, r),
        Variant::Spider if r + 5 == n => Recipe::union([
            Recipe::copies(k - 1, Recipe::Complete(n - 1)),
            Recipe::CompleteBipartite(n - 3, n - 3),
        ]),
        Variant::Spider => larger(
            cliques_recipe(k, n, r),
            Recipe::union([Recipe::copies(k - 1, Recipe::Complete(n - 1)), mixed_recipe(n, r)]),
        ),
    })
}

/// Witness for ex(p; pattern) with the given audit level.
pub fn extremal(pattern: &TreePattern, p: usize, audit: Audit) -> Result<Witness, ConstructError> {
    let w = Witness::build(witness_recipe(pattern, p)?)?;
    if audit == Audit::Full {
        let what = format!("{pattern} at p={p}");
        audit_shape(&w, p, ex_pattern(p, pattern)?.value, &what)?;
        audit_avoids(&w, pattern, &what)?;
    }
    Ok(w)
}

fn pattern(variant: Variant, n: usize) -> Result<TreePattern, ConstructError> {
    TreePattern::new(variant, n).map_err(|e| ConstructError::OutOfRange(e.to_string()))
}

/// Graph on `p ≥ n-1` vertices with maximum degree ≤ n-2 and ⌊(n-2)p/2⌋ edges.
pub fn star_free_extremal(p: usize, n: usize) -> Result<Witness, ConstructError> {
    if p + 1 < n {
        return Err(ConstructError::OutOfRange(format!("star-free witness needs p ≥ n-1, got p={p}, n={n}")));
    }
    extremal(&pattern(Variant::Star, n)?, p, Audit::Full)
}

/// A `k`-regular graph of order `p`, or `None` when `kp` is odd.
/// Requires `p > k`.
pub fn regular_graph(k: usize, p: usize) -> Result<Option<Graph>, ConstructError> {
    if p <= k {
        return Err(ConstructError::OutOfRange(format!("a {k}-regular graph needs more than {k} vertices, got {p}")));
    }
    if k * p % 2 == 1 {
        return Ok(None);
    }
    let g = degree_capped_graph(p, k)?;
    if (0..p).any(|v| g.degree(v) != k) {
        return Err(audit_failure(format!("degree-capped graph of order {p} is not {k}-regular")));
    }
    Ok(Some(g))
}

pub fn broom_extremal(p: usize, n: usize) -> Result<Witness, ConstructError> {
    extremal(&pattern(Variant::Broom, n)?, p, Audit::Full)
}

pub fn spider_extremal(p: usize, n: usize) -> Result<Witness, ConstructError> {
    extremal(&pattern(Variant::Spider, n)?, p, Audit::Full)
}

pub fn path_extremal(p: usize, n: usize) -> Result<Witness, ConstructError> {
    extremal(&pattern(Variant::Path, n)?, p, Audit::Full)
}

/// Recipe on n-1+r vertices avoiding K_{1,n-2} and the spider T*_n.
fn mixed_recipe(n: usize, r: usize) -> Recipe {
    let hub = Recipe::Isolated(r + 2);
    let inner = if mixed_is_base(n, r) {
        let side = n - 5 - r;
        let bipartite = Recipe::union([Recipe::CompleteBipartite(side, side), Recipe::Isolated(2 * r + 7 - n)]);
        let capped = if n >= r + 6 {
            Recipe::DegreeCapped { order: n - 3, max_degree: n - 6 - r }
        } else {
            Recipe::Isolated(n - 3)
        };
        larger(bipartite, capped)
    } else {
        mixed_recipe(n - 2 - r, r)
    };
    Recipe::join(hub, inner)
}

/// Witness for ex(n-1+r; {K_{1,n-2}, T*_n}), n ≥ 7 and 1 ≤ r ≤ n-5.
pub fn mixed_extremal(n: usize, r: usize) -> Result<Witness, ConstructError> {
    mixed_extremal_with(n, r, Audit::Full)
}

pub fn mixed_extremal_with(n: usize, r: usize, audit: Audit) -> Result<Witness, ConstructError> {
    let want = ex_mixed(n, r)?.value;
    let w = Witness::build(mixed_recipe(n, r))?;
    if audit == Audit::Full {
        let what = format!("mixed family n={n}, r={r}");
        audit_shape(&w, n - 1 + r, want, &what)?;
        audit_avoids(&w, &pattern(Variant::Star, n - 1)?, &what)?;
        audit_avoids(&w, &pattern(Variant::Spider, n)?, &what)?;
    }
    Ok(w)
}
