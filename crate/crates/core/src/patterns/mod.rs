//! The four tree families and subgraph containment.
//!
//! Containment is ordinary (not induced) subgraph containment. [`contains`]
//! runs a general backtracking embedder; [`contains_fast`] answers the same
//! question from degree and short-path counting where the family allows it.

mod embed;
mod fast;

pub use embed::{Embedder, Host};
pub use fast::{contains_fast, counting_check, BitRows};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PatternError;
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// K_{1,n-1}.
    Star,
    /// The n-vertex tree with maximum degree n-2.
    Broom,
    /// Center of degree n-3 with n-4 pendant legs and one leg of length 3.
    Spider,
    Path,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Star => "star",
            Variant::Broom => "broom",
            Variant::Spider => "spider",
            Variant::Path => "path",
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            Variant::Star | Variant::Path => 2,
            Variant::Broom | Variant::Spider => 4,
        }
    }
}

/// A tree from one of the four families, identified by its vertex count.
///
/// Spiders on 4 and 5 vertices are paths and are stored as such, so each
/// abstract tree has one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreePattern {
    variant: Variant,
    n: usize,
}

impl TreePattern {
    pub fn new(variant: Variant, n: usize) -> Result<TreePattern, PatternError> {
        let min = variant.min_order();
        if n < min {
            return Err(PatternError::TooSmall { variant: variant.name(), n, min });
        }
        let variant = match (variant, n) {
            (Variant::Spider, 4 | 5) => Variant::Path,
            (v, _) => v,
        };
        Ok(TreePattern { variant, n })
    }

    pub fn star(n: usize) -> Result<TreePattern, PatternError> {
        TreePattern::new(Variant::Star, n)
    }

    pub fn broom(n: usize) -> Result<TreePattern, PatternError> {
        TreePattern::new(Variant::Broom, n)
    }

    pub fn spider(n: usize) -> Result<TreePattern, PatternError> {
        TreePattern::new(Variant::Spider, n)
    }

    pub fn path(n: usize) -> Result<TreePattern, PatternError> {
        TreePattern::new(Variant::Path, n)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of vertices of the tree.
    pub fn order(&self) -> usize {
        self.n
    }

    /// The tree itself. Vertex 0 is the center (star, broom, spider) or an
    /// endpoint (path).
    pub fn realize(&self) -> Graph {
        let n = self.n;
        let mut b = GraphBuilder::new(n);
        let mut add = |u: usize, v: usize| {
            b.add_edge(u, v).expect("tree edges are in range");
        };
        match self.variant {
            Variant::Star => (1..n).for_each(|v| add(0, v)),
            Variant::Broom => {
                (1..n - 1).for_each(|v| add(0, v));
                add(n - 2, n - 1);
            }
            Variant::Spider => {
                (1..=n - 3).for_each(|v| add(0, v));
                add(n - 3, n - 2);
                add(n - 2, n - 1);
            }
            Variant::Path => (1..n).for_each(|v| add(v - 1, v)),
        }
        b.build()
    }

    pub fn embedder(&self) -> Embedder {
        Embedder::new(&self.realize())
    }
}

impl fmt::Display for TreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.variant.name(), self.n)
    }
}

impl FromStr for TreePattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, n) = s.trim().split_once(':').ok_or_else(|| PatternError::Syntax(s.to_string()))?;
        let variant = match name.trim().to_ascii_lowercase().as_str() {
            "star" => Variant::Star,
            "broom" => Variant::Broom,
            "spider" => Variant::Spider,
            "path" => Variant::Path,
            other => return Err(PatternError::UnknownVariant(other.to_string())),
        };
        let n = n.trim().parse().map_err(|_| PatternError::Syntax(s.to_string()))?;
        TreePattern::new(variant, n)
    }
}

/// Nonempty set of forbidden trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenFamily {
    patterns: Vec<TreePattern>,
}

impl ForbiddenFamily {
    pub fn new(patterns: impl IntoIterator<Item = TreePattern>) -> Result<ForbiddenFamily, PatternError> {
        let set: BTreeSet<TreePattern> = patterns.into_iter().collect();
        if set.is_empty() {
            return Err(PatternError::EmptyFamily);
        }
        Ok(ForbiddenFamily { patterns: set.into_iter().collect() })
    }

    pub fn single(pattern: TreePattern) -> ForbiddenFamily {
        ForbiddenFamily { patterns: vec![pattern] }
    }

    pub fn patterns(&self) -> &[TreePattern] {
        &self.patterns
    }
}

impl From<TreePattern> for ForbiddenFamily {
    fn from(p: TreePattern) -> Self {
        ForbiddenFamily::single(p)
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ForbiddenFamily {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let patterns = s
            .split(',')
            .filter(|part| !part.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<TreePattern>, _>>()?;
        ForbiddenFamily::new(patterns)
    }
}

/// True iff `g` has a (not necessarily induced) subgraph isomorphic to the pattern.
///
/// Trees are connected, so the search runs per component and skips any
/// component smaller than the pattern.
pub fn contains(g: &Graph, pattern: &TreePattern) -> bool {
    let n = pattern.order();
    if g.order() < n {
        return false;
    }
    let comps = g.components();
    if comps.len() == 1 {
        return pattern.embedder().find(g);
    }
    let emb = pattern.embedder();
    comps.iter().filter(|c| c.len() >= n).any(|c| emb.find(&g.induced(c)))
}

/// True iff `g` contains none of the family's patterns.
pub fn family_free(g: &Graph, family: &ForbiddenFamily) -> bool {
    family.patterns().iter().all(|p| !contains_fast(g, p))
}
