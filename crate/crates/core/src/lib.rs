//! Exact Turán numbers for stars, brooms, spiders and paths.
//!
//! * [`graph`]: bit-row simple graphs, graph6 and edge-list I/O, witness recipes.
//! * [`patterns`]: the tree families and subgraph containment.
//! * [`formulas`]: closed-form extremal numbers with the branch that produced them.
//! * [`constructors`]: extremal graphs attaining those numbers.
//! * [`oracle`]: exhaustive branch-and-bound search used to certify both.

pub mod constructors;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod patterns;
mod util;

pub use error::{ConstructError, FormulaError, GraphError, OracleError, PatternError, VerifyError};
pub use graph::{Graph, GraphBuilder, Recipe};
pub use patterns::{contains, contains_fast, family_free, ForbiddenFamily, TreePattern, Variant};
pub use util::binom2;
