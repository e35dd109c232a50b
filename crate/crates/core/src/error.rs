use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {order} exceeds the supported maximum of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed graph6 at byte {position}: {reason}")]
    Graph6 { position: usize, reason: &'static str },
    #[error("malformed edge list at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{variant} needs at least {min} vertices, got {n}")]
    TooSmall { variant: &'static str, n: usize, min: usize },
    #[error("unknown pattern variant `{0}` (expected star, broom, spider or path)")]
    UnknownVariant(String),
    #[error("cannot parse pattern `{0}` (expected variant:n)")]
    Syntax(String),
    #[error("a forbidden family needs at least one pattern")]
    EmptyFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("pattern size n={n} is below the minimum {min} for this family")]
    PatternTooSmall { n: usize, min: usize },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    /// An exact-division branch saw an odd numerator; this is a dispatch bug.
    #[error("internal consistency: {numerator} is not divisible by {divisor} in {context}")]
    Parity { numerator: i64, divisor: i64, context: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("construction audit failed: {0}")]
    Audit(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("p={p} exceeds the search cap max_p={cap}; raise the cap explicitly to proceed")]
    OverCap { p: usize, cap: usize },
    #[error("slot order is not a permutation of the vertex pairs of a {p}-vertex graph")]
    BadSlotOrder { p: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}
