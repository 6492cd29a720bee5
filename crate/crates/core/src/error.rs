use thiserror::Error;

/// Which of the two brace operations a group-level error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Add,
    Mul,
}

impl std::fmt::Display for Operation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operation::Add => f.write_str("additive"),
            Operation::Mul => f.write_str("multiplicative"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty table")]
    EmptyTable,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("declared order {declared} does not match table size {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("table[{a}][{b}] = {value} lies outside 0..{order}")]
    NotClosed {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: table[{a}][{b}] = table[{c}][{d}] = {value}")]
    NotLatin {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        value: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at {a})")]
    NoIdentityAtZero { a: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {a} has no inverse")]
    NoInverse { a: usize },
    #[error("{which} table is not a group: {source}")]
    GroupInvalid {
        which: Operation,
        #[source]
        source: Box<Error>,
    },
    #[error("brace axiom a(b+c) = ab - a + ac fails at a={a}, b={b}, c={c}")]
    BraceAxiomFailed { a: usize, b: usize, c: usize },
    #[error("{what} of size {size} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subset is not a subbrace: {0}")]
    NotASubbrace(String),
    #[error("subgroup is not regular: {0}")]
    NotRegular(String),
    #[error("no groups of order {0} in the catalog")]
    CatalogMissing(usize),
    #[error("group is not simple and non-abelian: {0}")]
    NotSimple(String),
    #[error("brace is not soluble (derived series stabilises at order {stable_order})")]
    NotSoluble { stable_order: usize },
    #[error("ideal is not proper")]
    NotProper,
    #[error("quotient by the ideal is not abelian")]
    QuotientNotAbelian,
    #[error("invalid series at step {step}: {reason}")]
    SeriesInvalid { step: usize, reason: String },
    #[error("solution is degenerate: {0}")]
    Degenerate(String),
    #[error("map r is not bijective on X x X: {0}")]
    NotBijective(String),
    #[error("braid relation fails at ({x}, {y}, {z})")]
    BraidFailed { x: usize, y: usize, z: usize },
    #[error("partition is invalid: {0}")]
    PartitionInvalid(String),
    #[error("embedding is incompatible with the brace solution at ({x}, {y}): {reason}")]
    EmbeddingIncompatible { x: usize, y: usize, reason: String },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("theorem {theorem} violated: {detail}")]
    TheoremViolation { theorem: &'static str, detail: String },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
