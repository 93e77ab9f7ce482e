use thiserror::Error;

/// Which graft precondition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraftClause {
    /// The input graph is not properly downward.
    NotProperlyDownward,
    /// The scion position t is not a column of the graph.
    ScionNotInDomain(usize),
    /// The stock position s is not a column of the graph.
    StockNotInDomain(usize),
    /// The scion must lie strictly left of the stock (t < s).
    ScionNotLeftOfStock { t: usize, s: usize },
    /// The stock column is not a downward path.
    StockNotDownwardPath(usize),
    /// m must satisfy 0 < m <= height of the stock column.
    CountOutOfRange { m: usize, height: usize },
}

impl std::fmt::Display for GraftClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraftClause::NotProperlyDownward => write!(f, "graph is not properly downward"),
            GraftClause::ScionNotInDomain(t) => write!(f, "scion column {t} not in domain"),
            GraftClause::StockNotInDomain(s) => write!(f, "stock column {s} not in domain"),
            GraftClause::ScionNotLeftOfStock { t, s } => {
                write!(f, "scion {t} must be strictly left of stock {s}")
            }
            GraftClause::StockNotDownwardPath(s) => {
                write!(f, "stock column {s} is not a downward path")
            }
            GraftClause::CountOutOfRange { m, height } => {
                write!(f, "graft count {m} out of range (column height {height})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition parts must be positive, got {0}")]
    InvalidPart(i64),

    #[error("max of an empty multiset is undefined")]
    EmptyMultiset,

    #[error("partitions must have equal sums, got {left} and {right}")]
    SumMismatch { left: usize, right: usize },

    #[error("invalid shape: need 0 < r < n, got n={n}, r={r}")]
    InvalidShape { n: usize, r: usize },

    #[error("matrix dimensions differ: {a} vs {b}")]
    DimMismatch { a: usize, b: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("position {0} is not in the graph's domain")]
    InvalidPosition(usize),

    #[error("graft precondition violated: {0}")]
    GraftPrecondition(GraftClause),

    #[error("no completion exists: lambda has {parts} parts but r = {r}")]
    NoCompletionExists { parts: usize, r: usize },

    #[error("invariant {which} violated at iteration {k}")]
    InvariantViolation { which: String, k: usize },

    #[error("unknown invariant identifier {0:?}")]
    UnknownInvariant(String),

    #[error("height probe out of domain: column {position} at iteration {k}")]
    ProbeOutOfDomain { position: usize, k: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("r = {r} and n = {n} are not coprime")]
    NotCoprime { r: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
