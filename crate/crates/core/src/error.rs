use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structures are not similar: {0}")]
    SignatureMismatch(String),

    #[error("duplicate relation symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("symbol `{0}` uses the reserved `__pin_` prefix")]
    ReservedSymbol(String),

    #[error("symbol `{0}` must have arity >= 1")]
    ZeroArity(String),

    #[error("relation `{0}` is not declared in the signature")]
    UnknownSymbol(String),

    #[error("duplicate universe element `{0}`")]
    DuplicateElement(String),

    #[error("relation `{symbol}`, tuple #{tuple}: expected arity {expected}, found {found}")]
    TupleArity {
        symbol: String,
        tuple: usize,
        expected: usize,
        found: usize,
    },

    #[error("relation `{symbol}`, tuple #{tuple}: unknown element `{element}`")]
    UnknownElementInTuple {
        symbol: String,
        tuple: usize,
        element: String,
    },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} is outside a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("assignment covers {found} elements, structure has {expected}")]
    NotTotal { expected: usize, found: usize },

    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("operation base set does not match the structure universe")]
    BaseMismatch,

    #[error("operation table is incomplete: missing entry for ({0})")]
    IncompleteTable(String),

    #[error("operation must have arity {expected}, has {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("operation is not idempotent at {0}")]
    NotIdempotent(String),

    #[error("operation is not a 2-semilattice on the carrier: {0}")]
    NotTwoSemilattice(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("fixture `{name}` failed its construction check: {detail}")]
    FixtureCheck { name: String, detail: String },

    #[error("malformed document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
