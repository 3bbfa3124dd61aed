use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undeclared sort `{0}`")]
    UndeclaredSort(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("sort mismatch in {context}: expected {expected}, found {found}")]
    SortMismatch {
        expected: String,
        found: String,
        context: String,
    },
    #[error("`{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("ill-formed declaration: {0}")]
    IllFormed(String),
    #[error("solution failed verification against the original problem: {0}")]
    Unverified(String),
    #[error("no second atom of sort `{0}` is available")]
    NoSecondAtom(String),
    #[error("atom `{0}` is missing from the atom list")]
    AtomNotInList(String),
    #[error("problem still contains freshness equations")]
    NotEquational,
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("not a pattern: {0}")]
    NotPattern(String),
    #[error("term is not compatible with the freshness environment: {0}")]
    Incompatible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("length mismatch: {0} versus {1}")]
    LengthMismatch(usize, usize),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("no sublist of the atom list matches the argument types of `{0}`")]
    NoMatchingSublist(String),
}
