use thiserror::Error;

/// Errors produced by the shift, point and germ machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("no bi-infinite sequence survives the constraints")]
    EmptyShift,
    #[error("shift is not irreducible")]
    NotIrreducible,
    #[error("oracle `{name}` violates {property} on word `{word}`")]
    InvalidOracle {
        name: String,
        property: &'static str,
        word: String,
    },
    #[error("query of length {len} exceeds the oracle window bound {bound}")]
    WindowExceeded { len: usize, bound: usize },
    #[error("operation not supported for {0}")]
    Unsupported(String),
    #[error("word is not in the language of the shift")]
    NotInLanguage,
    #[error("point is not in the shift")]
    NotInShift,
    #[error("membership could not be verified within the oracle window")]
    Unverified,
    #[error("points disagree inside the bracket window (first at coordinate {0})")]
    NotAgreeing(i64),
    #[error("window {0} is too small (need at least {1})")]
    WindowTooSmall(u32, u32),
    #[error("point is not synchronizing")]
    NotSynchronizing,
    #[error("bracket undefined at iteration step {0}")]
    BracketUndefined(usize),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("points are not {0}")]
    NotRelated(&'static str),
    #[error("operation requires a shift of finite type")]
    NotSft,
    #[error("point is not in the rectangle around the base point")]
    NotInRectangle,
    #[error("point is outside the germ domain")]
    OutsideDomain,
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("search exhausted at depth {0}")]
    SearchExhausted(usize),
    #[error("labeling is neither right- nor left-resolving")]
    NotResolving,
    #[error("invalid point literal: {0}")]
    InvalidPoint(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
