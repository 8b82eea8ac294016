use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty Gauss code")]
    EmptyInput,
    #[error("label {label} appears {count} time(s)")]
    LabelNotTwice { label: u64, count: usize },
    #[error("bad token at position {0}")]
    BadToken(usize),
    #[error("both passes of crossing {0} carry the same over/under prefix")]
    InconsistentKind(u64),
    #[error("missing O/U prefix at position {0}")]
    MissingKind(usize),
    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: u64,
        max: u64,
    },
    #[error("{crossings} crossings exceeds the limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("bad dimension {0}: expected an even positive size")]
    BadDimension(usize),
    #[error("column {0} has more than one zero-sum partner")]
    PairingNotUnique(usize),
    #[error("column {0} has no zero-sum partner")]
    PairingIncomplete(usize),
    #[error("malformed source: {0}")]
    MalformedSource(String),
    #[error("no row labelled {0}")]
    RowMissing(u64),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("needs at least {min} crossings, got {got}")]
    TooShort { min: usize, got: usize },
    #[error("row {row} has width {got}, expected {expected}")]
    WidthMismatch {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("cannot read matrix: {0}")]
    Format(String),
}
