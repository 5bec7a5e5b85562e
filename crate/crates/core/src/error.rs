use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate surface: genus {genus} with {boundaries} extra boundary components has no generators")]
    DegenerateSurface { genus: u32, boundaries: u32 },

    #[error("tensor algebra dimension {0} is outside 1..=26")]
    BadDimension(usize),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown identifier `{ident}` at byte {offset}")]
    UnknownIdentifier { ident: String, offset: usize },

    #[error("`{ident}` at byte {offset}: index {index} is out of range for {context}")]
    IndexOutOfRange {
        ident: String,
        offset: usize,
        index: u32,
        context: String,
    },

    #[error(
        "non-composable product at byte {offset}: `{left}` ends at object {end} but `{right}` starts at object {start}"
    )]
    NotComposable {
        left: String,
        right: String,
        end: u32,
        start: u32,
        offset: usize,
    },

    #[error("{0} has no loop representative in the trace space")]
    NoRepresentative(String),

    #[error("unsupported connection: {0}")]
    UnsupportedConnection(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
