use thiserror::Error;

/// Position of a token in an input stream, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenPos {
    pub line: usize,
    pub column: usize,
    /// Index among the numeric tokens (comment tokens excluded).
    pub index: usize,
}

impl std::fmt::Display for TokenPos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad token `{token}` at {pos}: numbers and comment words may not be mixed")]
    BadToken { token: String, pos: TokenPos },

    #[error("expected {expected} numbers, found only {found}")]
    TooFewNumbers { expected: usize, found: usize },

    #[error("header value {value} at {pos} must be positive")]
    NonpositiveHeader { value: i64, pos: TokenPos },

    #[error("inconsistent header: {elements} elements with {generators} generators")]
    HeaderInconsistent { elements: i64, generators: i64 },

    #[error(
        "cell ({row}, {column}) holds `{value}` at {pos}, expected a value in [{min}, {limit})"
    )]
    CellOutOfRange {
        row: usize,
        column: usize,
        value: i64,
        min: i64,
        limit: usize,
        pos: TokenPos,
    },

    #[error("element {element} is not a product of generators")]
    NotGenerated { element: usize },

    #[error("not associative: ({x}*{generator})*{y} != {x}*({generator}*{y})")]
    NotAssociative {
        x: usize,
        generator: usize,
        y: usize,
    },

    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },

    #[error("graph has undefined transitions; complete it first")]
    IncompleteInput,

    #[error("scan width k must be at least 1 and threshold t at least 1 (got k={k}, t={t})")]
    BadK { k: usize, t: usize },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("profile search exceeded its budget of {limit} states")]
    BudgetExceeded { limit: usize },

    #[error("semigroup exceeds {limit} elements")]
    TooLarge { limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
