use thiserror::Error;

/// Everything that can go wrong while parsing, validating or reasoning.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty formula")]
    EmptyInput,

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("line {line}: {message}")]
    KbSyntax { line: usize, message: String },

    #[error("atom `{0}` is not part of the declared universe")]
    UnknownAtom(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error(
        "`{first}` and `{second}` are the same formula `{formula}`; \
         rewrite one of them into an equivalent but syntactically different formula"
    )]
    DuplicateFormula {
        first: String,
        second: String,
        formula: String,
    },

    #[error("strict preference `{0} < {1}` contradicts the rest of the order")]
    StrictContradiction(String, String),

    #[error("the order is not total: `{0}` and `{1}` are incomparable")]
    NotTotal(String, String),

    #[error("{what} limit exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("{0}")]
    Invalid(String),

    #[error("line {line}: {error}")]
    Located { line: usize, error: Box<Error> },
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self.root(), Error::CapExceeded { .. })
    }

    /// The underlying error, with any line information stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { error, .. } => error.root(),
            other => other,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            e @ (Error::Located { .. } | Error::KbSyntax { .. }) => e,
            e => Error::Located {
                line,
                error: Box::new(e),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
