use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message} at line {line} column {column}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("{source}{}", location_suffix(.location))]
    Invalid {
        #[source]
        source: loccoh::Error,
        location: Option<(usize, usize)>,
    },

    #[error(transparent)]
    Engine(#[from] loccoh::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Usage(String),
}

fn location_suffix(loc: &Option<(usize, usize)>) -> String {
    match loc {
        Some((l, c)) => format!(" at line {l} column {c}"),
        None => String::new(),
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

fn engine_kind(e: &loccoh::Error) -> &'static str {
    use loccoh::Error::*;
    match e {
        NotPrime(_) => "non-prime-characteristic",
        InvalidRing(_) => "invalid-ring",
        ContextMismatch => "context-mismatch",
        ImproperIdeal(_) => "improper-ideal",
        ZeroIdeal(_) => "zero-ideal",
        NotSquarefree(_) => "not-squarefree",
        NotAFace(_) => "not-a-face",
        OutOfRange { .. } => "out-of-range",
        NotAComplex(_) => "not-a-complex",
        WindowViolated(_) => "window-violated",
        ScanBoxTooSmall(_) => "scan-box-too-small",
        UnsupportedAmbient(_) => "unsupported-ambient",
        ZeroModule => "zero-module",
        NotContained(..) => "not-contained",
        TooLarge(_) => "too-large",
        UnknownVariable(_) => "unknown-variable",
        Parse(_) => "syntax",
        Invariant(_) => "invariant",
    }
}

impl CliError {
    pub fn report(&self) -> ErrorReport {
        let (kind, loc) = match self {
            CliError::Syntax { line, column, .. } => ("syntax", Some((*line, *column))),
            CliError::Invalid { source, location } => (engine_kind(source), *location),
            CliError::Engine(e) => (engine_kind(e), None),
            CliError::Io(_) => ("io", None),
            CliError::Usage(_) => ("usage", None),
        };
        let message = match self {
            CliError::Syntax { message, .. } => message.clone(),
            CliError::Invalid { source, .. } => source.to_string(),
            e => e.to_string(),
        };
        ErrorReport {
            kind,
            message,
            line: loc.map(|l| l.0),
            column: loc.map(|l| l.1),
        }
    }
}
