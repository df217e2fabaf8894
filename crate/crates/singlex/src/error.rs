use thiserror::Error;

/// Errors produced by parsing, lookup, and scoring operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown phoneme '{symbol}'{}", fmt_line(*.line))]
    UnknownPhoneme { symbol: String, line: Option<usize> },

    #[error("unknown phoneme category '{name}' at line {line}")]
    UnknownCategory { name: String, line: usize },

    #[error("duplicate phoneme '{symbol}' at line {line}")]
    DuplicatePhoneme { symbol: String, line: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("out-of-vocabulary word '{word}'")]
    OovWord { word: String },

    #[error("utterance ids do not match: missing from ref: [{}]; missing from hyp: [{}]",
            missing_from_ref.join(", "), missing_from_hyp.join(", "))]
    UtteranceIdMismatch {
        missing_from_ref: Vec<String>,
        missing_from_hyp: Vec<String>,
    },

    #[error("duplicate utterance id '{id}'")]
    DuplicateUtteranceId { id: String },

    #[error("score matrix is {got_rows}x{got_cols} but sequences require {want_rows}x{want_cols}")]
    DimensionMismatch {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_line(line: Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
