use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: bad ring header: {msg}")]
    BadRingHeader { line: usize, msg: String },
    #[error("unknown field `{0}` (expected Q, GF(p), GF<p>, Q(t) or Qt)")]
    BadField(String),
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {source}")]
    At { line: usize, source: cmcubics_core::Error },
    #[error("bad map: {0}")]
    BadMap(String),
    #[error("bad point: {0}")]
    BadPoint(String),
    #[error("{0}")]
    Usage(String),
    #[error("`{command}` needs a field without parameter, got {field}")]
    NeedsBaseField { command: String, field: String },
    #[error("`{command}` needs a parametric field such as Q(t), got {field}")]
    NeedsParameter { command: String, field: String },
    #[error(transparent)]
    Core(#[from] cmcubics_core::Error),
}

impl CliError {
    /// Attaches a source line to an engine error, shifting columns of syntax errors by `col0`.
    pub(crate) fn located(err: cmcubics_core::Error, line: usize, col0: usize) -> Self {
        match err {
            cmcubics_core::Error::Syntax { col, msg, .. } => CliError::Syntax { line, col: col + col0, msg },
            other => CliError::At { line, source: other },
        }
    }
}
