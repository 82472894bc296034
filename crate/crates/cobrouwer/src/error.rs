use std::path::PathBuf;

use cobrouwer_core::cbs::CbsReport;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("tables violate the CBS laws:{}", listing(.0))]
    InvalidAlgebra(CbsReport),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Core(#[from] cobrouwer_core::Error),
}

fn listing(r: &CbsReport) -> String {
    r.violations.iter().map(|v| format!("\n  {v}")).collect()
}

impl CliError {
    /// 2 for usage errors, 1 for everything the input itself is wrong about.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
