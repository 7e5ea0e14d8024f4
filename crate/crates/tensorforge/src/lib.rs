//! Command-line companion to `tensorforge-core`: file formats, input
//! resolution, run reports, the verification suite and the explore scans.

use std::path::PathBuf;

pub mod commands;
pub mod explore;
pub mod io;
pub mod report;
pub mod resolve;
pub mod verify;

pub use report::{RunReport, Status};

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error(transparent)]
    Core(#[from] tensorforge_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Input(String),
}

impl ToolError {
    /// Short machine-readable kind for reports.
    pub fn kind(&self) -> &'static str {
        use tensorforge_core::Error as E;
        match self {
            ToolError::Core(e) => match e {
                E::Malformed(_) => "Malformed",
                E::NotAGroup { .. } => "NotAGroup",
                E::UnknownCatalogKey(_) => "UnknownCatalogKey",
                E::NotNormal { .. } => "NotNormal",
                E::NotAHomomorphism { .. } => "NotAHomomorphism",
                E::GensDoNotGenerate { .. } => "GensDoNotGenerate",
                E::BudgetExceeded { .. } => "BudgetExceeded",
                E::NotASubgroup { .. } => "NotASubgroup",
                E::AlphaNotInjective { .. } => "AlphaNotInjective",
                E::NormalizerConditionFails { .. } => "NormalizerConditionFails",
                E::PsiNotInvolution { .. } => "PsiNotInvolution",
                E::IncompatibleActions(_) => "IncompatibleActions",
                E::LimitExceeded { .. } => "LimitExceeded",
                E::TableIncomplete => "TableIncomplete",
                E::Internal(_) => "Internal",
            },
            ToolError::Io { .. } => "IoError",
            ToolError::Json { .. } => "JsonError",
            ToolError::Input(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, ToolError>;
