use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// `exit_code` maps each variant onto the command-line contract.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation failed: {condition}: {detail}")]
    Validation { condition: String, detail: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("field mismatch: L = {0} vs L = {1}")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn validation(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation { condition: condition.into(), detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence(_) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            Error::Validation { .. } => "validation",
            Error::Domain(_) => "domain",
            Error::FieldMismatch(..) => "field-mismatch",
            Error::DivisionByZero => "division-by-zero",
            Error::Parse(_) => "parse",
            Error::NonConvergence(_) => "non-convergence",
            Error::Unsupported(_) => "unsupported",
        };
        let mut obj = serde_json::json!({ "error": kind, "message": self.to_string() });
        if let Error::Validation { condition, detail } = self {
            obj["condition"] = condition.clone().into();
            obj["detail"] = detail.clone().into();
        }
        obj
    }
}

pub type Result<T> = std::result::Result<T, Error>;
