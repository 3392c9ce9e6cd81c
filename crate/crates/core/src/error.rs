use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("size limit exceeded: {what} = {got} (cap {cap})")]
    Size { what: &'static str, got: usize, cap: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid state spec: {0}")]
    Validation(String),

    #[error("{family}: hypothesis failed ({})", format_checks(.checks))]
    Hypothesis {
        family: String,
        checks: Vec<crate::bounds::HypothesisCheck>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

fn format_checks(checks: &[crate::bounds::HypothesisCheck]) -> String {
    checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} margin {:.3e}", c.label, c.margin))
        .collect::<Vec<_>>()
        .join("; ")
}
