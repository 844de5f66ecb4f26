use thiserror::Error;

/// Errors shared across the engine. The CLI maps these onto exit codes:
/// mathematical failures exit 1, input errors exit 2, resource bounds exit 3.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("input error: {0}")]
    Input(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("mathematical check failed: {0}")]
    MathCheck(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CoreError::MathCheck(_) => 1,
            CoreError::Input(_) | CoreError::Structural(_) | CoreError::Singular(_) => 2,
            CoreError::Resource(_) => 3,
        }
    }
}
