use embedkit_core::Error as CoreError;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input at {pointer}: {message}")]
    Validation { pointer: String, message: String },
    #[error("{source} (at {pointer})")]
    Domain {
        pointer: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn validation(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Process exit status: 2 for bad input, 3 for a size-bound refusal,
    /// 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Domain { source, .. } => match source {
                CoreError::SizeBound { .. } => 3,
                CoreError::Inconsistent(_) => 1,
                _ => 2,
            },
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            3 => "size-bound",
            _ => "internal",
        }
    }

    pub fn to_json(&self) -> Value {
        let (pointer, message) = match self {
            CliError::Validation { pointer, message } => (Some(pointer.as_str()), message.clone()),
            CliError::Domain { pointer, source } => (Some(pointer.as_str()), source.to_string()),
            CliError::Io(msg) => (None, msg.clone()),
        };
        json!({ "kind": self.kind(), "message": message, "pointer": pointer })
    }
}

/// Attaches a JSON pointer to core errors.
pub(crate) trait At<T> {
    fn at(self, pointer: &str) -> Result<T, CliError>;
}

impl<T> At<T> for Result<T, CoreError> {
    fn at(self, pointer: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Domain {
            pointer: pointer.to_string(),
            source,
        })
    }
}
