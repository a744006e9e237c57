use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] omnitoric::Error),
    #[error("cannot access `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    /// Well-formed input that does not fit the command.
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Input(_) => "invalid-input",
        }
    }

    fn detail(&self) -> Value {
        use omnitoric::Error as E;
        match self {
            CliError::Domain(E::InvalidPolytope(p) | E::InvalidDicharacteristic(p)) => json!(p),
            CliError::Domain(E::DimensionMismatch { expected, found }) => {
                json!({ "expected": expected, "found": found })
            }
            CliError::Domain(E::NotAVertex(s) | E::NotAFace(s)) => json!(s),
            CliError::Domain(E::UnknownFacet(name)) => json!(name),
            CliError::Io { path, .. } => json!(path),
            _ => Value::Null,
        }
    }

    /// The `{code, message, detail}` object printed on failure.
    pub fn to_json(&self) -> Value {
        json!({ "code": self.code(), "message": self.to_string(), "detail": self.detail() })
    }
}
