use serde::de::DeserializeOwned;
use std::io;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("invalid parameters: {0}")]
    Invalid(#[from] crate::Error),

    #[error("I/O error on {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 2 for configuration problems, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

/// Reads a JSON config file for `command`. A run manifest is accepted too: its
/// `parameters` object is used after checking that it was written by the same
/// command. Parse errors name the offending field path.
pub fn load_config<T: DeserializeOwned>(path: &Path, command: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if let Some(obj) = value.as_object_mut() {
        if obj.contains_key("parameters") && obj.contains_key("command") {
            let written_by = obj.get("command").and_then(|c| c.as_str()).unwrap_or_default();
            if written_by != command {
                return Err(CliError::Config(format!(
                    "{}: manifest was written by `{written_by}`, not `{command}`",
                    path.display()
                )));
            }
            value = obj.remove("parameters").unwrap_or_default();
        }
    }
    serde_path_to_error::deserialize(value).map_err(|e| {
        let field = e.path().to_string();
        CliError::Config(format!("{}: field `{field}`: {}", path.display(), e.inner()))
    })
}

/// Copies every `Some` flag over the corresponding field.
macro_rules! overlay {
    ($params:expr, $flags:expr; $($field:ident),+ $(,)?) => {
        $(
            if let Some(v) = $flags.$field.clone() {
                $params.$field = v;
            }
        )+
    };
}

pub(crate) use overlay;
