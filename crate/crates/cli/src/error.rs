use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Validation(String),
    #[error("config file line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] ltgn_core::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Config { .. } => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) | CliError::Output(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Config { .. } => "config",
            CliError::Core(e) => e.kind(),
            CliError::Output(_) => "output",
        }
    }

    /// Single-line diagnostic written to standard error.
    pub fn diagnostic(&self, command: Option<&str>) -> String {
        let mut v = json!({
            "status": "error",
            "exit_code": self.exit_code(),
            "kind": self.kind(),
            "message": self.to_string(),
        });
        if let Some(c) = command {
            v["command"] = json!(c);
        }
        if let CliError::Core(ltgn_core::Error::Numeric { residual, .. }) = self {
            v["residual"] = json!(residual);
        }
        if let CliError::Core(ltgn_core::Error::Consistency(m)) = self {
            v["left"] = json!(m.left);
            v["right"] = json!(m.right);
            v["tolerance"] = json!(m.tolerance);
        }
        v.to_string()
    }
}
