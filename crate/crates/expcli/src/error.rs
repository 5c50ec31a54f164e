use serde_json::json;

/// Failure modes of the experiment runner, partitioned by exit code:
/// 1 for I/O, 2 for violated preconditions or assumptions, 3 for budgets
/// exhausted without convergence.
#[derive(Debug)]
pub enum CliError {
    Io { message: String },
    Precondition { message: String },
    NonConvergence { message: String },
}

impl CliError {
    pub fn io(message: impl Into<String>) -> Self {
        CliError::Io {
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError::Precondition {
            message: message.into(),
        }
    }

    pub fn non_convergence(message: impl Into<String>) -> Self {
        CliError::NonConvergence {
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Precondition { .. } => 2,
            CliError::NonConvergence { .. } => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Precondition { .. } => "precondition",
            CliError::NonConvergence { .. } => "non-convergence",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io { message }
            | CliError::Precondition { message }
            | CliError::NonConvergence { message } => message,
        }
    }

    /// One-line JSON form written to stderr so failures stay
    /// machine-readable.
    pub fn structured(&self) -> String {
        json!({
            "error": { "kind": self.kind(), "message": self.message() }
        })
        .to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<sdpmodel::SdpError> for CliError {
    fn from(e: sdpmodel::SdpError) -> Self {
        match e {
            sdpmodel::SdpError::Io { .. } => CliError::io(e.to_string()),
            other => CliError::precondition(other.to_string()),
        }
    }
}

impl From<admm::AdmmError> for CliError {
    fn from(e: admm::AdmmError) -> Self {
        match e {
            admm::AdmmError::Divergence { .. } => CliError::non_convergence(e.to_string()),
            other => CliError::precondition(other.to_string()),
        }
    }
}

impl From<toysuite::ToyError> for CliError {
    fn from(e: toysuite::ToyError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<limitdyn::LimitDynError> for CliError {
    fn from(e: limitdyn::LimitDynError) -> Self {
        CliError::precondition(e.to_string())
    }
}
