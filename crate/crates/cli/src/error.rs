use std::fmt;

/// Failure of one command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or unreadable input: exit 2.
    Input { code: &'static str, message: String },
    /// The command could not complete: exit 3.
    Runtime { code: &'static str, message: String },
}

impl CliError {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Input {
            code,
            message: message.into(),
        }
    }

    pub fn runtime(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Runtime {
            code,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Runtime { .. } => 3,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input { code, .. } | CliError::Runtime { code, .. } => code,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input { message, .. } | CliError::Runtime { message, .. } => message,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input("io_error", format!("cannot read {}: {e}", path.display())))
}
