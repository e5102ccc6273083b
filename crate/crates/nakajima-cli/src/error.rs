use nakajima::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    /// 1 check failure, 2 input error, 3 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Io(_) | CliError::Input(_) => 2,
            CliError::Lib(e) => match e {
                Error::ResourceGuard(_) | Error::WindowExhausted(_) => 3,
                Error::Inconsistent(_) => 1,
                _ => 2,
            },
        }
    }
}
