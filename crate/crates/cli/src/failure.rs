use std::fmt;

use difem::cache::CacheError;
use difem::features::FeatureError;
use difem::synthgen::SynthError;
use difem::{ClassifierError, EvalError, PoseError};

/// A command failure with its exit-code class.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, bad configuration. Exit code 2.
    Input(anyhow::Error),
    /// Inputs parse but violate a data contract. Exit code 3.
    Data(anyhow::Error),
}

pub type CmdResult<T> = Result<T, Failure>;

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Data(_) => 3,
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Failure::Input(anyhow::anyhow!("{msg}"))
    }

    pub fn data(msg: impl fmt::Display) -> Self {
        Failure::Data(anyhow::anyhow!("{msg}"))
    }

    pub fn context(self, ctx: impl fmt::Display + Send + Sync + 'static) -> Self {
        match self {
            Failure::Input(e) => Failure::Input(e.context(ctx)),
            Failure::Data(e) => Failure::Data(e.context(ctx)),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) | Failure::Data(e) => write!(f, "{e:#}"),
        }
    }
}

pub trait Context<T> {
    fn ctx(self, ctx: impl fmt::Display + Send + Sync + 'static) -> CmdResult<T>;
}

impl<T, E: Into<Failure>> Context<T> for Result<T, E> {
    fn ctx(self, ctx: impl fmt::Display + Send + Sync + 'static) -> CmdResult<T> {
        self.map_err(|e| e.into().context(ctx))
    }
}

impl From<PoseError> for Failure {
    fn from(e: PoseError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<FeatureError> for Failure {
    fn from(e: FeatureError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<SynthError> for Failure {
    fn from(e: SynthError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<ClassifierError> for Failure {
    fn from(e: ClassifierError) -> Self {
        match e {
            ClassifierError::Format(_) => Failure::Input(e.into()),
            _ => Failure::Data(e.into()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Data(e.into())
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Data(inner) => inner.into(),
            other => Failure::Input(other.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.into())
    }
}
