use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("missing file {0}")]
    MissingFile(PathBuf),

    #[error("bad image file {path}: {reason}")]
    BadImage { path: PathBuf, reason: String },

    #[error("bad metadata in {path}: {reason}")]
    BadMetadata { path: PathBuf, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("super-ray {label}: singular sampling matrix (cond {cond:e})")]
    SingularSampling { label: u32, cond: f64 },

    #[error("super-ray {label}, band {band}: reference view decoupled from angular component")]
    DecoupledReference { label: u32, band: usize },

    #[error("corrupt bitstream in section `{section}`: {reason}")]
    Corrupt { section: String, reason: String },

    #[error("reference codec plug-in failed: {0}")]
    Plugin(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn corrupt(section: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Corrupt {
            section: section.into(),
            reason: reason.into(),
        }
    }
}
