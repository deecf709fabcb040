use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular element: norm^2 = {0:e}")]
    Singular(f64),
    #[error("determinant {re}{im:+}i too far from 1 to normalize")]
    Normalization { re: f64, im: f64 },
    #[error("no rest frame: degree of polarization {0} is not below 1")]
    NoRestFrame(f64),
    #[error("incompatible Stokes vectors: invariants {0:e} and {1:e} differ")]
    Incompatible(f64, f64),
    #[error("equal intensities: use the rotation solver for the non-relativistic case")]
    NonRelativistic,
    #[error("parameters off the constraint surface (F - 1 = {0:e})")]
    OffSurface(f64),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("under-determined fit: rank {rank} of 16, {} null directions", null_directions.len())]
    UnderDetermined { rank: usize, null_directions: Vec<[f64; 16]> },
    #[error("input is not in the image of the map (residual {0:e})")]
    Residual(f64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Coarse classification, used by the CLI for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Constraint,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::OffSurface(_)
            | Error::Degenerate(_)
            | Error::UnderDetermined { .. }
            | Error::NoRestFrame(_)
            | Error::Incompatible(..)
            | Error::NonRelativistic => ErrorKind::Constraint,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
