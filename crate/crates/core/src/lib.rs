//! Exact construction and analysis of one-dimensional convolutional Goppa
//! codes over the projective line.
pub mod blockcode;
pub mod classify;
pub mod convcode;
pub mod field;
pub mod goppa;
pub mod polyalg;

use thiserror::Error;

pub use blockcode::{BlockCode, BlockError, Matrix};
pub use classify::{sweep, ClassifyError, SweepReport, SweepRow};
pub use convcode::{
    analyze, dual_check, AnalysisOptions, CodeAnalysis, ConvCode, ConvError, DualReport, Verdict,
};
pub use field::{FieldElement, FieldError, FieldSpec};
pub use goppa::{CodeFile, Construction, GammaVector, GoppaError, GoppaSpec, P1Point};
pub use polyalg::{Degree, Poly, PolyError, PolyMatrix, RationalFn, RationalMatrix};

/// Broad class of a failure, used to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: parameters, files, dimensions, field mismatch.
    Validation,
    Budget,
    /// A cross-check between two independent computations disagreed.
    Internal,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Conv(#[from] ConvError),
    #[error(transparent)]
    Goppa(#[from] GoppaError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

fn block_kind(e: &BlockError) -> ErrorKind {
    match e {
        BlockError::BudgetExceeded { .. } => ErrorKind::Budget,
        _ => ErrorKind::Validation,
    }
}

fn conv_kind(e: &ConvError) -> ErrorKind {
    match e {
        ConvError::BudgetExceeded { .. } => ErrorKind::Budget,
        ConvError::Internal(_) => ErrorKind::Internal,
        ConvError::Block(b) => block_kind(b),
        _ => ErrorKind::Validation,
    }
}

fn goppa_kind(e: &GoppaError) -> ErrorKind {
    match e {
        GoppaError::Conv(c) => conv_kind(c),
        _ => ErrorKind::Validation,
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Field(_) | Error::Poly(_) => ErrorKind::Validation,
            Error::Block(e) => block_kind(e),
            Error::Conv(e) => conv_kind(e),
            Error::Goppa(e) => goppa_kind(e),
            Error::Classify(e) => match e {
                ClassifyError::BudgetExceeded { .. } => ErrorKind::Budget,
                ClassifyError::Goppa(g) => goppa_kind(g),
                ClassifyError::Csv(_) | ClassifyError::Io(_) => ErrorKind::Io,
            },
        }
    }
}
