//! Polynomials and rational functions in the delay variable `z` over `F_q`,
//! matrices of them, minors and the Smith normal form.

mod matrix;
mod poly;
mod rational;
mod smith;

use thiserror::Error;

use crate::field::FieldError;

pub use matrix::{combinations, PolyMatrix, RationalMatrix};
pub use poly::{gcd_all, Degree, Poly};
pub use rational::RationalFn;
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact polynomial division")]
    NotDivisible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entries over different fields")]
    MixedFields,
    #[error("Smith form of the zero matrix")]
    ZeroMatrix,
    #[error("cannot parse polynomial {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
