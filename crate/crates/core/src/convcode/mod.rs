//! Convolutional codes given by polynomial generator matrices: degree,
//! basic/canonical tests, weights, free distance and the MDS verdict.

mod analysis;
mod certificate;
mod search;

use thiserror::Error;

use crate::blockcode::BlockError;
use crate::field::FieldSpec;
use crate::polyalg::{
    gcd_all, smith_normal_form, Degree, Poly, PolyError, PolyMatrix, RationalMatrix,
};

pub use analysis::{
    analyze, dual_check, AnalysisOptions, CodeAnalysis, DualReport, Provenance, Verdict,
};
pub use certificate::{stacked_mds_certificate, Certificate, HypothesisCheck};
pub use search::{free_distance_search, SearchResult, DEFAULT_SEARCH_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvError {
    #[error("generator is not of full row rank over F_q(z)")]
    RankDeficient,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a one-dimensional code, got k = {0}")]
    NotOneDimensional(usize),
    #[error("generator and control matrix are not orthogonal")]
    NotOrthogonal,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("search visited more than {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// A rate `k/n` convolutional code presented by a `k x n` polynomial generator
/// of full rank over `F_q(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvCode {
    gen: PolyMatrix,
}

impl ConvCode {
    pub fn new(gen: PolyMatrix) -> Result<Self, ConvError> {
        if gen.rows() > gen.cols() || gen.minors(gen.rows())?.iter().all(Poly::is_zero) {
            return Err(ConvError::RankDeficient);
        }
        Ok(Self { gen })
    }

    /// Clears denominators row by row and wraps the resulting polynomial matrix.
    pub fn from_rational(gen: &RationalMatrix) -> Result<Self, ConvError> {
        Self::new(gen.clear_denominators())
    }

    pub fn gen(&self) -> &PolyMatrix {
        &self.gen
    }

    pub fn field(&self) -> &FieldSpec {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Sum of row degrees of the presented generator.
    pub fn ext_degree(&self) -> usize {
        self.gen
            .row_degrees()
            .iter()
            .filter_map(|d| d.finite())
            .sum()
    }
}

fn full_rank_minors(g: &PolyMatrix) -> Result<Vec<Poly>, ConvError> {
    if g.rows() > g.cols() {
        return Err(ConvError::RankDeficient);
    }
    let minors = g.minors(g.rows())?;
    if minors.iter().all(Poly::is_zero) {
        return Err(ConvError::RankDeficient);
    }
    Ok(minors)
}

/// Largest degree among the order-`k` minors.
pub fn internal_degree(g: &PolyMatrix) -> Result<usize, ConvError> {
    let minors = full_rank_minors(g)?;
    Ok(minors
        .iter()
        .map(Poly::degree)
        .max()
        .and_then(Degree::finite)
        .expect("some minor is nonzero"))
}

/// All invariant factors equal one. Decided twice, from the Smith form and
/// from the gcd of the maximal minors; disagreement is reported as an error.
pub fn is_basic(g: &PolyMatrix) -> Result<bool, ConvError> {
    let minors = full_rank_minors(g)?;
    let by_minors = gcd_all(g.field(), &minors).is_one();
    let by_smith = smith_normal_form(g)?
        .invariant_factors
        .iter()
        .all(Poly::is_one);
    if by_minors != by_smith {
        return Err(ConvError::Internal(format!(
            "Smith form and minor gcd disagree on basicness ({by_smith} vs {by_minors})"
        )));
    }
    Ok(by_smith)
}

/// A basic generator of the same code. For `k = 1` this divides out the gcd of
/// the entries; in general it takes the first `k` rows of `V^{-1}` from the
/// Smith form `U G V = [D 0]`.
pub fn basic_generator(g: &PolyMatrix) -> Result<PolyMatrix, ConvError> {
    full_rank_minors(g)?;
    if g.rows() == 1 {
        let content = g.content();
        let entries = g
            .entries()
            .iter()
            .map(|e| e.exact_div(&content))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(PolyMatrix::new(g.field(), 1, g.cols(), entries)?);
    }
    let sf = smith_normal_form(g)?;
    if sf.invariant_factors.iter().all(Poly::is_one) {
        return Ok(g.clone());
    }
    let rows: Vec<usize> = (0..g.rows()).collect();
    let cols: Vec<usize> = (0..g.cols()).collect();
    Ok(sf.v_inv.submatrix(&rows, &cols))
}

/// The degree of the code: internal degree of any basic generator.
pub fn code_degree(code: &ConvCode) -> Result<usize, ConvError> {
    internal_degree(&basic_generator(code.gen())?)
}

/// Basic, and the row degrees add up to the internal degree.
pub fn is_canonical(g: &PolyMatrix) -> Result<bool, ConvError> {
    if !is_basic(g)? {
        return Ok(false);
    }
    let ext: usize = g.row_degrees().iter().filter_map(|d| d.finite()).sum();
    Ok(ext == internal_degree(g)?)
}

/// Weight of a polynomial vector: total number of nonzero coefficients.
pub fn weight(x: &[Poly]) -> usize {
    x.iter().map(Poly::weight).sum()
}

/// Generalized Singleton bound `(n-k)(floor(delta/k)+1) + delta + 1`.
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> Result<usize, ConvError> {
    if k == 0 || n <= k {
        return Err(ConvError::BadParameters(format!(
            "singleton bound needs n > k >= 1, got n={n}, k={k}"
        )));
    }
    Ok((n - k) * (delta / k + 1) + delta + 1)
}

/// Lower bound `(j+1) n + (n-j) delta` on the weight of a codeword whose
/// message has degree `j`, valid under the stacked-MDS hypotheses.
pub fn degree_weight_bound(n: usize, delta: usize, j: usize) -> Result<usize, ConvError> {
    if delta >= n {
        return Err(ConvError::BadParameters(format!(
            "degree bound needs delta < n, got delta={delta}, n={n}"
        )));
    }
    let (n, delta, j) = (n as i128, delta as i128, j as i128);
    // positive for every j since n > delta
    Ok(((j + 1) * n + (n - j) * delta) as usize)
}
