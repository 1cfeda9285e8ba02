//! Goppa constructions over the projective line with local coordinates
//! `alpha_i = a_i z + b_i`: the evaluation generator, the parity-check matrix
//! built from the residue weights `h_j`, one-dimensional subcodes and two
//! closed-form MDS families.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blockcode::Matrix;
use crate::convcode::{ConvCode, ConvError};
use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::polyalg::{Poly, PolyError, PolyMatrix, RationalFn, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoppaError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("parity-check matrix would have no rows (n - r + s - 1 = 0)")]
    DegenerateDual,
    #[error("{n} points need {n} distinct powers of a primitive element, but q - 1 = {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("{0} is not a primitive element")]
    NotPrimitive(FieldElement),
    #[error("element order {order} is less than n = {n}")]
    OrderTooSmall { order: u64, n: usize },
    #[error("invalid coefficient vector: {0}")]
    InvalidGamma(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Conv(#[from] ConvError),
}

/// A rational point with local coordinate `a z + b`, `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct P1Point {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl P1Point {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self, GoppaError> {
        if a.is_zero() {
            return Err(GoppaError::InvalidSpec("point with a = 0".into()));
        }
        Ok(Self { a, b })
    }

    pub fn coordinate(&self, field: &FieldSpec) -> Poly {
        Poly::linear(field, self.a, self.b)
    }
}

/// Point data `alpha_1..alpha_n` and the divisor `r P_inf - s P_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GoppaSpec {
    field: FieldSpec,
    r: usize,
    s: usize,
    points: Vec<P1Point>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    field: FieldSpec,
    r: usize,
    s: usize,
    points: Vec<[u32; 2]>,
}

impl TryFrom<RawSpec> for GoppaSpec {
    type Error = GoppaError;

    fn try_from(raw: RawSpec) -> Result<Self, GoppaError> {
        let f = &raw.field;
        let points = raw
            .points
            .iter()
            .map(|&[a, b]| P1Point::new(f.try_element(a as u64)?, f.try_element(b as u64)?))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(f, raw.r, raw.s, points)
    }
}

impl From<GoppaSpec> for RawSpec {
    fn from(s: GoppaSpec) -> Self {
        RawSpec {
            points: s
                .points
                .iter()
                .map(|p| [p.a.index(), p.b.index()])
                .collect(),
            field: s.field,
            r: s.r,
            s: s.s,
        }
    }
}

impl GoppaSpec {
    pub fn new(
        field: &FieldSpec,
        r: usize,
        s: usize,
        points: Vec<P1Point>,
    ) -> Result<Self, GoppaError> {
        let n = points.len();
        if !(s <= r && r < n) {
            return Err(GoppaError::InvalidSpec(format!(
                "need 0 <= s <= r < n, got s={s}, r={r}, n={n}"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if !field.contains(p.a) || !field.contains(p.b) {
                return Err(GoppaError::InvalidSpec(format!(
                    "point {} not over {field}",
                    i + 1
                )));
            }
            if p.a.is_zero() {
                return Err(GoppaError::InvalidSpec(format!(
                    "point {} has a = 0",
                    i + 1
                )));
            }
            if s > 0 && p.b.is_zero() {
                return Err(GoppaError::InvalidSpec(format!(
                    "point {} has b = 0, which meets the support of the divisor when s > 0",
                    i + 1
                )));
            }
            if points[..i].contains(p) {
                return Err(GoppaError::InvalidSpec(format!(
                    "point {} repeats an earlier point",
                    i + 1
                )));
            }
        }
        Ok(Self {
            field: field.clone(),
            r,
            s,
            points,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Dimension `r - s + 1` of the evaluation code.
    pub fn k(&self) -> usize {
        self.r - self.s + 1
    }

    pub fn points(&self) -> &[P1Point] {
        &self.points
    }

    pub fn coordinates(&self) -> Vec<Poly> {
        self.points
            .iter()
            .map(|p| p.coordinate(&self.field))
            .collect()
    }
}

/// Projective coefficient vector `(lambda_s : ... : lambda_r)`, scaled so the
/// first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaVector {
    lambdas: Vec<FieldElement>,
}

impl GammaVector {
    pub fn new(field: &FieldSpec, lambdas: Vec<FieldElement>) -> Result<Self, GoppaError> {
        if lambdas.iter().any(|&x| !field.contains(x)) {
            return Err(GoppaError::InvalidGamma(format!(
                "entries not over {field}"
            )));
        }
        let lead = lambdas
            .iter()
            .copied()
            .find(|x| !x.is_zero())
            .ok_or_else(|| GoppaError::InvalidGamma("all coefficients are zero".into()))?;
        let inv = field.inv(lead)?;
        Ok(Self {
            lambdas: lambdas.into_iter().map(|x| field.mul(x, inv)).collect(),
        })
    }

    pub fn from_indices(field: &FieldSpec, indices: &[u32]) -> Result<Self, GoppaError> {
        let lambdas = indices
            .iter()
            .map(|&i| field.try_element(i as u64))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, lambdas)
    }

    /// The unit vector selecting `t^{s+i}`.
    pub fn unit(field: &FieldSpec, len: usize, i: usize) -> Self {
        let mut lambdas = vec![field.zero(); len];
        lambdas[i] = field.one();
        Self { lambdas }
    }

    pub fn lambdas(&self) -> &[FieldElement] {
        &self.lambdas
    }

    pub fn indices(&self) -> Vec<u32> {
        self.lambdas.iter().map(|x| x.index()).collect()
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambdas.iter().map(|x| x.index().to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// `k x n` generator with entry `(i, j) = alpha_j^{s+i}`.
pub fn evaluation_matrix(spec: &GoppaSpec) -> PolyMatrix {
    let alphas = spec.coordinates();
    let entries = (0..spec.k())
        .flat_map(|i| alphas.iter().map(move |a| a.pow((spec.s + i) as u64)))
        .collect();
    PolyMatrix::new(&spec.field, spec.k(), spec.n(), entries).expect("positive dimensions")
}

/// `(n - r + s - 1) x n` matrix with entry `(m, j) = h_j alpha_j^m`, where
/// `h_j = 1 / (alpha_j^s prod_{i != j} (alpha_j - alpha_i))`.
pub fn parity_matrix(spec: &GoppaSpec) -> Result<RationalMatrix, GoppaError> {
    let rows = spec.n() + spec.s - spec.r - 1;
    if rows == 0 {
        return Err(GoppaError::DegenerateDual);
    }
    let f = &spec.field;
    let alphas = spec.coordinates();
    let dens: Vec<Poly> = alphas
        .iter()
        .enumerate()
        .map(|(j, aj)| {
            alphas
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(aj.pow(spec.s as u64), |acc, (_, ai)| acc.mul(&aj.sub(ai)))
        })
        .collect();
    let mut entries = Vec::with_capacity(rows * spec.n());
    for m in 0..rows {
        for (aj, den) in alphas.iter().zip(&dens) {
            entries.push(RationalFn::new(aj.pow(m as u64), den.clone())?);
        }
    }
    Ok(RationalMatrix::new(f, rows, spec.n(), entries)?)
}

/// The one-dimensional code spanned by `sum_i lambda_i t^i`, i.e. the row
/// `gamma * evaluation_matrix(spec)`.
pub fn gamma_code(spec: &GoppaSpec, gamma: &GammaVector) -> Result<ConvCode, GoppaError> {
    if gamma.lambdas.len() != spec.k() {
        return Err(GoppaError::InvalidGamma(format!(
            "{} coefficients for a code of dimension {}",
            gamma.lambdas.len(),
            spec.k()
        )));
    }
    let f = &spec.field;
    let row = spec
        .coordinates()
        .iter()
        .map(|a| {
            gamma
                .lambdas
                .iter()
                .enumerate()
                .fold(Poly::zero(f), |acc, (i, &l)| {
                    acc.add(&a.pow((spec.s + i) as u64).scale(l))
                })
        })
        .collect();
    Ok(ConvCode::new(PolyMatrix::from_rows(f, vec![row])?)?)
}

/// A built code together with the data it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub spec: GoppaSpec,
    pub gamma: GammaVector,
    pub code: ConvCode,
}

impl Construction {
    pub fn from_spec(spec: GoppaSpec, gamma: GammaVector) -> Result<Self, GoppaError> {
        let code = gamma_code(&spec, &gamma)?;
        Ok(Self { spec, gamma, code })
    }
}

/// Entries `a_i^r (z + c^{i-1})^r`: points `alpha_i = a_i z + a_i c^{i-1}`
/// with `s = r`.
pub fn build_power_family(
    field: &FieldSpec,
    r: usize,
    scalars: &[FieldElement],
    c: FieldElement,
) -> Result<Construction, GoppaError> {
    let n = scalars.len();
    let max = field.q() as usize - 1;
    if n > max {
        return Err(GoppaError::TooManyPoints { n, max });
    }
    if c.is_zero() || field.element_order(c)? != max as u64 {
        return Err(GoppaError::NotPrimitive(c));
    }
    let points = scalars
        .iter()
        .enumerate()
        .map(|(i, &a)| P1Point::new(a, field.mul(a, field.pow(c, i as u64))))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = GoppaSpec::new(field, r, r, points)?;
    let gamma = GammaVector::unit(field, 1, 0);
    Construction::from_spec(spec, gamma)
}

/// Entries `sum_{m=0}^r (a^{i-1} z + b)^m`: points `alpha_i = a^{i-1} z + b`
/// with `s = 0` and all coefficients equal to 1.
pub fn build_geometric_family(
    field: &FieldSpec,
    n: usize,
    r: usize,
    a: FieldElement,
    b: FieldElement,
) -> Result<Construction, GoppaError> {
    let order = if a.is_zero() {
        0
    } else {
        field.element_order(a)?
    };
    if order < n as u64 {
        return Err(GoppaError::OrderTooSmall { order, n });
    }
    let points = (0..n)
        .map(|i| P1Point::new(field.pow(a, i as u64), b))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = GoppaSpec::new(field, r, 0, points)?;
    let gamma = GammaVector::new(field, vec![field.one(); r + 1])?;
    Construction::from_spec(spec, gamma)
}

/// The `b = 0` case of [`build_geometric_family`]: `sum_{i<=r} z^i (1, a^i, ..., a^{(n-1)i})`.
pub fn build_unshifted_family(
    field: &FieldSpec,
    n: usize,
    r: usize,
    a: FieldElement,
) -> Result<Construction, GoppaError> {
    build_geometric_family(field, n, r, a, field.zero())
}

/// Coefficient rows `G_j = binom(r, j) (a_1^r, a_2^r c^{r-j}, ..., a_n^r c^{(n-1)(r-j)})`.
pub fn power_family_coefficients(
    field: &FieldSpec,
    r: usize,
    scalars: &[FieldElement],
    c: FieldElement,
) -> Vec<Matrix> {
    (0..=r)
        .map(|j| {
            let bin = field.binomial(r as u64, j as u64);
            let row = scalars
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let t = field.mul(field.pow(a, r as u64), field.pow(c, (i * (r - j)) as u64));
                    field.mul(bin, t)
                })
                .collect();
            Matrix::new(field, 1, scalars.len(), row).expect("one row")
        })
        .collect()
}

/// `c_j = sum_{m=j}^r binom(m, j) b^{m-j}`.
pub fn geometric_family_scalar(
    field: &FieldSpec,
    r: usize,
    b: FieldElement,
    j: usize,
) -> FieldElement {
    (j..=r).fold(field.zero(), |acc, m| {
        field.add(
            acc,
            field.mul(
                field.binomial(m as u64, j as u64),
                field.pow(b, (m - j) as u64),
            ),
        )
    })
}

/// Coefficient rows `G_j = c_j (1, a^j, ..., a^{(n-1) j})`.
pub fn geometric_family_coefficients(
    field: &FieldSpec,
    n: usize,
    r: usize,
    a: FieldElement,
    b: FieldElement,
) -> Vec<Matrix> {
    (0..=r)
        .map(|j| {
            let cj = geometric_family_scalar(field, r, b, j);
            let row = (0..n)
                .map(|i| field.mul(cj, field.pow(a, (i * j) as u64)))
                .collect();
            Matrix::new(field, 1, n, row).expect("one row")
        })
        .collect()
}

/// On-disk form of a code: generator rows as constant-first coefficient
/// strings, plus the construction data when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub gen: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<GoppaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<u32>>,
}

impl CodeFile {
    pub fn from_code(code: &ConvCode) -> Self {
        Self {
            field: code.field().clone(),
            gen: code.gen().to_strings(),
            spec: None,
            gamma: None,
        }
    }

    pub fn from_construction(c: &Construction) -> Self {
        Self {
            spec: Some(c.spec.clone()),
            gamma: Some(c.gamma.indices()),
            ..Self::from_code(&c.code)
        }
    }

    /// Entries may be rational (`num/den`); denominators are cleared row by row.
    pub fn code(&self) -> Result<ConvCode, GoppaError> {
        let m = RationalMatrix::from_strings(&self.field, &self.gen)?;
        Ok(ConvCode::from_rational(&m)?)
    }
}
