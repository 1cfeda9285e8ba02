use std::fmt;

use crate::field::FieldSpec;

use super::{Poly, PolyError};

/// An element of `F_q(z)` kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self {
                num,
                den: Poly::one(&field),
            });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lead_inv = field.inv(den.lead().expect("nonzero"))?;
        Ok(Self {
            num: num.scale(lead_inv),
            den: den.scale(lead_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        Self { num: p, den }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `num/den` in the polynomial text format; the `/den` part is omitted when it is 1.
    pub fn to_text(&self) -> String {
        if self.is_polynomial() {
            self.num.to_coeff_string()
        } else {
            format!(
                "{}/{}",
                self.num.to_coeff_string(),
                self.den.to_coeff_string()
            )
        }
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self, PolyError> {
        match s.split_once('/') {
            Some((n, d)) => Self::new(Poly::parse(field, n)?, Poly::parse(field, d)?),
            None => Ok(Self::from_poly(Poly::parse(field, s)?)),
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
