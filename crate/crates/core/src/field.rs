//! Finite fields `F_q`, `q = p^m`, in the polynomial-basis representation.
//!
//! An element of `F_{p^m}` is a vector of `m` residues mod `p`: the coefficients
//! of a polynomial of degree `< m` reduced modulo a monic irreducible `f(x)`.
//! Elements are addressed by their *index* `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`,
//! which is also the enumeration order used everywhere in this crate.
//!
//! Multiplication goes through exp/log tables, but those tables are filled by
//! polynomial-basis multiplication at construction time and are only a cache.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u32),
    #[error("no modulus given for F_{0} and none is tabulated")]
    MissingModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("F_{0} has no element of order q-1 distinct from 1; q >= 3 required")]
    FieldTooSmall(u32),
    #[error("element index {0} out of range for F_{1}")]
    ElementOutOfRange(u64, u32),
    #[error("wrong operand count for {0}")]
    Arity(&'static str),
    #[error("cannot parse field description {0:?}: {1}")]
    Parse(String, String),
}

/// Built-in irreducible moduli (constant term first) for the small extension
/// fields that can be named without an explicit modulus.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

/// Looks up the tabulated modulus for `p^m`, if any.
pub fn tabulated_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    MODULUS_TABLE
        .iter()
        .find(|(tp, tm, _)| *tp == p && *tm == m)
        .map(|(_, _, c)| c.to_vec())
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over `F_p` (constant term first), used only to realize
/// the extension arithmetic and the irreducibility test.
mod fp_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo `b` (`b` nonzero and trimmed).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let dr = r.len() - 1;
            let f = (r[dr] as u64 * lead_inv % p as u64) as u32;
            if f != 0 {
                for (i, &bi) in b.iter().enumerate() {
                    let idx = dr - db + i;
                    let sub = (f as u64 * bi as u64 % p as u64) as u32;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut v);
        v
    }
}

/// Exhaustive trial division of a monic `modulus` of degree `m` by every monic
/// polynomial of degree `1..=m/2` over `F_p`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // enumerate the p^d lower coefficient vectors of a monic degree-d divisor
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if fp_poly::rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    id: u64,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A validated finite field. Cloning is cheap; all clones denote the same field.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

/// An element of a [`FieldSpec`], stored as its index together with the
/// identity of the field it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: u64,
    value: u32,
}

impl FieldElement {
    /// Index of the element: `c_0 + c_1 p + ...` over its coordinates.
    pub fn index(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn field_id(self) -> u64 {
        self.field
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Operation selector for [`FieldSpec::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Neg,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldSpec {
    /// Builds `F_{p^m}`. For `m > 1` the modulus is taken from `modulus`
    /// (constant term first, monic, degree `m`) or from the built-in table.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(FieldError::InvalidModulus(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::FieldTooLarge((p as f64).powi(m as i32) as u64))?;
        let modulus: Vec<u32> = if m == 1 {
            match modulus {
                None | Some([]) => Vec::new(),
                Some(c) if c.len() == 2 && c[1] == 1 && c.iter().all(|&x| x < p) => Vec::new(),
                Some(c) => {
                    return Err(FieldError::InvalidModulus(format!(
                        "prime field F_{p} takes no modulus, got {c:?}"
                    )))
                }
            }
        } else {
            let c = match modulus {
                Some(c) if !c.is_empty() => c.to_vec(),
                _ => tabulated_modulus(p, m).ok_or(FieldError::MissingModulus(q))?,
            };
            if c.len() != m as usize + 1 || c[m as usize] != 1 || c.iter().any(|&x| x >= p) {
                return Err(FieldError::InvalidModulus(format!(
                    "{c:?} is not a monic degree-{m} polynomial over F_{p}"
                )));
            }
            if !is_irreducible(&c, p) {
                return Err(FieldError::ReducibleModulus(coeff_list(&c), p));
            }
            c
        };
        let mut code = 0u64;
        for &c in modulus.iter().rev() {
            code = code * p as u64 + c as u64;
        }
        let id = ((p as u64) << 40) | code;
        let mut inner = Inner {
            p,
            m,
            q: q as u32,
            modulus,
            id,
            primitive: 1,
            exp: Vec::new(),
            log: Vec::new(),
        };
        inner.build_tables();
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn zero(&self) -> FieldElement {
        self.raw(0)
    }

    pub fn one(&self) -> FieldElement {
        self.raw(1)
    }

    #[inline]
    fn raw(&self, value: u32) -> FieldElement {
        FieldElement {
            field: self.inner.id,
            value,
        }
    }

    /// Element with the given index; panics when out of range.
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(
            index < self.q(),
            "element index {index} out of range for F_{}",
            self.q()
        );
        self.raw(index)
    }

    pub fn try_element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= self.q() as u64 {
            return Err(FieldError::ElementOutOfRange(index, self.q()));
        }
        Ok(self.raw(index as u32))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.raw(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.field == self.inner.id && x.value < self.q()
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |v| self.raw(v))
    }

    /// Coordinates of `x` in the polynomial basis `1, x, ..., x^{m-1}`.
    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let p = self.p();
        let mut v = x.value;
        (0..self.m())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement, FieldError> {
        if coords.len() > self.m() as usize || coords.iter().any(|&c| c >= self.p()) {
            return Err(FieldError::ElementOutOfRange(u64::MAX, self.q()));
        }
        Ok(self.raw(index_of(coords, self.p())))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.field == self.inner.id && b.field == self.inner.id);
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a.value + b.value;
            return self.raw(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return self.raw(a.value ^ b.value);
        }
        let (mut x, mut y, mut out, mut place) = (a.value, b.value, 0u32, 1u32);
        for _ in 0..self.inner.m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        self.raw(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.field == self.inner.id);
        let p = self.inner.p;
        if self.inner.m == 1 {
            return self.raw(if a.value == 0 { 0 } else { p - a.value });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.value, 0u32, 1u32);
        for _ in 0..self.inner.m {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        self.raw(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.field == self.inner.id && b.field == self.inner.id);
        if a.value == 0 || b.value == 0 {
            return self.zero();
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        let mut e = inner.log[a.value as usize] + inner.log[b.value as usize];
        if e >= n {
            e -= n;
        }
        self.raw(inner.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        let l = inner.log[a.value as usize];
        Ok(self.raw(inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.value == 0 {
            return self.zero();
        }
        let inner = &*self.inner;
        let n = (inner.q - 1) as u64;
        let l = inner.log[a.value as usize] as u64;
        self.raw(inner.exp[((l * (e % n)) % n) as usize])
    }

    /// Checked arithmetic entry point: validates field membership and arity.
    pub fn arith(
        &self,
        op: FieldOp,
        operands: &[FieldElement],
    ) -> Result<FieldElement, FieldError> {
        if operands.iter().any(|x| !self.contains(*x)) {
            return Err(FieldError::MixedFields);
        }
        match (op, operands) {
            (FieldOp::Add, &[a, b]) => Ok(self.add(a, b)),
            (FieldOp::Sub, &[a, b]) => Ok(self.sub(a, b)),
            (FieldOp::Mul, &[a, b]) => Ok(self.mul(a, b)),
            (FieldOp::Neg, &[a]) => Ok(self.neg(a)),
            (FieldOp::Inv, &[a]) => self.inv(a),
            (FieldOp::Pow(e), &[a]) => Ok(self.pow(a, e)),
            (FieldOp::Add, _) => Err(FieldError::Arity("add")),
            (FieldOp::Sub, _) => Err(FieldError::Arity("sub")),
            (FieldOp::Mul, _) => Err(FieldError::Arity("mul")),
            (FieldOp::Neg, _) => Err(FieldError::Arity("neg")),
            (FieldOp::Inv, _) => Err(FieldError::Arity("inv")),
            (FieldOp::Pow(_), _) => Err(FieldError::Arity("pow")),
        }
    }

    /// Product in the polynomial basis, computed directly from coordinates.
    /// This is the reference the cached tables are built from.
    pub fn mul_basis(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.raw(self.inner.mul_basis(a.value, b.value))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElement) -> Result<u64, FieldError> {
        if !self.contains(x) {
            return Err(FieldError::MixedFields);
        }
        if x.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.inner.order_basis(x.value))
    }

    /// Least element (in index order) of order `q - 1`.
    pub fn find_primitive(&self) -> Result<FieldElement, FieldError> {
        if self.q() < 3 {
            return Err(FieldError::FieldTooSmall(self.q()));
        }
        Ok(self.raw(self.inner.primitive))
    }

    /// Binomial coefficient `C(n, k)` reduced into the prime subfield.
    pub fn binomial(&self, n: u64, k: u64) -> FieldElement {
        if k > n {
            return self.zero();
        }
        // Lucas: C(n,k) = prod C(n_i, k_i) mod p over base-p digits
        let p = self.p() as u64;
        let (mut n, mut k, mut acc) = (n, k, 1u64);
        while n > 0 || k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return self.zero();
            }
            let mut c = 1u64;
            for i in 0..ki {
                c = c * (ni - i) % p;
            }
            let mut d = 1u64;
            for i in 1..=ki {
                d = d * i % p;
            }
            // d is a unit mod p since ki < p
            let dinv = {
                let (mut r, mut b, mut e) = (1u64, d, p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                r
            };
            acc = acc * c % p * dinv % p;
            n /= p;
            k /= p;
        }
        self.raw(acc as u32)
    }

    /// Parses an element written as its index.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| FieldError::Parse(s.to_string(), "expected an element index".into()))?;
        self.try_element(v)
    }
}

fn index_of(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn coeff_list(c: &[u32]) -> String {
    c.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Inner {
    fn coords(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn mul_basis(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let mut ca = self.coords(a);
        let mut cb = self.coords(b);
        fp_poly::trim(&mut ca);
        fp_poly::trim(&mut cb);
        let prod = fp_poly::mul(&ca, &cb, self.p);
        let r = fp_poly::rem(&prod, &self.modulus, self.p);
        index_of(&r, self.p)
    }

    fn pow_basis(&self, a: u32, mut e: u64) -> u32 {
        let (mut r, mut base) = (1u32, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_basis(r, base);
            }
            base = self.mul_basis(base, base);
            e >>= 1;
        }
        r
    }

    fn order_basis(&self, a: u32) -> u64 {
        let mut ord = (self.q - 1) as u64;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow_basis(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    fn build_tables(&mut self) {
        let n = self.q - 1;
        let primitive = (1..self.q)
            .find(|&x| self.order_basis(x) == n as u64)
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_basis(x, primitive);
        }
        self.primitive = primitive;
        self.exp = exp;
        self.log = log;
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.id.hash(state)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.q(), self)
    }
}

/// Canonical `p^m:modulus` form, e.g. `5` or `2^2:1,1,1`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() == 1 {
            write!(f, "{}", self.p())
        } else {
            write!(
                f,
                "{}^{}:{}",
                self.p(),
                self.m(),
                coeff_list(self.modulus())
            )
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `p`, `p^m` (tabulated modulus) or `p^m:c0,c1,...,cm`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| FieldError::Parse(s.to_string(), why.to_string());
        let s = s.trim();
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| bad("bad characteristic"))?,
                m.trim()
                    .parse::<u32>()
                    .map_err(|_| bad("bad extension degree"))?,
            ),
            None => (
                head.trim()
                    .parse::<u32>()
                    .map_err(|_| bad("bad characteristic"))?,
                1,
            ),
        };
        let coeffs = match modulus {
            Some(list) => Some(
                list.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| bad("bad modulus coefficient"))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        FieldSpec::new(p, m, coeffs.as_deref())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
