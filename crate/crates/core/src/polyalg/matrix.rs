use std::fmt;

use crate::blockcode::Matrix;
use crate::field::FieldSpec;

use super::{gcd_all, Degree, Poly, PolyError, RationalFn};

/// Dense row-major matrix over `F_q[z]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Poly>,
    ) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(PolyError::MixedFields);
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Poly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    /// Lifts a constant matrix.
    pub fn from_constant(m: &Matrix) -> Self {
        let field = m.field();
        let entries = m
            .entries()
            .iter()
            .map(|&c| Poly::constant(field, c))
            .collect();
        Self {
            field: field.clone(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.field);
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(other.get(l, j)));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Poly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Poly::one(&self.field);
        let mut negate = false;
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&self.field)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.exact_div(&prev)?;
                }
                a[i][k] = Poly::zero(&self.field);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// All order-`order` minors: column sets in lexicographic order, and for each,
    /// row sets in lexicographic order.
    pub fn minors(&self, order: usize) -> Result<Vec<Poly>, PolyError> {
        if order == 0 || order > self.rows.min(self.cols) {
            return Err(PolyError::DimensionMismatch(format!(
                "order-{order} minors of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let row_sets = combinations(self.rows, order);
        let mut out = Vec::new();
        for cols in combinations(self.cols, order) {
            for rows in &row_sets {
                out.push(self.submatrix(rows, &cols).det()?);
            }
        }
        Ok(out)
    }

    /// True iff the determinant is a nonzero constant.
    pub fn is_unimodular(&self) -> Result<bool, PolyError> {
        Ok(self.det()?.is_unit())
    }

    /// Largest entry degree.
    pub fn max_degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn row_degrees(&self) -> Vec<Degree> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(Poly::degree)
                    .max()
                    .unwrap_or(Degree::NegInfinity)
            })
            .collect()
    }

    /// Splits `M = G_0 + G_1 z + ... + G_d z^d` with `d` the largest entry degree.
    /// A zero matrix decomposes as `[0]`.
    pub fn coeff_decomposition(&self) -> Vec<Matrix> {
        let d = self.max_degree().finite().unwrap_or(0);
        (0..=d)
            .map(|t| {
                let entries = self.entries.iter().map(|p| p.coeff(t)).collect();
                Matrix::new(&self.field, self.rows, self.cols, entries).expect("dimensions match")
            })
            .collect()
    }

    /// Reassembles `sum G_t z^t`.
    pub fn from_coefficients(parts: &[Matrix]) -> Result<Self, PolyError> {
        let first = parts
            .first()
            .ok_or_else(|| PolyError::DimensionMismatch("no coefficients".into()))?;
        let (field, rows, cols) = (first.field().clone(), first.rows(), first.cols());
        if parts.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(PolyError::DimensionMismatch(
                "coefficient shapes differ".into(),
            ));
        }
        let entries = (0..rows * cols)
            .map(|idx| Poly::new(&field, parts.iter().map(|m| m.entries()[idx]).collect()))
            .collect();
        Self::new(&field, rows, cols, entries)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, j).add(&s.mul(factor));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += factor * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, dst).add(&s.mul(factor));
            self.set(i, dst, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: crate::field::FieldElement) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Rows as constant-first coefficient strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Poly::to_coeff_string).collect())
            .collect()
    }

    pub fn from_strings(field: &FieldSpec, rows: &[Vec<String>]) -> Result<Self, PolyError> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| Poly::parse(field, s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(field, parsed)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .cloned()
                .map(RationalFn::from_poly)
                .collect(),
        }
    }

    /// Monic gcd of all entries.
    pub fn content(&self) -> Poly {
        gcd_all(&self.field, &self.entries)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over `F_q(z)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RationalFn>,
}

impl RationalMatrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<RationalFn>,
    ) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(PolyError::MixedFields);
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFn {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[RationalFn] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFn::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RationalFn::zero(&self.field);
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(other.get(l, j)));
                    }
                }
                entries.push(acc);
            }
        }
        Self::new(&self.field, self.rows, other.cols, entries)
    }

    /// Rank over `F_q(z)` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<RationalFn>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = a[rank][col].inv().expect("nonzero pivot");
            for i in rank + 1..self.rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].mul(&inv);
                for j in col..self.cols {
                    let t = a[i][j].sub(&f.mul(&a[rank][j]));
                    a[i][j] = t;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Multiplies each row by the monic lcm of its denominators.
    pub fn clear_denominators(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row
                .iter()
                .fold(Poly::one(&self.field), |acc, e| acc.lcm(e.den()));
            for e in row {
                let factor = l.exact_div(e.den()).expect("lcm is a multiple");
                entries.push(e.num().mul(&factor));
            }
        }
        PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(RationalFn::to_text).collect())
            .collect()
    }

    pub fn from_strings(field: &FieldSpec, rows: &[Vec<String>]) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|s| RationalFn::parse(field, s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, r, c, entries)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
