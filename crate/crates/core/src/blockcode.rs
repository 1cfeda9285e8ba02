//! Linear block codes over `F_q`: rank, exhaustive minimum distance, MDS test.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

/// Default cap on the size `q^k` of an enumerated message space.
pub const DEFAULT_BLOCK_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("message space of size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("entries over different fields")]
    MixedFields,
}

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, BlockError> {
        if entries.len() != rows * cols {
            return Err(BlockError::DimensionMismatch(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !field.contains(*e)) {
            return Err(BlockError::MixedFields);
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds from rows of element indices.
    pub fn from_indices(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self, BlockError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(BlockError::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&i| {
                field
                    .try_element(i as u64)
                    .map_err(|_| BlockError::MixedFields)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Self {
            field: field.clone(),
            rows: n,
            cols: n,
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    /// Entries as element indices, row-major.
    pub fn indices(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.index()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| self.field.mul(e, c)).collect(),
        }
    }

    /// Vertical concatenation, first argument on top.
    pub fn stack(parts: &[&Matrix]) -> Result<Self, BlockError> {
        let first = parts
            .first()
            .ok_or_else(|| BlockError::DimensionMismatch("empty stack".into()))?;
        if parts
            .iter()
            .any(|m| m.cols != first.cols || m.field != first.field)
        {
            return Err(BlockError::DimensionMismatch(
                "stacked blocks differ in width".into(),
            ));
        }
        let entries = parts
            .iter()
            .flat_map(|m| m.entries.iter().copied())
            .collect();
        Self::new(
            &first.field,
            parts.iter().map(|m| m.rows).sum(),
            first.cols,
            entries,
        )
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Self, BlockError> {
        if self.cols != other.rows {
            return Err(BlockError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for l in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, l), other.get(l, j)));
                }
                entries.push(acc);
            }
        }
        Self::new(f, self.rows, other.cols, entries)
    }

    /// Rank over `F_q` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a: Vec<Vec<FieldElement>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = f.inv(a[rank][col]).expect("nonzero pivot");
            for i in rank + 1..self.rows {
                let factor = f.mul(a[i][col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    a[i][j] = f.sub(a[i][j], f.mul(factor, a[rank][j]));
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
                format!("({})", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// Hamming weight of a vector over `F_q`.
pub fn hamming_weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// A linear `[n, k]` code given by a full-rank generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCode {
    gen: Matrix,
}

impl BlockCode {
    pub fn new(gen: Matrix) -> Result<Self, BlockError> {
        let rank = gen.rank();
        if rank != gen.rows() || gen.rows() == 0 {
            return Err(BlockError::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(Self { gen })
    }

    pub fn gen(&self) -> &Matrix {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Minimum weight over all nonzero codewords, by enumerating the
    /// message space. Only messages whose first nonzero symbol is 1 are
    /// visited; scaling does not change the weight.
    pub fn hamming_distance(&self, budget: u64) -> Result<usize, BlockError> {
        let q = self.gen.field().q() as u64;
        let k = self.k();
        let size = q.checked_pow(k as u32).unwrap_or(u64::MAX);
        if size > budget {
            return Err(BlockError::BudgetExceeded { size, budget });
        }
        let f = self.gen.field();
        let n = self.n();
        let mut best = n;
        let mut word = vec![f.zero(); n];
        for lead in 0..k {
            let tail = k - lead - 1;
            let count = q.pow(tail as u32);
            for code in 0..count {
                word.copy_from_slice(self.gen.row(lead));
                let mut c = code;
                for row in lead + 1..k {
                    let m = f.element((c % q) as u32);
                    c /= q;
                    if m.is_zero() {
                        continue;
                    }
                    for (w, &g) in word.iter_mut().zip(self.gen.row(row)) {
                        *w = f.add(*w, f.mul(m, g));
                    }
                }
                best = best.min(hamming_weight(&word));
            }
        }
        Ok(best)
    }

    pub fn singleton_bound(&self) -> usize {
        self.n() - self.k() + 1
    }

    pub fn is_mds(&self, budget: u64) -> Result<bool, BlockError> {
        Ok(self.hamming_distance(budget)? == self.singleton_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &FieldSpec, rows: &[&[u32]]) -> Matrix {
        Matrix::from_indices(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(m(&f, &[&[1, 1, 1], &[1, 2, 4]]).rank(), 2);
        assert_eq!(m(&f, &[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(Matrix::identity(&f, 3).rank(), 3);
        assert_eq!(m(&f, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn distance_examples() {
        let f = FieldSpec::prime(5).unwrap();
        let rep = BlockCode::new(m(&f, &[&[1, 1, 1]])).unwrap();
        assert_eq!(rep.hamming_distance(DEFAULT_BLOCK_BUDGET).unwrap(), 3);
        assert!(rep.is_mds(DEFAULT_BLOCK_BUDGET).unwrap());
        let rs = BlockCode::new(m(&f, &[&[1, 1, 1], &[1, 2, 4]])).unwrap();
        assert_eq!(rs.hamming_distance(DEFAULT_BLOCK_BUDGET).unwrap(), 2);
        assert!(rs.is_mds(DEFAULT_BLOCK_BUDGET).unwrap());
        let single = BlockCode::new(m(&f, &[&[1, 2, 4]])).unwrap();
        assert_eq!(single.hamming_distance(DEFAULT_BLOCK_BUDGET).unwrap(), 3);
        let coord = BlockCode::new(m(&f, &[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert!(!coord.is_mds(DEFAULT_BLOCK_BUDGET).unwrap());
    }

    #[test]
    fn errors() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            BlockCode::new(m(&f, &[&[1, 2], &[2, 4]])),
            Err(BlockError::RankDeficient { rank: 1, rows: 2 })
        ));
        let rs = BlockCode::new(m(&f, &[&[1, 1, 1], &[1, 2, 4]])).unwrap();
        assert_eq!(
            rs.hamming_distance(10),
            Err(BlockError::BudgetExceeded {
                size: 25,
                budget: 10
            })
        );
    }
}
