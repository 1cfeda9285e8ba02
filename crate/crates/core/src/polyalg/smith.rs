//! Smith normal form over the Euclidean domain `F_q[z]`.
//!
//! Pivot rule: the nonzero entry of least degree in the active submatrix,
//! ties broken by smallest `(row, col)`. The transforms are tracked
//! alongside, together with `V^{-1}` so that a basic generator can be read
//! off without inverting `V` afterwards.

use super::{Poly, PolyError, PolyMatrix};

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub s: PolyMatrix,
    pub v: PolyMatrix,
    pub v_inv: PolyMatrix,
    /// `min(rows, cols)` diagonal entries, monic or zero, each dividing the next.
    pub invariant_factors: Vec<Poly>,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

fn find_pivot(s: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            // strict comparison keeps the smallest (row, col) among equal degrees
            if best.is_none_or(|(bi, bj)| e.degree() < s.get(bi, bj).degree()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &PolyMatrix) -> Result<SmithForm, PolyError> {
    if m.is_zero() {
        return Err(PolyError::ZeroMatrix);
    }
    let field = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = PolyMatrix::identity(&field, rows);
    let mut v = PolyMatrix::identity(&field, cols);
    let mut v_inv = PolyMatrix::identity(&field, cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&s, t) else {
                break;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = s.get(i, t).divmod(&pivot)?;
                let nq = q.neg();
                s.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = s.get(t, j).divmod(&pivot)?;
                // S <- S E, V <- V E, V^{-1} <- E^{-1} V^{-1} for E = I - q e_t e_j^T
                s.add_col_multiple(j, t, &q.neg());
                v.add_col_multiple(j, t, &q.neg());
                v_inv.add_row_multiple(t, j, &q);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // pivot row and column are clear; enforce divisibility of the rest
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !pivot.divides(s.get(i, j))));
            match offender {
                Some(i) => {
                    let one = Poly::one(&field);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if let Some(lead) = s.get(t, t).lead() {
            let inv = field.inv(lead)?;
            s.scale_row(t, inv);
            u.scale_row(t, inv);
        }
    }

    let invariant_factors = (0..rows.min(cols)).map(|t| s.get(t, t).clone()).collect();
    Ok(SmithForm {
        u,
        s,
        v,
        v_inv,
        invariant_factors,
    })
}
