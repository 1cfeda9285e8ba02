//! Stacked-MDS certificate for one-dimensional codes.
//!
//! Write `G(z) = G_0 + G_1 z + ... + G_d z^d`. If every `G_j` is a weight-`n`
//! row and every stack `G_j..G_0` and `G_d..G_{d-j}` generates an MDS block
//! code of dimension `j + 1`, then the free distance is exactly `n (d + 1)`.

use serde::{Deserialize, Serialize};

use crate::blockcode::{hamming_weight, BlockCode, Matrix};

use super::{ConvCode, ConvError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    /// e.g. `G_1`, `prefix G_1..G_0`, `suffix G_2..G_1`
    pub name: String,
    /// Coefficient indices in stack order.
    pub rows: Vec<usize>,
    pub rank: usize,
    /// Distance an MDS code of this shape must have.
    pub required: usize,
    /// Measured distance; absent when the stack is rank deficient.
    pub distance: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub delta: usize,
    pub checks: Vec<HypothesisCheck>,
    /// `n (delta + 1)` when every check passed.
    pub df_lower: Option<usize>,
    /// Name of the first failed check.
    pub failure: Option<String>,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        self.df_lower.is_some()
    }
}

fn check_stack(
    parts: &[Matrix],
    rows: Vec<usize>,
    name: String,
    budget: u64,
) -> Result<HypothesisCheck, ConvError> {
    let n = parts[0].cols();
    let refs: Vec<&Matrix> = rows.iter().map(|&i| &parts[i]).collect();
    let stack = Matrix::stack(&refs)?;
    let rank = stack.rank();
    let required = n + 1 - rows.len();
    if rank < rows.len() {
        return Ok(HypothesisCheck {
            name,
            rows,
            rank,
            required,
            distance: None,
            passed: false,
        });
    }
    let distance = if rows.len() == 1 {
        hamming_weight(stack.row(0))
    } else {
        BlockCode::new(stack)?.hamming_distance(budget)?
    };
    Ok(HypothesisCheck {
        name,
        rows,
        rank,
        required,
        distance: Some(distance),
        passed: distance == required,
    })
}

/// Runs every hypothesis and records each outcome; `failure` names the first
/// one that did not hold.
pub fn stacked_mds_certificate(
    code: &ConvCode,
    block_budget: u64,
) -> Result<Certificate, ConvError> {
    if code.k() != 1 {
        return Err(ConvError::NotOneDimensional(code.k()));
    }
    let n = code.n();
    let parts = code.gen().coeff_decomposition();
    let delta = parts.len() - 1;

    let mut checks = Vec::new();
    for j in 0..=delta {
        checks.push(check_stack(
            &parts,
            vec![j],
            format!("G_{j}"),
            block_budget,
        )?);
    }
    for j in 1..=delta.min(n - 1) {
        let prefix: Vec<usize> = (0..=j).rev().collect();
        checks.push(check_stack(
            &parts,
            prefix,
            format!("prefix G_{j}..G_0"),
            block_budget,
        )?);
        let suffix: Vec<usize> = (delta - j..=delta).rev().collect();
        checks.push(check_stack(
            &parts,
            suffix,
            format!("suffix G_{delta}..G_{}", delta - j),
            block_budget,
        )?);
    }
    if delta >= n {
        checks.push(HypothesisCheck {
            name: format!("stack of {} rows in {n} columns", delta + 1),
            rows: (0..=delta).rev().collect(),
            rank: n,
            required: 0,
            distance: None,
            passed: false,
        });
    }

    let failure = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    Ok(Certificate {
        n,
        delta,
        df_lower: failure.is_none().then_some(n * (delta + 1)),
        failure,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockcode::DEFAULT_BLOCK_BUDGET;
    use crate::field::FieldSpec;
    use crate::polyalg::{Poly, PolyMatrix};

    fn row(f: &FieldSpec, entries: &[&[u32]]) -> ConvCode {
        let polys = entries.iter().map(|c| Poly::from_indices(f, c)).collect();
        ConvCode::new(PolyMatrix::from_rows(f, vec![polys]).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let f = FieldSpec::prime(5).unwrap();
        let c =
            stacked_mds_certificate(&row(&f, &[&[1, 1], &[2, 1], &[4, 1]]), DEFAULT_BLOCK_BUDGET)
                .unwrap();
        assert_eq!(c.df_lower, Some(6));
        assert_eq!(c.checks.len(), 4);

        let c = stacked_mds_certificate(&row(&f, &[&[0, 1], &[1], &[1]]), DEFAULT_BLOCK_BUDGET)
            .unwrap();
        assert_eq!(c.df_lower, None);
        assert_eq!(c.failure.as_deref(), Some("G_0"));
        assert_eq!(c.checks[0].distance, Some(2));

        let c =
            stacked_mds_certificate(&row(&f, &[&[1], &[1], &[1]]), DEFAULT_BLOCK_BUDGET).unwrap();
        assert_eq!(c.df_lower, Some(3));
    }

    #[test]
    fn degree_at_least_length_fails() {
        let f = FieldSpec::prime(5).unwrap();
        // (1 + z + z^2, 1 + 2z + 4z^2): three coefficient rows in two columns
        let c = stacked_mds_certificate(&row(&f, &[&[1, 1, 1], &[1, 2, 4]]), DEFAULT_BLOCK_BUDGET)
            .unwrap();
        assert!(!c.certified());
    }

    #[test]
    fn rejects_higher_dimension() {
        let f = FieldSpec::prime(5).unwrap();
        let g = PolyMatrix::identity(&f, 2);
        let code = ConvCode::new(g).unwrap();
        assert_eq!(
            stacked_mds_certificate(&code, DEFAULT_BLOCK_BUDGET),
            Err(ConvError::NotOneDimensional(2))
        );
    }
}
