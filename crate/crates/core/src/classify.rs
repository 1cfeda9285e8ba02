//! Sweeps over every one-dimensional subcode of a Goppa code: enumerate the
//! projective space of coefficient vectors, analyze each code, tally verdicts.

use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convcode::{analyze, AnalysisOptions, Verdict};
use crate::field::FieldSpec;
use crate::goppa::{gamma_code, GammaVector, GoppaError, GoppaSpec};

/// Default cap on the number of projective points in a sweep.
pub const DEFAULT_SWEEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("{count} projective points exceed budget {budget}")]
    BudgetExceeded { count: u64, budget: u64 },
    #[error(transparent)]
    Goppa(#[from] GoppaError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Number of points of `P^dim(F_q)`, or `None` on overflow.
pub fn projective_count(q: u64, dim: usize) -> Option<u64> {
    let top = q.checked_pow(dim as u32 + 1)?;
    Some((top - 1) / (q - 1))
}

/// Every point of `P^dim(F_q)` once, first nonzero coordinate 1, ordered by
/// the position of that coordinate and then lexicographically.
pub fn enumerate_projective(
    field: &FieldSpec,
    dim: usize,
    budget: u64,
) -> Result<Vec<GammaVector>, ClassifyError> {
    let q = field.q() as u64;
    let count = projective_count(q, dim).unwrap_or(u64::MAX);
    if count > budget {
        return Err(ClassifyError::BudgetExceeded { count, budget });
    }
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..=dim {
        let tail = dim - lead;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![0u32; dim + 1];
            v[lead] = 1;
            let mut c = code;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (c % q) as u32;
                c /= q;
            }
            out.push(GammaVector::from_indices(field, &v)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: Vec<u32>,
    pub delta: Option<usize>,
    pub df_lower: Option<usize>,
    pub df_upper: Option<usize>,
    pub singleton: Option<usize>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub spec: GoppaSpec,
    pub total: usize,
    pub proven: usize,
    pub refuted: usize,
    pub unknown: usize,
    pub rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct CsvRow {
    lambda: String,
    delta: Option<usize>,
    df_lower: Option<usize>,
    df_upper: Option<usize>,
    singleton: Option<usize>,
    verdict: Verdict,
}

impl SweepReport {
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), ClassifyError> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            let lambda: Vec<String> = r.lambda.iter().map(u32::to_string).collect();
            w.serialize(CsvRow {
                lambda: lambda.join(":"),
                delta: r.delta,
                df_lower: r.df_lower,
                df_upper: r.df_upper,
                singleton: r.singleton,
                verdict: r.verdict,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, ClassifyError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

fn sweep_point(spec: &GoppaSpec, gamma: &GammaVector, opts: &AnalysisOptions) -> SweepRow {
    let mut row = SweepRow {
        lambda: gamma.indices(),
        delta: None,
        df_lower: None,
        df_upper: None,
        singleton: None,
        verdict: Verdict::Unknown,
        note: None,
    };
    let result = gamma_code(spec, gamma)
        .map_err(|e| e.to_string())
        .and_then(|code| analyze(&code, opts).map_err(|e| e.to_string()));
    match result {
        Ok(a) => {
            row.delta = Some(a.delta);
            row.df_lower = a.df_lower;
            row.df_upper = Some(a.df_upper);
            row.singleton = a.singleton;
            row.verdict = a.mds;
            row.note = a
                .certificate
                .and_then(|c| c.failure)
                .map(|f| format!("certificate failed at {f}"));
        }
        Err(e) => row.note = Some(e),
    }
    row
}

/// Analyzes the code of every projective coefficient vector. Points whose
/// analysis fails (for instance on the search budget) are kept as `unknown`
/// with the error in `note`.
pub fn sweep(
    spec: &GoppaSpec,
    opts: &AnalysisOptions,
    point_budget: u64,
) -> Result<SweepReport, ClassifyError> {
    let gammas = enumerate_projective(spec.field(), spec.r() - spec.s(), point_budget)?;
    let rows: Vec<SweepRow> = gammas
        .par_iter()
        .map(|g| sweep_point(spec, g, opts))
        .collect();
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    Ok(SweepReport {
        spec: spec.clone(),
        total: rows.len(),
        proven: count(Verdict::Proven),
        refuted: count(Verdict::Refuted),
        unknown: count(Verdict::Unknown),
        rows,
    })
}
