//! Full analysis record of a code and the control-matrix check.

use serde::{Deserialize, Serialize};

use crate::blockcode::DEFAULT_BLOCK_BUDGET;
use crate::field::FieldSpec;
use crate::polyalg::RationalMatrix;

use super::{
    basic_generator, code_degree, free_distance_search, internal_degree, is_basic, is_canonical,
    singleton_bound, stacked_mds_certificate, Certificate, ConvCode, ConvError,
    DEFAULT_SEARCH_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown,
}

/// Where a free-distance lower bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Certificate,
    /// A search that closed every branch below its minimum.
    Exhaustive,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Message degree limit; `n + delta` when absent.
    pub j_max: Option<usize>,
    pub search_budget: u64,
    pub block_budget: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            j_max: None,
            search_budget: DEFAULT_SEARCH_BUDGET,
            block_budget: DEFAULT_BLOCK_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeAnalysis {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub ext_degree: usize,
    pub basic: bool,
    pub canonical: bool,
    /// Absent when `n = k`.
    pub singleton: Option<usize>,
    pub df_lower: Option<usize>,
    pub df_lower_provenance: Provenance,
    pub df_upper: usize,
    /// `search(J=..)`
    pub df_upper_provenance: String,
    pub search_complete: bool,
    pub search_nodes: u64,
    /// Minimizing message for the analyzed generator, constant-first coefficients.
    pub witness: Vec<String>,
    pub certificate: Option<Certificate>,
    pub mds: Verdict,
    pub notes: Vec<String>,
    /// The basic generator the search and certificate ran on.
    pub generator: Vec<Vec<String>>,
}

pub fn analyze(code: &ConvCode, opts: &AnalysisOptions) -> Result<CodeAnalysis, ConvError> {
    let (n, k) = (code.n(), code.k());
    let mut notes = Vec::new();

    let basic = is_basic(code.gen())?;
    let canonical = is_canonical(code.gen())?;
    let analyzed = if basic {
        code.clone()
    } else {
        notes.push(
            "generator is not basic; analysis runs on a basic generator of the same code".into(),
        );
        ConvCode::new(basic_generator(code.gen())?)?
    };
    let delta = internal_degree(analyzed.gen())?;
    let singleton = (n > k).then(|| singleton_bound(n, k, delta)).transpose()?;

    let j_max = opts.j_max.unwrap_or(n + delta);
    let search = free_distance_search(&analyzed, j_max, opts.search_budget)?;
    notes.extend(search.warnings.iter().cloned());
    if !search.complete {
        notes.push(format!(
            "search truncated at J={j_max}; some message longer than J may weigh less than {}",
            search.df_upper
        ));
    }

    let certificate = if k == 1 {
        let c = stacked_mds_certificate(&analyzed, opts.block_budget)?;
        if let Some(name) = &c.failure {
            notes.push(format!("certificate failed at {name}"));
        }
        Some(c)
    } else {
        None
    };

    let cert_df = certificate.as_ref().and_then(|c| c.df_lower);
    let (df_lower, df_lower_provenance) = match (cert_df, search.complete) {
        (Some(d), complete) => {
            if complete && d != search.df_upper {
                return Err(ConvError::Internal(format!(
                    "certificate gives {d} but complete search gives {}",
                    search.df_upper
                )));
            }
            (Some(d), Provenance::Certificate)
        }
        (None, true) => (Some(search.df_upper), Provenance::Exhaustive),
        (None, false) => (None, Provenance::None),
    };
    if let Some(lo) = df_lower {
        if lo > search.df_upper {
            return Err(ConvError::Internal(format!(
                "lower bound {lo} exceeds upper bound {}",
                search.df_upper
            )));
        }
    }
    if let Some(s) = singleton {
        if search.df_upper > s {
            return Err(ConvError::Internal(format!(
                "found distance {} exceeds the Singleton bound {s}",
                search.df_upper
            )));
        }
    }

    let mds = match singleton {
        None => {
            notes.push("n = k: no Singleton bound".into());
            Verdict::Unknown
        }
        // the witness is a codeword lighter than the bound
        Some(s) if search.df_upper < s => Verdict::Refuted,
        Some(s) if df_lower == Some(s) => Verdict::Proven,
        Some(_) => Verdict::Unknown,
    };

    Ok(CodeAnalysis {
        field: code.field().clone(),
        n,
        k,
        delta,
        ext_degree: code.ext_degree(),
        basic,
        canonical,
        singleton,
        df_lower,
        df_lower_provenance,
        df_upper: search.df_upper,
        df_upper_provenance: format!("search(J={j_max})"),
        search_complete: search.complete,
        search_nodes: search.nodes,
        witness: search.witness.iter().map(|p| p.to_coeff_string()).collect(),
        certificate,
        mds,
        notes,
        generator: analyzed.gen().to_strings(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub orthogonal: bool,
    pub rank: usize,
    pub dual_degree: usize,
    pub primal_degree: usize,
    pub degrees_match: bool,
}

/// Checks that `h` is a control matrix of `code` (`G H^T = 0`, rank `n - k`)
/// and compares the degree of the code `h` generates with the degree of `code`.
pub fn dual_check(code: &ConvCode, h: &RationalMatrix) -> Result<DualReport, ConvError> {
    let (n, k) = (code.n(), code.k());
    if h.cols() != n || h.rows() + k != n {
        return Err(ConvError::DimensionMismatch(format!(
            "control matrix is {}x{}, expected {}x{n}",
            h.rows(),
            h.cols(),
            n - k
        )));
    }
    if h.field() != code.field() {
        return Err(ConvError::DimensionMismatch(
            "control matrix over a different field".into(),
        ));
    }
    if !code.gen().to_rational().matmul(&h.transpose())?.is_zero() {
        return Err(ConvError::NotOrthogonal);
    }
    let rank = h.rank();
    if rank != n - k {
        return Err(ConvError::RankDeficient);
    }
    let dual = h.clear_denominators();
    let dual_degree = internal_degree(&basic_generator(&dual)?)?;
    let primal_degree = code_degree(code)?;
    Ok(DualReport {
        orthogonal: true,
        rank,
        dual_degree,
        primal_degree,
        degrees_match: dual_degree == primal_degree,
    })
}
