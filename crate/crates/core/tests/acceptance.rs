//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion may carry a pinned expected failure: the exact set of cells
//! known not to be satisfiable. The run fails if any other cell fails, or if
//! a pinned cell starts passing, so the expectation cannot hide regressions.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use convgoppa::blockcode::DEFAULT_BLOCK_BUDGET;
use convgoppa::classify::{sweep, DEFAULT_SWEEP_BUDGET};
use convgoppa::convcode::{
    code_degree, free_distance_search, internal_degree, is_basic, stacked_mds_certificate,
    DEFAULT_SEARCH_BUDGET,
};
use convgoppa::goppa::{
    build_geometric_family, build_power_family, build_unshifted_family, evaluation_matrix,
    geometric_family_coefficients, geometric_family_scalar, parity_matrix, Construction,
    GoppaError, P1Point,
};
use convgoppa::polyalg::smith_normal_form;
use convgoppa::{
    analyze, dual_check, AnalysisOptions, CodeAnalysis, ConvCode, GoppaSpec, Poly, PolyMatrix,
    Verdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INSTANCE_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_SAMPLE: usize = 200;
const SMITH_SAMPLE: usize = 500;
const UNIMODULAR_SAMPLE: usize = 100;
const SEED: u64 = 0x5EED_C0DE;

struct Outcome {
    /// Cells that failed, by label.
    failed: BTreeSet<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failed: BTreeSet::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, cell: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.insert(cell.into());
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    run: fn() -> Outcome,
    /// Cells expected to fail, by label prefix, with the reason.
    expected: &'static [&'static str],
    reason: &'static str,
}

/// Checks shared by the closed-form families: degree, canonicity,
/// certificate, exact distance equal to the bound, proven verdict.
fn family_checks(
    out: &mut Outcome,
    cell: &str,
    code: &ConvCode,
    n: usize,
    r: usize,
) -> Option<CodeAnalysis> {
    let start = Instant::now();
    let a = match analyze(code, &AnalysisOptions::default()) {
        Ok(a) => a,
        Err(e) => {
            out.check(format!("{cell}: {e}"), false);
            return None;
        }
    };
    let elapsed = start.elapsed();
    let target = n * (r + 1);
    let cert = a.certificate.as_ref().and_then(|c| c.df_lower);
    out.check(format!("{cell}: delta {} != {r}", a.delta), a.delta == r);
    out.check(format!("{cell}: not canonical"), a.canonical);
    out.check(
        format!("{cell}: certificate {:?}", cert),
        cert == Some(target),
    );
    out.check(
        format!("{cell}: singleton {:?}", a.singleton),
        a.singleton == Some(target),
    );
    out.check(
        format!(
            "{cell}: search {} complete={}",
            a.df_upper, a.search_complete
        ),
        a.df_upper == target && a.search_complete,
    );
    out.check(
        format!("{cell}: verdict {:?}", a.mds),
        a.mds == Verdict::Proven,
    );
    out.check(
        format!("{cell}: {elapsed:?} over limit"),
        elapsed < INSTANCE_TIME_LIMIT,
    );
    Some(a)
}

fn power_instances() -> Vec<(usize, usize, Result<Construction, GoppaError>)> {
    let f = field(5);
    let mut v = Vec::new();
    for n in 2..=4 {
        for r in 1..=2 {
            v.push((
                n,
                r,
                build_power_family(&f, r, &vec![f.one(); n], f.element(2)),
            ));
        }
    }
    v
}

fn geometric_instances() -> Vec<(usize, usize, u32, Construction)> {
    let f = field(5);
    let mut v = Vec::new();
    for b in [0, 1] {
        for n in [3, 4] {
            for r in [1, 2] {
                let c = build_geometric_family(&f, n, r, f.element(2), f.element(b)).unwrap();
                v.push((n, r, b, c));
            }
        }
    }
    v
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let f = field(5);
    let mut proven = 0;
    for (n, r, built) in power_instances() {
        let cell = format!("n={n} r={r}");
        match built {
            Ok(c) => {
                if family_checks(&mut out, &cell, &c.code, n, r)
                    .is_some_and(|a| a.mds == Verdict::Proven)
                {
                    proven += 1;
                }
            }
            Err(e) => {
                // the builder enforces r < n; analyze the same row built by hand
                let row: Vec<Poly> = (0..n)
                    .map(|i| Poly::linear(&f, f.one(), f.pow(f.element(2), i as u64)).pow(r as u64))
                    .collect();
                let code = ConvCode::new(PolyMatrix::from_rows(&f, vec![row]).unwrap()).unwrap();
                family_checks(&mut out, &cell, &code, n, r);
                out.check(format!("{cell}: builder rejects ({e})"), false);
                out.detail.push_str(&format!("[{cell} built by hand] "));
            }
        }
    }
    out.detail
        .push_str(&format!("{proven}/6 cells proven with n(r+1) = bound"));
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let f = field(5);
    let instances = geometric_instances();
    for (n, r, b, c) in &instances {
        let cell = format!("b={b} n={n} r={r}");
        family_checks(&mut out, &cell, &c.code, *n, *r);
        let closed = geometric_family_coefficients(&f, *n, *r, f.element(2), f.element(*b));
        out.check(
            format!("{cell}: decomposition differs from closed form"),
            c.code.gen().coeff_decomposition() == closed,
        );
        // the closed-form scalars against a direct expansion of sum_m (z + b)^m
        let direct = (0..=*r).fold(Poly::zero(&f), |acc, m| {
            acc.add(&Poly::linear(&f, f.one(), f.element(*b)).pow(m as u64))
        });
        for j in 0..=*r {
            out.check(
                format!("{cell}: c_{j}"),
                geometric_family_scalar(&f, *r, f.element(*b), j) == direct.coeff(j),
            );
        }
    }
    let c0 = geometric_family_scalar(&f, 1, f.one(), 0);
    let c1 = geometric_family_scalar(&f, 1, f.one(), 1);
    out.check(
        "c_0 = 2, c_1 = 1 at r=1, b=1",
        c0 == f.element(2) && c1 == f.one(),
    );
    out.detail = format!(
        "{} instances; c_0={} c_1={} at r=1 b=1",
        instances.len(),
        c0,
        c1
    );
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for (p, a, max_n) in [(5, 2, 4), (7, 3, 6)] {
        let f = field(p);
        let a = f.element(a);
        for n in 2..=max_n {
            for r in 1..=2.min(n - 1) {
                // column j is sum_i a^{ij} z^i
                let row: Vec<Poly> = (0..n)
                    .map(|j| Poly::new(&f, (0..=r).map(|i| f.pow(a, (i * j) as u64)).collect()))
                    .collect();
                let expected = PolyMatrix::from_rows(&f, vec![row]).unwrap();
                let built = build_unshifted_family(&f, n, r, a).unwrap();
                out.check(format!("q={p} n={n} r={r}"), built.code.gen() == &expected);
                count += 1;
            }
        }
    }
    out.detail = format!("{count} generators equal coefficient for coefficient");
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let (mut certified, mut brute) = (0, 0);
    for i in 0..ORACLE_SAMPLE {
        let f = field(if i % 2 == 0 { 5 } else { 7 });
        let n = rng.gen_range(1..=4);
        let row = loop {
            let row: Vec<Poly> = (0..n).map(|_| random_poly(&mut rng, &f, 2)).collect();
            if row.iter().any(|p| !p.is_zero()) {
                break row;
            }
        };
        let code = ConvCode::new(PolyMatrix::from_rows(&f, vec![row]).unwrap()).unwrap();
        let cert = stacked_mds_certificate(&code, DEFAULT_BLOCK_BUDGET).unwrap();
        let Some(df) = cert.df_lower else { continue };
        certified += 1;
        let delta = internal_degree(code.gen()).unwrap();
        let search = free_distance_search(&code, n + delta, DEFAULT_SEARCH_BUDGET).unwrap();
        out.check(
            format!("#{i}: certificate {df} vs search {}", search.df_upper),
            df == search.df_upper,
        );
        if (f.q() as u64).pow((n + delta + 1) as u32) <= 200_000 {
            brute += 1;
            out.check(
                format!("#{i}: brute force"),
                naive_min_weight(&code, n + delta) == df,
            );
        }
    }
    let elapsed = start.elapsed();
    out.check(
        format!("{elapsed:?} over limit"),
        elapsed < ORACLE_TIME_LIMIT,
    );
    out.detail = format!(
        "{ORACLE_SAMPLE} sampled, {certified} certified, {brute} also brute-forced, {} mismatches, {elapsed:.2?}",
        out.failed.len()
    );
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let f = field(5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut count = 0;
    for n in 2..=5 {
        for r in 0..=2usize.min(n - 1) {
            for s in 0..=r {
                if n + s == r + 1 {
                    continue;
                }
                for t in 0..6 {
                    let mut pairs: Vec<(u32, u32)> = (1..5)
                        .flat_map(|a| (0..5).map(move |b| (a, b)))
                        .filter(|&(_, b)| s == 0 || b != 0)
                        .collect();
                    pairs.shuffle(&mut rng);
                    let points = pairs[..n]
                        .iter()
                        .map(|&(a, b)| P1Point::new(f.element(a), f.element(b)).unwrap())
                        .collect();
                    let spec = GoppaSpec::new(&f, r, s, points).unwrap();
                    let cell = format!("n={n} r={r} s={s} #{t}");
                    let h = parity_matrix(&spec).unwrap();
                    let g = evaluation_matrix(&spec);
                    out.check(
                        format!("{cell}: G H^T != 0"),
                        g.to_rational().matmul(&h.transpose()).unwrap().is_zero(),
                    );
                    out.check(format!("{cell}: rank"), h.rank() == n - r + s - 1);
                    let code = ConvCode::new(g).unwrap();
                    match dual_check(&code, &h) {
                        Ok(rep) => out.check(
                            format!(
                                "{cell}: dual degree {} vs {}",
                                rep.dual_degree, rep.primal_degree
                            ),
                            rep.degrees_match,
                        ),
                        Err(e) => out.check(format!("{cell}: {e}"), false),
                    }
                    count += 1;
                }
            }
        }
    }
    out.detail = format!("{count} specs over F_5, {} failures", out.failed.len());
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut rank_deficient = 0;
    for i in 0..SMITH_SAMPLE {
        let f = field([2, 3, 5][i % 3]);
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k..=5);
        let m = loop {
            let m = random_matrix(&mut rng, &f, k, n, 3);
            if !m.is_zero() {
                break m;
            }
        };
        let sf = smith_normal_form(&m).unwrap();
        let cell = format!("#{i} q={} {k}x{n}", f.q());
        let product = sf.u.matmul(&m).unwrap().matmul(&sf.v).unwrap();
        out.check(format!("{cell}: UMV != S"), product == sf.s);
        let unit_det = |x: &PolyMatrix| x.det().map(|d| d.is_unit()).unwrap_or(false);
        out.check(format!("{cell}: U not unimodular"), unit_det(&sf.u));
        out.check(format!("{cell}: V not unimodular"), unit_det(&sf.v));
        out.check(
            format!("{cell}: V V^-1 != I"),
            sf.v.matmul(&sf.v_inv).unwrap() == PolyMatrix::identity(&f, n),
        );
        let diagonal = (0..k).all(|r| (0..n).all(|c| r == c || sf.s.get(r, c).is_zero()));
        out.check(format!("{cell}: S not diagonal"), diagonal);
        let d = &sf.invariant_factors;
        out.check(
            format!("{cell}: not monic"),
            d.iter().all(|x| x.is_zero() || x.is_monic()),
        );
        out.check(
            format!("{cell}: chain"),
            d.windows(2).all(|w| w[0].divides(&w[1])),
        );
        let prod = d.iter().fold(Poly::one(&f), |acc, x| acc.mul(x));
        let g = m
            .minors(k)
            .unwrap()
            .iter()
            .fold(Poly::zero(&f), |acc, x| euclid_gcd(&acc, x));
        out.check(format!("{cell}: minor gcd"), prod == g);
        if sf.rank() < k {
            rank_deficient += 1;
        }
    }
    out.detail = format!(
        "{SMITH_SAMPLE} matrices ({rank_deficient} rank deficient), {} failures",
        out.failed.len()
    );
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut gens: Vec<(String, ConvCode)> = Vec::new();
    for (n, r, c) in power_instances() {
        if let Ok(c) = c {
            gens.push((format!("power n={n} r={r} row"), c.code));
        }
    }
    for (n, r, b, c) in geometric_instances() {
        gens.push((format!("geometric b={b} n={n} r={r} row"), c.code.clone()));
        gens.push((
            format!("geometric b={b} n={n} r={r} evaluation"),
            ConvCode::new(evaluation_matrix(&c.spec)).unwrap(),
        ));
    }
    for t in 0..UNIMODULAR_SAMPLE {
        let (name, code) = &gens[t % gens.len()];
        let f = code.field();
        let b = random_unimodular(&mut rng, f, code.k(), 8, 2);
        let moved = ConvCode::new(b.matmul(code.gen()).unwrap()).unwrap();
        let cell = format!("#{t} {name}");
        out.check(
            format!("{cell}: degree"),
            code_degree(&moved).unwrap() == code_degree(code).unwrap(),
        );
        out.check(
            format!("{cell}: basic"),
            is_basic(moved.gen()).unwrap() == is_basic(code.gen()).unwrap(),
        );
    }
    let multi_row = gens.iter().filter(|(_, c)| c.k() > 1).count();
    out.detail = format!(
        "{UNIMODULAR_SAMPLE} transforms over {} generators ({multi_row} with k > 1), {} failures",
        gens.len(),
        out.failed.len()
    );
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let f = field(5);
    let c = build_geometric_family(&f, 3, 1, f.element(2), f.one()).unwrap();
    let rep = sweep(&c.spec, &AnalysisOptions::default(), DEFAULT_SWEEP_BUDGET).unwrap();
    out.check(
        format!("{} rows", rep.rows.len()),
        rep.rows.len() == 6 && rep.total == 6,
    );
    let row = |l: &[u32]| rep.rows.iter().find(|r| r.lambda == l);
    out.check(
        "(1:1) proven",
        row(&[1, 1]).is_some_and(|r| r.verdict == Verdict::Proven),
    );
    out.check(
        "(1:0) proven with delta 0, df 3",
        row(&[1, 0]).is_some_and(|r| {
            r.verdict == Verdict::Proven
                && r.delta == Some(0)
                && r.df_lower == Some(3)
                && r.df_upper == Some(3)
        }),
    );
    out.check(format!("proven {}", rep.proven), rep.proven >= 2);
    out.check("tally", rep.proven + rep.refuted + rep.unknown == rep.total);
    out.detail = format!(
        "{} rows: proven {}, refuted {}, unknown {}",
        rep.total, rep.proven, rep.refuted, rep.unknown
    );
    out
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "s=r family reproduction",
            run: criterion_1,
            expected: &["n=2 r=2"],
            reason: "n=2, r=2 violates r < n: the coefficient stack has 3 rows in 2 columns, so no certificate exists",
        },
        Criterion { id: 2, name: "s=0 family reproduction", run: criterion_2, expected: &[], reason: "" },
        Criterion { id: 3, name: "b=0 generator form", run: criterion_3, expected: &[], reason: "" },
        Criterion { id: 4, name: "certificate vs exhaustive search", run: criterion_4, expected: &[], reason: "" },
        Criterion { id: 5, name: "duality suite", run: criterion_5, expected: &[], reason: "" },
        Criterion { id: 6, name: "Smith suite", run: criterion_6, expected: &[], reason: "" },
        Criterion { id: 7, name: "degree invariance", run: criterion_7, expected: &[], reason: "" },
        Criterion { id: 8, name: "classification sweep", run: criterion_8, expected: &[], reason: "" },
    ];

    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let elapsed = start.elapsed();
        let status = if out.failed.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{status} criterion {}: {} - {} ({elapsed:.2?})",
            c.id, c.name, out.detail
        );
        for cell in &out.failed {
            println!("     failed: {cell}");
        }
        if !c.expected.is_empty() {
            println!("     expected failure: {}", c.reason);
        }
        let stray: Vec<&String> = out
            .failed
            .iter()
            .filter(|f| !c.expected.iter().any(|e| f.starts_with(&format!("{e}:"))))
            .collect();
        let recovered: Vec<&&str> = c
            .expected
            .iter()
            .filter(|e| !out.failed.iter().any(|f| f.starts_with(&format!("{e}:"))))
            .collect();
        if !stray.is_empty() || !recovered.is_empty() {
            unexpected += 1;
            println!("     UNEXPECTED: failures outside the pinned set {stray:?}, pinned cells passing {recovered:?}");
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
