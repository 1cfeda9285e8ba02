//! Helpers and brute-force oracles shared by the integration tests. The
//! oracles avoid the library's search and distance code paths.
#![allow(dead_code)]

use convgoppa::{ConvCode, FieldElement, FieldSpec, Poly, PolyMatrix};
use rand::Rng;

pub fn field(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn poly(f: &FieldSpec, coeffs: &[u32]) -> Poly {
    Poly::from_indices(f, coeffs)
}

pub fn row_code(f: &FieldSpec, entries: &[Vec<u32>]) -> ConvCode {
    let row = entries.iter().map(|c| poly(f, c)).collect();
    ConvCode::new(PolyMatrix::from_rows(f, vec![row]).unwrap()).unwrap()
}

pub fn random_poly<R: Rng>(rng: &mut R, f: &FieldSpec, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..f.q())).collect();
    poly(f, &coeffs)
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    f: &FieldSpec,
    rows: usize,
    cols: usize,
    max_deg: usize,
) -> PolyMatrix {
    let entries = (0..rows * cols)
        .map(|_| random_poly(rng, f, max_deg))
        .collect();
    PolyMatrix::new(f, rows, cols, entries).unwrap()
}

pub fn random_unit<R: Rng>(rng: &mut R, f: &FieldSpec) -> FieldElement {
    f.element(rng.gen_range(1..f.q()))
}

/// Product of random elementary operations: row swaps, unit scalings and
/// additions of polynomial multiples of one row to another.
pub fn random_unimodular<R: Rng>(
    rng: &mut R,
    f: &FieldSpec,
    n: usize,
    steps: usize,
    max_deg: usize,
) -> PolyMatrix {
    let mut rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(f) } else { Poly::zero(f) })
                .collect()
        })
        .collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => rows.swap(i, j),
            1 => {
                let c = random_unit(rng, f);
                rows[i] = rows[i].iter().map(|p| p.scale(c)).collect();
            }
            _ if i != j => {
                let m = random_poly(rng, f, max_deg);
                let added: Vec<Poly> = rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| a.add(&b.mul(&m)))
                    .collect();
                rows[i] = added;
            }
            _ => {}
        }
    }
    PolyMatrix::from_rows(f, rows).unwrap()
}

/// All polynomials of degree `<= d`, as coefficient vectors of length `d + 1`.
pub fn all_polys(f: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    (0..q.pow(d as u32 + 1)).map(move |mut c| {
        let coeffs: Vec<FieldElement> = (0..=d)
            .map(|_| {
                let e = f.element((c % q) as u32);
                c /= q;
                e
            })
            .collect();
        Poly::new(f, coeffs)
    })
}

/// Least weight of `u(z) g(z)` over every nonzero message of degree `<= d`,
/// by plain enumeration and polynomial multiplication.
pub fn naive_min_weight(code: &ConvCode, d: usize) -> usize {
    assert_eq!(code.k(), 1);
    let g = code.gen().row(0).to_vec();
    all_polys(code.field(), d)
        .filter(|u| !u.is_zero())
        .map(|u| g.iter().map(|e| u.mul(e).weight()).sum::<usize>())
        .min()
        .unwrap()
}

/// Least Hamming weight over every nonzero message (no projective shortcut).
pub fn naive_block_distance(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let q = f.q() as u64;
    let k = rows.len();
    let n = rows[0].len();
    (1..q.pow(k as u32))
        .map(|mut c| {
            let mut word = vec![f.zero(); n];
            for row in rows {
                let m = f.element((c % q) as u32);
                c /= q;
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(m, g));
                }
            }
            word.iter().filter(|x| !x.is_zero()).count()
        })
        .min()
        .unwrap()
}

/// Monic gcd by repeated remainders, independent of the library's `gcd`.
pub fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.divmod(&b).unwrap().1;
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        a.monic()
    }
}
