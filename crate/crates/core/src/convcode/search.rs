//! Free-distance search by depth-first enumeration of messages.
//!
//! Messages `u(z) = u_0 + u_1 z + ...` with `u_0 != 0` (normalized so its first
//! nonzero coordinate is 1) are grown one coefficient at a time. Codeword
//! coefficient `x_i` depends only on `u_0..u_i`, so the weight of
//! `x_0..x_i` bounds every extension from below and subtrees whose prefix
//! weight already reaches the best leaf are cut. A prefix ending in `m`
//! zero symbols (`m` the largest entry degree) has returned to the zero
//! state: any continuation is a concatenation of two codewords and is cut too.
//!
//! With a basic generator, every polynomial codeword is `u(z) G(z)` for a
//! polynomial message, so the result is exact whenever no un-pruned branch
//! was left at the depth limit.

use crate::blockcode::hamming_weight;
use crate::field::{FieldElement, FieldSpec};
use crate::polyalg::Poly;

use super::{is_basic, ConvCode, ConvError};

/// Default cap on visited search nodes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Largest message alphabet `q^k` the search precomputes products for.
const MAX_ALPHABET: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Least weight found over messages of degree `<= j_max`.
    pub df_upper: usize,
    /// Minimizing message, one polynomial per generator row.
    pub witness: Vec<Poly>,
    pub j_max: usize,
    /// True when every longer message was shown to weigh at least `df_upper`.
    pub complete: bool,
    /// A proven lower bound on the free distance; present only for basic generators.
    pub lower_bound: Option<usize>,
    pub nodes: u64,
    pub warnings: Vec<String>,
}

struct Searcher<'a> {
    field: &'a FieldSpec,
    mem: usize,
    /// `products[s][t]` is `symbol_s * G_t`
    products: Vec<Vec<Vec<FieldElement>>>,
    j_max: usize,
    budget: u64,
    nodes: u64,
    best: usize,
    best_msg: Vec<usize>,
    frontier_min: usize,
    msg: Vec<usize>,
    scratch: Vec<FieldElement>,
}

impl Searcher<'_> {
    /// Codeword coefficient at time `t` from the current message prefix.
    fn output(&mut self, t: usize) -> usize {
        let zero = self.field.zero();
        self.scratch.iter_mut().for_each(|x| *x = zero);
        let lo = t.saturating_sub(self.mem);
        let hi = t.min(self.msg.len() - 1);
        for l in lo..=hi {
            let s = self.msg[l];
            if s == 0 {
                continue;
            }
            let row = &self.products[s][t - l];
            for (x, &g) in self.scratch.iter_mut().zip(row) {
                *x = self.field.add(*x, g);
            }
        }
        hamming_weight(&self.scratch)
    }

    fn visit(&mut self, prefix_weight: usize) -> Result<(), ConvError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ConvError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let depth = self.msg.len() - 1;
        if *self.msg.last().expect("nonempty") != 0 {
            // the message may stop here
            let mut total = prefix_weight;
            for t in depth + 1..=depth + self.mem {
                total += self.output(t);
                if total >= self.best {
                    break;
                }
            }
            if total < self.best {
                self.best = total;
                self.best_msg = self.msg.clone();
            }
        }
        if self.mem == 0 {
            return Ok(());
        }
        if depth == self.j_max {
            self.frontier_min = self.frontier_min.min(prefix_weight);
            return Ok(());
        }
        for s in 0..self.products.len() {
            self.msg.push(s);
            let len = self.msg.len();
            let returned = len > self.mem && self.msg[len - self.mem..].iter().all(|&x| x == 0);
            if !returned {
                let w = prefix_weight + self.output(depth + 1);
                if w < self.best {
                    self.visit(w)?;
                }
            }
            self.msg.pop();
        }
        Ok(())
    }
}

/// Minimum of `weight(u(z) G(z))` over nonzero messages with `deg u <= j_max`
/// and `u(0) != 0`, with a minimizing witness.
pub fn free_distance_search(
    code: &ConvCode,
    j_max: usize,
    budget: u64,
) -> Result<SearchResult, ConvError> {
    let field = code.field();
    let (k, n) = (code.k(), code.n());
    let q = field.q() as u64;
    let alphabet = q
        .checked_pow(k as u32)
        .filter(|&a| a <= MAX_ALPHABET)
        .ok_or_else(|| {
            ConvError::BadParameters(format!("message alphabet q^k = {q}^{k} too large"))
        })?;
    let parts = code.gen().coeff_decomposition();
    let mem = parts.len() - 1;

    let symbol = |s: u64| -> Vec<FieldElement> {
        let mut c = s;
        (0..k)
            .map(|_| {
                let e = field.element((c % q) as u32);
                c /= q;
                e
            })
            .collect()
    };
    let products: Vec<Vec<Vec<FieldElement>>> = (0..alphabet)
        .map(|s| {
            let coords = symbol(s);
            parts
                .iter()
                .map(|g| {
                    (0..n)
                        .map(|j| {
                            (0..k).fold(field.zero(), |acc, r| {
                                field.add(acc, field.mul(coords[r], g.get(r, j)))
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut warnings = Vec::new();
    if k > 1 {
        warnings.push(format!(
            "k = {k}: message vectors searched coefficient-wise up to degree {j_max}; df_upper is an upper bound"
        ));
    }
    let basic = is_basic(code.gen())?;
    if !basic {
        warnings
            .push("generator is not basic; only polynomial multiples of it were searched".into());
    }

    let mut searcher = Searcher {
        field,
        mem,
        products,
        j_max,
        budget,
        nodes: 0,
        best: usize::MAX,
        best_msg: Vec::new(),
        frontier_min: usize::MAX,
        msg: Vec::with_capacity(j_max + 1),
        scratch: vec![field.zero(); n],
    };
    for s in 1..alphabet {
        // first nonzero coordinate of u_0 normalized to 1
        let lead = symbol(s)
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonzero symbol");
        if !lead.is_one() {
            continue;
        }
        searcher.msg.push(s as usize);
        let w = searcher.output(0);
        if w < searcher.best {
            searcher.visit(w)?;
        }
        searcher.msg.pop();
    }

    let complete = searcher.frontier_min >= searcher.best;
    let lower_bound = basic.then(|| searcher.best.min(searcher.frontier_min));
    let witness = (0..k)
        .map(|r| {
            Poly::new(
                field,
                searcher
                    .best_msg
                    .iter()
                    .map(|&s| symbol(s as u64)[r])
                    .collect(),
            )
        })
        .collect();
    Ok(SearchResult {
        df_upper: searcher.best,
        witness,
        j_max,
        complete: complete && basic,
        lower_bound,
        nodes: searcher.nodes,
        warnings,
    })
}
