//! `a(n,k,D) = Σ (k; l_0,…,l_n)² Π |W_m|^{2 l_m}` over weak compositions
//! of `k` into `n+1` parts.
//!
//! The multinomial is the telescoping binomial product
//! `C(l_0, l_0)·C(l_0+l_1, l_1)⋯C(k, l_n)`, carried exactly along a
//! depth-first walk over compositions. The single-`k` path and the batch
//! path visit compositions in the same lexicographic order and sum the
//! per-`l_0` groups in the same order, so both produce identical bits.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::CoefficientTuple;
use crate::special::PrecisionContext;

fn pascal(max: usize) -> Vec<Vec<Integer>> {
    let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut row = Vec::with_capacity(n + 1);
        row.push(Integer::from(1));
        for k in 1..n {
            let prev = &rows[n - 1];
            row.push(Integer::from(&prev[k - 1] + &prev[k]));
        }
        if n > 0 {
            row.push(Integer::from(1));
        }
        rows.push(row);
    }
    rows
}

/// `|W_m|^{2j}` by repeated multiplication, `j = 0…max`.
fn powers(d: &CoefficientTuple, max: usize, prec: u32) -> Vec<Vec<Float>> {
    d.moduli_sq()
        .iter()
        .map(|w| {
            let mut row = Vec::with_capacity(max + 1);
            let mut p = Float::with_val(prec, 1);
            row.push(p.clone());
            for _ in 0..max {
                p *= w;
                row.push(p.clone());
            }
            row
        })
        .collect()
}

struct Walker<'a> {
    pascal: &'a [Vec<Integer>],
    powers: &'a [Vec<Float>],
    prec: u32,
}

impl Walker<'_> {
    fn term(&self, mult: &Integer, mono: &Float) -> Float {
        let sq = Integer::from(mult.square_ref());
        Float::with_val(self.prec, &sq) * mono
    }

    /// Adds every composition of the remaining parts with total `≤ limit`
    /// into `acc[total]`.
    fn all_up_to(
        &self,
        m: usize,
        used: usize,
        limit: usize,
        mult: &Integer,
        mono: &Float,
        acc: &mut [Float],
    ) {
        if m == self.powers.len() {
            acc[used] += self.term(mult, mono);
            return;
        }
        for l in 0..=(limit - used) {
            let total = used + l;
            let mult = Integer::from(mult * &self.pascal[total][l]);
            let mono = Float::with_val(self.prec, mono * &self.powers[m][l]);
            self.all_up_to(m + 1, total, limit, &mult, &mono, acc);
        }
    }

    /// Adds every composition of the remaining parts with total exactly `k`.
    fn exactly(
        &self,
        m: usize,
        used: usize,
        k: usize,
        mult: &Integer,
        mono: &Float,
        acc: &mut Float,
    ) {
        if m == self.powers.len() {
            if used == k {
                *acc += self.term(mult, mono);
            }
            return;
        }
        let range = if m + 1 == self.powers.len() {
            (k - used)..=(k - used)
        } else {
            0..=(k - used)
        };
        for l in range {
            let total = used + l;
            let mult = Integer::from(mult * &self.pascal[total][l]);
            let mono = Float::with_val(self.prec, mono * &self.powers[m][l]);
            self.exactly(m + 1, total, k, &mult, &mono, acc);
        }
    }
}

fn coefficient_working(d: &CoefficientTuple, k: usize, prec: u32) -> Float {
    let pascal = pascal(k);
    let powers = powers(d, k, prec);
    let walker = Walker {
        pascal: &pascal,
        powers: &powers,
        prec,
    };
    let mut total = Float::new(prec);
    for l0 in 0..=k {
        let mut group = Float::new(prec);
        walker.exactly(1, l0, k, &Integer::from(1), &powers[0][l0], &mut group);
        total += &group;
    }
    total
}

fn batch_working(d: &CoefficientTuple, max_k: usize, prec: u32) -> Vec<Float> {
    let pascal = pascal(max_k);
    let powers = powers(d, max_k, prec);
    let walker = Walker {
        pascal: &pascal,
        powers: &powers,
        prec,
    };
    let groups: Vec<Vec<Float>> = (0..=max_k)
        .into_par_iter()
        .map(|l0| {
            let mut acc = vec![Float::new(prec); max_k + 1];
            walker.all_up_to(1, l0, max_k, &Integer::from(1), &powers[0][l0], &mut acc);
            acc
        })
        .collect();
    (0..=max_k)
        .map(|k| {
            let mut total = Float::new(prec);
            for group in groups.iter().take(k + 1) {
                total += &group[k];
            }
            total
        })
        .collect()
}

/// `a(n,k,D)` by direct enumeration of the compositions of `k`.
pub fn coefficient_a(d: &CoefficientTuple, k: usize, ctx: PrecisionContext) -> Float {
    ctx.float(&coefficient_working(d, k, ctx.working().bits()))
}

/// `a(n,0…max_k,D)` in one pass over all compositions of total `≤ max_k`.
pub fn coefficient_batch(d: &CoefficientTuple, max_k: usize, ctx: PrecisionContext) -> Vec<Float> {
    batch_working(d, max_k, ctx.working().bits())
        .iter()
        .map(|a| ctx.float(a))
        .collect()
}

/// Coefficients at working precision with the normalized moments
/// `b_k = a_k / c^{2k} = E(|P_D|²/c²)^k ∈ [0, 1]`.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub a: Vec<Float>,
    pub normalized: Vec<Float>,
    pub log_c: Float,
    pub ctx: PrecisionContext,
}

impl Coefficients {
    pub fn compute(d: &CoefficientTuple, max_k: usize, ctx: PrecisionContext) -> Self {
        let prec = ctx.working().bits();
        let a = batch_working(d, max_k, prec);
        let normalized = a
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let scale = Float::with_val(prec, d.c_sq().pow(k as u32));
                Float::with_val(prec, a / &scale)
            })
            .collect();
        let log_c = Float::with_val(prec, d.c().ln_ref());
        Coefficients {
            a,
            normalized,
            log_c,
            ctx,
        }
    }

    pub fn max_k(&self) -> usize {
        self.a.len() - 1
    }
}
