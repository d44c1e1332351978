//! Monte Carlo planar walks with three uniform random directions.
//!
//! Samples are drawn in blocks of 65536; block `j` uses ChaCha20 seeded
//! from `seed` on stream `j`, so the histogram depends only on the seed
//! and the sample count, not on the thread count.

use std::cell::RefCell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::quadrature::tanh_sinh;
use super::OracleError;
use crate::ramble::{density, singularity_sets, RambleError, StepLengths};
use crate::special::PrecisionContext;

const BLOCK: u64 = 1 << 16;
pub const RNG_NAME: &str = "ChaCha20";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    /// Samples that fell outside `[lo, hi]` beyond rounding slack.
    pub outside: u64,
    pub samples: u64,
    pub seed: u64,
    pub rng: &'static str,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        let w = self.bin_width();
        (self.lo + i as f64 * w, self.lo + (i + 1) as f64 * w)
    }

    pub fn empirical_density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.samples as f64 * self.bin_width())
    }

    /// `bin_left,bin_right,count,empirical_density,closed_form_density`.
    pub fn to_csv(&self, closed_form: &[f64]) -> String {
        let mut out =
            String::from("bin_left,bin_right,count,empirical_density,closed_form_density\n");
        for i in 0..self.counts.len() {
            let (l, r) = self.bin_edges(i);
            let exact = closed_form.get(i).copied().unwrap_or(f64::NAN);
            out.push_str(&format!(
                "{l},{r},{},{},{exact}\n",
                self.counts[i],
                self.empirical_density(i)
            ));
        }
        out
    }
}

pub fn simulate_walk(
    steps: &StepLengths,
    samples: u64,
    bins: usize,
    seed: u64,
) -> Result<Histogram, OracleError> {
    if samples < 100_000 {
        return Err(OracleError::Domain(format!(
            "need at least 1e5 samples, got {samples}"
        )));
    }
    if bins == 0 {
        return Err(OracleError::Domain("need at least one bin".to_string()));
    }
    let [r0, r1, r2] = steps.to_f64();
    let lo = (r0 - r1 - r2).max(0.0);
    let hi = r0 + r1 + r2;
    let width = (hi - lo) / bins as f64;
    let slack = 1e-12 * hi;
    let blocks = samples.div_ceil(BLOCK);
    let partial: Vec<(Vec<u64>, u64)> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(block);
            let n = BLOCK.min(samples - block * BLOCK);
            let mut counts = vec![0u64; bins];
            let mut outside = 0;
            for _ in 0..n {
                let mut x = 0.0;
                let mut y = 0.0;
                for r in [r0, r1, r2] {
                    let (s, c) = rng.gen_range(0.0..std::f64::consts::TAU).sin_cos();
                    x += r * c;
                    y += r * s;
                }
                let dist = x.hypot(y);
                if dist < lo - slack || dist > hi + slack {
                    outside += 1;
                    continue;
                }
                let idx = (((dist - lo) / width) as usize).min(bins - 1);
                counts[idx] += 1;
            }
            (counts, outside)
        })
        .collect();
    let mut counts = vec![0u64; bins];
    let mut outside = 0;
    for (c, o) in partial {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
        outside += o;
    }
    Ok(Histogram {
        lo,
        hi,
        counts,
        outside,
        samples,
        seed,
        rng: RNG_NAME,
    })
}

/// `p3` in double precision, zero where the closed form diverges.
fn density_f64(x: f64, steps: &StepLengths, ctx: PrecisionContext) -> Result<f64, OracleError> {
    match density(&Float::with_val(ctx.bits(), x), steps, ctx) {
        Ok(v) => Ok(v.to_f64()),
        Err(RambleError::Divergent { .. }) => Ok(0.0),
        Err(e) => Err(e.into()),
    }
}

/// `∫ p3` over `[left, right]`, split at the points of `S*` so that every
/// singularity sits at a tanh–sinh endpoint.
pub fn density_integral(
    steps: &StepLengths,
    left: f64,
    right: f64,
    ctx: PrecisionContext,
) -> Result<f64, OracleError> {
    let mut cuts = vec![left];
    for s in singularity_sets(steps, ctx).s_star {
        let s = s.to_f64();
        if s > left && s < right {
            cuts.push(s);
        }
    }
    cuts.push(right);
    let mut total = 0.0;
    let failure = RefCell::new(None);
    for pair in cuts.windows(2) {
        total += tanh_sinh(
            &|x, _, _| match density_f64(x, steps, ctx) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert_with(|| e.to_string());
                    0.0
                }
            },
            pair[0],
            pair[1],
            6,
        );
    }
    match failure.into_inner() {
        Some(msg) => Err(OracleError::Estimation(msg)),
        None => Ok(total),
    }
}

/// Mean of `p3` over `[left, right]`.
pub fn bin_average_density(
    steps: &StepLengths,
    left: f64,
    right: f64,
    ctx: PrecisionContext,
) -> Result<f64, OracleError> {
    Ok(density_integral(steps, left, right, ctx)? / (right - left))
}

/// `∫ p3` over the whole support.
pub fn total_probability(steps: &StepLengths, ctx: PrecisionContext) -> Result<f64, OracleError> {
    let [r0, r1, r2] = steps.to_f64();
    density_integral(steps, (r0 - r1 - r2).max(0.0), r0 + r1 + r2, ctx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramComparison {
    pub closed_form: Vec<f64>,
    /// Bins whose interval stays clear of the exclusion zones.
    pub compared: Vec<usize>,
    pub max_deviation: f64,
    pub rms_deviation: f64,
    /// RMS of the binomial standard deviation of the empirical density.
    pub rms_noise: f64,
}

/// Bin-by-bin comparison, skipping bins within `exclusion` of a point of `S`.
pub fn compare_histogram(
    hist: &Histogram,
    steps: &StepLengths,
    exclusion: f64,
    ctx: PrecisionContext,
) -> Result<HistogramComparison, OracleError> {
    let s: Vec<f64> = singularity_sets(steps, ctx)
        .s
        .iter()
        .map(Float::to_f64)
        .collect();
    let closed_form = (0..hist.counts.len())
        .into_par_iter()
        .map(|i| {
            let (l, r) = hist.bin_edges(i);
            bin_average_density(steps, l, r, ctx)
        })
        .collect::<Result<Vec<f64>, OracleError>>()?;
    let width = hist.bin_width();
    let n = hist.samples as f64;
    let mut compared = Vec::new();
    let (mut max, mut sq, mut noise) = (0.0f64, 0.0, 0.0);
    for (i, exact) in closed_form.iter().enumerate() {
        let (l, r) = hist.bin_edges(i);
        if s.iter().any(|b| *b > l - exclusion && *b < r + exclusion) {
            continue;
        }
        let dev = (hist.empirical_density(i) - exact).abs();
        let p = (exact * width).clamp(0.0, 1.0);
        max = max.max(dev);
        sq += dev * dev;
        noise += p * (1.0 - p) / n / (width * width);
        compared.push(i);
    }
    let k = compared.len().max(1) as f64;
    Ok(HistogramComparison {
        closed_form,
        compared,
        max_deviation: max,
        rms_deviation: (sq / k).sqrt(),
        rms_noise: (noise / k).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steps(r: [f64; 3]) -> StepLengths {
        StepLengths::from_f64(128, r[0], r[1], r[2]).unwrap()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(64).unwrap()
    }

    #[test]
    fn support_and_determinism() {
        let s = steps([1.0, 1.0, 1.0]);
        let h = simulate_walk(&s, 200_000, 30, 7).unwrap();
        assert_eq!((h.lo, h.hi), (0.0, 3.0));
        assert_eq!(h.outside, 0);
        assert_eq!(h.counts.iter().sum::<u64>(), 200_000);
        assert_eq!(h, simulate_walk(&s, 200_000, 30, 7).unwrap());
        assert_ne!(h.counts, simulate_walk(&s, 200_000, 30, 8).unwrap().counts);

        let h = simulate_walk(&steps([4.0, 2.0, 1.0]), 100_000, 12, 1).unwrap();
        assert_eq!(h.lo, 1.0);
        assert_eq!(h.outside, 0);
        assert!(simulate_walk(&s, 1000, 10, 1).is_err());
    }

    #[test]
    fn probability_is_normalised() {
        for r in [
            [1.0, 1.0, 1.0],
            [3.0, 2.0, 1.0],
            [4.0, 2.0, 1.0],
            [5.0, 4.0, 3.0],
        ] {
            let p = total_probability(&steps(r), ctx()).unwrap();
            assert!((p - 1.0).abs() < 1e-6, "{r:?}: {p}");
        }
    }

    #[test]
    fn histogram_matches_density() {
        let s = steps([3.0, 2.0, 1.0]);
        let h = simulate_walk(&s, 1_000_000, 60, 11).unwrap();
        let cmp = compare_histogram(&h, &s, 0.05, ctx()).unwrap();
        assert!(cmp.max_deviation < 2e-2, "{}", cmp.max_deviation);
        assert!(
            cmp.rms_deviation < 3.0 * cmp.rms_noise,
            "{} {}",
            cmp.rms_deviation,
            cmp.rms_noise
        );
        let csv = h.to_csv(&cmp.closed_form);
        assert_eq!(csv.lines().count(), 61);
        assert!(csv.starts_with("bin_left,bin_right,count,empirical_density,closed_form_density\n"));
    }

    #[test]
    fn doubling_samples_stays_within_noise() {
        let s = steps([4.0, 2.0, 1.0]);
        let small = simulate_walk(&s, 500_000, 60, 3).unwrap();
        let large = simulate_walk(&s, 1_000_000, 60, 3).unwrap();
        let a = compare_histogram(&small, &s, 0.1, ctx()).unwrap();
        let b = compare_histogram(&large, &s, 0.1, ctx()).unwrap();
        assert!(a.rms_deviation < 3.0 * a.rms_noise);
        assert!(b.rms_deviation < 3.0 * b.rms_noise);
        assert!(b.rms_deviation < 3.0 * a.rms_noise);
    }
}
