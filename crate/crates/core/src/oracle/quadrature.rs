//! Double-precision quadrature rules used by the oracles.

/// Gauss–Kronrod 7/15 nodes on `[-1, 1]` (positive half, centre first).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod 7/15 with bisection down to `max_depth` levels.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= abs_tol || max_depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    gauss_kronrod(f, a, m, 0.5 * abs_tol, max_depth - 1)
        + gauss_kronrod(f, m, b, 0.5 * abs_tol, max_depth - 1)
}

/// Tanh–sinh rule on `[a, b]` with step `2^-level`.
///
/// The integrand receives `(x, x − a, b − x)`, the two distances computed
/// without cancellation, so endpoint singularities can be evaluated at
/// nodes that round to the endpoint in `f64`.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: &F, a: f64, b: f64, level: u32) -> f64 {
    let h = 2f64.powi(-(level as i32));
    let width = b - a;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let t_max = 4.0;
    let count = (t_max / h) as i64;
    let mut sum = 0.0;
    for i in -count..=count {
        let t = i as f64 * h;
        let u = half_pi * t.sinh();
        let cosh_u = u.cosh();
        let weight = half_pi * t.cosh() / (cosh_u * cosh_u);
        if weight < 1e-300 {
            continue;
        }
        let to_b = width / (1.0 + (2.0 * u).exp());
        let to_a = width / (1.0 + (-2.0 * u).exp());
        if to_a <= 0.0 || to_b <= 0.0 {
            continue;
        }
        let x = if to_a < to_b { a + to_a } else { b - to_b };
        sum += weight * f(x, to_a, to_b);
    }
    sum * h * 0.5 * width
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kronrod_polynomials_and_oscillation() {
        let v = gauss_kronrod(&|x: f64| x.powi(6), 0.0, 2.0, 1e-14, 0);
        assert!((v - 128.0 / 7.0).abs() < 1e-12);
        let v = gauss_kronrod(
            &|x: f64| (20.0 * x).cos(),
            0.0,
            std::f64::consts::PI,
            1e-13,
            12,
        );
        assert!(v.abs() < 1e-12);
        let v = gauss_kronrod(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, 30);
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // ∫₀¹ log x dx = −1, ∫₀¹ dx/√(x(1−x)) = π
        let v = tanh_sinh(&|_, da, _| da.ln(), 0.0, 1.0, 6);
        assert!((v + 1.0).abs() < 1e-12, "{v}");
        let v = tanh_sinh(&|_, da: f64, db: f64| 1.0 / (da * db).sqrt(), 0.0, 1.0, 6);
        assert!((v - std::f64::consts::PI).abs() < 1e-10, "{v}");
        let v = tanh_sinh(&|x: f64, _, _| x.exp(), 1.0, 3.0, 5);
        assert!((v - (3f64.exp() - 1f64.exp())).abs() < 1e-12);
    }
}
