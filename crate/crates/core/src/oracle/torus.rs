//! Midpoint rule for `m(W0 Z0 + W1 Z1 + W2 Z2)` on the 2-torus.
//!
//! Rotating `θ0` away leaves the average of `log|W0 + W1 e^{iθ1} + W2 e^{iθ2}|`
//! over `[0, 2π)²`. Nodes sit at the centres of a `grid × grid` lattice.

use rayon::prelude::*;

use super::OracleError;
use crate::series::CoefficientTuple;

fn lattice(w: [(f64, f64); 3], grid: usize, offset: f64) -> Option<f64> {
    let step = std::f64::consts::TAU / grid as f64;
    let angles: Vec<(f64, f64)> = (0..grid)
        .map(|i| {
            let (s, c) = ((i as f64 + offset) * step).sin_cos();
            (c, s)
        })
        .collect();
    let rotate = |(a, b): (f64, f64), (c, s): (f64, f64)| (a * c - b * s, a * s + b * c);
    let rows: Vec<Option<f64>> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let (x1, y1) = rotate(w[1], angles[i]);
            let (x, y) = (w[0].0 + x1, w[0].1 + y1);
            let mut row = 0.0;
            for e in &angles {
                let (x2, y2) = rotate(w[2], *e);
                let sq = (x + x2) * (x + x2) + (y + y2) * (y + y2);
                if sq == 0.0 {
                    return None;
                }
                row += 0.5 * sq.ln();
            }
            Some(row)
        })
        .collect();
    let mut total = 0.0;
    for row in rows {
        total += row?;
    }
    Some(total / (grid * grid) as f64)
}

/// Average of `log|P_D|` over a `grid²` half-offset lattice. A lattice
/// node that hits an exact zero moves the whole lattice by an irrational
/// fraction of a cell.
pub fn mahler_quadrature(d: &CoefficientTuple, grid: usize) -> Result<f64, OracleError> {
    if d.n() != 2 {
        return Err(OracleError::Domain(
            "torus quadrature covers n = 2 only".to_string(),
        ));
    }
    if grid < 64 {
        return Err(OracleError::Domain(format!(
            "grid must be at least 64, got {grid}"
        )));
    }
    let w: Vec<(f64, f64)> = d
        .w()
        .iter()
        .map(|z| (z.re.to_f64(), z.im.to_f64()))
        .collect();
    let w = [w[0], w[1], w[2]];
    let mut offset = 0.5;
    for _ in 0..8 {
        if let Some(v) = lattice(w, grid, offset) {
            return Ok(v);
        }
        offset = (offset + std::f64::consts::FRAC_1_SQRT_2).fract();
    }
    Err(OracleError::Estimation(
        "every lattice offset hit a zero of the integrand".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_tuple;
    use crate::special::PrecisionContext;

    fn quad(s: &str, grid: usize) -> f64 {
        let d = parse_tuple(s, PrecisionContext::new(128).unwrap()).unwrap();
        mahler_quadrature(&d, grid).unwrap()
    }

    #[test]
    fn known_values() {
        assert!((quad("4,2,1", 1024) - 4f64.ln()).abs() < 1e-3);
        assert!(quad("1,0,0", 64).abs() < 1e-15);
        assert!((quad("1,1,1", 4096) - 0.3231).abs() < 1e-3);
    }

    #[test]
    fn refinement_settles() {
        let coarse = quad("1,1,1", 2048);
        let fine = quad("1,1,1", 4096);
        assert!((coarse - fine).abs() < 1e-4, "{coarse} {fine}");
    }

    #[test]
    fn exact_zero_is_detected() {
        // 1 − e^{iθ1} vanishes at the θ1 = 0 node of an unshifted lattice
        let w = [(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)];
        assert!(lattice(w, 64, 0.0).is_none());
        assert!(lattice(w, 64, 0.5).unwrap().abs() < 0.1);
        assert!(quad("1,-1,0", 64).abs() < 0.1);
    }

    #[test]
    fn rejects_small_grid_and_other_n() {
        let c = PrecisionContext::new(128).unwrap();
        assert!(mahler_quadrature(&parse_tuple("1,1,1", c).unwrap(), 32).is_err());
        assert!(mahler_quadrature(&parse_tuple("1,1,1,1", c).unwrap(), 64).is_err());
    }
}
