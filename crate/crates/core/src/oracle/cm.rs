//! Cassaigne–Maillot closed form for three-term linear forms:
//!
//! ```text
//! π m = γ0 log r0 + γ1 log r1 + γ2 log r2 + D((r2/r1) e^{iγ0})   (triangle)
//! π m = π log r0                                                 (otherwise)
//! ```
//!
//! with `r0 ≥ r1 ≥ r2` the moduli and `γ_m` the angle opposite `r_m`.
//! Degenerate triangles `r0 = r1 + r2` take the second branch, which is
//! the limit of the first (`γ0 → π`, `D` of a negative real is 0).

use rug::Float;

use super::OracleError;
use crate::series::CoefficientTuple;
use crate::special::{bloch_wigner, ComplexValue, PrecisionContext};

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleGeometry {
    pub is_triangle: bool,
    /// `γ0 ≥ γ1 ≥ γ2`, present only for a strict triangle.
    pub angles: Option<[Float; 3]>,
}

/// Angle opposite `opposite` in a triangle with the other sides `p`, `q`.
fn opposite_angle(opposite: &Float, p: &Float, q: &Float, prec: u32) -> Float {
    let num = Float::with_val(prec, p.square_ref()) + Float::with_val(prec, q.square_ref())
        - Float::with_val(prec, opposite.square_ref());
    let den = Float::with_val(prec, p * q) * 2u32;
    let mut cos = num / den;
    if cos > 1 {
        cos = Float::with_val(prec, 1);
    } else if cos < -1 {
        cos = Float::with_val(prec, -1);
    }
    cos.acos()
}

/// Triangle test and angles for sides sorted descending.
pub fn triangle_geometry(
    r0: &Float,
    r1: &Float,
    r2: &Float,
    ctx: PrecisionContext,
) -> TriangleGeometry {
    let prec = ctx.working().bits();
    let is_triangle = *r2 > 0 && *r0 < Float::with_val(prec, r1 + r2);
    if !is_triangle {
        return TriangleGeometry {
            is_triangle,
            angles: None,
        };
    }
    let angles = [
        opposite_angle(r0, r1, r2, prec),
        opposite_angle(r1, r0, r2, prec),
        opposite_angle(r2, r0, r1, prec),
    ];
    TriangleGeometry {
        is_triangle,
        angles: Some(angles.map(|g| ctx.float(&g))),
    }
}

/// `m(W_0 Z_0 + W_1 Z_1 + W_2 Z_2)` in closed form.
pub fn mahler_cm(d: &CoefficientTuple, ctx: PrecisionContext) -> Result<Float, OracleError> {
    if d.n() != 2 {
        return Err(OracleError::Domain(
            "the closed form covers n = 2 only".to_string(),
        ));
    }
    let work = ctx.working();
    let prec = work.bits();
    let m = d.sorted_moduli();
    let (r0, r1, r2) = (&m[0], &m[1], &m[2]);
    let geometry = triangle_geometry(r0, r1, r2, work);
    let Some(angles) = geometry.angles else {
        return Ok(ctx.float(r0.ln_ref()));
    };
    let mut total = Float::new(prec);
    for (g, r) in angles.iter().zip([r0, r1, r2]) {
        total += Float::with_val(prec, g * Float::with_val(prec, r.ln_ref()));
    }
    let ratio = Float::with_val(prec, r2 / r1);
    let alpha = ComplexValue::polar(&ratio, &angles[0]);
    total += bloch_wigner(&alpha, work)?;
    Ok(ctx.float(&(total / work.pi())))
}
