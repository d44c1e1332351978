//! High-precision Mahler measures of complex linear forms and closed-form
//! 3-step ramble integrals.
//!
//! The crate is split into four layers:
//!
//! * [`special`]: scalar kernels at a chosen binary precision: AGM and the
//!   complete elliptic integral `K`, the complex dilogarithm and the
//!   Bloch–Wigner function, Bessel `J0`, harmonic numbers, exact multinomials.
//! * [`ramble`]: the closed form of `I(a) = ∫ t J0(at) J0(r0 t) J0(r1 t) J0(r2 t) dt`
//!   and the terminal-distance density `p3(a) = a I(a)` of a three-step
//!   planar walk, with its singular set and divergence asymptotics.
//! * [`series`]: the squared-multinomial moment coefficients `a(n,k,D)`, the
//!   two Mahler-measure series `E1`/`E2`, the shifted sums `S_D(l)`,
//!   truncation bounds and the empirical error constant `C`.
//! * [`oracle`]: independent ground truth: the Cassaigne–Maillot closed form,
//!   torus quadrature, oscillatory Bessel quadrature and Monte Carlo walks.

pub mod catalog;
pub mod decimal;
pub mod literal;
pub mod oracle;
pub mod ramble;
pub mod series;
pub mod special;

pub use special::{ComplexValue, PrecisionContext};
