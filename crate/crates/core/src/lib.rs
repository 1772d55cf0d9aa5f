//! Resonance-method toolkit for quadratic Dirichlet L-functions near the
//! central point.
//!
//! * [`arith`]: Kronecker symbols, fundamental discriminants, sieves and the
//!   small multiplicative functions `h`, `g1`, `g2`.
//! * [`lfun`]: `L(1/2 + alpha, chi_d)` through a smoothed approximate
//!   functional equation, with a Hurwitz-zeta evaluation as the exact
//!   reference.
//! * [`resonator`]: the prime layers, weights and divisor-closed support
//!   set of the resonator, plus the Euler-product amplification `A_N` and
//!   its bounds.
//! * [`resonance`]: resonator values `R_d`, the weighted moments `S1`, `S2`
//!   and the extreme-value scan.
//! * [`verify`]: numerical checks of the character-sum average, the
//!   smoothing function and the structural invariants above.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod lfun;
pub mod resonance;
pub mod resonator;
pub mod summation;
pub mod verify;

pub use arith::{FundamentalDiscriminant, Signs};
pub use error::{Error, Result};
pub use lfun::{AfeConfig, AfeEvaluator, Parity, SmoothingKernel};
pub use resonance::{ScanConfig, ScanReport, Strategy};
pub use resonator::{PrimeLayers, Resonator, ResonatorConfig, ResonatorSet};

/// `zeta(2) = pi^2 / 6`.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// `log log x`.
#[inline]
pub fn loglog(x: f64) -> f64 {
    x.ln().ln()
}

/// `log log log x`.
#[inline]
pub fn logloglog(x: f64) -> f64 {
    x.ln().ln().ln()
}
