//! Central values `L(1/2 + alpha, chi_d)`: the approximate functional
//! equation, the smoothing integral behind it, and a Hurwitz-zeta oracle.

mod afe;
mod exact;
pub mod gamma;
mod hurwitz;
mod kernel;
mod smoothing;

pub use afe::{l_afe, y_alpha, y_factor, AfeConfig, AfeEvaluator, POLE_GUARD};
pub use exact::{l_exact, EXACT_MODULUS_GUARD};
pub use hurwitz::{hurwitz_zeta, zeta};
pub use kernel::{kernel_eval, SmoothingKernel};
pub use smoothing::{u_alpha, u_alpha_parity, Parity, SmoothingIntegral, IMAG_TOLERANCE};
