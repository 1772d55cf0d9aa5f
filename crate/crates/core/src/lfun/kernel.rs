use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The even entire weight `G(s)` inside the smoothing integral.
///
/// All kinds satisfy `G(0) = 1` and are bounded in vertical strips.
/// `GaussianDip` is the default: it vanishes at `s = +-1/sqrt 2`, which
/// shrinks the leading `x^(1/2 + alpha)` correction of `U` near zero, and it
/// grows slowly enough on the real axis that `U(x)` is below `1e-18` by
/// `x = 40`. The price is that `U` changes sign; the audit in
/// [`crate::verify`] reports it.
///
/// `ExpS2MinusS4` and `ExpS2` grow rapidly off the imaginary direction, so
/// their `U` decays far too slowly to truncate the approximate functional
/// equation; they are kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothingKernel {
    /// `exp(s^2 / 20) (1 - 2 s^2)`
    #[default]
    GaussianDip,
    /// `exp(s^2 / 20)`
    Gaussian,
    /// `exp(s^2 - s^4)`
    ExpS2MinusS4,
    /// `exp(s^2)`
    ExpS2,
}

const GAUSS_WIDTH: f64 = 0.05;

impl SmoothingKernel {
    pub fn eval(self, s: Complex64) -> Complex64 {
        let s2 = s * s;
        match self {
            SmoothingKernel::GaussianDip => (s2 * GAUSS_WIDTH).exp() * (1.0 - 2.0 * s2),
            SmoothingKernel::Gaussian => (s2 * GAUSS_WIDTH).exp(),
            SmoothingKernel::ExpS2MinusS4 => (s2 - s2 * s2).exp(),
            SmoothingKernel::ExpS2 => s2.exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SmoothingKernel::GaussianDip => "gaussian_dip",
            SmoothingKernel::Gaussian => "gaussian",
            SmoothingKernel::ExpS2MinusS4 => "exp_s2_minus_s4",
            SmoothingKernel::ExpS2 => "exp_s2",
        }
    }

    pub const ALL: [SmoothingKernel; 4] = [
        SmoothingKernel::GaussianDip,
        SmoothingKernel::Gaussian,
        SmoothingKernel::ExpS2MinusS4,
        SmoothingKernel::ExpS2,
    ];
}

impl std::str::FromStr for SmoothingKernel {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        SmoothingKernel::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| crate::Error::domain(format!("unknown kernel '{s}'")))
    }
}

/// `G(s)` for the given kernel.
pub fn kernel_eval(kernel: SmoothingKernel, s: Complex64) -> Complex64 {
    kernel.eval(s)
}
