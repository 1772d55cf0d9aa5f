//! The smoothing integral `U_alpha(x)` on a vertical line, evaluated by the
//! composite trapezoid rule.
//!
//! For real characters of either parity the integrand is
//! `G(s) pi^(-s/2) Gamma((s0 + kappa + s)/2) / Gamma((s0 + kappa)/2) x^(-s) / s`
//! with `s0 = 1/2 + alpha` and `kappa` the parity of the character.
//!
//! For `x < 1` the line is moved left past the simple pole at `s = 0`
//! (residue 1), which keeps `x^(-s)` small on the contour and avoids the
//! cancellation that the configured line would suffer as `x -> 0`.

use super::afe::AfeConfig;
use super::gamma::{ln_gamma, ln_gamma_complex};
use crate::summation::CompensatedSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Imaginary residue accepted from the quadrature.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// Parity of a real primitive character, `chi(-1) = (-1)^kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(d: i64) -> Self {
        if d < 0 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn kappa(self) -> f64 {
        match self {
            Parity::Even => 0.0,
            Parity::Odd => 1.0,
        }
    }
}

/// Trapezoid nodes on one vertical line.
#[derive(Debug, Clone)]
struct Line {
    c: f64,
    t0: f64,
    step: f64,
    weights: Vec<Complex64>,
    dweights: Vec<Complex64>,
}

/// Precomputed trapezoid nodes for one `(alpha, parity)` pair.
#[derive(Debug, Clone)]
pub struct SmoothingIntegral {
    alpha: f64,
    parity: Parity,
    right: Line,
    left: Line,
}

// rotation recurrence is reseeded this often to keep phase drift ~1e-15
const RESEED: usize = 32;

impl Line {
    fn new(c: f64, shift: f64, cfg: &AfeConfig) -> Self {
        let intervals = (2.0 * cfg.quad_tmax / cfg.quad_step).round().max(2.0) as usize;
        let step = 2.0 * cfg.quad_tmax / intervals as f64;
        let ln_norm = ln_gamma(shift / 2.0);
        let ln_pi = PI.ln();
        let mut weights = Vec::with_capacity(intervals + 1);
        let mut dweights = Vec::with_capacity(intervals + 1);
        for j in 0..=intervals {
            let t = -cfg.quad_tmax + j as f64 * step;
            let s = Complex64::new(c, t);
            let lg = ln_gamma_complex((s + shift) / 2.0) - ln_norm - s * (ln_pi / 2.0);
            let trap = if j == 0 || j == intervals { 0.5 } else { 1.0 };
            let w = cfg.kernel.eval(s) * lg.exp() / s * (trap * step / (2.0 * PI));
            let w = if w.is_finite() {
                w
            } else {
                Complex64::new(0.0, 0.0)
            };
            weights.push(w);
            dweights.push(-s * w);
        }
        Self {
            c,
            t0: -cfg.quad_tmax,
            step,
            weights,
            dweights,
        }
    }

    fn sums(&self, u: f64, with_derivative: bool) -> (Complex64, Complex64) {
        let (mut ur, mut ui) = (CompensatedSum::new(), CompensatedSum::new());
        let (mut dr, mut di) = (CompensatedSum::new(), CompensatedSum::new());
        let rot = Complex64::from_polar(1.0, -self.step * u);
        let mut phase = Complex64::new(1.0, 0.0);
        for (j, w) in self.weights.iter().enumerate() {
            if j % RESEED == 0 {
                phase = Complex64::from_polar(1.0, -(self.t0 + j as f64 * self.step) * u);
            } else {
                phase *= rot;
            }
            let term = w * phase;
            ur.add(term.re);
            ui.add(term.im);
            if with_derivative {
                let dt = self.dweights[j] * phase;
                dr.add(dt.re);
                di.add(dt.im);
            }
        }
        let scale = (-self.c * u).exp();
        (
            Complex64::new(ur.value(), ui.value()) * scale,
            Complex64::new(dr.value(), di.value()) * scale,
        )
    }
}

impl SmoothingIntegral {
    pub fn new(alpha: f64, parity: Parity, cfg: &AfeConfig) -> Result<Self> {
        cfg.validate()?;
        cfg.check_alpha(alpha)?;
        let shift = 0.5 + alpha + parity.kappa();
        Ok(Self {
            alpha,
            parity,
            right: Line::new(cfg.quad_line, shift, cfg),
            // halfway to the first Gamma pole at s = -shift
            left: Line::new(-shift / 2.0, shift, cfg),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nodes(&self) -> usize {
        self.right.weights.len()
    }

    /// `(U, dU/du)` at `u = ln x`, both complex before the residue check.
    fn sums(&self, u: f64, with_derivative: bool) -> (Complex64, Complex64) {
        if u < 0.0 {
            let (v, dv) = self.left.sums(u, with_derivative);
            (v + 1.0, dv)
        } else {
            self.right.sums(u, with_derivative)
        }
    }

    /// The raw complex quadrature value at `x`.
    pub fn eval_complex(&self, x: f64) -> Complex64 {
        self.sums(x.ln(), false).0
    }

    /// `U(x)`, failing if the quadrature leaves an imaginary residue.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("U requires x > 0, got {x}")));
        }
        let z = self.eval_complex(x);
        check_residue(z, x)?;
        Ok(z.re)
    }

    /// `U` and its derivative with respect to `ln x`.
    pub fn eval_log_derivative(&self, u: f64) -> Result<(f64, f64)> {
        let (v, dv) = self.sums(u, true);
        check_residue(v, u.exp())?;
        Ok((v.re, dv.re))
    }
}

fn check_residue(z: Complex64, x: f64) -> Result<()> {
    if !z.re.is_finite() || z.im.abs() > IMAG_TOLERANCE {
        return Err(Error::numeric(format!(
            "smoothing quadrature did not converge at x = {x}: imaginary part {:e}",
            z.im
        )));
    }
    Ok(())
}

/// `U_alpha(x)` for an even character.
pub fn u_alpha(x: f64, alpha: f64, cfg: &AfeConfig) -> Result<f64> {
    u_alpha_parity(x, alpha, Parity::Even, cfg)
}

pub fn u_alpha_parity(x: f64, alpha: f64, parity: Parity, cfg: &AfeConfig) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("U requires x > 0, got {x}")));
    }
    SmoothingIntegral::new(alpha, parity, cfg)?.eval(x)
}

/// A non-increasing upper envelope `E(x) >= sup_{y >= x} |U(y)|`, sampled
/// on a logarithmic grid with a safety factor.
#[derive(Debug, Clone)]
pub(crate) struct DecayEnvelope {
    u0: f64,
    du: f64,
    suffix: Vec<f64>,
    beyond: f64,
}

const ENV_X_LO: f64 = 0.25;
const ENV_X_HI: f64 = 400.0;
const ENV_DU: f64 = 0.01;
const ENV_MARGIN: f64 = 10.0;
const ENV_FLOOR: f64 = 1e-16;

impl DecayEnvelope {
    pub(crate) fn new(integral: &SmoothingIntegral) -> Self {
        let u0 = ENV_X_LO.ln();
        let n = ((ENV_X_HI.ln() - u0) / ENV_DU).ceil() as usize + 1;
        let abs: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| integral.eval_complex((u0 + i as f64 * ENV_DU).exp()).norm())
            .collect();
        let mut suffix = vec![0.0; n];
        let mut run = 0.0f64;
        for i in (0..n).rev() {
            run = run.max(abs[i]);
            suffix[i] = run * ENV_MARGIN;
        }
        let tail = n - n / 10;
        let beyond = if suffix[tail] < ENV_FLOOR {
            suffix[n - 1]
        } else {
            f64::INFINITY
        };
        Self {
            u0,
            du: ENV_DU,
            suffix,
            beyond,
        }
    }

    pub(crate) fn bound(&self, x: f64) -> f64 {
        let u = x.ln();
        if u < self.u0 {
            return f64::INFINITY;
        }
        let i = ((u - self.u0) / self.du) as usize;
        self.suffix.get(i).copied().unwrap_or(self.beyond)
    }

    /// Smallest grid point past which the envelope is below `level`.
    pub(crate) fn decayed_below(&self, level: f64) -> Option<f64> {
        self.suffix
            .iter()
            .position(|&e| e < level)
            .map(|i| (self.u0 + i as f64 * self.du).exp())
    }
}

/// First `n` in `[1, max_terms]` with `E(n / sqrt_q) n^(-beta) < cutoff`.
pub(crate) fn truncation_point(
    env: &DecayEnvelope,
    beta: f64,
    sqrt_q: f64,
    cutoff: f64,
    max_terms: u64,
) -> Result<u64> {
    let negligible = |n: u64| env.bound(n as f64 / sqrt_q) * (n as f64).powf(-beta) < cutoff;
    if !negligible(max_terms) {
        return Err(Error::resource(format!(
            "series truncation not reached within {max_terms} terms (sqrt|d| = {sqrt_q})"
        )));
    }
    let (mut lo, mut hi) = (0u64, max_terms);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if negligible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Cubic Hermite table of `U` in `u = ln x`. Below the table the
/// quadrature is evaluated directly.
#[derive(Debug, Clone)]
pub(crate) struct UTable {
    u0: f64,
    inv_h: f64,
    h: f64,
    values: Vec<f64>,
    derivs: Vec<f64>,
    integral: SmoothingIntegral,
}

pub(crate) const TABLE_STEP: f64 = 0.002;

impl UTable {
    pub(crate) fn new(integral: SmoothingIntegral, u_lo: f64, u_hi: f64) -> Result<Self> {
        let h = TABLE_STEP;
        let n = ((u_hi - u_lo) / h).ceil().max(1.0) as usize + 1;
        let nodes: Vec<(f64, f64)> = (0..n)
            .into_par_iter()
            .map(|i| integral.eval_log_derivative(u_lo + i as f64 * h))
            .collect::<Result<_>>()?;
        let (values, derivs) = nodes.into_iter().unzip();
        Ok(Self {
            u0: u_lo,
            inv_h: 1.0 / h,
            h,
            values,
            derivs,
            integral,
        })
    }

    /// `U(e^u)`; zero past the end of the table.
    #[inline]
    pub(crate) fn eval_log(&self, u: f64) -> f64 {
        let pos = (u - self.u0) * self.inv_h;
        if pos < 0.0 {
            return self.integral.eval_complex(u.exp()).re;
        }
        let i = pos as usize;
        if i + 1 >= self.values.len() {
            return 0.0;
        }
        let t = pos - i as f64;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[i]
            + h10 * self.h * self.derivs[i]
            + h01 * self.values[i + 1]
            + h11 * self.h * self.derivs[i + 1]
    }
}
