use super::gamma::ln_gamma;
use super::kernel::SmoothingKernel;
use super::smoothing::{truncation_point, DecayEnvelope, Parity, SmoothingIntegral, UTable};
use crate::arith::{kronecker_at_prime, smallest_prime_factors, FundamentalDiscriminant, Signs};
use crate::summation::CompensatedSum;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Quadrature and truncation settings for the approximate functional
/// equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AfeConfig {
    pub kernel: SmoothingKernel,
    /// Real part of the integration line.
    pub quad_line: f64,
    pub quad_step: f64,
    pub quad_tmax: f64,
    pub term_cutoff: f64,
    pub max_terms: u64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        Self {
            kernel: SmoothingKernel::default(),
            quad_line: 1.0,
            quad_step: 0.005,
            quad_tmax: 30.0,
            term_cutoff: 1e-15,
            max_terms: 10_000_000,
        }
    }
}

impl AfeConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.quad_line.is_finite()
            && self.quad_line > 0.0
            && self.quad_step > 0.0
            && self.quad_step.is_finite()
            && self.quad_tmax > 0.0
            && self.quad_tmax.is_finite()
            && self.term_cutoff > 0.0
            && self.term_cutoff < 1.0
            && self.max_terms >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "invalid AFE configuration: {self:?}"
            )))
        }
    }

    pub(crate) fn check_alpha(&self, alpha: f64) -> Result<()> {
        if !(alpha.abs() < 0.5) {
            return Err(Error::domain(format!(
                "|alpha| must be below 1/2, got {alpha}"
            )));
        }
        if self.quad_line <= 0.5 - alpha {
            return Err(Error::domain(format!(
                "integration line {} must lie right of 1/2 - alpha = {}",
                self.quad_line,
                0.5 - alpha
            )));
        }
        Ok(())
    }

    /// Half the step and twice the range.
    pub fn refined(&self) -> Self {
        Self {
            quad_step: self.quad_step / 2.0,
            quad_tmax: self.quad_tmax * 2.0,
            ..*self
        }
    }
}

/// Shifts closer than this to 1/2 are rejected: `Gamma((1/2 - alpha)/2)`
/// is within `1e-4` of its pole and the dual sum is meaningless.
pub const POLE_GUARD: f64 = 1e-4;

fn check_shift(alpha: f64) -> Result<()> {
    if !(0.0..0.5 - POLE_GUARD).contains(&alpha) {
        return Err(Error::domain(format!(
            "alpha must lie in [0, 1/2 - {POLE_GUARD}), got {alpha}"
        )));
    }
    Ok(())
}

/// `Gamma((1/2 - alpha + kappa)/2) / Gamma((1/2 + alpha + kappa)/2)`.
fn gamma_ratio(alpha: f64, parity: Parity) -> f64 {
    let k = parity.kappa();
    (ln_gamma((0.5 - alpha + k) / 2.0) - ln_gamma((0.5 + alpha + k) / 2.0)).exp()
}

/// `Y_alpha` for a real modulus and parity.
pub fn y_factor(modulus: f64, alpha: f64, parity: Parity) -> Result<f64> {
    check_shift(alpha)?;
    if !(modulus > 0.0) {
        return Err(Error::domain("modulus must be positive"));
    }
    Ok((-alpha * (modulus / PI).ln()).exp() * gamma_ratio(alpha, parity))
}

/// The factor in front of the dual sum, `(|d|/pi)^(-alpha)` times the
/// Gamma ratio for the parity of `chi_d`.
pub fn y_alpha(d: FundamentalDiscriminant, alpha: f64) -> Result<f64> {
    y_factor(d.modulus() as f64, alpha, Parity::of(d.get()))
}

/// `L(1/2 + alpha, chi_d)` by the approximate functional equation, with
/// `U` taken directly from the quadrature at every term.
///
/// Slow; intended for single values and as the reference for
/// [`AfeEvaluator`].
pub fn l_afe(d: FundamentalDiscriminant, alpha: f64, cfg: &AfeConfig) -> Result<f64> {
    let y = y_alpha(d, alpha)?;
    let parity = Parity::of(d.get());
    let sqrt_q = (d.modulus() as f64).sqrt();
    let beta = 0.5 - alpha.abs();
    let series = |shift: f64| -> Result<f64> {
        let integral = SmoothingIntegral::new(shift, parity, cfg)?;
        let env = DecayEnvelope::new(&integral);
        let stop = truncation_point(&env, beta, sqrt_q, cfg.term_cutoff, cfg.max_terms)?;
        let mut acc = CompensatedSum::new();
        for n in 1..stop {
            let c = d.chi(n);
            if c != 0 {
                let u = integral.eval(n as f64 / sqrt_q)?;
                acc.add(c as f64 * (n as f64).powf(-0.5 - shift) * u);
            }
        }
        Ok(acc.value())
    };
    let first = series(alpha)?;
    if alpha == 0.0 {
        return Ok(first * (1.0 + y));
    }
    Ok(first + y * series(-alpha)?)
}

#[derive(Debug, Clone)]
struct Series {
    table: UTable,
    env: DecayEnvelope,
    power: f64,
}

#[derive(Debug, Clone)]
struct ParityPart {
    gamma_ratio: f64,
    plus: Series,
    minus: Option<Series>,
}

/// Tabulated evaluator of `L(1/2 + alpha, chi_d)` for many `d` with
/// `|d| <= max_modulus`. Immutable once built and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct AfeEvaluator {
    alpha: f64,
    cfg: AfeConfig,
    max_modulus: u64,
    beta: f64,
    even: Option<ParityPart>,
    odd: Option<ParityPart>,
    spf: Vec<u32>,
    ln_n: Vec<f64>,
}

impl AfeEvaluator {
    pub fn new(alpha: f64, cfg: &AfeConfig, max_modulus: u64, signs: Signs) -> Result<Self> {
        check_shift(alpha)?;
        cfg.validate()?;
        if max_modulus < 1 {
            return Err(Error::domain("max_modulus must be at least 1"));
        }
        let u_lo = -0.5 * (max_modulus as f64).ln() - 0.01;
        let beta = 0.5 - alpha;
        let sqrt_max = (max_modulus as f64).sqrt();
        let mut n_max = 1u64;
        let mut build = |parity: Parity| -> Result<ParityPart> {
            let mut series = |shift: f64| -> Result<Series> {
                let integral = SmoothingIntegral::new(shift, parity, cfg)?;
                let env = DecayEnvelope::new(&integral);
                let stop = truncation_point(&env, beta, sqrt_max, cfg.term_cutoff, cfg.max_terms)?;
                n_max = n_max.max(stop);
                let x_hi = env
                    .decayed_below(cfg.term_cutoff)
                    .ok_or_else(|| Error::resource("smoothing integral does not decay"))?;
                let u_hi = x_hi.ln() + 0.05;
                Ok(Series {
                    table: UTable::new(integral, u_lo, u_hi.max(u_lo + 0.1))?,
                    env,
                    power: -0.5 - shift,
                })
            };
            let plus = series(alpha)?;
            let minus = if alpha == 0.0 {
                None
            } else {
                Some(series(-alpha)?)
            };
            Ok(ParityPart {
                gamma_ratio: gamma_ratio(alpha, parity),
                plus,
                minus,
            })
        };
        let even = if signs.includes_positive() {
            Some(build(Parity::Even)?)
        } else {
            None
        };
        let odd = if signs.includes_negative() {
            Some(build(Parity::Odd)?)
        } else {
            None
        };
        let len = n_max as usize + 1;
        let spf = smallest_prime_factors(len);
        let ln_n = (0..len).map(|n| (n.max(1) as f64).ln()).collect();
        Ok(Self {
            alpha,
            cfg: *cfg,
            max_modulus,
            beta,
            even,
            odd,
            spf,
            ln_n,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn config(&self) -> &AfeConfig {
        &self.cfg
    }

    pub fn max_modulus(&self) -> u64 {
        self.max_modulus
    }

    pub fn eval(&self, d: FundamentalDiscriminant) -> Result<f64> {
        let mut chi = Vec::new();
        self.eval_with(d, &mut chi)
    }

    /// Like [`eval`](Self::eval) but reusing a caller-owned buffer for the
    /// character values.
    pub fn eval_with(&self, d: FundamentalDiscriminant, chi: &mut Vec<i8>) -> Result<f64> {
        let q = d.modulus();
        if q > self.max_modulus {
            return Err(Error::domain(format!(
                "|d| = {q} exceeds the evaluator limit {}",
                self.max_modulus
            )));
        }
        let part = match Parity::of(d.get()) {
            Parity::Even => self.even.as_ref(),
            Parity::Odd => self.odd.as_ref(),
        }
        .ok_or_else(|| Error::domain(format!("evaluator not built for the sign of d = {d}")))?;
        let sqrt_q = (q as f64).sqrt();
        let ln_sqrt_q = sqrt_q.ln();
        let stop = |s: &Series| {
            truncation_point(
                &s.env,
                self.beta,
                sqrt_q,
                self.cfg.term_cutoff,
                self.cfg.max_terms,
            )
        };
        let stop_plus = stop(&part.plus)?;
        let stop_minus = match &part.minus {
            Some(s) => stop(s)?,
            None => 0,
        };
        let top = stop_plus.max(stop_minus) as usize;
        self.fill_chi(d.get(), top, chi);

        let sum = |s: &Series, stop: u64| {
            let mut acc = CompensatedSum::new();
            for (&c, &ln) in chi[1..stop as usize].iter().zip(&self.ln_n[1..]) {
                if c != 0 {
                    let u = s.table.eval_log(ln - ln_sqrt_q);
                    acc.add(c as f64 * (s.power * ln).exp() * u);
                }
            }
            acc.value()
        };
        let y = (-self.alpha * (q as f64 / PI).ln()).exp() * part.gamma_ratio;
        let first = sum(&part.plus, stop_plus);
        Ok(match &part.minus {
            Some(s) => first + y * sum(s, stop_minus),
            None => first * (1.0 + y),
        })
    }

    /// `chi[n] = chi_d(n)` for `n < top` via multiplicativity.
    fn fill_chi(&self, d: i64, top: usize, chi: &mut Vec<i8>) {
        chi.clear();
        chi.resize(top.max(2), 0);
        chi[1] = 1;
        for n in 2..top {
            let p = self.spf[n] as usize;
            chi[n] = if p == n {
                kronecker_at_prime(d, p as u64)
            } else {
                chi[p] * chi[n / p]
            };
        }
    }
}
