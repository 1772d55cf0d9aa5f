use crate::{loglog, logloglog, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::E;

/// Parameters of the resonator. `sigma` is always derived from `n` and
/// `big_a`, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResonatorConfig {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "A")]
    pub big_a: f64,
    pub gamma: f64,
    pub a: f64,
    pub delta: f64,
    pub eps: f64,
    /// Chernoff parameter; `None` selects [`find_optimal_b`].
    pub b: Option<f64>,
    pub m_cap: usize,
}

pub const DEFAULT_GAMMA: f64 = 0.55;
pub const DEFAULT_A: f64 = 1.8;

impl Default for ResonatorConfig {
    fn default() -> Self {
        Self {
            n: 1_000_000,
            big_a: 1.0,
            gamma: DEFAULT_GAMMA,
            a: DEFAULT_A,
            delta: 0.9,
            eps: 0.04,
            b: None,
            m_cap: 10_000_000,
        }
    }
}

/// Smallest admissible `N`: `log log log N > 0` needs `N > e^e`.
pub const MIN_N: u64 = 16;

impl ResonatorConfig {
    pub fn new(n: u64, big_a: f64) -> Result<Self> {
        let cfg = Self {
            n,
            big_a,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::domain(m));
        if self.n < MIN_N {
            return fail(format!("N must exceed e^e (N >= {MIN_N}), got {}", self.n));
        }
        if !(self.big_a >= 0.0 && self.big_a.is_finite()) {
            return fail(format!(
                "A must be a finite nonnegative number, got {}",
                self.big_a
            ));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0 / (E - 1.0)) {
            return fail(format!(
                "gamma must lie in (0, 1/(e-1)), got {}",
                self.gamma
            ));
        }
        if !(self.a > E - 1.0 && self.a < 1.0 / self.gamma) {
            return fail(format!(
                "a must satisfy e - 1 < a < 1/gamma = {}, got {}",
                1.0 / self.gamma,
                self.a
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return fail(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if !(self.eps > 0.0 && self.eps < 0.05) {
            return fail(format!("eps must lie in (0, 1/20), got {}", self.eps));
        }
        if let Some(b) = self.b {
            if !(b > 1.0 && b.is_finite()) {
                return fail(format!("b must exceed 1, got {b}"));
            }
        }
        if self.m_cap == 0 {
            return fail("m_cap must be positive".into());
        }
        Ok(())
    }

    pub fn sigma(&self) -> f64 {
        0.5 + self.big_a / loglog(self.n as f64)
    }

    pub fn b(&self) -> f64 {
        self.b.unwrap_or_else(|| self.a / (E - 1.0))
    }

    pub(crate) fn logs(&self) -> (f64, f64, f64) {
        let x = self.n as f64;
        (x.ln(), loglog(x), logloglog(x))
    }
}

/// `1/2 + A / log log N`.
pub fn derive_sigma(n: u64, big_a: f64) -> Result<f64> {
    if n < MIN_N {
        return Err(Error::domain(format!("N must exceed e^e, got {n}")));
    }
    if !(big_a >= 0.0) {
        return Err(Error::domain(format!("A must be nonnegative, got {big_a}")));
    }
    Ok(0.5 + big_a / loglog(n as f64))
}
