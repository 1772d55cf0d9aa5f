use crate::arith::Signs;
use crate::resonator::ResonatorConfig;
use crate::{loglog, Error, Result};
use serde::{Deserialize, Serialize};

/// How the resonator length `N` is tied to `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NPolicy {
    /// `N = floor(X^(1/4 + alpha/2 - 5 eps))`.
    Derived,
    /// `N` given by `N_explicit`.
    #[default]
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Evaluate `L` at every discriminant in range.
    #[default]
    Exhaustive,
    /// Evaluate `L` only at the `K` largest `R_d^2`.
    TopK,
}

/// Which evaluator supplies the `L` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LSource {
    #[default]
    Afe,
    /// Hurwitz-zeta evaluation; limited to small `|d|`.
    Exact,
}

/// The discriminant range scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Range {
    /// `X < |d| <= 2X`.
    #[default]
    Dyadic,
    /// `0 < |d| <= X`.
    Cumulative,
}

macro_rules! from_str_via_serde {
    ($($t:ty),*) => {$(
        impl std::str::FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                serde_json::from_value(serde_json::Value::String(s.to_owned()))
                    .map_err(|_| Error::domain(format!("unrecognised value '{s}'")))
            }
        }
    )*};
}
from_str_via_serde!(NPolicy, Strategy, LSource, Range);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "A")]
    pub big_a: f64,
    pub n_policy: NPolicy,
    #[serde(rename = "N_explicit")]
    pub n_explicit: Option<u64>,
    pub signs: Signs,
    pub strategy: Strategy,
    #[serde(rename = "K")]
    pub k: usize,
    pub workers: usize,
    pub l_source: LSource,
    pub range: Range,
    /// Parameters other than `N` and `A`, which the scan sets itself.
    pub resonator: ResonatorConfig,
}

pub const DEFAULT_EXPLICIT_N: u64 = 1_000_000;

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            x: 10_000,
            big_a: 1.0,
            n_policy: NPolicy::Explicit,
            n_explicit: Some(DEFAULT_EXPLICIT_N),
            signs: Signs::Both,
            strategy: Strategy::Exhaustive,
            k: 1000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            l_source: LSource::Afe,
            range: Range::Dyadic,
            resonator: ResonatorConfig::default(),
        }
    }
}

impl ScanConfig {
    /// `alpha = A / log log X`.
    pub fn alpha(&self) -> f64 {
        if self.big_a == 0.0 {
            0.0
        } else {
            self.big_a / loglog(self.x as f64)
        }
    }

    pub fn eps(&self) -> f64 {
        self.resonator.eps
    }

    /// `(lo, hi)` with the scan covering `lo < |d| <= hi`.
    pub fn bounds(&self) -> (u64, u64) {
        match self.range {
            Range::Dyadic => (self.x, 2 * self.x),
            Range::Cumulative => (0, self.x),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x < 3 {
            return Err(Error::domain(format!(
                "X must be at least 3, got {}",
                self.x
            )));
        }
        if self.x > 1u64 << 40 {
            return Err(Error::resource(format!(
                "X = {} is beyond the supported range",
                self.x
            )));
        }
        if !(self.big_a >= 0.0 && self.big_a.is_finite()) {
            return Err(Error::domain(format!(
                "A must be nonnegative, got {}",
                self.big_a
            )));
        }
        let alpha = self.alpha();
        if !(0.0..0.5 - crate::lfun::POLE_GUARD).contains(&alpha) {
            return Err(Error::domain(format!(
                "alpha = A / log log X = {alpha} must lie in [0, 1/2)"
            )));
        }
        if !(self.eps() > 0.0 && self.eps() < 0.05) {
            return Err(Error::domain(format!(
                "eps must lie in (0, 1/20), got {}",
                self.eps()
            )));
        }
        if self.workers == 0 {
            return Err(Error::domain("workers must be positive"));
        }
        if self.strategy == Strategy::TopK && self.k == 0 {
            return Err(Error::domain("K must be positive for top_k"));
        }
        if self.n_policy == NPolicy::Explicit && self.n_explicit.is_none() {
            return Err(Error::domain("explicit N policy needs N_explicit"));
        }
        Ok(())
    }

    /// The resonator length selected by the policy.
    pub fn resolve_n(&self) -> Result<u64> {
        match self.n_policy {
            NPolicy::Explicit => self
                .n_explicit
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::domain("explicit N policy needs N_explicit >= 1")),
            NPolicy::Derived => derive_n_from_x(self.x, self.alpha(), self.eps()),
        }
    }
}

/// `floor(X^(1/4 + alpha/2 - 5 eps))`.
pub fn derive_n_from_x(x: u64, alpha: f64, eps: f64) -> Result<u64> {
    let e = 0.25 + alpha / 2.0 - 5.0 * eps;
    if !(e > 0.0 && e < 0.5) {
        return Err(Error::domain(format!(
            "N exponent {e} must lie in (0, 1/2)"
        )));
    }
    // a relative nudge so exact powers are not lost to rounding
    let v = (x as f64).powf(e) * (1.0 + 1e-12);
    Ok(v.floor().max(1.0) as u64)
}
