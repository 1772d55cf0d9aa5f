use crate::arith::{enumerate_fundamental, FundamentalDiscriminant, Signs};
use crate::lfun::{l_exact, u_alpha_parity, AfeConfig, AfeEvaluator, Parity, EXACT_MODULUS_GUARD};
use crate::resonance::ScanConfig;
use crate::resonator::ResonatorSet;
use crate::summation::CompensatedSum;
use crate::{Error, Result};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 0x5eed_1234;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AfeCheck {
    pub max_rel_err: f64,
    /// `(d, alpha)` attaining the worst error.
    pub witness: Option<(i64, f64)>,
    pub comparisons: usize,
}

/// Draws `count` fundamental discriminants with `lo <= |d| <= hi`, both
/// signs, without replacement.
pub fn sample_discriminants(
    count: usize,
    lo: u64,
    hi: u64,
    seed: u64,
) -> Result<Vec<FundamentalDiscriminant>> {
    let all = enumerate_fundamental(lo.saturating_sub(1), hi, Signs::Both)?;
    if count > all.len() {
        return Err(Error::domain(format!(
            "only {} discriminants in range",
            all.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, all.len(), count).into_vec();
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| all[i]).collect())
}

/// Worst relative gap between the tabulated AFE and the Hurwitz-zeta
/// value over a random sample of `d` and the given shifts.
pub fn check_afe(
    sample_size: usize,
    d_range: (u64, u64),
    alphas: &[f64],
    lcfg: &AfeConfig,
    seed: u64,
) -> Result<AfeCheck> {
    let (lo, hi) = d_range;
    if hi > EXACT_MODULUS_GUARD || lo > hi {
        return Err(Error::domain(format!(
            "d range [{lo}, {hi}] outside the exact-oracle guard"
        )));
    }
    let mut out = AfeCheck {
        max_rel_err: 0.0,
        witness: None,
        comparisons: 0,
    };
    if alphas.is_empty() || sample_size == 0 {
        return Ok(out);
    }
    let ds = sample_discriminants(sample_size, lo, hi, seed)?;
    for &alpha in alphas {
        let ev = AfeEvaluator::new(alpha, lcfg, hi, Signs::Both)?;
        for &d in &ds {
            let wrap = |e: Error| Error::AtDiscriminant {
                d: d.get(),
                source: Box::new(e),
            };
            let got = ev.eval(d).map_err(wrap)?;
            let want = l_exact(0.5 + alpha, d).map_err(wrap)?;
            let rel = ((got - want) / want).abs();
            out.comparisons += 1;
            if !(rel <= out.max_rel_err) {
                out.max_rel_err = rel;
                out.witness = Some((d.get(), alpha));
            }
        }
    }
    Ok(out)
}

/// Properties of `U_alpha` for one shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UCheck {
    pub alpha: f64,
    pub parity: Parity,
    /// `|U(1e-6) - 1|`.
    pub small_x_err: f64,
    /// `|U(40)|`.
    pub at_40: f64,
    /// Largest change under half step and double range, over the grid.
    pub refinement_delta: f64,
    /// Smallest value on the 64-point log grid over `[1e-6, 40]`.
    pub grid_min: f64,
    pub grid_argmin: f64,
}

impl UCheck {
    pub fn limits_hold(&self) -> bool {
        self.small_x_err <= 1e-3 && self.at_40 <= 1e-15 && self.refinement_delta <= 1e-9
    }

    pub fn positive(&self) -> bool {
        self.grid_min > 0.0
    }
}

/// `x_i = 1e-6 * (4e7)^(i/63)`, 64 points.
pub fn u_grid() -> Vec<f64> {
    let (a, b) = (1e-6f64.ln(), 40f64.ln());
    (0..64)
        .map(|i| (a + (b - a) * i as f64 / 63.0).exp())
        .collect()
}

pub fn check_u(alphas: &[f64], parity: Parity, lcfg: &AfeConfig) -> Result<Vec<UCheck>> {
    let fine = lcfg.refined();
    alphas
        .iter()
        .map(|&alpha| {
            let coarse = crate::lfun::SmoothingIntegral::new(alpha, parity, lcfg)?;
            let refined = crate::lfun::SmoothingIntegral::new(alpha, parity, &fine)?;
            let mut rec = UCheck {
                alpha,
                parity,
                small_x_err: (coarse.eval(1e-6)? - 1.0).abs(),
                at_40: coarse.eval(40.0)?.abs(),
                refinement_delta: 0.0,
                grid_min: f64::INFINITY,
                grid_argmin: f64::NAN,
            };
            for x in u_grid() {
                let u = coarse.eval(x)?;
                rec.refinement_delta = rec.refinement_delta.max((u - refined.eval(x)?).abs());
                if u < rec.grid_min {
                    rec.grid_min = u;
                    rec.grid_argmin = x;
                }
            }
            Ok(rec)
        })
        .collect()
}

/// `U_alpha(x)` with the input checks of the public evaluator.
pub fn u_value(x: f64, alpha: f64, lcfg: &AfeConfig) -> Result<f64> {
    u_alpha_parity(x, alpha, Parity::Even, lcfg)
}

/// Largest `|M|^2 * #d` accepted by [`s2_reassociated`].
pub const REASSOCIATION_GUARD: u64 = 2_000_000_000;

/// `sum_{m, n in M} f(m) f(n) sum_d chi_d(m n)`, with the inner character
/// sums accumulated in integers.
pub fn s2_reassociated(cfg: &ScanConfig, set: &ResonatorSet) -> Result<f64> {
    let (lo, hi) = cfg.bounds();
    let ds = enumerate_fundamental(lo, hi, cfg.signs)?;
    let m = set.len() as u64;
    if m * m * ds.len() as u64 > REASSOCIATION_GUARD {
        return Err(Error::resource("re-associated double sum too large"));
    }
    let mut acc = CompensatedSum::new();
    for a in &set.members {
        for b in &set.members {
            let mn =
                a.m.checked_mul(b.m)
                    .ok_or_else(|| Error::resource("m n overflows u64"))?;
            let c: i64 = ds
                .iter()
                .map(|d| crate::arith::kronecker(d.get(), mn) as i64)
                .sum();
            acc.add(a.f * b.f * c as f64);
        }
    }
    Ok(acc.value())
}
