use super::hurwitz::hurwitz_zeta;
use crate::arith::FundamentalDiscriminant;
use crate::summation::CompensatedSum;
use crate::{Error, Result};

/// Largest modulus accepted by [`l_exact`].
pub const EXACT_MODULUS_GUARD: u64 = 100_000;

/// `L(s, chi_d)` as a finite combination of Hurwitz zeta values.
pub fn l_exact(s: f64, d: FundamentalDiscriminant) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) || s == 1.0 {
        return Err(Error::domain(format!(
            "exact L needs s in (0, 2), s != 1; got {s}"
        )));
    }
    let q = d.modulus();
    if q > EXACT_MODULUS_GUARD {
        return Err(Error::resource(format!(
            "exact L limited to |d| <= {EXACT_MODULUS_GUARD}, got {q}"
        )));
    }
    let mut acc = CompensatedSum::new();
    for a in 1..=q {
        let c = d.chi(a);
        if c != 0 {
            acc.add(c as f64 * hurwitz_zeta(s, a as f64 / q as f64)?);
        }
    }
    Ok((q as f64).powf(-s) * acc.value())
}
