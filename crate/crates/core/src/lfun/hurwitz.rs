use crate::{Error, Result};

/// `B_2, B_4, B_6, B_8` divided by the matching factorial.
const BERNOULLI_OVER_FACT: [f64; 4] =
    [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30_240.0, -1.0 / 1_209_600.0];
/// `B_10 / 10!`, the first omitted correction.
const B10_OVER_FACT: f64 = 1.0 / 47_900_160.0;

const TOLERANCE: f64 = 1e-14;

/// Hurwitz zeta `sum_{n >= 0} (n + x)^(-s)` by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, x: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) || s == 1.0 {
        return Err(Error::domain(format!(
            "hurwitz zeta needs s > 0, s != 1; got {s}"
        )));
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::domain(format!(
            "hurwitz zeta needs x in (0, 1], got {x}"
        )));
    }
    let rising = |k: usize| (0..k).fold(1.0, |acc, i| acc * (s + i as f64));
    let omitted = |m: f64| (B10_OVER_FACT * rising(9) * (m + x).powf(-s - 9.0)).abs();
    let mut m = 10usize;
    while omitted(m as f64) > TOLERANCE {
        m += 1;
    }
    let mut head: f64 = (0..m).map(|n| (n as f64 + x).powf(-s)).sum();
    let a = m as f64 + x;
    head += a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let k = 2 * j + 1;
        head += b * rising(k) * a.powf(-s - k as f64);
    }
    Ok(head)
}

/// Riemann zeta for real `s > 0`, `s != 1`.
pub fn zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}
