//! Factorization-backed arithmetic functions: squarefree decomposition,
//! `h`, `g1` and `g2`.

use serde::{Deserialize, Serialize};

use super::sieve::{prime_table, PRIME_TABLE_LIMIT};
use crate::error::{Error, Result};

/// Inputs up to this bound are always fully factorable by trial division
/// against the shared prime table.
pub const FACTOR_LIMIT: u64 = PRIME_TABLE_LIMIT * PRIME_TABLE_LIMIT;

/// Prime factorization `n = prod p^e`, primes ascending.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut n = n;
    let mut out = Vec::new();
    for &p in prime_table() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        // any composite cofactor would have a factor below the table limit
        // unless it exceeds the table limit squared
        if n >= FACTOR_LIMIT {
            return Err(Error::resource(format!(
                "cofactor {n} exceeds the trial-division range"
            )));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// `n = n0 * n1^2` with `n0` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDecomposition {
    pub n0: u64,
    pub n1: u64,
}

impl SquareDecomposition {
    pub fn is_square(&self) -> bool {
        self.n0 == 1
    }
}

pub fn square_decompose(n: u64) -> Result<SquareDecomposition> {
    let mut n0 = 1u64;
    let mut n1 = 1u64;
    for (p, e) in factorize(n)? {
        if e % 2 == 1 {
            n0 *= p;
        }
        n1 *= p.pow(e / 2);
    }
    Ok(SquareDecomposition { n0, n1 })
}

/// `h(n) = prod_{p | n} p / (p + 1)`, with `h(1) = 1`.
pub fn h_value(n: u64) -> Result<f64> {
    Ok(factorize(n)?
        .into_iter()
        .map(|(p, _)| p as f64 / (p as f64 + 1.0))
        .product())
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "eps must lie in (0, 1/2), got {eps}"
        )))
    }
}

/// `g1(n0) = exp((log n0)^(1 - eps))`.
pub fn g1(n0: u64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if n0 == 0 {
        return Err(Error::domain("g1 needs n0 >= 1"));
    }
    Ok((n0 as f64).ln().powf(1.0 - eps).exp())
}

/// `g2(n1) = sum_{q | n1} mu(q)^2 q^-(1/2 + eps) = prod_{p | n1} (1 + p^-(1/2 + eps))`.
pub fn g2(n1: u64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(factorize(n1)?
        .into_iter()
        .map(|(p, _)| 1.0 + (p as f64).powf(-(0.5 + eps)))
        .product())
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|q| n % q == 0).collect()
    }

    fn mobius_sq(q: u64) -> bool {
        (2..=q).take_while(|k| k * k <= q).all(|k| q % (k * k) != 0)
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            square_decompose(12).unwrap(),
            SquareDecomposition { n0: 3, n1: 2 }
        );
        assert_eq!(
            square_decompose(1).unwrap(),
            SquareDecomposition { n0: 1, n1: 1 }
        );
        assert_eq!(
            square_decompose(360).unwrap(),
            SquareDecomposition { n0: 10, n1: 6 }
        );
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_value(1).unwrap(), 1.0);
        assert!((h_value(6).unwrap() - 0.5).abs() < 1e-15);
        for p in [2u64, 3, 101, 9_999_991] {
            assert!((h_value(p).unwrap() - p as f64 / (p as f64 + 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g1(1, 0.1).unwrap(), 1.0);
        assert!((g1(3, 0.1).unwrap() - 3f64.ln().powf(0.9).exp()).abs() < 1e-14);
        assert_eq!(g2(1, 0.1).unwrap(), 1.0);
        assert!((g2(4, 0.1).unwrap() - (1.0 + 2f64.powf(-0.6))).abs() < 1e-15);
        let want6 = (1.0 + 2f64.powf(-0.6)) * (1.0 + 3f64.powf(-0.6));
        assert!((g2(6, 0.1).unwrap() - want6).abs() < 1e-14);
        assert!(g1(3, 0.5).is_err());
        assert!(g2(3, 0.0).is_err());
    }

    #[test]
    fn g2_matches_divisor_sum() {
        for n in 1..=400u64 {
            let direct: f64 = divisors(n)
                .into_iter()
                .filter(|&q| mobius_sq(q))
                .map(|q| (q as f64).powf(-0.6))
                .sum();
            assert!((g2(n, 0.1).unwrap() - direct).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn g2_submultiplicative_exhaustive() {
        let table: Vec<f64> = (0..=10_000u64)
            .map(|n| if n == 0 { 0.0 } else { g2(n, 0.1).unwrap() })
            .collect();
        for x in 1..=10_000u64 {
            for y in 1..=10_000 / x {
                assert!(
                    table[(x * y) as usize]
                        <= table[x as usize] * table[y as usize] * (1.0 + 1e-14)
                );
            }
        }
    }

    #[test]
    fn large_inputs() {
        // 10^7 + 19 is prime; its square is beyond naive trial range but fine
        let p = 10_000_019u64;
        assert_eq!(factorize(p * 3).unwrap(), vec![(3, 1), (p, 1)]);
        assert!(matches!(factorize(p * p), Err(Error::Resource(_))));
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs(n in 1u64..1_000_000_000) {
            let s = square_decompose(n).unwrap();
            prop_assert_eq!(s.n0 * s.n1 * s.n1, n);
            prop_assert!(factorize(s.n0).unwrap().iter().all(|&(_, e)| e == 1));
        }

        #[test]
        fn h_is_multiplicative(a in 1u64..5000, b in 1u64..5000) {
            let g = { let (mut x, mut y) = (a, b); while y != 0 { (x, y) = (y, x % y); } x };
            prop_assume!(g == 1);
            let lhs = h_value(a * b).unwrap();
            prop_assert!((lhs - h_value(a).unwrap() * h_value(b).unwrap()).abs() < 1e-14);
        }
    }
}
