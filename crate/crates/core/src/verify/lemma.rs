use crate::arith::{for_each_fundamental, g1, g2, kronecker, radical, square_decompose, Signs};
use crate::{Error, Result, ZETA_2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest `X` for the exact character-sum enumeration.
pub const LEMMA_X_GUARD: u64 = 10_000_000;

/// `sum_{0 < |d| <= X} chi_d(n)` next to its predicted main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheckRecord {
    pub n: u64,
    #[serde(rename = "X")]
    pub x: u64,
    pub lhs: f64,
    pub main: f64,
    pub abs_err: f64,
    pub err_scale: f64,
}

impl LemmaCheckRecord {
    pub fn is_square(&self) -> bool {
        self.main != 0.0
    }

    /// `|lhs - main| / main` for squares.
    pub fn rel_err(&self) -> f64 {
        self.abs_err / self.main
    }
}

/// `(X / zeta(2)) prod_{p | n} p / (p + 1)` for square `n`, else 0.
pub fn lemma_main_term(n: u64, x: u64) -> Result<f64> {
    let sq = square_decompose(n)?;
    if !sq.is_square() {
        return Ok(0.0);
    }
    Ok(x as f64 / ZETA_2 * crate::arith::h_value(radical(n)?)?)
}

/// Character sums for several `n` from one enumeration.
pub fn check_lemma21_many(ns: &[u64], x: u64, eps: f64) -> Result<Vec<LemmaCheckRecord>> {
    if x > LEMMA_X_GUARD {
        return Err(Error::resource(format!(
            "X limited to {LEMMA_X_GUARD}, got {x}"
        )));
    }
    if ns.contains(&0) {
        return Err(Error::domain("n must be positive"));
    }
    let mut ds = Vec::new();
    for_each_fundamental(0, x, Signs::Both, |d| ds.push(d.get()));
    let sums: Vec<i64> = ns
        .par_iter()
        .map(|&n| ds.iter().map(|&d| kronecker(d, n) as i64).sum())
        .collect();
    ns.iter()
        .zip(sums)
        .map(|(&n, lhs)| {
            let sq = square_decompose(n)?;
            let main = lemma_main_term(n, x)?;
            let lhs = lhs as f64;
            Ok(LemmaCheckRecord {
                n,
                x,
                lhs,
                main,
                abs_err: (lhs - main).abs(),
                err_scale: (x as f64).powf(0.5 + eps) * g1(sq.n0, eps)? * g2(sq.n1, eps)?,
            })
        })
        .collect()
}

pub fn check_lemma21(n: u64, x: u64, eps: f64) -> Result<LemmaCheckRecord> {
    Ok(check_lemma21_many(&[n], x, eps)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sums_by_hand() {
        // |d| <= 8: 1, -3, -4, 5, -7, 8, -8
        let r = check_lemma21(1, 8, 0.1).unwrap();
        assert_eq!(r.lhs, 7.0);
        let r = check_lemma21(2, 8, 0.1).unwrap();
        // chi_d(2): 1, -1, 0, -1, 1, 0, 0
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.main, 0.0);
    }

    #[test]
    fn main_term_uses_radical() {
        for n in 1..=50u64 {
            let sq = square_decompose(n).unwrap();
            if sq.is_square() {
                let a = lemma_main_term(n, 1000).unwrap();
                let r = radical(n).unwrap();
                let b = 1000.0 / ZETA_2 * crate::arith::h_value(r).unwrap();
                assert_eq!(a, b);
            }
        }
        assert!((lemma_main_term(4, 900).unwrap() - 900.0 / ZETA_2 * 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            check_lemma21(1, LEMMA_X_GUARD + 1, 0.1),
            Err(Error::Resource(_))
        ));
    }
}
