//! Fundamental discriminants and their enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::sieve::prime_table;
use crate::error::{Error, Result};

/// A validated fundamental discriminant `d`, indexing the real primitive
/// character `chi_d = (d/.)`.
///
/// Either `d = 1 (mod 4)` squarefree, or `d = 4m` with `m = 2, 3 (mod 4)`
/// squarefree. `d = 1` is admitted by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental_discriminant(d)? {
            Ok(Self(d))
        } else {
            Err(Error::domain(format!(
                "{d} is not a fundamental discriminant"
            )))
        }
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// `true` for `d < 0`, whose character is odd (`chi_d(-1) = -1`).
    #[inline]
    pub fn is_odd_character(self) -> bool {
        self.0 < 0
    }

    #[inline]
    pub fn chi(self, n: u64) -> i8 {
        super::kronecker(self.0, n)
    }
}

impl TryFrom<i64> for FundamentalDiscriminant {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<FundamentalDiscriminant> for i64 {
    fn from(d: FundamentalDiscriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which signs of `d` a range covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signs {
    Positive,
    Negative,
    #[default]
    Both,
}

impl Signs {
    pub fn includes_positive(self) -> bool {
        matches!(self, Signs::Positive | Signs::Both)
    }

    pub fn includes_negative(self) -> bool {
        matches!(self, Signs::Negative | Signs::Both)
    }
}

impl std::str::FromStr for Signs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "pos" | "+" => Ok(Signs::Positive),
            "negative" | "neg" | "-" => Ok(Signs::Negative),
            "both" => Ok(Signs::Both),
            other => Err(Error::domain(format!("unknown sign selection '{other}'"))),
        }
    }
}

/// Squarefreeness by trial division against the shared prime table.
pub(crate) fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    for &p in prime_table() {
        if p * p > n {
            return true;
        }
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
    }
    // n has no factor below the table limit; any square factor would exceed
    // the range of u64
    true
}

/// Whether a magnitude `m = |d|` is fundamental for the given sign, given
/// squarefreeness oracles for `m` and `m/4`.
#[inline]
fn classify(
    m: u64,
    positive: bool,
    sf_m: impl Fn() -> bool,
    sf_quarter: impl Fn() -> bool,
) -> bool {
    // reduce the signed residue d mod 4 and (d/4) mod 4
    match m % 4 {
        1 => positive && sf_m(),
        3 => !positive && sf_m(),
        0 => {
            let q = (m / 4) % 4;
            let ok = if positive {
                q == 2 || q == 3
            } else {
                q == 2 || q == 1
            };
            ok && sf_quarter()
        }
        _ => false,
    }
}

/// Whether `d` is a fundamental discriminant; `d = 0` is a domain error.
pub fn is_fundamental_discriminant(d: i64) -> Result<bool> {
    if d == 0 {
        return Err(Error::domain("d = 0 is not a discriminant"));
    }
    let m = d.unsigned_abs();
    Ok(classify(
        m,
        d > 0,
        || is_squarefree(m),
        || is_squarefree(m / 4),
    ))
}

/// Squarefree flags for the integers `start .. start + len`.
fn squarefree_flags(start: u64, len: usize) -> Vec<bool> {
    let mut flags = vec![true; len];
    if len == 0 {
        return flags;
    }
    if start == 0 {
        flags[0] = false;
    }
    let end = start + len as u64; // exclusive
    for &p in prime_table() {
        let sq = p * p;
        if sq >= end {
            break;
        }
        let mut j = start.div_ceil(sq) * sq;
        while j < end {
            flags[(j - start) as usize] = false;
            j += sq;
        }
    }
    flags
}

const ENUM_SEGMENT: u64 = 1 << 20;

/// The fundamental discriminants with `lo < |d| <= hi` of the requested
/// signs, ascending by `|d|`, positive before negative at equal magnitude.
pub fn enumerate_fundamental(
    lo: u64,
    hi: u64,
    signs: Signs,
) -> Result<Vec<FundamentalDiscriminant>> {
    if lo >= hi {
        return Err(Error::domain(format!(
            "enumeration needs lo < hi, got ({lo}, {hi}]"
        )));
    }
    if hi > i64::MAX as u64 {
        return Err(Error::resource("magnitude exceeds the signed 64-bit range"));
    }
    let mut out = Vec::with_capacity(((hi - lo) as f64 * 0.62) as usize + 8);
    for_each_fundamental(lo, hi, signs, |d| out.push(d));
    Ok(out)
}

/// Streaming form of [`enumerate_fundamental`].
pub fn for_each_fundamental(
    lo: u64,
    hi: u64,
    signs: Signs,
    mut visit: impl FnMut(FundamentalDiscriminant),
) {
    let mut seg_lo = lo + 1;
    while seg_lo <= hi {
        let seg_hi = (seg_lo + ENUM_SEGMENT - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        let sf = squarefree_flags(seg_lo, len);
        let q_lo = seg_lo / 4;
        let q_len = (seg_hi / 4 - q_lo + 1) as usize;
        let sf_q = squarefree_flags(q_lo, q_len);
        for (i, m) in (seg_lo..=seg_hi).enumerate() {
            let sf_m = || sf[i];
            let sf_quarter = || sf_q[(m / 4 - q_lo) as usize];
            if signs.includes_positive() && classify(m, true, sf_m, sf_quarter) {
                visit(FundamentalDiscriminant(m as i64));
            }
            if signs.includes_negative() && classify(m, false, sf_m, sf_quarter) {
                visit(FundamentalDiscriminant(-(m as i64)));
            }
        }
        seg_lo = seg_hi + 1;
    }
}

/// Number of fundamental discriminants with `lo < |d| <= hi`.
pub fn count_fundamental(lo: u64, hi: u64, signs: Signs) -> u64 {
    let mut n = 0u64;
    for_each_fundamental(lo, hi, signs, |_| n += 1);
    n
}
