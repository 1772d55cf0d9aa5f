//! Prime sieves: a shared small-prime table and a segmented range sieve.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest upper endpoint accepted by [`sieve_primes`].
pub const SIEVE_CAPACITY: f64 = 1.0e12;
/// Largest span `hi - lo` accepted by [`sieve_primes`].
pub const SIEVE_MAX_SPAN: f64 = 4.0e9;
/// Primes below this bound are tabulated once for trial division.
pub const PRIME_TABLE_LIMIT: u64 = 10_000_000;

const SEGMENT: usize = 1 << 18;

/// Plain sieve of Eratosthenes over `[0, limit]`.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    let mut i = 2usize;
    while i <= n {
        if !composite[i] {
            primes.push(i as u64);
            if let Some(sq) = i.checked_mul(i) {
                let mut j = sq;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        i += 1;
    }
    primes
}

fn estimate_pi(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let xf = x as f64;
    (1.26 * xf / xf.ln()) as usize
}

/// The primes below [`PRIME_TABLE_LIMIT`], built on first use and then
/// shared read-only.
pub fn prime_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| simple_sieve(PRIME_TABLE_LIMIT))
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes in `[lo, hi]` (inclusive, integers) by segmented sieving.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = isqrt(hi);
    let base: Vec<u64> = if root < PRIME_TABLE_LIMIT {
        let table = prime_table();
        let end = table.partition_point(|&p| p <= root);
        table[..end].to_vec()
    } else {
        simple_sieve(root)
    };
    let mut out = Vec::new();
    let mut seg_lo = lo;
    let mut marks = vec![false; SEGMENT];
    loop {
        let seg_hi = seg_lo.saturating_add(SEGMENT as u64 - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &p in &base {
            let sq = p * p;
            if sq > seg_hi {
                break;
            }
            let start = if sq >= seg_lo {
                sq
            } else {
                seg_lo.div_ceil(p) * p
            };
            let mut j = start;
            while j <= seg_hi {
                marks[(j - seg_lo) as usize] = true;
                j += p;
            }
        }
        for (i, &m) in marks[..len].iter().enumerate() {
            if !m {
                out.push(seg_lo + i as u64);
            }
        }
        if seg_hi == hi {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    out
}

/// All primes `p` with `lo < p <= hi`, for real endpoints.
pub fn sieve_primes(lo: f64, hi: f64) -> Result<Vec<u64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi < lo {
        return Err(Error::domain(format!(
            "sieve range requires 0 <= lo <= hi, got ({lo}, {hi}]"
        )));
    }
    if hi > SIEVE_CAPACITY || hi - lo > SIEVE_MAX_SPAN {
        return Err(Error::resource(format!(
            "sieve range ({lo}, {hi}] exceeds capacity {SIEVE_CAPACITY:e}"
        )));
    }
    let lo_int = lo.floor() as u64 + 1;
    let hi_int = hi.floor() as u64;
    Ok(primes_between(lo_int, hi_int))
}

/// Smallest-prime-factor table on `[0, limit]`; entry 0 and 1 are 0 and 1.
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    if limit >= 1 {
        spf[1] = 1;
    }
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            if let Some(sq) = i.checked_mul(i) {
                let mut j = sq;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
    }
    spf
}
