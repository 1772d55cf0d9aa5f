//! Shared fixtures for the criterion benchmarks.

use reslab::arith::enumerate_fundamental;
use reslab::{FundamentalDiscriminant, Signs};

/// The first `count` fundamental discriminants with `|d| > lo`.
pub fn discriminants_above(lo: u64, count: usize) -> Vec<FundamentalDiscriminant> {
    let mut hi = lo + 4 * count as u64 + 16;
    loop {
        let mut ds = enumerate_fundamental(lo, hi, Signs::Both).expect("valid range");
        if ds.len() >= count {
            ds.truncate(count);
            return ds;
        }
        hi *= 2;
    }
}
