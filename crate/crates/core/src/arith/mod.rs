//! Integer and character arithmetic.
//!
//! Everything here is a pure function; the prime table behind trial
//! division is built once on first use and then shared read-only.

mod discriminant;
mod kronecker;
mod multiplicative;
mod sieve;

pub use discriminant::{
    count_fundamental, enumerate_fundamental, for_each_fundamental, is_fundamental_discriminant,
    FundamentalDiscriminant, Signs,
};
pub use kronecker::{jacobi, kronecker, kronecker_at_prime};
pub use multiplicative::{
    factorize, g1, g2, h_value, radical, square_decompose, SquareDecomposition, FACTOR_LIMIT,
};
pub use sieve::{
    prime_table, primes_between, sieve_primes, simple_sieve, smallest_prime_factors,
    PRIME_TABLE_LIMIT, SIEVE_CAPACITY,
};
