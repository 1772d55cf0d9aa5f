//! Jacobi and Kronecker symbols on machine integers.

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
///
/// Binary algorithm: strip factors of two from the numerator, apply the
/// second supplementary law, then swap using quadratic reciprocity.
pub fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1, "jacobi requires an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `(d/2)` in the Kronecker sense.
#[inline]
fn kronecker_two(d: i64) -> i8 {
    match d.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Kronecker symbol `(d/n)` for `n >= 1`.
///
/// Completely multiplicative in `n`; for a fundamental discriminant `d` this
/// is the real primitive character `chi_d(n)`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n >= 1, "kronecker is defined for n >= 1");
    let v = n.trailing_zeros();
    let odd = n >> v;
    let mut t = 1i8;
    if v > 0 {
        let k2 = kronecker_two(d);
        if k2 == 0 {
            return 0;
        }
        if v % 2 == 1 {
            t = k2;
        }
    }
    if odd == 1 {
        return t;
    }
    t * jacobi(d, odd)
}

/// Legendre-style evaluation at a prime `p`; `p = 2` uses the Kronecker rule.
#[inline]
pub fn kronecker_at_prime(d: i64, p: u64) -> i8 {
    if p == 2 {
        kronecker_two(d)
    } else {
        jacobi(d, p)
    }
}
