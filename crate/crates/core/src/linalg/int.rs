//! Scalar helpers on `i128` with explicit overflow reporting.

use num_integer::Integer;

use super::LinalgError;

pub(crate) fn add(a: i128, b: i128) -> Result<i128, LinalgError> {
    a.checked_add(b).ok_or(LinalgError::Overflow)
}

pub(crate) fn mul(a: i128, b: i128) -> Result<i128, LinalgError> {
    a.checked_mul(b).ok_or(LinalgError::Overflow)
}

/// Extended gcd with a nonnegative gcd: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

/// Exponent of `p` in `n` (n != 0).
pub fn valuation(mut n: i128, p: i128) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The `p`-part of a nonzero integer.
pub fn p_part(n: i128, p: i128) -> i128 {
    p.pow(valuation(n.abs(), p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least nonnegative residue.
pub fn modp(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (g, s, _) = xgcd(modp(a, m), m);
    (g == 1).then(|| modp(s, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert!(g >= 0);
            }
        }
    }

    #[test]
    fn primes_and_valuations() {
        assert_eq!(prime_divisors(1152), vec![2, 3]);
        assert_eq!(valuation(336, 2), 4);
        assert_eq!(p_part(336, 2), 16);
        assert!(is_prime(1_000_003));
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
    }
}
