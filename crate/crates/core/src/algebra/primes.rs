//! Small-integer number theory: primality, factorisation, and primes
//! `p = 1 (mod n)` carrying a primitive `n`-th root of unity.

use num_integer::Integer;

use super::AlgebraError;

/// Search ceiling for `prime_with_root`.
pub const PRIME_SEARCH_LIMIT: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo the prime `p`; `a` must be nonzero.
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let phi = p - 1;
    let mut order = phi;
    for q in prime_factors(phi) {
        while order % q == 0 && pow_mod(a, order / q, p) == 1 {
            order /= q;
        }
    }
    order
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, |acc, x| acc.lcm(&x))
}

/// Smallest prime `p = 1 (mod n)` together with the smallest `r` of
/// multiplicative order exactly `n` in `F_p`, so that `Phi_n(r) = 0`.
pub fn prime_with_root(n: u64) -> Result<(u64, u64), AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::NoPrimeFound(n));
    }
    let mut p = 2;
    while p <= PRIME_SEARCH_LIMIT {
        if p % n == 1 % n && is_prime(p) {
            if let Some(r) = (1..p).find(|&r| multiplicative_order(r, p) == n) {
                return Ok((p, r));
            }
        }
        p += 1;
    }
    Err(AlgebraError::NoPrimeFound(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        assert_eq!(prime_with_root(1).unwrap(), (2, 1));
        assert_eq!(prime_with_root(4).unwrap(), (5, 2));
        assert_eq!(prime_with_root(6).unwrap(), (7, 3));
        assert_eq!(prime_with_root(2).unwrap(), (3, 2));
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(euler_phi(12), 4);
        assert_eq!(multiplicative_order(2, 7), 3);
    }
}
