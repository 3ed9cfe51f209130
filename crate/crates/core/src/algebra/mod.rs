//! Exact arithmetic: coefficient fields, Laurent polynomials, Smith normal
//! form, cyclotomic primes and finite abelian group rings.

pub mod characters;
pub mod field;
pub mod laurent;
pub mod poly;
pub mod primes;
pub mod snf;
pub mod twisted;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use characters::{ideal_properness, FiniteAbelianGroup, GroupRingElement, IdealProperness};
pub use field::{CyclotomicField, Field, PrimeField, Rationals};
pub use laurent::{LaurentPoly, LaurentRing};
pub use primes::prime_with_root;
pub use snf::{integer_snf, smith_normal_form, EuclideanRing, Integers, SnfResult};
pub use twisted::TwistedPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("no prime p = 1 mod {0} found below the search limit")]
    NoPrimeFound(u64),
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// Value of `Phi_n` at `x` modulo `p`.
pub fn cyclotomic_eval_mod(n: u64, x: u64, p: u64) -> u64 {
    let m = BigInt::from(p);
    let xb = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in cyclotomic_polynomial(n).iter().rev() {
        acc = (acc * &xb + c).mod_floor(&m);
    }
    acc.try_into().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_eval_mod(4, 2, 5), 0);
    }
}
