//! Exact coefficient fields.
//!
//! Fields are context objects: an element type plus a value carrying the
//! runtime parameters (the characteristic of a prime field, the conductor of
//! a cyclotomic field). All arithmetic goes through the context.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly;
use super::primes::is_prime;
use super::AlgebraError;

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field F_p, elements stored as canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            // Fermat
            Some(self.pow(a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

/// The cyclotomic field Q(zeta_m) = Q[x] / Phi_m(x), elements in the power
/// basis 1, x, ..., x^(phi(m)-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    /// Monic minimal polynomial, low degree first.
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Self {
        assert!(conductor >= 1, "cyclotomic conductor must be positive");
        let modulus = super::cyclotomic_polynomial(conductor)
            .into_iter()
            .map(|c| BigRational::from_integer(c))
            .collect();
        CyclotomicField { conductor, modulus }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// zeta_m^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Vec<BigRational> {
        let k = k.rem_euclid(self.conductor as i64) as usize;
        let mut x = vec![BigRational::zero(); k + 1];
        x[k] = BigRational::one();
        self.reduce(x)
    }

    pub fn zeta(&self) -> Vec<BigRational> {
        self.zeta_pow(1)
    }

    pub fn from_rational(&self, q: BigRational) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = q;
        v
    }

    fn reduce(&self, p: Vec<BigRational>) -> Vec<BigRational> {
        let (_, mut r) = poly::divrem(&Rationals, &p, &self.modulus);
        r.resize(self.degree(), BigRational::zero());
        r
    }

    /// Readable form such as `1 - 2*z + z^3`.
    pub fn display(&self, a: &[BigRational]) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let mag = c.abs();
            let coef = if mono.is_empty() || !mag.is_one() {
                mag.to_string()
            } else {
                String::new()
            };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}*{mono}"),
            };
            parts.push((c.is_negative(), body));
        }
        render_signed_terms(parts)
    }
}

pub(crate) fn render_signed_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl Field for CyclotomicField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree()]
    }
    fn one(&self) -> Vec<BigRational> {
        self.from_rational(BigRational::one())
    }
    fn from_i64(&self, n: i64) -> Vec<BigRational> {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }
    fn add(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().map(|x| -x).collect()
    }
    fn sub(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        self.reduce(poly::mul(&Rationals, a, b))
    }
    fn inv(&self, a: &Vec<BigRational>) -> Option<Vec<BigRational>> {
        let a_trim = poly::trimmed(&Rationals, a.clone());
        if a_trim.is_empty() {
            return None;
        }
        // Phi_m is irreducible, so gcd(a, Phi_m) is a unit.
        let (g, s, _) = poly::ext_gcd(&Rationals, &a_trim, &self.modulus);
        debug_assert_eq!(g.len(), 1);
        let scale = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &scale).collect();
        Some(self.reduce(s))
    }
    fn is_zero(&self, a: &Vec<BigRational>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        format!("Q(zeta_{})", self.conductor)
    }
}
