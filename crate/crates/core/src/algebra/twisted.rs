//! Integer Laurent polynomials in `t` with an `M`-th root of unity `z`,
//! i.e. elements of `Z[t, t^-1][C_M]`. Chain-complex entries are built in
//! this ring and only then specialised to a coefficient field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{CyclotomicField, Field, PrimeField, Rationals};
use super::laurent::{LaurentPoly, LaurentRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedPoly {
    /// Order of `z`; `1` for untwisted entries.
    modulus: u64,
    /// (t-exponent, z-exponent in 0..modulus) -> coefficient, no zeros.
    terms: BTreeMap<(i64, u64), i64>,
}

impl TwistedPoly {
    pub fn zero(modulus: u64) -> Self {
        assert!(modulus >= 1);
        TwistedPoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(modulus: u64, coeff: i64, t_exp: i64, z_exp: i64) -> Self {
        let mut p = Self::zero(modulus);
        p.add_term(coeff, t_exp, z_exp);
        p
    }

    pub fn one(modulus: u64) -> Self {
        Self::monomial(modulus, 1, 0, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u64, i64)> + '_ {
        self.terms.iter().map(|(&(t, z), &c)| (t, z, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, coeff: i64, t_exp: i64, z_exp: i64) {
        if coeff == 0 {
            return;
        }
        let key = (t_exp, z_exp.rem_euclid(self.modulus as i64) as u64);
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed twist moduli");
        let mut out = self.clone();
        for (t, z, c) in other.terms() {
            out.add_term(c, t, z as i64);
        }
        out
    }

    pub fn neg(&self) -> Self {
        TwistedPoly {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.modulus);
        for (t, z, c) in self.terms() {
            out.add_term(c * k, t, z as i64);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed twist moduli");
        let mut out = Self::zero(self.modulus);
        for (t1, z1, c1) in self.terms() {
            for (t2, z2, c2) in other.terms() {
                out.add_term(c1 * c2, t1 + t2, (z1 + z2) as i64);
            }
        }
        out
    }

    /// Substitute `z -> zeta_M` in `Q(zeta_M)`.
    pub fn to_cyclotomic(&self, field: &CyclotomicField) -> LaurentPoly<Vec<BigRational>> {
        assert_eq!(
            field.conductor() % self.modulus,
            0,
            "field lacks the twist roots"
        );
        let step = (field.conductor() / self.modulus) as i64;
        let ring = LaurentRing::new(field.clone());
        ring.from_terms(self.terms().map(|(t, z, c)| {
            (
                t,
                field.mul(&field.from_i64(c), &field.zeta_pow(z as i64 * step)),
            )
        }))
    }

    /// Substitute `z -> root` in `F_p`; `root` must have order dividing M.
    pub fn to_prime_field(&self, field: &PrimeField, root: u64) -> LaurentPoly<u64> {
        let ring = LaurentRing::new(field.clone());
        ring.from_terms(
            self.terms()
                .map(|(t, z, c)| (t, field.mul(&field.from_i64(c), &field.pow(&root, z)))),
        )
    }

    /// Untwisted entries only.
    pub fn to_rationals(&self) -> LaurentPoly<BigRational> {
        assert_eq!(self.modulus, 1, "twisted entry needs a cyclotomic field");
        let ring = LaurentRing::new(Rationals);
        ring.from_terms(
            self.terms()
                .map(|(t, _, c)| (t, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    /// `t`-only polynomial from an untwisted entry.
    pub fn t_terms(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (t, _, c) in self.terms() {
            *out.entry(t).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (t, z, c) in self.terms() {
            let mut mono = Vec::new();
            if z != 0 {
                mono.push(if z == 1 {
                    "z".to_string()
                } else {
                    format!("z^{z}")
                });
            }
            if t != 0 {
                mono.push(if t == 1 {
                    "t".to_string()
                } else {
                    format!("t^{t}")
                });
            }
            let mono = mono.join("*");
            let mag = c.unsigned_abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag}*{mono}"),
            };
            parts.push((c < 0, body));
        }
        super::field::render_signed_terms(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_on_samples() {
        let a = TwistedPoly::monomial(3, 1, 0, 0).add(&TwistedPoly::monomial(3, -1, 1, 1));
        let b = TwistedPoly::monomial(3, 2, -1, 2);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert!(a.sub(&a).is_zero());
        // z^3 = 1
        let z = TwistedPoly::monomial(3, 1, 0, 1);
        assert_eq!(z.mul(&z).mul(&z), TwistedPoly::one(3));
    }

    #[test]
    fn specialisations_agree_on_norm_of_roots() {
        let s = TwistedPoly::one(3)
            .add(&TwistedPoly::monomial(3, 1, 0, 1))
            .add(&TwistedPoly::monomial(3, 1, 0, 2));
        let q = CyclotomicField::new(3);
        assert!(s.to_cyclotomic(&q).is_zero());
        let f7 = PrimeField::new(7).unwrap();
        assert!(s.to_prime_field(&f7, 2).is_zero());
        assert_eq!(s.display(), "1 + z + z^2");
    }
}
