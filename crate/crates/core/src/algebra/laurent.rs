//! Laurent polynomials `F[t, t^-1]` over an exact field.

use std::cmp::Ordering;

use super::field::{render_signed_terms, Field};
use super::poly;
use super::snf::EuclideanRing;

/// `t^low * (c_0 + c_1 t + ...)`. Canonical: no zero at either end of
/// `coeffs`; the zero polynomial has empty `coeffs` and `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<E> {
    low: i64,
    coeffs: Vec<E>,
}

impl<E: Clone> LaurentPoly<E> {
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent minus lowest; `None` for zero.
    pub fn width(&self) -> Option<u64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u64 - 1)
        }
    }

    pub fn high(&self) -> Option<i64> {
        self.width().map(|w| self.low + w as i64)
    }

    /// Terms as (exponent, coefficient), increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.low + i as i64, c))
    }
}

/// Ring context for `LaurentPoly<F::Elem>`.
#[derive(Clone, Debug)]
pub struct LaurentRing<F: Field> {
    field: F,
}

impl<F: Field> LaurentRing<F> {
    pub fn new(field: F) -> Self {
        LaurentRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn make(&self, low: i64, coeffs: Vec<F::Elem>) -> LaurentPoly<F::Elem> {
        let mut coeffs = poly::trimmed(&self.field, coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| self.field.is_zero(c)).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly {
                low: 0,
                coeffs: Vec::new(),
            };
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, F::Elem)>>(
        &self,
        terms: I,
    ) -> LaurentPoly<F::Elem> {
        let terms: Vec<(i64, F::Elem)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return self.zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![self.field.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let i = (e - lo) as usize;
            coeffs[i] = self.field.add(&coeffs[i], &c);
        }
        self.make(lo, coeffs)
    }

    pub fn monomial(&self, exp: i64, c: F::Elem) -> LaurentPoly<F::Elem> {
        self.make(exp, vec![c])
    }

    pub fn t_pow(&self, exp: i64) -> LaurentPoly<F::Elem> {
        self.monomial(exp, self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> LaurentPoly<F::Elem> {
        self.make(0, vec![c])
    }

    pub fn zero(&self) -> LaurentPoly<F::Elem> {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(&self) -> LaurentPoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn add(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let lo = a.low.min(b.low);
        let hi = a.high().unwrap().max(b.high().unwrap());
        let mut coeffs = vec![self.field.zero(); (hi - lo + 1) as usize];
        for (e, c) in a.terms().chain(b.terms()) {
            let i = (e - lo) as usize;
            coeffs[i] = self.field.add(&coeffs[i], c);
        }
        self.make(lo, coeffs)
    }

    pub fn neg(&self, a: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        LaurentPoly {
            low: a.low,
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LaurentPoly<F::Elem>, b: &LaurentPoly<F::Elem>) -> LaurentPoly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.make(a.low + b.low, poly::mul(&self.field, &a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, a: &LaurentPoly<F::Elem>, c: &F::Elem) -> LaurentPoly<F::Elem> {
        self.make(
            a.low,
            a.coeffs.iter().map(|x| self.field.mul(x, c)).collect(),
        )
    }

    pub fn shift(&self, a: &LaurentPoly<F::Elem>, k: i64) -> LaurentPoly<F::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        LaurentPoly {
            low: a.low + k,
            coeffs: a.coeffs.clone(),
        }
    }

    /// Value at a nonzero point.
    pub fn eval(&self, a: &LaurentPoly<F::Elem>, x: &F::Elem) -> F::Elem {
        let v = poly::eval(&self.field, &a.coeffs, x);
        let xl = if a.low >= 0 {
            self.field.pow(x, a.low as u64)
        } else {
            let inv = self.field.inv(x).expect("evaluation at zero");
            self.field.pow(&inv, (-a.low) as u64)
        };
        self.field.mul(&v, &xl)
    }

    /// Human-readable form with the field's own coefficient rendering.
    pub fn display_with(
        &self,
        a: &LaurentPoly<F::Elem>,
        coef: impl Fn(&F::Elem) -> (bool, String),
    ) -> String {
        let mut parts = Vec::new();
        for (e, c) in a.terms() {
            if self.field.is_zero(c) {
                continue;
            }
            let (neg, mag) = coef(c);
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let body = match (mag.as_str(), mono.is_empty()) {
                (_, true) => mag,
                ("1", false) => mono,
                (_, false) => format!("{mag}*{mono}"),
            };
            parts.push((neg, body));
        }
        render_signed_terms(parts)
    }
}

impl<F: Field> EuclideanRing for LaurentRing<F> {
    type Elem = LaurentPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        LaurentRing::zero(self)
    }
    fn one(&self) -> Self::Elem {
        LaurentRing::one(self)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        LaurentRing::add(self, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LaurentRing::neg(self, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        LaurentRing::mul(self, a, b)
    }

    fn norm_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.width().cmp(&b.width())
    }

    /// Shift both operands to ordinary polynomials with nonzero constant
    /// term; the remainder then has width below `b`'s.
    fn divrem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return (self.zero(), self.zero());
        }
        let (q, r) = poly::divrem(&self.field, &a.coeffs, &b.coeffs);
        (self.make(a.low - b.low, q), self.make(a.low, r))
    }

    fn unit_normal(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        if a.is_zero() {
            return (self.zero(), self.one());
        }
        let lead_inv = self.field.inv(a.coeffs.last().unwrap()).unwrap();
        let u = self.monomial(-a.low, lead_inv);
        (self.mul(a, &u), u)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.width() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;
    use num_traits::Signed;

    #[test]
    fn division_reduces_width() {
        let r = LaurentRing::new(Rationals);
        let f = Rationals;
        let a = r.from_terms([(-2, f.from_i64(1)), (3, f.from_i64(4)), (5, f.from_i64(-1))]);
        let b = r.from_terms([(1, f.from_i64(1)), (3, f.from_i64(1))]);
        let (q, rem) = r.divrem(&a, &b);
        assert!(r.norm_cmp(&rem, &b) == Ordering::Less);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }

    #[test]
    fn unit_normal_is_monic_at_zero() {
        let r = LaurentRing::new(Rationals);
        let f = Rationals;
        let a = r.from_terms([(-3, f.from_i64(2)), (-1, f.from_i64(-6))]);
        let (n, _) = r.unit_normal(&a);
        assert_eq!(n.low(), 0);
        assert_eq!(n.coeffs().last().unwrap(), &f.one());
        assert_eq!(
            r.display_with(&n, |c| (c < &f.zero(), c.abs().to_string())),
            "-1/3 + t^2"
        );
    }
}
