//! Finite abelian groups `C_{m_1} x ... x C_{m_r}`, their rational group
//! rings, and the character scan deciding whether finitely many group-ring
//! elements generate a proper ideal after splitting over `C`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::field::{CyclotomicField, Field};
use super::primes::lcm_all;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    /// Orders must be at least 1. An empty list is the trivial group.
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(
            orders.iter().all(|&m| m >= 1),
            "cyclic orders must be positive"
        );
        FiniteAbelianGroup { orders }
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        lcm_all(self.orders.iter().copied())
    }

    pub fn reduce(&self, g: &[i64]) -> Vec<u64> {
        assert_eq!(g.len(), self.orders.len());
        g.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
            .collect()
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn op(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn pow(&self, a: &[u64], k: i64) -> Vec<u64> {
        let scaled: Vec<i64> = a.iter().map(|&x| x as i64 * k).collect();
        self.reduce(&scaled)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// The character with index `k` sends `g` to `zeta_E^e` where
    /// `E` is the exponent and `e` is the value returned here.
    pub fn character_exponent(&self, k: &[u64], g: &[u64]) -> u64 {
        let e = self.exponent();
        k.iter()
            .zip(g)
            .zip(&self.orders)
            .map(|((ki, gi), mi)| ki * gi % mi * (e / mi))
            .sum::<u64>()
            % e
    }
}

/// Element of `Q[G]`, stored sparsely with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    pub terms: BTreeMap<Vec<u64>, BigRational>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, g: Vec<u64>, c: BigRational) {
        let entry = self
            .terms
            .entry(g.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// Translate by a group element.
    pub fn shifted(&self, group: &FiniteAbelianGroup, h: &[u64]) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(group.op(g, h), c.clone());
        }
        out
    }

    /// Value under the character with index `k`, in `Q(zeta_E)`.
    pub fn evaluate(
        &self,
        group: &FiniteAbelianGroup,
        field: &CyclotomicField,
        k: &[u64],
    ) -> Vec<BigRational> {
        let step = (field.conductor() / group.exponent()) as i64;
        self.terms.iter().fold(field.zero(), |acc, (g, c)| {
            let root = field.zeta_pow(group.character_exponent(k, g) as i64 * step);
            field.add(&acc, &field.mul(&field.from_rational(c.clone()), &root))
        })
    }

    pub fn display(&self) -> String {
        let gens = ["g", "h", "k", "l", "m", "n"];
        let mut parts = Vec::new();
        for (g, c) in &self.terms {
            let mono: Vec<String> = g
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let name = gens
                        .get(i)
                        .map(|s| s.to_string())
                        .unwrap_or(format!("g{i}"));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let mag = if c < &BigRational::zero() {
                -c.clone()
            } else {
                c.clone()
            };
            let body = match (mono.is_empty(), mag == BigRational::from_integer(1.into())) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            parts.push((c < &BigRational::zero(), body));
        }
        super::field::render_signed_terms(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdealProperness {
    /// Index of a character annihilating every generator.
    Witness(Vec<u64>),
    Full,
}

/// Scans all `|G|` characters in lexicographic order of their index and
/// returns the first one vanishing on every generator.
pub fn ideal_properness(
    group: &FiniteAbelianGroup,
    generators: &[GroupRingElement],
) -> IdealProperness {
    let field = CyclotomicField::new(group.exponent());
    for k in group.elements() {
        if generators
            .iter()
            .all(|p| field.is_zero(&p.evaluate(group, &field, &k)))
        {
            return IdealProperness::Witness(k);
        }
    }
    IdealProperness::Full
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn elem(terms: &[(&[u64], i64)]) -> GroupRingElement {
        let mut e = GroupRingElement::zero();
        for (g, c) in terms {
            e.add_term(g.to_vec(), q(*c));
        }
        e
    }

    #[test]
    fn c2_examples() {
        let g = FiniteAbelianGroup::new(vec![2]);
        let one_plus = elem(&[(&[0], 1), (&[1], 1)]);
        let one_minus = elem(&[(&[0], 1), (&[1], -1)]);
        assert_eq!(
            ideal_properness(&g, &[one_plus.clone()]),
            IdealProperness::Witness(vec![1])
        );
        assert_eq!(
            ideal_properness(&g, &[one_plus, one_minus]),
            IdealProperness::Full
        );
    }

    #[test]
    fn c2_times_c3() {
        let g = FiniteAbelianGroup::new(vec![2, 3]);
        let a = elem(&[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = elem(&[(&[0, 0], 1), (&[0, 1], 1), (&[0, 2], 1)]);
        match ideal_properness(&g, &[a, b]) {
            IdealProperness::Witness(k) => {
                assert_eq!(k[0], 1);
                assert_ne!(k[1], 0);
            }
            IdealProperness::Full => panic!("expected a witness"),
        }
    }
}
