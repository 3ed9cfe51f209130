//! Faithful concrete models of the irreducible finite Coxeter groups of
//! rank at most three. Generators act by right multiplication.

use super::Irreducible;

/// `a + b*phi` with `phi^2 = phi + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct GoldenInt {
    a: i64,
    b: i64,
}

impl GoldenInt {
    const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    fn int(a: i64) -> Self {
        GoldenInt { a, b: 0 }
    }

    fn add(self, o: Self) -> Self {
        GoldenInt {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }

    fn mul(self, o: Self) -> Self {
        GoldenInt {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum FactorElem {
    /// One-line notation of a permutation.
    Perm(Vec<u8>),
    /// Signed permutation: image of `i` is `sign * (abs - 1)`.
    Signed(Vec<i8>),
    /// `rho^r tau^f` in the dihedral group of order `2m`.
    Dihedral(u32, u8),
    /// Row-major matrix of the geometric representation over `Z[phi]`.
    Golden(Vec<GoldenInt>),
}

#[derive(Clone, Debug)]
pub(crate) struct FactorModel {
    kind: Irreducible,
    /// Golden generator matrices, `H3` only.
    golden_gens: Vec<Vec<GoldenInt>>,
}

impl FactorModel {
    /// `None` outside rank three.
    pub(crate) fn new(kind: Irreducible) -> Option<Self> {
        let golden_gens = match kind {
            Irreducible::A(1) | Irreducible::A(3) | Irreducible::B(3) | Irreducible::I2(_) => {
                Vec::new()
            }
            Irreducible::H3 => h3_generators(),
            _ => return None,
        };
        Some(FactorModel { kind, golden_gens })
    }

    pub(crate) fn identity(&self) -> FactorElem {
        match self.kind {
            Irreducible::A(n) => FactorElem::Perm((0..=n as u8).collect()),
            Irreducible::B(n) => FactorElem::Signed((1..=n as i8).collect()),
            Irreducible::I2(_) => FactorElem::Dihedral(0, 0),
            Irreducible::H3 => {
                let mut m = vec![GoldenInt::ZERO; 9];
                for i in 0..3 {
                    m[i * 3 + i] = GoldenInt::ONE;
                }
                FactorElem::Golden(m)
            }
            _ => unreachable!("model exists only for rank <= 3"),
        }
    }

    /// `x * s_i`, with `i` in Dynkin order.
    pub(crate) fn right_mul(&self, x: &FactorElem, i: usize) -> FactorElem {
        match (x, self.kind) {
            (FactorElem::Perm(p), _) => {
                let mut q = p.clone();
                q.swap(i, i + 1);
                FactorElem::Perm(q)
            }
            (FactorElem::Signed(p), _) => {
                // s_0 negates the first coordinate; s_i swaps i-1 and i.
                let mut q = p.clone();
                if i == 0 {
                    q[0] = -q[0];
                } else {
                    q.swap(i - 1, i);
                }
                FactorElem::Signed(q)
            }
            (FactorElem::Dihedral(r, f), Irreducible::I2(m)) => {
                if i == 0 {
                    FactorElem::Dihedral(*r, f ^ 1)
                } else {
                    let step = if *f == 0 { 1 } else { m - 1 };
                    FactorElem::Dihedral((r + step) % m, f ^ 1)
                }
            }
            (FactorElem::Golden(a), _) => {
                let s = &self.golden_gens[i];
                let mut out = vec![GoldenInt::ZERO; 9];
                for r in 0..3 {
                    for c in 0..3 {
                        out[r * 3 + c] = (0..3).fold(GoldenInt::ZERO, |acc, k| {
                            acc.add(a[r * 3 + k].mul(s[k * 3 + c]))
                        });
                    }
                }
                FactorElem::Golden(out)
            }
            _ => unreachable!("element does not belong to this model"),
        }
    }
}

/// Reflections `s_i(x) = x - 2B(e_i, x) e_i` for the path `5, 3`.
fn h3_generators() -> Vec<Vec<GoldenInt>> {
    // 2cos(pi/m) for the pair (i, j): 5 on (0,1), 3 on (1,2), 2 on (0,2).
    let two_cos = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => GoldenInt::PHI,
        (1, 2) => GoldenInt::ONE,
        _ => GoldenInt::ZERO,
    };
    (0..3)
        .map(|i| {
            let mut m = vec![GoldenInt::ZERO; 9];
            for r in 0..3 {
                m[r * 3 + r] = GoldenInt::ONE;
            }
            for c in 0..3 {
                m[i * 3 + c] = if c == i {
                    GoldenInt::int(-1)
                } else {
                    two_cos(i, c)
                };
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group_size(kind: Irreducible, rank: usize) -> usize {
        let m = FactorModel::new(kind).unwrap();
        let mut seen = HashSet::from([m.identity()]);
        let mut frontier = vec![m.identity()];
        while let Some(x) = frontier.pop() {
            for i in 0..rank {
                let y = m.right_mul(&x, i);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn model_orders() {
        assert_eq!(group_size(Irreducible::A(1), 1), 2);
        assert_eq!(group_size(Irreducible::A(3), 3), 24);
        assert_eq!(group_size(Irreducible::B(3), 3), 48);
        assert_eq!(group_size(Irreducible::H3, 3), 120);
        for m in 2..10 {
            assert_eq!(group_size(Irreducible::I2(m), 2), 2 * m as usize);
        }
    }
}
