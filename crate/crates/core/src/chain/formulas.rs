//! Closed forms of the cellular differentials for cells of size at most
//! three, as an independent pathway to the coset enumeration.
//!
//! Each letter `v` is sent to `L(v) = t^chi(v) z^e(v)`; untwisted complexes
//! use `e = 0`.

use crate::algebra::TwistedPoly;
use crate::graph::{LabeledGraph, Vertex};

struct Letters<'a> {
    chi: &'a [i64],
    twist: Option<(&'a [i64], u64)>,
}

impl Letters<'_> {
    fn modulus(&self) -> u64 {
        self.twist.map_or(1, |(_, m)| m)
    }

    fn one(&self) -> TwistedPoly {
        TwistedPoly::one(self.modulus())
    }

    fn letter(&self, v: Vertex) -> TwistedPoly {
        let z = self.twist.map_or(0, |(e, _)| e[v]);
        TwistedPoly::monomial(self.modulus(), 1, self.chi[v], z)
    }

    /// `1 - L(v)`.
    fn one_minus(&self, x: &TwistedPoly) -> TwistedPoly {
        self.one().sub(x)
    }

    /// `sum_{j<k} x^j`.
    fn geometric(&self, x: &TwistedPoly, k: u32) -> TwistedPoly {
        let mut acc = TwistedPoly::zero(self.modulus());
        let mut p = self.one();
        for _ in 0..k {
            acc = acc.add(&p);
            p = p.mul(x);
        }
        acc
    }
}

/// Signed boundary coefficients `(face, coefficient)` of the cell, faces in
/// the order the cell's vertices are removed. `None` for triangle types
/// without a closed form here (`{2, 2, odd}`, `{2, 3, 3}`, `{2, 3, 5}`).
pub fn closed_form_boundary(
    g: &LabeledGraph,
    cell: &[Vertex],
    chi: &[i64],
    twist: Option<(&[i64], u64)>,
) -> Option<Vec<(Vec<Vertex>, TwistedPoly)>> {
    let lt = Letters { chi, twist };
    let mut cell = cell.to_vec();
    cell.sort_unstable();
    let unsigned: Vec<TwistedPoly> = match cell.len() {
        1 => vec![lt.one_minus(&lt.letter(cell[0]))],
        2 => {
            let (a, b) = (cell[0], cell[1]);
            let l = g.label(a, b)?;
            let (la, lb) = (lt.letter(a), lt.letter(b));
            if l % 2 == 0 {
                let geo = lt.geometric(&la.mul(&lb), l / 2);
                vec![lt.one_minus(&la).mul(&geo), lt.one_minus(&lb).mul(&geo)]
            } else {
                let alt = lt.geometric(&la.neg(), l);
                vec![alt.clone(), alt]
            }
        }
        3 => triangle(g, &cell, &lt)?,
        _ => return None,
    };
    Some(
        cell.iter()
            .zip(unsigned)
            .enumerate()
            .map(|(pos, (&v, coeff))| {
                let face: Vec<Vertex> = cell.iter().copied().filter(|&u| u != v).collect();
                (face, if pos % 2 == 0 { coeff } else { coeff.neg() })
            })
            .collect(),
    )
}

/// Unsigned coset sums indexed like the sorted cell.
fn triangle(g: &LabeledGraph, cell: &[Vertex], lt: &Letters) -> Option<Vec<TwistedPoly>> {
    let opposite = |i: usize| {
        let (u, v) = match i {
            0 => (cell[1], cell[2]),
            1 => (cell[0], cell[2]),
            _ => (cell[0], cell[1]),
        };
        g.label(u, v)
    };
    let labels: Vec<u32> = (0..3).map(opposite).collect::<Option<_>>()?;
    let mut out = vec![TwistedPoly::zero(lt.modulus()); 3];
    let twos = labels.iter().filter(|&&l| l == 2).count();
    if twos >= 2 {
        // The commuting vertex `a` sits opposite the possibly long edge `bc`.
        let a = if twos == 3 {
            0
        } else {
            labels.iter().position(|&l| l != 2)?
        };
        let m = labels[a];
        if m % 2 == 1 {
            return None;
        }
        let (b, c) = match a {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (lb, lc) = (lt.letter(cell[b]), lt.letter(cell[c]));
        let geo = lt.geometric(&lb.mul(&lc), m / 2);
        out[a] = lt.one_minus(&lt.letter(cell[a]));
        out[b] = lt.one_minus(&lb).mul(&geo);
        out[c] = lt.one_minus(&lc).mul(&geo);
        return Some(out);
    }
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted != [2, 3, 4] {
        return None;
    }
    // Path a -4- b -3- c: `a` is opposite the 3-edge, `c` opposite the 4-edge.
    let a = labels.iter().position(|&l| l == 3)?;
    let b = labels.iter().position(|&l| l == 2)?;
    let c = labels.iter().position(|&l| l == 4)?;
    let x = lt.letter(cell[a]);
    let y = lt.letter(cell[b]);
    let xy = x.mul(&y);
    let xyy = xy.mul(&y);
    let one = lt.one();
    let quad = one.sub(&y).add(&y.mul(&y));
    out[a] = lt.one_minus(&x).mul(&one.add(&xy)).mul(&lt.one_minus(&xyy));
    out[b] = one.add(&xy).mul(&lt.one_minus(&xyy)).mul(&quad);
    out[c] = lt.one_minus(&xyy).mul(&quad);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_and_even_edge() {
        let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
        let f = closed_form_boundary(&g, &[0], &[2, -1], None).unwrap();
        assert_eq!(f[0].1.display(), "1 - t^2");
        let f = closed_form_boundary(&g, &[0, 1], &[1, -1], None).unwrap();
        assert_eq!(f[0].0, vec![1]);
        assert_eq!(f[0].1.display(), "2 - 2*t");
        assert_eq!(f[1].1.display(), "2*t^-1 - 2");
    }

    #[test]
    fn unsupported_types() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 2)]).unwrap();
        assert!(closed_form_boundary(&g, &[0, 1, 2], &[1, 1, 1], None).is_none());
        let h = LabeledGraph::from_edges(3, &[(0, 1, 2), (1, 2, 5), (0, 2, 2)]).unwrap();
        assert!(closed_form_boundary(&h, &[0, 1, 2], &[1, 1, 1], None).is_none());
    }
}
