//! Breadth-first enumeration of a spherical Coxeter group of rank at most
//! three, and minimal representatives of cosets `w W_J`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::models::{FactorElem, FactorModel};
use super::{classify_clique, Classification};
use crate::algebra::TwistedPoly;
use crate::error::CoxeterError;
use crate::graph::{LabeledGraph, Vertex};

/// `sum (-1)^l(w) a_w` as explicit reduced words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedWordSum {
    pub terms: Vec<(i8, Vec<Vertex>)>,
}

impl SignedWordSum {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The whole finite group on a spherical clique with lengths and one
/// shortlex-minimal reduced word per element.
#[derive(Clone, Debug)]
pub struct CoxeterGroupModel {
    clique: Vec<Vertex>,
    /// Per clique vertex: (factor index, Dynkin position).
    gens: Vec<(usize, usize)>,
    factors: Vec<FactorModel>,
    elements: Vec<Vec<FactorElem>>,
    words: Vec<Vec<Vertex>>,
    index: HashMap<Vec<FactorElem>, usize>,
}

impl CoxeterGroupModel {
    pub fn new(g: &LabeledGraph, clique: &[Vertex]) -> Result<Self, CoxeterError> {
        let mut clique = clique.to_vec();
        clique.sort_unstable();
        clique.dedup();
        if clique.len() > 3 {
            return Err(CoxeterError::RankTooLarge(clique.len()));
        }
        let ty = match classify_clique(g, &clique) {
            Classification::Spherical(t) => t,
            Classification::NonSpherical(_) => return Err(CoxeterError::NotSpherical),
        };
        let mut factors = Vec::new();
        let mut gens = vec![(0, 0); clique.len()];
        for (fi, f) in ty.factors.iter().enumerate() {
            factors.push(FactorModel::new(f.kind).ok_or(CoxeterError::RankTooLarge(clique.len()))?);
            for (pos, v) in f.vertices.iter().enumerate() {
                let ci = clique.iter().position(|c| c == v).unwrap();
                gens[ci] = (fi, pos);
            }
        }
        let identity: Vec<FactorElem> = factors.iter().map(|f| f.identity()).collect();
        let mut model = CoxeterGroupModel {
            clique,
            gens,
            factors,
            elements: vec![identity.clone()],
            words: vec![Vec::new()],
            index: HashMap::from([(identity, 0)]),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for ci in 0..model.clique.len() {
                let y = model.act(&model.elements[i], ci);
                if !model.index.contains_key(&y) {
                    let mut w = model.words[i].clone();
                    w.push(model.clique[ci]);
                    model.index.insert(y.clone(), model.elements.len());
                    model.elements.push(y);
                    model.words.push(w);
                    queue.push_back(model.elements.len() - 1);
                }
            }
        }
        debug_assert_eq!(model.elements.len() as u128, ty.order);
        Ok(model)
    }

    fn act(&self, x: &[FactorElem], clique_pos: usize) -> Vec<FactorElem> {
        let (fi, local) = self.gens[clique_pos];
        let mut y = x.to_vec();
        y[fi] = self.factors[fi].right_mul(&x[fi], local);
        y
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn clique(&self) -> &[Vertex] {
        &self.clique
    }

    fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// Minimal representatives of `w W_J`: no right descent in `J`.
    pub fn coset_reps(&self, subset: &[Vertex]) -> SignedWordSum {
        let positions: Vec<usize> = subset
            .iter()
            .map(|v| {
                self.clique
                    .iter()
                    .position(|c| c == v)
                    .expect("subset of clique")
            })
            .collect();
        let terms = (0..self.elements.len())
            .filter(|&i| {
                positions.iter().all(|&p| {
                    let j = self.index[&self.act(&self.elements[i], p)];
                    self.length(j) > self.length(i)
                })
            })
            .map(|i| {
                (
                    if self.length(i) % 2 == 0 { 1 } else { -1 },
                    self.words[i].clone(),
                )
            })
            .collect();
        SignedWordSum { terms }
    }
}

/// `T_X^{X - v}`: representatives of `W_X / W_{X - v}` with signs.
pub fn enumerate_coset_reps(
    g: &LabeledGraph,
    clique: &[Vertex],
    v: Vertex,
) -> Result<SignedWordSum, CoxeterError> {
    if !clique.contains(&v) {
        return Err(CoxeterError::NotInClique);
    }
    let model = CoxeterGroupModel::new(g, clique)?;
    let rest: Vec<Vertex> = model.clique().iter().copied().filter(|&u| u != v).collect();
    Ok(model.coset_reps(&rest))
}

/// `sum sign * t^chi(w) * z^k(w)` where `k` gives each letter's root-of-unity
/// exponent modulo `modulus`.
pub fn evaluate_t(sum: &SignedWordSum, chi: &[i64], twist: Option<(&[i64], u64)>) -> TwistedPoly {
    let modulus = twist.map_or(1, |(_, m)| m);
    let mut out = TwistedPoly::zero(modulus);
    for (sign, word) in &sum.terms {
        let t: i64 = word.iter().map(|&v| chi[v]).sum();
        let z: i64 = twist.map_or(0, |(k, _)| word.iter().map(|&v| k[v]).sum());
        out.add_term(*sign as i64, t, z);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(m: u32) -> LabeledGraph {
        LabeledGraph::from_edges(2, &[(0, 1, m)]).unwrap()
    }

    fn b3() -> LabeledGraph {
        // 0-1 label 4, 1-2 label 3, 0-2 label 2
        LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 3), (0, 2, 2)]).unwrap()
    }

    #[test]
    fn singleton_sum() {
        let g = LabeledGraph::from_edges(1, &[]).unwrap();
        let s = enumerate_coset_reps(&g, &[0], 0).unwrap();
        assert_eq!(s.terms, vec![(1, vec![]), (-1, vec![0])]);
        let p = evaluate_t(&s, &[3], None);
        assert_eq!(p.display(), "1 - t^3");
    }

    #[test]
    fn dihedral_reps_alternate() {
        for k in 1..=4u32 {
            let g = edge(2 * k);
            let s = enumerate_coset_reps(&g, &[0, 1], 1).unwrap();
            assert_eq!(s.len() as u32, 2 * k);
            // Every representative ends in the removed generator.
            assert!(s
                .terms
                .iter()
                .all(|(_, w)| w.last().map_or(true, |&x| x == 1)));
        }
    }

    #[test]
    fn dead_i4_sum_is_geometric() {
        let s = enumerate_coset_reps(&edge(4), &[0, 1], 1).unwrap();
        let p = evaluate_t(&s, &[1, -1], None);
        // 1 - t^-1 + 1 - t^-1
        assert_eq!(p.display(), "-2*t^-1 + 2");
    }

    #[test]
    fn b3_counts() {
        let g = b3();
        assert_eq!(enumerate_coset_reps(&g, &[0, 1, 2], 0).unwrap().len(), 8);
        assert_eq!(enumerate_coset_reps(&g, &[0, 1, 2], 2).unwrap().len(), 6);
        assert_eq!(enumerate_coset_reps(&g, &[0, 1, 2], 1).unwrap().len(), 12);
    }

    #[test]
    fn coset_count_identity_all_rank_three() {
        let menus = [
            (2, 2, 7),
            (2, 3, 3),
            (2, 3, 4),
            (2, 3, 5),
            (3, 2, 5),
            (5, 3, 2),
            (2, 2, 2),
        ];
        for (a, b, c) in menus {
            let g = LabeledGraph::from_edges(3, &[(0, 1, a), (1, 2, b), (0, 2, c)]).unwrap();
            let whole = CoxeterGroupModel::new(&g, &[0, 1, 2]).unwrap();
            for v in 0..3 {
                let rest: Vec<Vertex> = (0..3).filter(|&u| u != v).collect();
                let sub = CoxeterGroupModel::new(&g, &rest).unwrap();
                let reps = enumerate_coset_reps(&g, &[0, 1, 2], v).unwrap();
                assert_eq!(reps.len() * sub.order(), whole.order(), "{a},{b},{c} v={v}");
            }
        }
    }

    #[test]
    fn errors() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
        assert_eq!(
            enumerate_coset_reps(&g, &[0, 1, 2], 0),
            Err(CoxeterError::NotSpherical)
        );
        let k4 = LabeledGraph::from_edges(
            4,
            &[
                (0, 1, 2),
                (0, 2, 2),
                (0, 3, 2),
                (1, 2, 2),
                (1, 3, 2),
                (2, 3, 2),
            ],
        )
        .unwrap();
        assert_eq!(
            enumerate_coset_reps(&k4, &[0, 1, 2, 3], 0),
            Err(CoxeterError::RankTooLarge(4))
        );
    }
}
