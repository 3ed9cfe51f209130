//! The 2-complex on `Liv` with spherical living triangles attached.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::integer_snf;
use crate::character::{living_analysis, Character};
use crate::coxeter::{classify_clique, Irreducible};
use crate::graph::{LabeledGraph, Vertex};

const TIETZE_PASSES: usize = 1000;
const WORD_LENGTH_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimpleConnectivity {
    SimplyConnected,
    NotSimplyConnected,
    /// Tietze reduction stalled.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachedComplex {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Spherical triangles with living vertices and `Liv` edges, sorted.
    pub triangles: Vec<[Vertex; 3]>,
    /// `B3` triangles left out because their 4-edge is 3-dead there.
    pub excluded_b3: Vec<[Vertex; 3]>,
}

impl AttachedComplex {
    pub fn build(g: &LabeledGraph, chi: &Character) -> Self {
        let liv = living_analysis(g, chi);
        let mut triangles = Vec::new();
        let mut excluded_b3 = Vec::new();
        for c in g.enumerate_cliques(3).into_iter().filter(|c| c.len() == 3) {
            let t = [c[0], c[1], c[2]];
            if !t.iter().all(|&v| chi.is_living(v)) {
                continue;
            }
            if !(liv.is_liv_edge(t[0], t[1])
                && liv.is_liv_edge(t[0], t[2])
                && liv.is_liv_edge(t[1], t[2]))
            {
                continue;
            }
            let Some(ty) = classify_clique(g, &t).spherical().cloned() else {
                continue;
            };
            if ty.has(Irreducible::B(3)) && b3_three_dead(g, chi, &t) {
                excluded_b3.push(t);
            } else {
                triangles.push(t);
            }
        }
        AttachedComplex {
            vertices: liv.liv0_vertices,
            edges: liv.liv_edges,
            triangles,
            excluded_b3,
        }
    }

    pub fn connected(&self) -> bool {
        !self.vertices.is_empty() && self.components() == 1
    }

    fn components(&self) -> usize {
        let idx = self.index();
        let mut uf = crate::graph::UnionFind::new(self.vertices.len());
        let mut count = self.vertices.len();
        for &(u, v) in &self.edges {
            if uf.union(idx[&u], idx[&v]) {
                count -= 1;
            }
        }
        count
    }

    fn index(&self) -> BTreeMap<Vertex, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect()
    }

    fn edge_index(&self) -> BTreeMap<(Vertex, Vertex), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect()
    }

    /// Free rank and torsion coefficients of `H_1(K; Z)`.
    pub fn h1(&self) -> (usize, Vec<String>) {
        let idx = self.index();
        let eidx = self.edge_index();
        let (nv, ne, nt) = (self.vertices.len(), self.edges.len(), self.triangles.len());
        let mut d1 = vec![vec![BigInt::zero(); ne]; nv];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            d1[idx[&u]][j] -= 1;
            d1[idx[&v]][j] += 1;
        }
        let mut d2 = vec![vec![BigInt::zero(); nt]; ne];
        for (j, t) in self.triangles.iter().enumerate() {
            // Boundary [a,b] + [b,c] - [a,c].
            d2[eidx[&(t[0], t[1])]][j] += 1;
            d2[eidx[&(t[1], t[2])]][j] += 1;
            d2[eidx[&(t[0], t[2])]][j] -= 1;
        }
        let r1 = if nv == 0 || ne == 0 {
            0
        } else {
            integer_snf(&d1).rank
        };
        let (r2, torsion) = if ne == 0 || nt == 0 {
            (0, Vec::new())
        } else {
            let s = integer_snf(&d2);
            let t = s
                .factors
                .iter()
                .filter(|f| !f.is_one())
                .map(|f| f.to_string())
                .collect();
            (s.rank, t)
        };
        (ne - r1 - r2, torsion)
    }

    /// `H_1(K; Z) = 0` and `K` connected.
    pub fn one_acyclic(&self) -> bool {
        let (rank, torsion) = self.h1();
        self.connected() && rank == 0 && torsion.is_empty()
    }

    /// Tietze reduction of the edge-path presentation of `pi_1(K)`.
    pub fn simple_connectivity(&self) -> SimpleConnectivity {
        if !self.connected() {
            return SimpleConnectivity::NotSimplyConnected;
        }
        let (rank, torsion) = self.h1();
        if rank > 0 || !torsion.is_empty() {
            return SimpleConnectivity::NotSimplyConnected;
        }
        // Spanning tree; the remaining edges generate.
        let idx = self.index();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            adj[idx[&u]].push((j, idx[&v]));
            adj[idx[&v]].push((j, idx[&u]));
        }
        let mut in_tree = vec![false; self.edges.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        while let Some(x) = q.pop_front() {
            for &(j, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    in_tree[j] = true;
                    q.push_back(y);
                }
            }
        }
        // Generator j + 1 is edge j oriented low to high; negative is inverse.
        let eidx = self.edge_index();
        let letter = |a: Vertex, b: Vertex| -> Option<i64> {
            let j = eidx[&(a.min(b), a.max(b))];
            if in_tree[j] {
                None
            } else if a < b {
                Some(j as i64 + 1)
            } else {
                Some(-(j as i64 + 1))
            }
        };
        let mut relators: Vec<Vec<i64>> = self
            .triangles
            .iter()
            .map(|t| {
                let w: Vec<i64> = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
                    .iter()
                    .filter_map(|&(a, b)| letter(a, b))
                    .collect();
                cyclic_reduce(free_reduce(w))
            })
            .collect();
        let mut generators: Vec<i64> = (0..self.edges.len())
            .filter(|&j| !in_tree[j])
            .map(|j| j as i64 + 1)
            .collect();
        tietze(&mut generators, &mut relators)
    }
}

/// The 4-edge `{a, b}` of a `B3` triangle with `b` on the 3-edge and
/// `2 chi(a) + chi(b) = 0`.
fn b3_three_dead(g: &LabeledGraph, chi: &Character, t: &[Vertex; 3]) -> bool {
    let two = Rational64::from_integer(2);
    for (i, j, k) in [
        (0, 1, 2),
        (0, 2, 1),
        (1, 0, 2),
        (1, 2, 0),
        (2, 0, 1),
        (2, 1, 0),
    ] {
        let (a, b, x) = (t[i], t[j], t[k]);
        if g.label(a, b) == Some(4)
            && g.label(b, x) == Some(3)
            && (two * chi.value(a) + chi.value(b)).is_zero()
        {
            return true;
        }
    }
    false
}

fn free_reduce(w: Vec<i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(w.len());
    for x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<i64>) -> Vec<i64> {
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn tietze(generators: &mut Vec<i64>, relators: &mut Vec<Vec<i64>>) -> SimpleConnectivity {
    for _ in 0..TIETZE_PASSES {
        relators.retain(|r| !r.is_empty());
        if generators.is_empty() {
            return SimpleConnectivity::SimplyConnected;
        }
        if generators
            .iter()
            .any(|&x| !relators.iter().any(|r| r.iter().any(|&y| y.abs() == x)))
        {
            return SimpleConnectivity::NotSimplyConnected;
        }
        // Shortest relator containing some generator exactly once.
        let mut best: Option<(usize, usize, i64)> = None;
        for (ri, r) in relators.iter().enumerate() {
            for &x in generators.iter() {
                let hits: Vec<usize> = (0..r.len()).filter(|&p| r[p].abs() == x).collect();
                if hits.len() == 1 && best.map_or(true, |(bi, _, _)| r.len() < relators[bi].len()) {
                    best = Some((ri, hits[0], x));
                }
            }
        }
        let Some((ri, pos, x)) = best else {
            return SimpleConnectivity::Unknown;
        };
        let r = relators.remove(ri);
        // r = u x^s v, so x^s = u^-1 v^-1 after rotation: x^s = (v u)^-1.
        let s = r[pos].signum();
        let mut rest: Vec<i64> = r[pos + 1..].to_vec();
        rest.extend_from_slice(&r[..pos]);
        let inv: Vec<i64> = rest.iter().rev().map(|&y| -y).collect();
        let value = if s > 0 { inv } else { rest };
        let value_inv: Vec<i64> = value.iter().rev().map(|&y| -y).collect();
        for w in relators.iter_mut() {
            let mut out = Vec::with_capacity(w.len());
            for &y in w.iter() {
                if y == x {
                    out.extend_from_slice(&value);
                } else if y == -x {
                    out.extend_from_slice(&value_inv);
                } else {
                    out.push(y);
                }
            }
            *w = cyclic_reduce(free_reduce(out));
            if w.len() > WORD_LENGTH_CAP {
                return SimpleConnectivity::Unknown;
            }
        }
        generators.retain(|&y| y != x);
    }
    SimpleConnectivity::Unknown
}
