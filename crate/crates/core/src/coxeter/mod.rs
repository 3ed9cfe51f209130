//! Finite Coxeter types of labelled cliques, minimal coset representatives
//! and their alternating sums.

mod cosets;
mod models;

use std::fmt;

use serde::Serialize;

use crate::graph::{LabeledGraph, Vertex};

pub use cosets::{enumerate_coset_reps, evaluate_t, CoxeterGroupModel, SignedWordSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Irreducible {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl Irreducible {
    pub fn rank(&self) -> usize {
        match *self {
            Irreducible::A(n) | Irreducible::B(n) | Irreducible::D(n) => n,
            Irreducible::E6 => 6,
            Irreducible::E7 => 7,
            Irreducible::E8 => 8,
            Irreducible::F4 | Irreducible::H4 => 4,
            Irreducible::H3 => 3,
            Irreducible::I2(_) => 2,
        }
    }

    pub fn order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            Irreducible::A(n) => fact(n + 1),
            Irreducible::B(n) => (1u128 << n) * fact(n),
            Irreducible::D(n) => (1u128 << (n - 1)) * fact(n),
            Irreducible::E6 => 51_840,
            Irreducible::E7 => 2_903_040,
            Irreducible::E8 => 696_729_600,
            Irreducible::F4 => 1_152,
            Irreducible::H3 => 120,
            Irreducible::H4 => 14_400,
            Irreducible::I2(m) => 2 * m as u128,
        }
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::D(n) => write!(f, "D{n}"),
            Irreducible::E6 => write!(f, "E6"),
            Irreducible::E7 => write!(f, "E7"),
            Irreducible::E8 => write!(f, "E8"),
            Irreducible::F4 => write!(f, "F4"),
            Irreducible::H3 => write!(f, "H3"),
            Irreducible::H4 => write!(f, "H4"),
            Irreducible::I2(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: Irreducible,
    /// Vertices in Dynkin order: a path is listed end to end, starting at
    /// the end carrying the special label for B, H; the branch vertex of
    /// D, E comes after its shortest arms.
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterType {
    pub factors: Vec<Factor>,
    pub order: u128,
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.kind.rank()).sum()
    }

    /// True when some factor is `kind`.
    pub fn has(&self, kind: Irreducible) -> bool {
        self.factors.iter().any(|f| f.kind == kind)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.kind.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Spherical(CoxeterType),
    /// Offending vertex set: a non-adjacent pair or a Dynkin component.
    NonSpherical(Vec<Vertex>),
}

impl Classification {
    pub fn spherical(&self) -> Option<&CoxeterType> {
        match self {
            Classification::Spherical(t) => Some(t),
            Classification::NonSpherical(_) => None,
        }
    }
}

/// Classify the Coxeter group on `clique`. A non-adjacent pair carries
/// label infinity, so non-cliques are non-spherical.
pub fn classify_clique(g: &LabeledGraph, clique: &[Vertex]) -> Classification {
    let mut s: Vec<Vertex> = clique.to_vec();
    s.sort_unstable();
    s.dedup();
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !g.adjacent(u, v) {
                return Classification::NonSpherical(vec![u, v]);
            }
        }
    }
    // Dynkin diagram: label >= 3.
    let dynkin = |u: Vertex, v: Vertex| g.label(u, v).map_or(false, |l| l >= 3);
    let comps = g.components(&s, dynkin);
    let mut factors = Vec::new();
    for comp in comps {
        match classify_component(g, &comp) {
            Some(f) => factors.push(f),
            None => return Classification::NonSpherical(comp),
        }
    }
    let order = factors.iter().map(|f| f.kind.order()).product();
    Classification::Spherical(CoxeterType { factors, order })
}

pub fn is_spherical(g: &LabeledGraph, s: &[Vertex]) -> bool {
    matches!(classify_clique(g, s), Classification::Spherical(_))
}

fn classify_component(g: &LabeledGraph, comp: &[Vertex]) -> Option<Factor> {
    let n = comp.len();
    let lab = |u: Vertex, v: Vertex| g.label(u, v).unwrap();
    if n == 1 {
        return Some(Factor {
            kind: Irreducible::A(1),
            vertices: comp.to_vec(),
        });
    }
    if n == 2 {
        return Some(Factor {
            kind: Irreducible::I2(lab(comp[0], comp[1])),
            vertices: comp.to_vec(),
        });
    }
    let nbrs = |v: Vertex| -> Vec<Vertex> {
        comp.iter()
            .copied()
            .filter(|&w| w != v && lab(v, w) >= 3)
            .collect()
    };
    let edges: Vec<(Vertex, Vertex, u32)> = comp
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| comp[i + 1..].iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| lab(u, v) >= 3)
        .map(|(u, v)| (u, v, lab(u, v)))
        .collect();
    // Connected with n-1 edges means a tree.
    if edges.len() != n - 1 || edges.iter().any(|e| e.2 > 5) {
        return None;
    }
    let degrees: Vec<usize> = comp.iter().map(|&v| nbrs(v).len()).collect();
    let special: Vec<&(Vertex, Vertex, u32)> = edges.iter().filter(|e| e.2 != 3).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| degrees[i] >= 3).collect();

    // Walk a path from an end vertex.
    let walk = |start: Vertex| -> Vec<Vertex> {
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = nbrs(cur).into_iter().find(|&w| w != prev);
            match next {
                Some(w) => {
                    prev = cur;
                    cur = w;
                    path.push(w);
                }
                None => return path,
            }
        }
    };

    if branch.is_empty() {
        let ends: Vec<Vertex> = (0..n)
            .filter(|&i| degrees[i] == 1)
            .map(|i| comp[i])
            .collect();
        let path = walk(ends[0]);
        match special.as_slice() {
            [] => Some(Factor {
                kind: Irreducible::A(n),
                vertices: path,
            }),
            [&(u, v, l)] => {
                let pos = |x: Vertex| path.iter().position(|&p| p == x).unwrap();
                let (i, j) = (pos(u).min(pos(v)), pos(u).max(pos(v)));
                let at_end = i == 0 || j == n - 1;
                // Orient so the special edge sits at the start.
                let oriented = if i == 0 {
                    path.clone()
                } else {
                    path.iter().rev().copied().collect()
                };
                match (l, at_end, n) {
                    (4, true, _) => Some(Factor {
                        kind: Irreducible::B(n),
                        vertices: oriented,
                    }),
                    (4, false, 4) => Some(Factor {
                        kind: Irreducible::F4,
                        vertices: path,
                    }),
                    (5, true, 3) => Some(Factor {
                        kind: Irreducible::H3,
                        vertices: oriented,
                    }),
                    (5, true, 4) => Some(Factor {
                        kind: Irreducible::H4,
                        vertices: oriented,
                    }),
                    _ => None,
                }
            }
            _ => None,
        }
    } else {
        if branch.len() != 1 || degrees[branch[0]] != 3 || !special.is_empty() {
            return None;
        }
        let centre = comp[branch[0]];
        let mut arms: Vec<Vec<Vertex>> = nbrs(centre)
            .into_iter()
            .map(|start| {
                let mut arm = vec![start];
                let mut prev = centre;
                let mut cur = start;
                while let Some(w) = nbrs(cur).into_iter().find(|&w| w != prev) {
                    arm.push(w);
                    prev = cur;
                    cur = w;
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| a.len());
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        let kind = match lens.as_slice() {
            [1, 1, k] => Irreducible::D(k + 3),
            [1, 2, 2] => Irreducible::E6,
            [1, 2, 3] => Irreducible::E7,
            [1, 2, 4] => Irreducible::E8,
            _ => return None,
        };
        let mut vertices: Vec<Vertex> = Vec::new();
        vertices.extend(arms[0].iter().rev());
        vertices.extend(arms[1].iter().rev());
        vertices.push(centre);
        vertices.extend(arms[2].iter());
        Some(Factor { kind, vertices })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(l01: u32, l12: u32, l02: u32) -> LabeledGraph {
        LabeledGraph::from_edges(3, &[(0, 1, l01), (1, 2, l12), (0, 2, l02)]).unwrap()
    }

    fn path(labels: &[u32]) -> LabeledGraph {
        let edges: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (i, i + 1, l))
            .collect();
        LabeledGraph::from_edges(labels.len() + 1, &edges).unwrap()
    }

    fn all(g: &LabeledGraph) -> Vec<Vertex> {
        g.vertices().collect()
    }

    #[test]
    fn rank_three_triangles() {
        let t = triangle(2, 3, 4);
        let c = classify_clique(&t, &all(&t));
        let ty = c.spherical().unwrap();
        assert_eq!(ty.order, 48);
        assert!(ty.has(Irreducible::B(3)));
        assert!(!is_spherical(&triangle(3, 3, 3), &[0, 1, 2]));
        assert!(is_spherical(&triangle(2, 2, 5), &[0, 1, 2]));
        assert!(!is_spherical(&triangle(2, 3, 6), &[0, 1, 2]));
        assert!(is_spherical(&triangle(2, 2, 2), &[0]));
    }

    #[test]
    fn spherical_triangles_are_exactly_the_known_list() {
        for a in 2..=7u32 {
            for b in a..=7 {
                for c in b..=7 {
                    let t = triangle(a, b, c);
                    let expect = (a == 2 && b == 2) || (a == 2 && b == 3 && (3..=5).contains(&c));
                    assert_eq!(is_spherical(&t, &[0, 1, 2]), expect, "{a},{b},{c}");
                }
            }
        }
    }

    #[test]
    fn edge_orders() {
        for m in 2..=9u32 {
            let g = path(&[m]);
            assert_eq!(
                classify_clique(&g, &[0, 1]).spherical().unwrap().order,
                2 * m as u128
            );
        }
    }

    #[test]
    fn higher_rank_patterns() {
        let complete = |n: usize, lab: &dyn Fn(usize, usize) -> u32| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| (u, v, lab(u, v)))
                .collect();
            LabeledGraph::from_edges(n, &edges).unwrap()
        };
        let path_lab = |special: (usize, u32)| {
            move |u: usize, v: usize| {
                if v == u + 1 {
                    if u == special.0 {
                        special.1
                    } else {
                        3
                    }
                } else {
                    2
                }
            }
        };
        let f4 = complete(4, &path_lab((1, 4)));
        assert_eq!(
            classify_clique(&f4, &all(&f4)).spherical().unwrap().order,
            1152
        );
        let h4 = complete(4, &path_lab((0, 5)));
        assert_eq!(
            classify_clique(&h4, &all(&h4)).spherical().unwrap().order,
            14400
        );
        let b5 = complete(5, &path_lab((0, 4)));
        assert_eq!(
            classify_clique(&b5, &all(&b5)).spherical().unwrap().order,
            3840
        );
        let a4 = complete(4, &path_lab((9, 3)));
        assert_eq!(
            classify_clique(&a4, &all(&a4)).spherical().unwrap().order,
            120
        );
        // D4: centre 0 joined by 3-edges to 1, 2, 3.
        let d4 = complete(4, &|u, _v| if u == 0 { 3 } else { 2 });
        assert_eq!(
            classify_clique(&d4, &all(&d4)).spherical().unwrap().order,
            192
        );
        // E6: arms 1,2,2 around centre 0.
        let e6_edges = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)];
        let e6 = complete(6, &|u, v| if e6_edges.contains(&(u, v)) { 3 } else { 2 });
        assert_eq!(
            classify_clique(&e6, &all(&e6)).spherical().unwrap().order,
            51840
        );
        let bad = complete(4, &|u, v| if v == u + 1 { 4 } else { 2 });
        assert!(classify_clique(&bad, &all(&bad)).spherical().is_none());
    }
}
