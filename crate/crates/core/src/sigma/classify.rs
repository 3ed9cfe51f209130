//! Family flags of a labelled graph, each with a certificate.

use serde::Serialize;

use super::balanced::{balanced_structure, BalancedColouring, BalancedOutcome};
use crate::algebra::primes::prime_factors;
use crate::chain::kpi1_families;
use crate::coxeter::{classify_clique, is_spherical, Classification};
use crate::graph::{LabeledGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub certificate: String,
}

impl Flag {
    fn new(holds: bool, certificate: impl Into<String>) -> Self {
        Flag {
            holds,
            certificate: certificate.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyFlags {
    pub even: Flag,
    pub two_dimensional: Flag,
    pub coherent: Flag,
    pub spherical: Flag,
    pub odd_tree: Flag,
    pub uniform_prime: Flag,
    pub balanced: Flag,
    pub raag: Flag,
    pub fc_type: Flag,
    pub kpi1_known: Flag,
    pub uniform_prime_witness: Option<u64>,
    pub balanced_colouring: Option<BalancedColouring>,
}

pub fn classify_group(g: &LabeledGraph) -> FamilyFlags {
    let name = |v: Vertex| g.name(v).to_string();
    let edge_str = |u: Vertex, v: Vertex, l: u32| format!("{}-{}:{}", name(u), name(v), l);

    let even = match g.edges().find(|e| e.2 % 2 == 1) {
        Some((u, v, l)) => Flag::new(false, format!("odd label on {}", edge_str(u, v, l))),
        None => Flag::new(true, "every label is even"),
    };
    let raag = match g.edges().find(|e| e.2 != 2) {
        Some((u, v, l)) => Flag::new(false, format!("label {} on {}", l, edge_str(u, v, l))),
        None => Flag::new(true, "every label is 2"),
    };

    let triangles: Vec<Vec<Vertex>> = g
        .enumerate_cliques(3)
        .into_iter()
        .filter(|c| c.len() == 3)
        .collect();
    let two_dimensional = match triangles.iter().find(|t| is_spherical(g, t)) {
        Some(t) => Flag::new(false, format!("spherical triangle {}", names(g, t))),
        None => Flag::new(true, "no spherical triangle"),
    };

    let all: Vec<Vertex> = g.vertices().collect();
    let spherical = match classify_clique(g, &all) {
        Classification::Spherical(t) => Flag::new(true, format!("type {t}")),
        Classification::NonSpherical(s) => {
            Flag::new(false, format!("non-spherical subset {}", names(g, &s)))
        }
    };

    let odd_tree = if !g.is_tree() {
        Flag::new(false, "not a tree")
    } else if let Some((u, v, l)) = g.edges().find(|e| e.2 % 2 == 0) {
        Flag::new(false, format!("even label on {}", edge_str(u, v, l)))
    } else {
        Flag::new(true, "tree with odd labels")
    };

    let coherent = match coherence_violation(g) {
        Some(why) => Flag::new(false, why),
        None => Flag::new(true, "chordal; cliques of size 3 and 4 carry at most one label above 2; no forbidden pattern"),
    };

    let prime = uniform_prime(g);
    let uniform = match prime {
        Some(p) => Flag::new(
            true,
            format!("p = {p} divides l/2 for every even label above 2"),
        ),
        None => Flag::new(
            false,
            "no common prime divisor of l/2 over the even labels above 2",
        ),
    };

    let (balanced, colouring) = match balanced_structure(g) {
        BalancedOutcome::Balanced(c) => (Flag::new(true, c.summary()), Some(c)),
        BalancedOutcome::NotBalanced { reason } => (Flag::new(false, reason), None),
    };

    let families = kpi1_families(g);
    let fc_type = Flag::new(
        families.contains(&"FC-type"),
        if families.contains(&"FC-type") {
            "every clique is spherical"
        } else {
            "some clique is not spherical"
        },
    );
    let kpi1_known = if families.is_empty() {
        Flag::new(false, "neither FC-type nor 2-dimensional")
    } else {
        Flag::new(true, families.join(", "))
    };

    FamilyFlags {
        even,
        two_dimensional,
        coherent,
        spherical,
        odd_tree,
        uniform_prime: uniform,
        balanced,
        raag,
        fc_type,
        kpi1_known,
        uniform_prime_witness: prime,
        balanced_colouring: colouring,
    }
}

/// Smallest prime dividing `l/2` for every even label `l > 2`; `Some(2)`
/// when there is no such label.
pub fn uniform_prime(g: &LabeledGraph) -> Option<u64> {
    let halves: Vec<u64> = g
        .edges()
        .filter(|e| e.2 % 2 == 0 && e.2 > 2)
        .map(|e| (e.2 / 2) as u64)
        .collect();
    let Some(&first) = halves.first() else {
        return Some(2);
    };
    prime_factors(first)
        .into_iter()
        .find(|p| halves.iter().all(|h| h % p == 0))
}

/// First violated coherence condition, described; `None` when coherent.
pub fn coherence_violation(g: &LabeledGraph) -> Option<String> {
    let ch = g.is_chordal();
    if !ch.chordal {
        let cyc = ch.certificate.unwrap_or_default();
        return Some(format!("not chordal: induced cycle {}", names(g, &cyc)));
    }
    let big = |u: Vertex, v: Vertex| g.label(u, v).is_some_and(|l| l > 2);
    for c in g.enumerate_cliques(4).into_iter().filter(|c| c.len() >= 3) {
        let count = pairs(&c).filter(|&(u, v)| big(u, v)).count();
        if count > 1 {
            return Some(format!(
                "clique {} has {count} labels above 2",
                names(g, &c)
            ));
        }
    }
    // Two triangles sharing the edge {b, c} of label m > 2, all other edges
    // labelled 2, outer vertices a, d non-adjacent.
    for (b, c, m) in g.edges() {
        if m <= 2 {
            continue;
        }
        let common: Vec<Vertex> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&x| {
                x != c && g.adjacent(c, x) && g.label(b, x) == Some(2) && g.label(c, x) == Some(2)
            })
            .collect();
        for (i, &a) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                if !g.adjacent(a, d) {
                    return Some(format!("forbidden pattern on {}", names(g, &[a, b, c, d])));
                }
            }
        }
    }
    None
}

fn pairs(c: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    c.iter()
        .enumerate()
        .flat_map(move |(i, &u)| c[i + 1..].iter().map(move |&v| (u, v)))
}

pub(crate) fn names(g: &LabeledGraph, vs: &[Vertex]) -> String {
    let parts: Vec<&str> = vs.iter().map(|&v| g.name(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> LabeledGraph {
        LabeledGraph::build(
            &["a1", "a2", "a3", "b1", "b2", "c1"],
            &[
                ("a1", "a2", 3),
                ("a1", "a3", 3),
                ("a2", "a3", 2),
                ("a3", "b1", 4),
                ("b1", "b2", 5),
                ("b2", "c1", 4),
            ],
        )
        .unwrap()
    }

    fn ex2() -> LabeledGraph {
        LabeledGraph::build(
            &["a1", "a2", "a3", "a4"],
            &[
                ("a2", "a3", 6),
                ("a1", "a2", 4),
                ("a1", "a3", 6),
                ("a1", "a4", 4),
                ("a3", "a4", 4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn first_example_flags() {
        let f = classify_group(&ex1());
        assert!(!f.coherent.holds);
        assert!(f.coherent.certificate.contains("labels above 2"));
        assert!(f.fc_type.holds && f.kpi1_known.holds);
        assert!(!f.two_dimensional.holds);
        assert!(!f.even.holds);
    }

    #[test]
    fn second_example_flags() {
        let f = classify_group(&ex2());
        assert!(f.two_dimensional.holds);
        assert!(f.even.holds);
        assert!(!f.uniform_prime.holds);
        assert!(!f.balanced.holds);
        assert!(!f.coherent.holds);
    }

    #[test]
    fn odd_path_is_odd_tree() {
        let g = LabeledGraph::build(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 5)]).unwrap();
        let f = classify_group(&g);
        assert!(f.odd_tree.holds);
        assert!(f.coherent.holds);
        let h = LabeledGraph::build(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 4)]).unwrap();
        assert!(!classify_group(&h).odd_tree.holds);
    }

    #[test]
    fn coherence_conditions() {
        // Square: not chordal.
        let sq =
            LabeledGraph::from_edges(4, &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (0, 3, 2)]).unwrap();
        assert!(coherence_violation(&sq).unwrap().contains("chordal"));
        // Forbidden pattern: diagonal 1-2 labelled 3.
        let kite =
            LabeledGraph::from_edges(4, &[(0, 1, 2), (0, 2, 2), (1, 2, 3), (1, 3, 2), (2, 3, 2)])
                .unwrap();
        assert!(coherence_violation(&kite).unwrap().contains("forbidden"));
        // Same shape with the diagonal labelled 2 is coherent.
        let rkite =
            LabeledGraph::from_edges(4, &[(0, 1, 2), (0, 2, 2), (1, 2, 2), (1, 3, 2), (2, 3, 2)])
                .unwrap();
        assert_eq!(coherence_violation(&rkite), None);
        // K4 with two opposite long edges.
        let k4 = LabeledGraph::from_edges(
            4,
            &[
                (0, 1, 3),
                (0, 2, 2),
                (0, 3, 2),
                (1, 2, 2),
                (1, 3, 2),
                (2, 3, 3),
            ],
        )
        .unwrap();
        assert!(coherence_violation(&k4).unwrap().contains("clique"));
    }

    #[test]
    fn uniform_prime_detection() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 12), (0, 2, 3)]).unwrap();
        assert_eq!(uniform_prime(&g), Some(2));
        let h = LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 6)]).unwrap();
        assert_eq!(uniform_prime(&h), None);
        let raag = LabeledGraph::from_edges(2, &[(0, 1, 2)]).unwrap();
        assert_eq!(uniform_prime(&raag), Some(2));
        assert!(classify_group(&raag).raag.holds);
    }
}
