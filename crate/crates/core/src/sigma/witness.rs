//! Cuts of the living subgraph and finite-quotient witnesses against them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::algebra::primes::prime_factors;
use crate::algebra::{CyclotomicField, Field, FiniteAbelianGroup};
use crate::chain::normalized_h1_obstruction;
use crate::character::{living_analysis, quotient_flags, Character, FiniteQuotient};
use crate::error::SigmaError;
use crate::graph::{LabeledGraph, Vertex};

const GROUP_ORDER_LIMIT: u64 = 125;
const GROUP_RANK_LIMIT: usize = 3;
const SEARCH_BUDGET: usize = 2_000_000;

/// Finite quotient `phi`, character index `mu` and the cut they certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientWitness {
    pub quotient: FiniteQuotient,
    pub mu: Vec<u64>,
    pub side: Vec<Vertex>,
    /// `phi(uv)` for every dead edge crossing the cut.
    pub cut_images: Vec<(Vertex, Vertex, Vec<u64>)>,
    pub construction: String,
    pub notes: Vec<String>,
}

impl QuotientWitness {
    pub(crate) fn new(
        g: &LabeledGraph,
        chi: &Character,
        quotient: FiniteQuotient,
        mu: Vec<u64>,
        side: &BTreeSet<Vertex>,
        construction: &str,
    ) -> Self {
        let cut_images = cut_edges(g, chi, side)
            .into_iter()
            .map(|(u, v, _)| (u, v, quotient.edge_image(u, v)))
            .collect();
        QuotientWitness {
            quotient,
            mu,
            side: side.iter().copied().collect(),
            cut_images,
            construction: construction.to_string(),
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessSearch {
    Found(QuotientWitness),
    NotFound {
        groups_tried: usize,
        budget_exhausted: bool,
    },
}

/// Checks that `side` is a nonempty proper set of living vertices crossed
/// only by dead edges.
pub fn validate_cut(
    g: &LabeledGraph,
    chi: &Character,
    side: &[Vertex],
) -> Result<BTreeSet<Vertex>, SigmaError> {
    let liv = living_analysis(g, chi);
    let set: BTreeSet<Vertex> = side.iter().copied().collect();
    let bad = |why: &str| SigmaError::CutInvalid("side".into(), why.into());
    if set.is_empty() {
        return Err(bad("empty"));
    }
    if let Some(&v) = set
        .iter()
        .find(|&&v| v >= g.vertex_count() || !chi.is_living(v))
    {
        return Err(bad(&format!("vertex {v} is not living")));
    }
    if set.len() == liv.liv0_vertices.len() {
        return Err(bad("contains every living vertex"));
    }
    for (u, v, _) in g.edges() {
        if chi.is_living(u)
            && chi.is_living(v)
            && set.contains(&u) != set.contains(&v)
            && !liv.is_dead_edge(u, v)
        {
            return Err(SigmaError::CutInvalid(g.name(u).into(), g.name(v).into()));
        }
    }
    Ok(set)
}

/// Edges between living vertices on opposite sides.
pub fn cut_edges(
    g: &LabeledGraph,
    chi: &Character,
    side: &BTreeSet<Vertex>,
) -> Vec<(Vertex, Vertex, u32)> {
    g.edges()
        .filter(|&(u, v, _)| {
            chi.is_living(u) && chi.is_living(v) && side.contains(&u) != side.contains(&v)
        })
        .collect()
}

/// `phi(uv)` surjects from `ker chi` and every normalised generator vanishes
/// under `mu`.
pub fn verify_quotient_witness(g: &LabeledGraph, chi: &Character, w: &QuotientWitness) -> bool {
    if validate_cut(g, chi, &w.side).is_err() {
        return false;
    }
    let Ok(flags) = quotient_flags(chi, &w.quotient) else {
        return false;
    };
    if !flags.phi_restricted_surjective {
        return false;
    }
    let Ok(gens) = normalized_h1_obstruction(g, chi, &w.side, &w.quotient) else {
        return false;
    };
    let group = &w.quotient.group;
    let field = CyclotomicField::new(group.exponent());
    gens.iter()
        .all(|p| field.is_zero(&p.evaluate(group, &field, &w.mu)))
}

/// `phi(v) = g` in `C_p` on the side, identity elsewhere.
pub fn uniform_witness(
    g: &LabeledGraph,
    chi: &Character,
    side: &[Vertex],
    p: u64,
) -> Result<QuotientWitness, SigmaError> {
    let set = validate_cut(g, chi, side)?;
    for (u, v, l) in cut_edges(g, chi, &set) {
        if (l as u64 / 2) % p != 0 {
            return Err(SigmaError::ColouringInvalidOnCut(format!(
                "{p} does not divide {l}/2 on {}-{}",
                g.name(u),
                g.name(v)
            )));
        }
    }
    let phi = g
        .vertices()
        .map(|v| vec![u64::from(set.contains(&v))])
        .collect();
    let q = FiniteQuotient {
        group: FiniteAbelianGroup::new(vec![p]),
        phi,
    };
    Ok(QuotientWitness::new(
        g,
        chi,
        q,
        vec![1],
        &set,
        &format!("uniform prime {p}"),
    ))
}

/// Multisets of primes from `primes`, product bounded, by (product, size).
fn candidate_groups(primes: &[u64]) -> Vec<Vec<u64>> {
    fn extend(
        primes: &[u64],
        start: usize,
        cur: &mut Vec<u64>,
        prod: u64,
        out: &mut Vec<Vec<u64>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == GROUP_RANK_LIMIT {
            return;
        }
        for i in start..primes.len() {
            let p = primes[i];
            if prod * p <= GROUP_ORDER_LIMIT {
                cur.push(p);
                extend(primes, i, cur, prod * p, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(primes, 0, &mut Vec::new(), 1, &mut out);
    out.sort_by_key(|o| (o.iter().product::<u64>(), o.len(), o.clone()));
    out
}

struct Search<'a> {
    group: &'a FiniteAbelianGroup,
    elements: &'a [Vec<u64>],
    order: Vec<usize>,
    is_root: Vec<bool>,
    /// Edges to earlier nodes: (earlier node, allowed images).
    back: Vec<Vec<(usize, &'a BTreeSet<Vec<u64>>)>>,
    value: Vec<Vec<u64>>,
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, accept: &mut dyn FnMut(&[Vec<u64>]) -> bool) -> bool {
        if pos == self.order.len() {
            return accept(&self.value);
        }
        let x = self.order[pos];
        let choices: Vec<Vec<u64>> = if self.is_root[x] {
            vec![self.group.identity()]
        } else {
            self.elements.to_vec()
        };
        for c in choices {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let ok = self.back[pos]
                .iter()
                .all(|(y, allowed)| allowed.contains(&self.group.op(&c, &self.value[*y])));
            if ok {
                self.value[x] = c;
                if self.run(pos + 1, accept) {
                    return true;
                }
            }
        }
        false
    }
}

/// Bounded search over `G = prod C_{p_i}` with primes dividing the cut
/// labels, every character `mu`, and `phi` supported on the cut classes.
/// Each component of the cut subgraph has its first class fixed at the
/// identity.
pub fn witness_search(
    g: &LabeledGraph,
    chi: &Character,
    side: &[Vertex],
) -> Result<WitnessSearch, SigmaError> {
    let set = validate_cut(g, chi, side)?;
    let cut = cut_edges(g, chi, &set);
    let core = g.collapse_to_even_core();
    let mut node_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for &(u, v, l) in &cut {
        let n = node_of.len();
        let a = *node_of.entry(core.class_of[u]).or_insert(n);
        let n = node_of.len();
        let b = *node_of.entry(core.class_of[v]).or_insert(n);
        edges.push((a, b, l as u64 / 2));
    }
    let nodes = node_of.len();
    // BFS order over the cut subgraph.
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, &(a, b, _)) in edges.iter().enumerate() {
        inc[a].push(i);
        inc[b].push(i);
    }
    let mut order = Vec::new();
    let mut pos_of = vec![usize::MAX; nodes];
    let mut is_root = vec![false; nodes];
    for r in 0..nodes {
        if pos_of[r] != usize::MAX {
            continue;
        }
        is_root[r] = true;
        pos_of[r] = order.len();
        order.push(r);
        let mut q = VecDeque::from([r]);
        while let Some(x) = q.pop_front() {
            for &e in &inc[x] {
                let (a, b, _) = edges[e];
                let y = if a == x { b } else { a };
                if pos_of[y] == usize::MAX {
                    pos_of[y] = order.len();
                    order.push(y);
                    q.push_back(y);
                }
            }
        }
    }

    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for &(_, _, h) in &edges {
        primes.extend(prime_factors(h));
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut budget = SEARCH_BUDGET;
    let mut tried = 0;
    for orders in candidate_groups(&primes) {
        tried += 1;
        let group = FiniteAbelianGroup::new(orders.clone());
        let elements = group.elements();
        let e_exp = group.exponent();
        for mu in elements.iter().skip(1) {
            let allowed_for = |h: u64| -> BTreeSet<Vec<u64>> {
                elements
                    .iter()
                    .filter(|x| {
                        let a = group.character_exponent(mu, x) % e_exp;
                        a != 0 && (a * h) % e_exp == 0
                    })
                    .cloned()
                    .collect()
            };
            let allowed: Vec<BTreeSet<Vec<u64>>> =
                edges.iter().map(|&(_, _, h)| allowed_for(h)).collect();
            if allowed.iter().any(|s| s.is_empty()) {
                continue;
            }
            let mut back: Vec<Vec<(usize, &BTreeSet<Vec<u64>>)>> = vec![Vec::new(); nodes];
            for (i, &(a, b, _)) in edges.iter().enumerate() {
                let (early, late) = if pos_of[a] < pos_of[b] {
                    (a, b)
                } else {
                    (b, a)
                };
                back[pos_of[late]].push((early, &allowed[i]));
            }
            let mut search = Search {
                group: &group,
                elements: &elements,
                order: order.clone(),
                is_root: is_root.clone(),
                back,
                value: vec![group.identity(); nodes],
                budget,
            };
            let mut found = None;
            let mut accept = |vals: &[Vec<u64>]| {
                let phi: Vec<Vec<u64>> = g
                    .vertices()
                    .map(|v| {
                        node_of
                            .get(&core.class_of[v])
                            .map_or_else(|| group.identity(), |&n| vals[n].clone())
                    })
                    .collect();
                let q = FiniteQuotient {
                    group: group.clone(),
                    phi,
                };
                let w = QuotientWitness::new(g, chi, q, mu.clone(), &set, "bounded search");
                if verify_quotient_witness(g, chi, &w) {
                    found = Some(w);
                    true
                } else {
                    false
                }
            };
            search.run(0, &mut accept);
            budget = search.budget;
            if let Some(w) = found {
                return Ok(WitnessSearch::Found(w));
            }
            if budget == 0 {
                return Ok(WitnessSearch::NotFound {
                    groups_tried: tried,
                    budget_exhausted: true,
                });
            }
        }
    }
    Ok(WitnessSearch::NotFound {
        groups_tried: tried,
        budget_exhausted: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_validation() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 3)]).unwrap();
        let chi = Character::from_integers(&g, &[1, -1, -1]).unwrap();
        assert!(validate_cut(&g, &chi, &[0]).is_ok());
        assert!(matches!(
            validate_cut(&g, &chi, &[1]),
            Err(SigmaError::CutInvalid(..))
        ));
        assert!(validate_cut(&g, &chi, &[]).is_err());
        assert!(validate_cut(&g, &chi, &[0, 1, 2]).is_err());
        let dead = Character::from_integers(&g, &[1, 0, 0]).unwrap();
        assert!(validate_cut(&g, &dead, &[1]).is_err());
    }

    #[test]
    fn uniform_witness_on_square_edge() {
        let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
        let chi = Character::from_integers(&g, &[1, -1]).unwrap();
        let w = uniform_witness(&g, &chi, &[0], 2).unwrap();
        assert!(verify_quotient_witness(&g, &chi, &w));
        assert_eq!(w.cut_images, vec![(0, 1, vec![1])]);
        assert!(uniform_witness(&g, &chi, &[0], 3).is_err());
    }

    #[test]
    fn search_finds_mixed_primes() {
        // Cut edges 4 and 6 sharing a vertex: C_2 x C_3 is needed.
        let g = LabeledGraph::from_edges(3, &[(0, 1, 4), (0, 2, 6)]).unwrap();
        let chi = Character::from_integers(&g, &[1, -1, -1]).unwrap();
        let WitnessSearch::Found(w) = witness_search(&g, &chi, &[0]).unwrap() else {
            panic!()
        };
        assert!(verify_quotient_witness(&g, &chi, &w));
        assert_eq!(w.quotient.group.order(), 6);
    }

    #[test]
    fn candidate_group_order() {
        let c = candidate_groups(&[2, 3]);
        assert_eq!(c[0], vec![2]);
        assert_eq!(c[1], vec![3]);
        assert_eq!(c[2], vec![2, 2]);
        assert!(c
            .iter()
            .all(|o| o.iter().product::<u64>() <= GROUP_ORDER_LIMIT));
    }

    #[test]
    fn tampered_witness_rejected() {
        let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
        let chi = Character::from_integers(&g, &[1, -1]).unwrap();
        let mut w = uniform_witness(&g, &chi, &[0], 2).unwrap();
        w.mu = vec![0];
        assert!(!verify_quotient_witness(&g, &chi, &w));
    }
}
