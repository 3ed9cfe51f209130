//! Verdicts for `Sigma^1` and `Sigma^2` membership and kernel fibring.

use serde::Serialize;

use super::balanced::{balanced_structure, build_balanced_homomorphism, BalancedOutcome};
use super::classify::{coherence_violation, uniform_prime};
use super::complex::{AttachedComplex, SimpleConnectivity};
use super::witness::{uniform_witness, witness_search, WitnessSearch};
use super::{Certificate, DecideOptions, Decision, Provenance, Verdict};
use crate::algebra::primes::prime_factors;
use crate::chain::{kernel_homology_report, kpi1_families};
use crate::character::{living_analysis, spherical_link, Character, LivingSubgraph};
use crate::coxeter::is_spherical;
use crate::error::{CharacterError, SigmaError};
use crate::graph::{LabeledGraph, Vertex};

const MAX_CUT_COMPONENTS: usize = 12;
const MAX_SEARCH_CUTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sigma2Variant {
    /// `Sigma^2(A; Z)`.
    Homological,
    /// `Sigma^2(A)`.
    Homotopical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    /// Every edge with both ends dead and every dead edge spans a spherical
    /// triangle with a living vertex.
    pub condition1: bool,
    pub condition1_violations: Vec<(Vertex, Vertex)>,
    /// Every dead vertex has a nonempty connected spherical link.
    pub condition2: bool,
    pub condition2_violations: Vec<Vertex>,
    pub complex_connected: bool,
    pub h1_rank: usize,
    pub h1_torsion: Vec<String>,
    pub excluded_b3: Vec<[Vertex; 3]>,
    /// Connected with `H_1(K; Z) = 0`.
    pub condition3_homological: bool,
    /// Simply connected; `None` when the reduction stalls.
    pub condition3_homotopical: Option<bool>,
}

impl SufficientConditions {
    fn holds(&self, variant: Sigma2Variant) -> Option<bool> {
        if !self.condition1 || !self.condition2 {
            return Some(false);
        }
        match variant {
            Sigma2Variant::Homological => Some(self.condition3_homological),
            Sigma2Variant::Homotopical => self.condition3_homotopical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibringReport {
    pub character: Vec<i64>,
    pub sigma1: Decision,
    pub sigma1_negated: Decision,
    pub sigma2: Decision,
    pub sigma2_negated: Decision,
    pub sigma2_homological: Decision,
    pub sigma2_homological_negated: Decision,
    pub finitely_generated: Option<bool>,
    pub finitely_presented: Option<bool>,
    pub fp2: Option<bool>,
    pub summary: String,
    /// Finite presentability of the derived subgroup, for 2-dimensional
    /// graphs: exactly the odd trees.
    pub derived_subgroup_finitely_presented: Option<bool>,
    pub conditional_on_kpi1: bool,
    pub notes: Vec<String>,
}

fn primitive(g: &LabeledGraph, chi: &Character) -> Result<Character, SigmaError> {
    let p = chi.primitive_integral()?;
    Ok(Character::from_integers(g, &p)?)
}

fn living_certificate(g: &LabeledGraph, liv: &LivingSubgraph) -> Certificate {
    let undominated = liv
        .dead_vertices
        .iter()
        .copied()
        .filter(|&v| {
            !g.neighbors(v)
                .iter()
                .any(|w| liv.liv0_vertices.binary_search(w).is_ok())
        })
        .collect();
    Certificate::Living {
        liv0_connected: liv.liv0_connected,
        liv_connected: liv.liv_connected,
        dominant: liv.dominant,
        liv_components: liv.liv_components.clone(),
        undominated,
    }
}

/// Unions of `Liv` components avoiding component 0; smallest first.
fn cuts(liv: &LivingSubgraph) -> Vec<Vec<Vertex>> {
    let comps = &liv.liv_components;
    let k = comps.len();
    if k < 2 {
        return Vec::new();
    }
    if k > MAX_CUT_COMPONENTS {
        return comps[1..].to_vec();
    }
    let mut masks: Vec<u32> = (1..(1u32 << (k - 1))).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| {
            let mut side: Vec<Vertex> = (0..k - 1)
                .filter(|i| m & (1 << i) != 0)
                .flat_map(|i| comps[i + 1].iter().copied())
                .collect();
            side.sort_unstable();
            side
        })
        .collect()
}

fn kpi1_conditional(g: &LabeledGraph, opts: &DecideOptions) -> bool {
    !opts.assume_kpi1 && kpi1_families(g).is_empty()
}

pub fn sigma1_decide(g: &LabeledGraph, chi: &Character) -> Result<Decision, SigmaError> {
    sigma1_decide_with(g, chi, &DecideOptions::default())
}

pub fn sigma1_decide_with(
    g: &LabeledGraph,
    chi: &Character,
    opts: &DecideOptions,
) -> Result<Decision, SigmaError> {
    let chi = primitive(g, chi)?;
    let liv = living_analysis(g, &chi);
    if liv.liv_connected && liv.dominant {
        return Ok(Decision::new(
            Verdict::Yes,
            Provenance::MeierSufficient,
            living_certificate(g, &liv),
        ));
    }
    if !liv.liv0_connected || !liv.dominant {
        return Ok(Decision::new(
            Verdict::No,
            Provenance::MeierNecessary,
            living_certificate(g, &liv),
        ));
    }
    let cuts = cuts(&liv);

    if let BalancedOutcome::Balanced(c) = balanced_structure(g) {
        for side in &cuts {
            if let Ok(w) = build_balanced_homomorphism(g, &chi, side, &c) {
                return Ok(Decision::new(
                    Verdict::No,
                    Provenance::BalancedFamily,
                    Certificate::Quotient(w),
                ));
            }
        }
    }
    if let Some(p) = uniform_prime(g) {
        if let Some(side) = cuts.first() {
            let w = uniform_witness(g, &chi, side, p)?;
            return Ok(Decision::new(
                Verdict::No,
                Provenance::UniformPrimeFamily,
                Certificate::Quotient(w),
            ));
        }
    }
    let mut searched = 0;
    for side in cuts.iter().take(MAX_SEARCH_CUTS) {
        searched += 1;
        if let WitnessSearch::Found(w) = witness_search(g, &chi, side)? {
            return Ok(Decision::new(
                Verdict::No,
                Provenance::FiniteQuotientWitness,
                Certificate::Quotient(w),
            ));
        }
    }
    let report = kernel_homology_report(g, &chi, &opts.fields, None)?;
    if let Some(e) = report.exclusions.iter().find(|e| e.degree == 1) {
        let cert = Certificate::Homology {
            field: e.field.clone(),
            twist_character: e.twist_character.clone(),
            degree: 1,
        };
        return Ok(Decision::new(
            Verdict::No,
            Provenance::KernelHomologyObstruction,
            cert,
        ));
    }
    Ok(Decision::new(
        Verdict::ConjecturalNo,
        Provenance::Sigma1Conjecture,
        living_certificate(g, &liv),
    )
    .note(format!(
        "Liv disconnected; no witness on {searched} cut(s) and no degree-1 homology obstruction"
    )))
}

/// Edges with both ends dead, and dead edges.
fn offending_edges(
    g: &LabeledGraph,
    chi: &Character,
    liv: &LivingSubgraph,
) -> Vec<(Vertex, Vertex, u32)> {
    g.edges()
        .filter(|&(u, v, _)| (!chi.is_living(u) && !chi.is_living(v)) || liv.is_dead_edge(u, v))
        .collect()
}

fn spherical_third(
    g: &LabeledGraph,
    u: Vertex,
    v: Vertex,
    living_only: Option<&Character>,
) -> bool {
    g.neighbors(u)
        .iter()
        .filter(|&&w| w != v && g.adjacent(v, w))
        .filter(|&&w| living_only.map_or(true, |c| c.is_living(w)))
        .any(|&w| is_spherical(g, &[u, v, w]))
}

pub fn sufficient_conditions(
    g: &LabeledGraph,
    chi: &Character,
) -> Result<SufficientConditions, SigmaError> {
    let chi = primitive(g, chi)?;
    let liv = living_analysis(g, &chi);
    let condition1_violations: Vec<(Vertex, Vertex)> = offending_edges(g, &chi, &liv)
        .into_iter()
        .filter(|&(u, v, _)| !spherical_third(g, u, v, Some(&chi)))
        .map(|(u, v, _)| (u, v))
        .collect();
    let condition2_violations: Vec<Vertex> = liv
        .dead_vertices
        .iter()
        .copied()
        .filter(|&v| {
            let s = spherical_link(g, &liv, v);
            !(s.nonempty && s.connected)
        })
        .collect();
    let k = AttachedComplex::build(g, &chi);
    let (h1_rank, h1_torsion) = k.h1();
    let complex_connected = k.connected();
    let condition3_homological = complex_connected && h1_rank == 0 && h1_torsion.is_empty();
    let condition3_homotopical = if !condition3_homological {
        Some(false)
    } else {
        match k.simple_connectivity() {
            SimpleConnectivity::SimplyConnected => Some(true),
            SimpleConnectivity::NotSimplyConnected => Some(false),
            SimpleConnectivity::Unknown => None,
        }
    };
    Ok(SufficientConditions {
        condition1: condition1_violations.is_empty(),
        condition1_violations,
        condition2: condition2_violations.is_empty(),
        condition2_violations,
        complex_connected,
        h1_rank,
        h1_torsion,
        excluded_b3: k.excluded_b3,
        condition3_homological,
        condition3_homotopical,
    })
}

/// The three-condition criterion alone.
pub fn sigma2_sufficient(
    g: &LabeledGraph,
    chi: &Character,
    variant: Sigma2Variant,
) -> Result<Decision, SigmaError> {
    let conds = sufficient_conditions(g, chi)?;
    let conditional = kpi1_conditional(g, &DecideOptions::default());
    Ok(match conds.holds(variant) {
        Some(true) => Decision::new(
            Verdict::Yes,
            Provenance::Sigma2Sufficient,
            Certificate::Conditions(conds),
        )
        .conditional(conditional),
        Some(false) => Decision::new(
            Verdict::Unknown,
            Provenance::Undecided,
            Certificate::Conditions(conds),
        ),
        None => Decision::new(
            Verdict::Unknown,
            Provenance::Undecided,
            Certificate::Conditions(conds),
        )
        .note("simple connectivity of the attached complex undetermined"),
    })
}

pub fn sigma2_decide(g: &LabeledGraph, chi: &Character) -> Result<Decision, SigmaError> {
    sigma2_decide_with(
        g,
        chi,
        &DecideOptions::default(),
        Sigma2Variant::Homotopical,
    )
}

pub fn sigma2_decide_homological(
    g: &LabeledGraph,
    chi: &Character,
) -> Result<Decision, SigmaError> {
    sigma2_decide_with(
        g,
        chi,
        &DecideOptions::default(),
        Sigma2Variant::Homological,
    )
}

pub fn sigma2_decide_with(
    g: &LabeledGraph,
    chi: &Character,
    opts: &DecideOptions,
    variant: Sigma2Variant,
) -> Result<Decision, SigmaError> {
    let chi = primitive(g, chi)?;
    let liv = living_analysis(g, &chi);
    let conditional = kpi1_conditional(g, opts);

    let two_dimensional = !g
        .enumerate_cliques(3)
        .iter()
        .any(|c| c.len() == 3 && is_spherical(g, c));
    if two_dimensional {
        return Ok(two_dimensional_decision(g, &chi, &liv));
    }
    if coherence_violation(g).is_none() {
        let yes = liv.liv_connected && liv.dominant;
        let verdict = if yes { Verdict::Yes } else { Verdict::No };
        return Ok(Decision::new(
            verdict,
            Provenance::CoherentCharacterisation,
            living_certificate(g, &liv),
        ));
    }

    let s1 = sigma1_decide_with(g, &chi, opts)?;
    match s1.verdict {
        Verdict::No => {
            let c = s1.conditional_on_kpi1;
            return Ok(Decision::new(
                Verdict::No,
                Provenance::Sigma1Containment,
                Certificate::Inherited(Box::new(s1)),
            )
            .conditional(c));
        }
        Verdict::ConjecturalNo => {
            return Ok(Decision::new(
                Verdict::ConjecturalNo,
                Provenance::Sigma1Containment,
                Certificate::Inherited(Box::new(s1)),
            ));
        }
        _ => {}
    }

    let conds = sufficient_conditions(g, &chi)?;
    let mut stalled = false;
    match conds.holds(variant) {
        Some(true) => {
            return Ok(Decision::new(
                Verdict::Yes,
                Provenance::Sigma2Sufficient,
                Certificate::Conditions(conds),
            )
            .conditional(conditional));
        }
        None => stalled = true,
        Some(false) => {}
    }

    for &(u, v) in &conds.condition1_violations {
        let any = spherical_third(g, u, v, None);
        let even = g.label(u, v).is_some_and(|l| l % 2 == 0);
        if !any || even {
            let cert = Certificate::EdgeWithoutTriangle {
                edge: (u, v),
                any_spherical_triangle: any,
            };
            return Ok(
                Decision::new(Verdict::No, Provenance::Condition1Necessity, cert)
                    .conditional(conditional),
            );
        }
    }

    for &v in &conds.condition2_violations {
        let s = spherical_link(g, &liv, v);
        let components = s.components();
        if components.len() < 2 {
            continue;
        }
        let verts = s.vertices();
        let mut halves = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if liv.is_dead_edge(a, b) && is_spherical(g, &[a, b, v]) {
                    halves.push(g.label(a, b).unwrap() as u64 / 2);
                }
            }
        }
        let prime = match halves.first() {
            None => None,
            Some(&h) => match prime_factors(h)
                .into_iter()
                .find(|p| halves.iter().all(|x| x % p == 0))
            {
                Some(p) => Some(p),
                None => continue,
            },
        };
        let cert = Certificate::DisconnectedLink {
            vertex: v,
            components,
            prime,
        };
        return Ok(
            Decision::new(Verdict::No, Provenance::Condition2Necessity, cert)
                .conditional(conditional),
        );
    }

    let report = kernel_homology_report(g, &chi, &opts.fields, None)?;
    if let Some(e) = report.exclusions.iter().find(|e| e.degree == 2) {
        let cert = Certificate::Homology {
            field: e.field.clone(),
            twist_character: e.twist_character.clone(),
            degree: 2,
        };
        return Ok(
            Decision::new(Verdict::No, Provenance::KernelHomologyObstruction, cert)
                .conditional(e.conditional_on_kpi1 && !opts.assume_kpi1),
        );
    }

    let d = Decision::new(
        Verdict::Unknown,
        Provenance::Undecided,
        Certificate::Conditions(conds),
    );
    Ok(if stalled {
        d.note("simple connectivity of the attached complex undetermined")
    } else {
        d
    })
}

fn two_dimensional_decision(g: &LabeledGraph, chi: &Character, liv: &LivingSubgraph) -> Decision {
    let bad_edge = offending_edges(g, chi, liv)
        .first()
        .map(|&(u, v, _)| (u, v));
    let bad_dead_vertex = liv.dead_vertices.iter().find_map(|&v| {
        let n = g.neighbors(v).iter().filter(|&&w| chi.is_living(w)).count();
        (n != 1).then_some((v, n))
    });
    let liv_is_tree = liv.liv_connected && liv.liv_edges.len() + 1 == liv.liv0_vertices.len();
    let yes = bad_edge.is_none() && bad_dead_vertex.is_none() && liv_is_tree;
    Decision::new(
        if yes { Verdict::Yes } else { Verdict::No },
        Provenance::TwoDimensionalCharacterisation,
        Certificate::TwoDimensional {
            bad_edge,
            bad_dead_vertex,
            liv_is_tree,
        },
    )
}

fn settled(a: &Decision, b: &Decision) -> Option<bool> {
    match (a.verdict, b.verdict) {
        (Verdict::No, _) | (_, Verdict::No) => Some(false),
        (Verdict::Yes, Verdict::Yes) => Some(true),
        _ => None,
    }
}

/// Finiteness properties of `ker chi` from the invariants of `chi` and
/// `-chi`.
pub fn fibring_report(g: &LabeledGraph, chi: &Character) -> Result<FibringReport, SigmaError> {
    if !chi.is_discrete() {
        return Err(SigmaError::Character(CharacterError::NonDiscreteCharacter));
    }
    let chi = primitive(g, chi)?;
    let neg = chi.negated();
    let opts = DecideOptions::default();
    let sigma1 = sigma1_decide(g, &chi)?;
    let sigma1_negated = sigma1_decide(g, &neg)?;
    let sigma2 = sigma2_decide_with(g, &chi, &opts, Sigma2Variant::Homotopical)?;
    let sigma2_negated = sigma2_decide_with(g, &neg, &opts, Sigma2Variant::Homotopical)?;
    let sigma2_homological = sigma2_decide_with(g, &chi, &opts, Sigma2Variant::Homological)?;
    let sigma2_homological_negated =
        sigma2_decide_with(g, &neg, &opts, Sigma2Variant::Homological)?;

    let finitely_generated = settled(&sigma1, &sigma1_negated);
    let finitely_presented = settled(&sigma2, &sigma2_negated);
    let fp2 = settled(&sigma2_homological, &sigma2_homological_negated);
    let summary = match (finitely_generated, finitely_presented) {
        (Some(false), _) => "kernel not finitely generated",
        (Some(true), Some(false)) => "finitely generated but not finitely presented",
        (Some(true), Some(true)) => "finitely presented",
        (Some(true), None) => "finitely generated; finite presentability undetermined",
        (None, _) => "finite generation undetermined",
    }
    .to_string();
    let all = [
        &sigma1,
        &sigma1_negated,
        &sigma2,
        &sigma2_negated,
        &sigma2_homological,
        &sigma2_homological_negated,
    ];
    let conditional_on_kpi1 = all.iter().any(|d| d.conditional_on_kpi1);
    let two_dimensional = !g
        .enumerate_cliques(3)
        .iter()
        .any(|c| c.len() == 3 && is_spherical(g, c));
    let derived_subgroup_finitely_presented =
        two_dimensional.then(|| g.is_tree() && g.edges().all(|(_, _, l)| l % 2 == 1));
    let mut notes = Vec::new();
    if all.iter().any(|d| d.verdict == Verdict::ConjecturalNo) {
        notes.push("a verdict rests on the conjectured characterisation of Sigma^1".into());
    }
    Ok(FibringReport {
        character: chi.primitive_integral()?,
        sigma1,
        sigma1_negated,
        sigma2,
        sigma2_negated,
        sigma2_homological,
        sigma2_homological_negated,
        finitely_generated,
        finitely_presented,
        fp2,
        summary,
        derived_subgroup_finitely_presented,
        conditional_on_kpi1,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::verify_quotient_witness;
    use proptest::prelude::*;

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

    fn chi(g: &LabeledGraph, v: &[i64]) -> Character {
        Character::from_integers(g, v).unwrap()
    }

    #[test]
    fn meier_cases() {
        let g = ex1();
        let d = sigma1_decide(&g, &chi(&g, &[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(
            (d.verdict, d.provenance),
            (Verdict::Yes, Provenance::MeierSufficient)
        );
        // b2 dead with dead neighbours only: not dominant.
        let d = sigma1_decide(&g, &chi(&g, &[1, 1, 1, 0, 0, 0])).unwrap();
        assert_eq!(
            (d.verdict, d.provenance),
            (Verdict::No, Provenance::MeierNecessary)
        );
    }

    #[test]
    fn dead_square_edge_is_uniform_family() {
        let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
        let d = sigma1_decide(&g, &chi(&g, &[1, -1])).unwrap();
        assert_eq!(d.verdict, Verdict::No);
        assert!(matches!(
            d.provenance,
            Provenance::BalancedFamily | Provenance::UniformPrimeFamily
        ));
        let Certificate::Quotient(w) = &d.certificate else {
            panic!()
        };
        assert!(verify_quotient_witness(&g, &chi(&g, &[1, -1]), w));
    }

    #[test]
    fn two_dimensional_example() {
        let g = ex2();
        let d = sigma2_decide(&g, &chi(&g, &[1, 1, 1, 1])).unwrap();
        assert_eq!(d.provenance, Provenance::TwoDimensionalCharacterisation);
        // Liv is the whole triangle-rich graph, not a tree.
        assert_eq!(d.verdict, Verdict::No);
    }

    #[test]
    fn odd_tree_fibres() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 3), (1, 2, 5)]).unwrap();
        let r = fibring_report(&g, &chi(&g, &[1, 1, 1])).unwrap();
        assert_eq!(r.summary, "finitely presented");
        assert_eq!(r.derived_subgroup_finitely_presented, Some(true));
    }

    #[test]
    fn raag_path_with_dead_end() {
        // Path 0-1-2 of 2-labels, chi = (1, 0, 1): Liv is disconnected.
        let g = LabeledGraph::from_edges(3, &[(0, 1, 2), (1, 2, 2)]).unwrap();
        let d = sigma1_decide(&g, &chi(&g, &[1, 0, 1])).unwrap();
        assert_eq!(
            (d.verdict, d.provenance),
            (Verdict::No, Provenance::MeierNecessary)
        );
        let r = fibring_report(&g, &chi(&g, &[1, 1, 1])).unwrap();
        assert_eq!(r.finitely_presented, Some(true));
    }

    #[test]
    fn sufficient_criterion_on_filled_triangle() {
        let g = LabeledGraph::from_edges(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 3)]).unwrap();
        let c = sufficient_conditions(&g, &chi(&g, &[1, 1, 1])).unwrap();
        assert!(c.condition1 && c.condition2 && c.condition3_homological);
        assert_eq!(c.condition3_homotopical, Some(true));
        let d = sigma2_sufficient(&g, &chi(&g, &[1, 1, 1]), Sigma2Variant::Homotopical).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
    }

    #[test]
    fn rational_rescaling() {
        let g = ex1();
        let c = Character::new(&g, vec![num_rational::Rational64::new(1, 2); 6]).unwrap();
        assert_eq!(sigma1_decide(&g, &c).unwrap().verdict, Verdict::Yes);
        // Kernels are only defined for integral characters.
        assert!(matches!(
            fibring_report(&g, &c),
            Err(SigmaError::Character(CharacterError::NonDiscreteCharacter))
        ));
        let two = chi(&g, &[2; 6]);
        assert_eq!(fibring_report(&g, &two).unwrap().character, vec![1; 6]);
    }

    fn arb_graph() -> impl Strategy<Value = (LabeledGraph, Vec<i64>)> {
        (2usize..=5).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            (
                proptest::collection::vec(
                    prop_oneof![Just(0u32), Just(2), Just(3), Just(4), Just(6)],
                    pairs.len(),
                ),
                proptest::collection::vec(-2i64..=2, n),
            )
                .prop_map(move |(ls, vals)| {
                    let edges: Vec<_> = pairs
                        .iter()
                        .zip(ls)
                        .filter(|(_, l)| *l > 0)
                        .map(|(&(u, v), l)| (u, v, l))
                        .collect();
                    let g = LabeledGraph::from_edges(n, &edges).unwrap();
                    let core = g.collapse_to_even_core();
                    let mut vals: Vec<i64> = (0..n)
                        .map(|v| vals[core.members[core.class_of[v]][0]])
                        .collect();
                    if vals.iter().all(|&x| x == 0) {
                        vals = vec![1; n];
                    }
                    (g, vals)
                })
        })
    }

    fn raag(n: usize, mask: u32) -> LabeledGraph {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &(u, v))| (u, v, 2))
            .collect();
        LabeledGraph::from_edges(n, &edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn verdicts_are_scale_and_sign_invariant((g, vals) in arb_graph(), k in 1i64..=3) {
            let c = chi(&g, &vals);
            let scaled: Vec<i64> = vals.iter().map(|x| x * k).collect();
            let s = chi(&g, &scaled);
            prop_assert_eq!(sigma1_decide(&g, &c).unwrap(), sigma1_decide(&g, &s).unwrap());
            // Liv does not see the sign.
            prop_assert_eq!(sigma1_decide(&g, &c).unwrap().verdict, sigma1_decide(&g, &c.negated()).unwrap().verdict);
        }

        #[test]
        fn raag_verdicts_match_living_criterion(n in 2usize..=5, mask in 0u32..1024, vals in proptest::collection::vec(-1i64..=1, 5)) {
            let g = raag(n, mask & ((1 << (n * (n - 1) / 2)) - 1));
            let mut v = vals[..n].to_vec();
            if v.iter().all(|&x| x == 0) { v[0] = 1; }
            let c = chi(&g, &v);
            let liv = living_analysis(&g, &c);
            let d = sigma1_decide(&g, &c).unwrap();
            let expect = if liv.liv_connected && liv.dominant { Verdict::Yes } else { Verdict::No };
            prop_assert_eq!(d.verdict, expect);
        }

        #[test]
        fn no_verdicts_carry_checkable_witnesses((g, vals) in arb_graph()) {
            let c = chi(&g, &vals);
            let d = sigma1_decide(&g, &c).unwrap();
            if let Certificate::Quotient(w) = &d.certificate {
                prop_assert!(verify_quotient_witness(&g, &c, w));
            }
            // Sigma^2 is contained in Sigma^1.
            let d2 = sigma2_decide_homological(&g, &c).unwrap();
            if d2.verdict == Verdict::Yes && !d2.conditional_on_kpi1 {
                prop_assert_eq!(d.verdict, Verdict::Yes);
            }
        }

        #[test]
        fn sigma1_no_agrees_with_homology_oracle((g, vals) in arb_graph()) {
            // A degree-1 homology exclusion never meets a Yes verdict.
            let c = chi(&g, &vals);
            let d = sigma1_decide(&g, &c).unwrap();
            let r = kernel_homology_report(&g, &c, &[], None).unwrap();
            if r.excludes(1, false) {
                prop_assert_ne!(d.verdict, Verdict::Yes);
            }
        }
    }
}
