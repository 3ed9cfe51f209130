use super::*;
use crate::character::validate_quotient;
use proptest::prelude::*;

fn chi(g: &LabeledGraph, v: &[i64]) -> Character {
    Character::from_integers(g, v).unwrap()
}

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
fn single_vertex() {
    let g = LabeledGraph::from_edges(1, &[]).unwrap();
    let c = build_salvetti_complex(&g, &chi(&g, &[1]), None).unwrap();
    assert_eq!(c.boundaries[0][0][0].display(), "1 - t");
    let h = homology_all(&c, CoefficientField::Rationals).unwrap();
    assert_eq!(h.degrees[0].torsion, vec!["-1 + t"]);
    assert_eq!(h.degrees[0].dimension, Some(1));
    assert_eq!(h.degrees[1].free_rank, 0);
    assert_eq!(h.degrees[1].dimension, Some(0));
}

#[test]
fn dead_square_edge_column() {
    let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
    let c = build_salvetti_complex(&g, &chi(&g, &[1, -1]), None).unwrap();
    assert_eq!(c.entry(2, &[1], &[0, 1]).unwrap().display(), "2 - 2*t");
    assert_eq!(c.entry(2, &[0], &[0, 1]).unwrap().display(), "2*t^-1 - 2");
    let h = homology(&c, 1, CoefficientField::Prime(2)).unwrap();
    assert!(h.free_rank >= 1);
    let h = homology(&c, 1, CoefficientField::Rationals).unwrap();
    assert!(h.finite_dimensional);
}

#[test]
fn b3_top_cell() {
    let g = LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 3), (0, 2, 2)]).unwrap();
    let c = build_salvetti_complex(&g, &chi(&g, &[1, 1, 1]), None).unwrap();
    let e = c.entry(3, &[1, 2], &[0, 1, 2]).unwrap();
    let expected = TwistedPoly::one(1)
        .sub(&TwistedPoly::monomial(1, 1, 1, 0))
        .mul(&TwistedPoly::one(1).add(&TwistedPoly::monomial(1, 1, 2, 0)))
        .mul(&TwistedPoly::one(1).sub(&TwistedPoly::monomial(1, 1, 3, 0)));
    assert_eq!(e, &expected);
    assert!(boundary_check(&c));
}

#[test]
fn boundary_check_detects_corruption() {
    let g = ex1();
    let mut c = build_salvetti_complex(&g, &chi(&g, &[1; 6]), None).unwrap();
    assert!(boundary_check(&c));
    c.boundaries[1][0][0] = c.boundaries[1][0][0].add(&TwistedPoly::one(1));
    assert!(!boundary_check(&c));
}

#[test]
fn free_group_kernel() {
    let g = LabeledGraph::from_edges(2, &[]).unwrap();
    let c = build_salvetti_complex(&g, &chi(&g, &[1, 1]), None).unwrap();
    assert_eq!(
        homology(&c, 1, CoefficientField::Rationals)
            .unwrap()
            .free_rank,
        1
    );
}

#[test]
fn odd_edge_kernel_finite() {
    let g = LabeledGraph::from_edges(2, &[(0, 1, 3)]).unwrap();
    let c = build_salvetti_complex(&g, &chi(&g, &[1, 1]), None).unwrap();
    for f in [CoefficientField::Rationals, CoefficientField::Prime(2)] {
        let h = homology_all(&c, f).unwrap();
        assert!(h.degrees[0].finite_dimensional && h.degrees[1].finite_dimensional);
    }
}

#[test]
fn rejects_rational_character() {
    let g = LabeledGraph::from_edges(1, &[]).unwrap();
    let c = Character::new(&g, vec![num_rational::Rational64::new(1, 2)]).unwrap();
    assert_eq!(
        build_salvetti_complex(&g, &c, None),
        Err(ChainError::NonDiscreteCharacter)
    );
    assert!(kernel_homology_report(&g, &c, &[], None).is_err());
}

#[test]
fn example_two_reports() {
    let g = ex2();
    let r = kernel_homology_report(&g, &chi(&g, &[1, 1, 0, 0]), &[], None).unwrap();
    assert!(r.degree_finite_everywhere(1));
    assert!(r.exclusions.iter().any(|e| e.degree == 2));
    assert!(!r.excludes(1, false));
    let r = kernel_homology_report(&g, &chi(&g, &[0, 0, 1, -1]), &[], None).unwrap();
    assert!(r.excludes(1, false));
}

#[test]
fn default_field_menu() {
    let fields = default_fields(&ex2());
    assert_eq!(
        fields,
        vec![
            CoefficientField::Rationals,
            CoefficientField::Prime(2),
            CoefficientField::Prime(3)
        ]
    );
}

#[test]
fn trivial_twist_matches_plain() {
    let g = ex1();
    let x = chi(&g, &[1, 1, 1, -1, -1, 2]);
    let plain = build_salvetti_complex(&g, &x, None).unwrap();
    let q = FiniteQuotient::trivial(6);
    let tw = build_salvetti_complex(&g, &x, Some((&q, &[]))).unwrap();
    assert_eq!(plain.boundaries, tw.boundaries);
}

#[test]
fn obstruction_generators() {
    let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
    let x = chi(&g, &[1, -1]);
    let (q, _) = validate_quotient(&g, &x, &[2], &[vec![1], vec![0]]).unwrap();
    let gens = normalized_h1_obstruction(&g, &x, &[0], &q).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].display(), "1 + g");

    let g6 = LabeledGraph::from_edges(2, &[(0, 1, 6)]).unwrap();
    let (q, _) = validate_quotient(&g6, &x, &[3], &[vec![1], vec![0]]).unwrap();
    let gens = normalized_h1_obstruction(&g6, &x, &[0], &q).unwrap();
    assert_eq!(gens[0].display(), "1 + g + g^2");

    let (q, _) = validate_quotient(&g, &x, &[2], &[vec![1], vec![1]]).unwrap();
    let gens = normalized_h1_obstruction(&g, &x, &[1], &q).unwrap();
    assert_eq!(gens[0].display(), "2");

    let odd = LabeledGraph::from_edges(2, &[(0, 1, 3)]).unwrap();
    let y = chi(&odd, &[1, 1]);
    assert!(matches!(
        normalized_h1_obstruction(&odd, &y, &[0], &FiniteQuotient::trivial(2)),
        Err(ChainError::CutInvalid(..))
    ));
}

#[test]
fn twisted_square_edge() {
    // phi(uv) = g of order 2: the nontrivial character kills 1 + g.
    let g = LabeledGraph::from_edges(2, &[(0, 1, 4)]).unwrap();
    let x = chi(&g, &[1, -1]);
    let (q, flags) = validate_quotient(&g, &x, &[2], &[vec![1], vec![0]]).unwrap();
    assert!(flags.psi_surjective);
    let ranks = twisted_h1_free_ranks(&g, &x, &q).unwrap();
    assert_eq!(ranks, vec![(vec![0], 0), (vec![1], 1)]);
    let gens = normalized_h1_obstruction(&g, &x, &[0], &q).unwrap();
    assert_eq!(
        crate::algebra::ideal_properness(&q.group, &gens),
        crate::algebra::IdealProperness::Witness(vec![1])
    );
}

#[test]
fn twisted_prime_fields() {
    let g = LabeledGraph::from_edges(2, &[(0, 1, 6)]).unwrap();
    let x = chi(&g, &[1, -1]);
    let (q, _) = validate_quotient(&g, &x, &[3], &[vec![1], vec![0]]).unwrap();
    let c = build_salvetti_complex(&g, &x, Some((&q, &[1]))).unwrap();
    assert!(matches!(
        homology(&c, 1, CoefficientField::Prime(5)),
        Err(ChainError::NoRootOfUnity { .. })
    ));
    let f = twisted_prime_field(3).unwrap();
    assert_eq!(f, CoefficientField::Prime(7));
    assert!(homology(&c, 1, f).unwrap().free_rank >= 1);
    assert!(
        homology(&c, 1, CoefficientField::Rationals)
            .unwrap()
            .free_rank
            >= 1
    );
}

#[test]
fn kpi1_family_flags() {
    assert!(kpi1_families(&ex2()).contains(&"2-dimensional"));
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
    assert_eq!(kpi1_families(&k4), vec!["FC-type"]);
    let bad = LabeledGraph::from_edges(
        4,
        &[
            (0, 1, 3),
            (0, 2, 3),
            (1, 2, 3),
            (0, 3, 2),
            (1, 3, 2),
            (2, 3, 2),
        ],
    )
    .unwrap();
    assert!(kpi1_families(&bad).is_empty());
}

fn arb_graph() -> impl Strategy<Value = (LabeledGraph, Vec<i64>)> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (
            proptest::collection::vec(
                prop_oneof![Just(0u32), Just(2), Just(3), Just(4), Just(5), Just(6)],
                pairs.len(),
            ),
            proptest::collection::vec(-3i64..=3, n),
        )
            .prop_map(move |(ls, vals)| {
                let edges: Vec<_> = pairs
                    .iter()
                    .zip(ls)
                    .filter(|(_, l)| *l > 0)
                    .map(|(&(u, v), l)| (u, v, l))
                    .collect();
                let g = LabeledGraph::from_edges(n, &edges).unwrap();
                // Make values constant on odd components.
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero((g, vals) in arb_graph()) {
        let c = build_salvetti_complex(&g, &chi(&g, &vals), None).unwrap();
        prop_assert!(boundary_check(&c));
    }

    #[test]
    fn closed_forms_agree((g, vals) in arb_graph()) {
        let c = build_salvetti_complex(&g, &chi(&g, &vals), None).unwrap();
        prop_assert!(verify_against_formulas(&g, &c).is_ok());
    }

    #[test]
    fn twisted_boundary_squares_to_zero((g, vals) in arb_graph(), m in 2u64..=4, seed in 0u64..1000) {
        let x = chi(&g, &vals);
        let core = g.collapse_to_even_core();
        let phi: Vec<Vec<i64>> = (0..g.vertex_count())
            .map(|v| vec![((core.class_of[v] as u64 * 7 + seed) % m) as i64])
            .collect();
        let (q, _) = validate_quotient(&g, &x, &[m], &phi).unwrap();
        let k = vec![1u64];
        let c = build_salvetti_complex(&g, &x, Some((&q, &k))).unwrap();
        prop_assert!(boundary_check(&c));
        prop_assert!(verify_against_formulas(&g, &c).is_ok());
    }

    #[test]
    fn h0_is_one_dimensional((g, vals) in arb_graph()) {
        let x = chi(&g, &vals);
        let r = kernel_homology_report(&g, &x, &[CoefficientField::Rationals], None).unwrap();
        prop_assert_eq!(r.results[0].degrees[0].dimension, Some(1));
    }
}
