//! Cellular chain complexes of the cyclic covers of the Salvetti complex,
//! kernel homology over fields, and the dead-edge obstruction ideal.
//!
//! Cells are spherical cliques with at most three vertices, so degrees 0 to
//! 3 are built and homology is reported in degrees 0 to 2.

pub mod formulas;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::snf::{mat_mul, smith_normal_form, EuclideanRing, Matrix};
use crate::algebra::{
    prime_with_root, CyclotomicField, GroupRingElement, LaurentPoly, LaurentRing, PrimeField,
    Rationals, TwistedPoly,
};
use crate::character::{living_analysis, quotient_flags, Character, FiniteQuotient};
use crate::coxeter::{evaluate_t, is_spherical, CoxeterGroupModel};
use crate::error::ChainError;
use crate::graph::{LabeledGraph, Vertex};

pub use formulas::closed_form_boundary;

/// Root-of-unity data of a twisted complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Twist {
    pub quotient: FiniteQuotient,
    /// Index of the character `mu` of `G`.
    pub character: Vec<u64>,
    /// Order of the roots of unity, the exponent of `G`.
    pub modulus: u64,
    /// `mu(phi(v)) = zeta^e(v)`.
    pub exponents: Vec<i64>,
    pub psi_surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub chi: Vec<i64>,
    /// `cells[n]`: spherical cliques of size `n`, lexicographic.
    pub cells: Vec<Vec<Vec<Vertex>>>,
    /// `boundaries[n - 1]` is the matrix of `d_n`: rows are the cells of
    /// size `n - 1`, columns the cells of size `n`.
    pub boundaries: Vec<Matrix<TwistedPoly>>,
    pub twist: Option<Twist>,
    pub warnings: Vec<String>,
}

impl ChainComplex {
    pub fn modulus(&self) -> u64 {
        self.twist.as_ref().map_or(1, |t| t.modulus)
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, |c| c.len())
    }

    /// Entry of `d_n` at (face, cell).
    pub fn entry(&self, n: usize, face: &[Vertex], cell: &[Vertex]) -> Option<&TwistedPoly> {
        let r = self.cells[n - 1].iter().position(|c| c == face)?;
        let c = self.cells[n].iter().position(|c| c == cell)?;
        Some(&self.boundaries[n - 1][r][c])
    }
}

/// Spherical cliques of sizes 0 to 3.
pub fn spherical_cells(g: &LabeledGraph) -> Vec<Vec<Vec<Vertex>>> {
    let mut cells: Vec<Vec<Vec<Vertex>>> =
        vec![vec![Vec::new()], Vec::new(), Vec::new(), Vec::new()];
    for c in g.enumerate_cliques(3) {
        if !c.is_empty() && is_spherical(g, &c) {
            cells[c.len()].push(c);
        }
    }
    cells
}

/// Build the complex of the `chi`-cover, or of the `psi = (chi, phi)`-cover
/// split along the character `mu` of `G` with the given index.
pub fn build_salvetti_complex(
    g: &LabeledGraph,
    chi: &Character,
    twist: Option<(&FiniteQuotient, &[u64])>,
) -> Result<ChainComplex, ChainError> {
    if !chi.is_discrete() {
        return Err(ChainError::NonDiscreteCharacter);
    }
    let chi_int: Vec<i64> = chi.values().iter().map(|v| v.to_integer()).collect();
    let mut warnings = Vec::new();
    let twist = match twist {
        None => None,
        Some((q, k)) => {
            let flags = quotient_flags(chi, q).map_err(|_| ChainError::NonDiscreteCharacter)?;
            if !flags.psi_surjective {
                warnings.push("(chi, phi) is not surjective onto Z x G".to_string());
            }
            Some(Twist {
                quotient: q.clone(),
                character: k.to_vec(),
                modulus: q.group.exponent().max(1),
                exponents: q.twist_exponents(k),
                psi_surjective: flags.psi_surjective,
            })
        }
    };
    let cells = spherical_cells(g);
    let tw = twist.as_ref().map(|t| (t.exponents.as_slice(), t.modulus));
    let modulus = tw.map_or(1, |(_, m)| m);
    let mut boundaries = Vec::new();
    for n in 1..=3 {
        let rows = &cells[n - 1];
        let mut m = vec![vec![TwistedPoly::zero(modulus); cells[n].len()]; rows.len()];
        for (j, x) in cells[n].iter().enumerate() {
            let model = CoxeterGroupModel::new(g, x)?;
            for (pos, &v) in x.iter().enumerate() {
                let face: Vec<Vertex> = x.iter().copied().filter(|&u| u != v).collect();
                let i = rows
                    .binary_search(&face)
                    .expect("faces of spherical cells are cells");
                let coeff = evaluate_t(&model.coset_reps(&face), &chi_int, tw);
                m[i][j] = if pos % 2 == 0 { coeff } else { coeff.neg() };
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex {
        chi: chi_int,
        cells,
        boundaries,
        twist,
        warnings,
    })
}

/// `d_n d_{n+1} = 0` for `n = 1, 2`, exactly in `Z[t^+-1][C_M]`.
pub fn boundary_check(c: &ChainComplex) -> bool {
    first_nonzero_composite(c).is_none()
}

/// Degree of the first failing composite, if any.
pub fn first_nonzero_composite(c: &ChainComplex) -> Option<usize> {
    let ring = TwistedRing(c.modulus());
    for n in 1..c.boundaries.len() {
        let a = &c.boundaries[n - 1];
        let b = &c.boundaries[n];
        let inner = c.cell_count(n);
        if inner == 0 || c.cell_count(n + 1) == 0 {
            continue;
        }
        let prod = mat_mul(&ring, a, b, inner);
        if prod.iter().flatten().any(|e| !e.is_zero()) {
            return Some(n);
        }
    }
    None
}

/// Entry-wise comparison with the closed forms. Returns the number of
/// cells checked, or the first mismatching cell.
pub fn verify_against_formulas(g: &LabeledGraph, c: &ChainComplex) -> Result<usize, Vec<Vertex>> {
    let tw = c
        .twist
        .as_ref()
        .map(|t| (t.exponents.as_slice(), t.modulus));
    let mut checked = 0;
    for n in 1..=3 {
        for x in &c.cells[n] {
            let Some(faces) = closed_form_boundary(g, x, &c.chi, tw) else {
                continue;
            };
            for (face, coeff) in faces {
                if c.entry(n, &face, x) != Some(&coeff) {
                    return Err(x.clone());
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Only ring operations are needed for composites.
struct TwistedRing(u64);

impl EuclideanRing for TwistedRing {
    type Elem = TwistedPoly;
    fn zero(&self) -> TwistedPoly {
        TwistedPoly::zero(self.0)
    }
    fn one(&self) -> TwistedPoly {
        TwistedPoly::one(self.0)
    }
    fn is_zero(&self, a: &TwistedPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &TwistedPoly, b: &TwistedPoly) -> TwistedPoly {
        a.add(b)
    }
    fn neg(&self, a: &TwistedPoly) -> TwistedPoly {
        a.neg()
    }
    fn mul(&self, a: &TwistedPoly, b: &TwistedPoly) -> TwistedPoly {
        a.mul(b)
    }
    fn norm_cmp(&self, _: &TwistedPoly, _: &TwistedPoly) -> std::cmp::Ordering {
        unreachable!("not Euclidean")
    }
    fn divrem(&self, _: &TwistedPoly, _: &TwistedPoly) -> (TwistedPoly, TwistedPoly) {
        unreachable!("not Euclidean")
    }
    fn unit_normal(&self, _: &TwistedPoly) -> (TwistedPoly, TwistedPoly) {
        unreachable!("not Euclidean")
    }
    fn is_unit(&self, _: &TwistedPoly) -> bool {
        unreachable!("not Euclidean")
    }
}

/// Requested coefficient field. For a twisted complex `Rationals` means
/// `Q(zeta_M)` and `Prime(p)` needs an element of order `M` in `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    pub fn name(&self) -> String {
        match self {
            CoefficientField::Rationals => "Q".into(),
            CoefficientField::Prime(p) => format!("F_{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub degree: usize,
    /// Rank of the free part over `F[t^+-1]`.
    pub free_rank: usize,
    /// Non-unit invariant factors, normalised.
    pub torsion: Vec<String>,
    pub finite_dimensional: bool,
    /// `F`-dimension when finite.
    pub dimension: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldHomology {
    pub field: String,
    pub twist_character: Option<Vec<u64>>,
    /// Degrees 0, 1, 2.
    pub degrees: Vec<HomologyEntry>,
}

/// Homology in degrees 0 to 2 over the chosen field.
pub fn homology_all(
    c: &ChainComplex,
    field: CoefficientField,
) -> Result<FieldHomology, ChainError> {
    let m = c.modulus();
    let twist_character = c.twist.as_ref().map(|t| t.character.clone());
    let (name, degrees) = match field {
        CoefficientField::Rationals if m == 1 => {
            let degrees = compute(
                c,
                &LaurentRing::new(Rationals),
                |p| p.to_rationals(),
                |x: &BigRational| (x.is_negative(), x.abs().to_string()),
            );
            ("Q".to_string(), degrees)
        }
        CoefficientField::Rationals => {
            let f = CyclotomicField::new(m);
            let degrees = compute(
                c,
                &LaurentRing::new(f.clone()),
                |p| p.to_cyclotomic(&f),
                |x| cyclotomic_coefficient(&f, x),
            );
            (format!("Q(zeta_{m})"), degrees)
        }
        CoefficientField::Prime(p) => {
            let f = PrimeField::new(p)?;
            let root = root_of_order(p, m).ok_or(ChainError::NoRootOfUnity { p, order: m })?;
            let degrees = compute(
                c,
                &LaurentRing::new(f.clone()),
                |e| e.to_prime_field(&f, root),
                |x: &u64| (false, x.to_string()),
            );
            (format!("F_{p}"), degrees)
        }
    };
    Ok(FieldHomology {
        field: name,
        twist_character,
        degrees,
    })
}

/// One degree of [`homology_all`].
pub fn homology(
    c: &ChainComplex,
    n: usize,
    field: CoefficientField,
) -> Result<HomologyEntry, ChainError> {
    assert!(n <= 2, "homology is reported in degrees 0 to 2");
    Ok(homology_all(c, field)?.degrees.swap_remove(n))
}

fn cyclotomic_coefficient(f: &CyclotomicField, x: &[BigRational]) -> (bool, String) {
    let nonzero: Vec<&BigRational> = x
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .collect();
    if nonzero.len() == 1 && !num_traits::Zero::is_zero(&x[0]) {
        return (x[0].is_negative(), x[0].abs().to_string());
    }
    (false, format!("({})", f.display(x)))
}

/// Smallest element of multiplicative order exactly `m` in `F_p`.
pub fn root_of_order(p: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if (p - 1) % m != 0 {
        return None;
    }
    (2..p).find(|&r| crate::algebra::primes::multiplicative_order(r, p) == m)
}

fn compute<F: Field>(
    c: &ChainComplex,
    ring: &LaurentRing<F>,
    conv: impl Fn(&TwistedPoly) -> LaurentPoly<F::Elem>,
    coef: impl Fn(&F::Elem) -> (bool, String),
) -> Vec<HomologyEntry> {
    // ranks[n] and factors[n] for d_n, n = 0..=3; d_0 = 0.
    let mut ranks = vec![0usize; 4];
    let mut factors: Vec<Vec<LaurentPoly<F::Elem>>> = vec![Vec::new(); 4];
    for n in 1..=3 {
        let cols = c.cell_count(n);
        if cols == 0 {
            continue;
        }
        let m: Matrix<LaurentPoly<F::Elem>> = c.boundaries[n - 1]
            .iter()
            .map(|row| row.iter().map(&conv).collect())
            .collect();
        let s = smith_normal_form(ring, &m, false);
        ranks[n] = s.rank;
        factors[n] = s.factors;
    }
    (0..=2)
        .map(|n| {
            let free_rank = c.cell_count(n) - ranks[n] - ranks[n + 1];
            let tors: Vec<&LaurentPoly<F::Elem>> =
                factors[n + 1].iter().filter(|f| !ring.is_unit(f)).collect();
            let finite = free_rank == 0;
            HomologyEntry {
                degree: n,
                free_rank,
                torsion: tors.iter().map(|f| ring.display_with(f, &coef)).collect(),
                finite_dimensional: finite,
                dimension: finite.then(|| tors.iter().map(|f| f.width().unwrap_or(0)).sum()),
            }
        })
        .collect()
}

/// Graph families where the `K(pi, 1)`-conjecture is known and which make
/// degree-2 conclusions unconditional: FC-type (every clique spherical,
/// covering spherical and right-angled graphs) and 2-dimensional (no
/// spherical triangle).
pub fn kpi1_families(g: &LabeledGraph) -> Vec<&'static str> {
    let cliques = g.enumerate_cliques(g.vertex_count());
    let mut out = Vec::new();
    if cliques.iter().all(|c| is_spherical(g, c)) {
        out.push("FC-type");
    }
    if !cliques.iter().any(|c| c.len() == 3 && is_spherical(g, c)) {
        out.push("2-dimensional");
    }
    out
}

/// Default menu: `Q` and `F_p` for every prime dividing a label or half an
/// even label.
pub fn default_fields(g: &LabeledGraph) -> Vec<CoefficientField> {
    let mut primes = BTreeSet::new();
    for (_, _, l) in g.edges() {
        for p in crate::algebra::primes::prime_factors(l as u64) {
            primes.insert(p);
        }
    }
    std::iter::once(CoefficientField::Rationals)
        .chain(primes.into_iter().map(CoefficientField::Prime))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub field: String,
    pub twist_character: Option<Vec<u64>>,
    pub degree: usize,
    /// Degree-2 conclusions outside known `K(pi, 1)` families.
    pub conditional_on_kpi1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelHomologyReport {
    pub character: Vec<i64>,
    pub results: Vec<FieldHomology>,
    /// Infinite-dimensional `H_n`, `n` in {1, 2}: each excludes the class
    /// from `Sigma^n`.
    pub exclusions: Vec<Exclusion>,
    pub kpi1_families: Vec<String>,
    pub notes: Vec<String>,
}

impl KernelHomologyReport {
    /// Some unconditional exclusion (or any, when `assume_kpi1`) in degree
    /// at most `n`.
    pub fn excludes(&self, n: usize, assume_kpi1: bool) -> bool {
        self.exclusions
            .iter()
            .any(|e| e.degree <= n && (assume_kpi1 || !e.conditional_on_kpi1))
    }

    pub fn degree_finite_everywhere(&self, n: usize) -> bool {
        self.results.iter().all(|r| r.degrees[n].finite_dimensional)
    }
}

/// Homology of the kernel of the primitive integral multiple of `chi` over
/// each field; with a quotient, over every character of `G` as well.
pub fn kernel_homology_report(
    g: &LabeledGraph,
    chi: &Character,
    fields: &[CoefficientField],
    twist: Option<&FiniteQuotient>,
) -> Result<KernelHomologyReport, ChainError> {
    if !chi.is_discrete() {
        return Err(ChainError::NonDiscreteCharacter);
    }
    let prim = chi
        .primitive_integral()
        .map_err(|_| ChainError::NonDiscreteCharacter)?;
    let chi = Character::from_integers(g, &prim).expect("rescaling keeps validity");
    let fields = if fields.is_empty() {
        default_fields(g)
    } else {
        fields.to_vec()
    };
    let families = kpi1_families(g);
    let conditional = families.is_empty();
    let mut results = Vec::new();
    let mut notes = Vec::new();
    let mut exclusions = Vec::new();
    let mut push = |fh: FieldHomology, certifies: bool, exclusions: &mut Vec<Exclusion>| {
        if certifies {
            for d in 1..=2 {
                if !fh.degrees[d].finite_dimensional {
                    exclusions.push(Exclusion {
                        field: fh.field.clone(),
                        twist_character: fh.twist_character.clone(),
                        degree: d,
                        conditional_on_kpi1: d == 2 && conditional,
                    });
                }
            }
        }
        results.push(fh);
    };
    match twist {
        None => {
            let c = build_salvetti_complex(g, &chi, None)?;
            for &f in &fields {
                push(homology_all(&c, f)?, true, &mut exclusions);
            }
        }
        Some(q) => {
            for k in q.group.elements() {
                let c = build_salvetti_complex(g, &chi, Some((q, &k)))?;
                let surjective = c.twist.as_ref().is_some_and(|t| t.psi_surjective);
                for &f in &fields {
                    match homology_all(&c, f) {
                        Ok(fh) => push(fh, surjective, &mut exclusions),
                        Err(ChainError::NoRootOfUnity { p, order }) => notes.push(format!(
                            "F_{p} skipped for character {k:?}: no root of unity of order {order}"
                        )),
                        Err(e) => return Err(e),
                    }
                }
            }
            if !quotient_flags(&chi, q)
                .map(|f| f.psi_surjective)
                .unwrap_or(false)
            {
                notes.push("(chi, phi) is not surjective: twisted results certify nothing".into());
            }
        }
    }
    Ok(KernelHomologyReport {
        character: prim,
        results,
        exclusions,
        kpi1_families: families.into_iter().map(String::from).collect(),
        notes,
    })
}

/// Free rank of twisted `H_1` over `Q(zeta_M)` for every character of `G`.
pub fn twisted_h1_free_ranks(
    g: &LabeledGraph,
    chi: &Character,
    q: &FiniteQuotient,
) -> Result<Vec<(Vec<u64>, usize)>, ChainError> {
    q.group
        .elements()
        .into_iter()
        .map(|k| {
            let c = build_salvetti_complex(g, chi, Some((q, &k)))?;
            Ok((k, homology(&c, 1, CoefficientField::Rationals)?.free_rank))
        })
        .collect()
}

/// `sum_{j<k} phi(uv)^j` for every dead edge `{u, v}` of label `2k` joining
/// the living vertices in `side` to the other living vertices.
pub fn normalized_h1_obstruction(
    g: &LabeledGraph,
    chi: &Character,
    side: &[Vertex],
    quotient: &FiniteQuotient,
) -> Result<Vec<GroupRingElement>, ChainError> {
    let liv = living_analysis(g, chi);
    let side: BTreeSet<Vertex> = side.iter().copied().collect();
    if side.is_empty()
        || !side.iter().all(|v| chi.is_living(*v))
        || side.len() == liv.liv0_vertices.len()
    {
        return Err(ChainError::CutInvalid(
            "side".into(),
            "must be a proper nonempty set of living vertices".into(),
        ));
    }
    let mut gens = Vec::new();
    for (u, v, l) in g.edges() {
        if !chi.is_living(u) || !chi.is_living(v) || side.contains(&u) == side.contains(&v) {
            continue;
        }
        if !liv.is_dead_edge(u, v) {
            return Err(ChainError::CutInvalid(g.name(u).into(), g.name(v).into()));
        }
        let h = quotient.edge_image(u, v);
        let mut e = GroupRingElement::zero();
        let mut x = quotient.group.identity();
        for _ in 0..l / 2 {
            e.add_term(x.clone(), BigRational::from_integer(BigInt::from(1)));
            x = quotient.group.op(&x, &h);
        }
        gens.push(e);
    }
    Ok(gens)
}

/// Prime `p = 1 mod M` with an element of order `M`, for twisted complexes
/// in positive characteristic.
pub fn twisted_prime_field(m: u64) -> Result<CoefficientField, ChainError> {
    Ok(CoefficientField::Prime(prime_with_root(m)?.0))
}

#[cfg(test)]
mod tests;
