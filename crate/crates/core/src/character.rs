//! Characters, finite quotients, living subgraphs, spherical links and the
//! graph reduction moves.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::snf::{integer_snf, smith_normal_form, Integers};
use crate::algebra::FiniteAbelianGroup;
use crate::coxeter::{classify_clique, is_spherical, Irreducible};
use crate::error::CharacterError;
use crate::graph::{LabeledGraph, UnionFind, Vertex};

/// A nonzero character `A_Gamma -> R` with rational values, constant across
/// odd-labelled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Rational64>,
}

impl Character {
    pub fn new(g: &LabeledGraph, values: Vec<Rational64>) -> Result<Self, CharacterError> {
        if values.len() != g.vertex_count() {
            return Err(CharacterError::WrongLength {
                expected: g.vertex_count(),
                got: values.len(),
            });
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(CharacterError::ZeroCharacter);
        }
        for (u, v, l) in g.edges() {
            if l % 2 == 1 && values[u] != values[v] {
                return Err(CharacterError::OddEdgeMismatch(
                    g.name(u).into(),
                    g.name(v).into(),
                ));
            }
        }
        Ok(Character { values })
    }

    pub fn from_integers(g: &LabeledGraph, values: &[i64]) -> Result<Self, CharacterError> {
        Self::new(
            g,
            values
                .iter()
                .map(|&x| Rational64::from_integer(x))
                .collect(),
        )
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    pub fn value(&self, v: Vertex) -> Rational64 {
        self.values[v]
    }

    pub fn is_living(&self, v: Vertex) -> bool {
        !self.values[v].is_zero()
    }

    /// Integral values.
    pub fn is_discrete(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn negated(&self) -> Character {
        Character {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scaled(&self, t: Rational64) -> Character {
        assert!(t > Rational64::zero());
        Character {
            values: self.values.iter().map(|v| v * t).collect(),
        }
    }

    /// The primitive integral character on the same ray: same kernel,
    /// surjective onto `Z`.
    pub fn primitive_integral(&self) -> Result<Vec<i64>, CharacterError> {
        let den = self.values.iter().fold(1i64, |acc, v| acc.lcm(v.denom()));
        let ints: Option<Vec<i64>> = self
            .values
            .iter()
            .map(|v| (v * Rational64::from_integer(den)).to_integer().into())
            .collect();
        let ints = ints.ok_or(CharacterError::NonDiscreteCharacter)?;
        let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
        Ok(ints.into_iter().map(|x| x / g).collect())
    }

    pub fn display(&self, g: &LabeledGraph) -> String {
        let parts: Vec<String> = g
            .vertices()
            .map(|v| format!("{}={}", g.name(v), self.values[v]))
            .collect();
        parts.join(", ")
    }
}

/// `phi: A_Gamma -> G = prod Z/m_i`, one residue vector per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQuotient {
    pub group: FiniteAbelianGroup,
    pub phi: Vec<Vec<u64>>,
}

impl FiniteQuotient {
    pub fn trivial(n: usize) -> Self {
        FiniteQuotient {
            group: FiniteAbelianGroup::trivial(),
            phi: vec![Vec::new(); n],
        }
    }

    /// `phi(u) phi(v)`.
    pub fn edge_image(&self, u: Vertex, v: Vertex) -> Vec<u64> {
        self.group.op(&self.phi[u], &self.phi[v])
    }

    /// Root-of-unity exponent of `mu(phi(v))` modulo the exponent of `G`,
    /// for the character with index `k`.
    pub fn twist_exponents(&self, k: &[u64]) -> Vec<i64> {
        self.phi
            .iter()
            .map(|g| self.group.character_exponent(k, g) as i64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientFlags {
    /// `(chi, phi)` maps onto `Z x G`.
    pub psi_surjective: bool,
    /// `phi` restricted to `ker chi` maps onto `G`.
    pub phi_restricted_surjective: bool,
}

/// Check residues and odd-edge constancy, then decide both surjectivity
/// flags exactly with integer Smith normal forms.
pub fn validate_quotient(
    g: &LabeledGraph,
    chi: &Character,
    orders: &[u64],
    phi: &[Vec<i64>],
) -> Result<(FiniteQuotient, QuotientFlags), CharacterError> {
    if phi.len() != g.vertex_count() {
        return Err(CharacterError::WrongLength {
            expected: g.vertex_count(),
            got: phi.len(),
        });
    }
    for row in phi {
        if row.len() != orders.len() {
            return Err(CharacterError::WrongLength {
                expected: orders.len(),
                got: row.len(),
            });
        }
        for (&x, &m) in row.iter().zip(orders) {
            if m == 0 || x < 0 || x as u64 >= m {
                return Err(CharacterError::BadResidue { value: x, order: m });
            }
        }
    }
    let group = FiniteAbelianGroup::new(orders.to_vec());
    let phi: Vec<Vec<u64>> = phi.iter().map(|r| group.reduce(r)).collect();
    for (u, v, l) in g.edges() {
        if l % 2 == 1 && phi[u] != phi[v] {
            return Err(CharacterError::OddEdgeMismatch(
                g.name(u).into(),
                g.name(v).into(),
            ));
        }
    }
    let q = FiniteQuotient { group, phi };
    let flags = quotient_flags(chi, &q)?;
    Ok((q, flags))
}

/// Surjectivity flags of an already validated quotient.
pub fn quotient_flags(
    chi: &Character,
    q: &FiniteQuotient,
) -> Result<QuotientFlags, CharacterError> {
    let chi_int = chi.primitive_integral()?;
    Ok(QuotientFlags {
        psi_surjective: psi_surjective(&chi_int, q),
        phi_restricted_surjective: phi_restricted_surjective(&chi_int, q),
    })
}

/// Columns generate the full lattice `Z^rows`.
fn generates_lattice(rows: usize, cols: Vec<Vec<i64>>) -> bool {
    if rows == 0 {
        return true;
    }
    let m: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect())
        .collect();
    if cols.is_empty() {
        return false;
    }
    let s = integer_snf(&m);
    s.rank == rows && s.factors.iter().all(|f| f == &BigInt::from(1))
}

fn relation_columns(q: &FiniteQuotient, offset: usize) -> Vec<Vec<i64>> {
    let r = q.group.orders().len();
    (0..r)
        .map(|i| {
            let mut c = vec![0; offset + r];
            c[offset + i] = q.group.orders()[i] as i64;
            c
        })
        .collect()
}

fn psi_surjective(chi: &[i64], q: &FiniteQuotient) -> bool {
    let r = q.group.orders().len();
    let mut cols: Vec<Vec<i64>> = chi
        .iter()
        .zip(&q.phi)
        .map(|(&c, p)| {
            std::iter::once(c)
                .chain(p.iter().map(|&x| x as i64))
                .collect()
        })
        .collect();
    cols.extend(relation_columns(q, 1));
    generates_lattice(1 + r, cols)
}

fn phi_restricted_surjective(chi: &[i64], q: &FiniteQuotient) -> bool {
    let r = q.group.orders().len();
    if r == 0 {
        return true;
    }
    let n = chi.len();
    // chi * V = D: the last n - rank columns of V span ker chi.
    let row = vec![chi.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()];
    let s = smith_normal_form(&Integers, &row, true);
    let v = s.right.unwrap();
    let mut cols: Vec<Vec<i64>> = (s.rank..n)
        .map(|j| {
            (0..r)
                .map(|i| {
                    let acc: BigInt = (0..n).map(|k| &v[k][j] * BigInt::from(q.phi[k][i])).sum();
                    acc.mod_floor(&BigInt::from(q.group.orders()[i]))
                        .to_i64()
                        .unwrap()
                })
                .collect()
        })
        .collect();
    cols.extend(relation_columns(q, 0));
    generates_lattice(r, cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LivingSubgraph {
    pub liv0_vertices: Vec<Vertex>,
    pub dead_vertices: Vec<Vertex>,
    /// Edges between living vertices that are not dead.
    pub liv_edges: Vec<(Vertex, Vertex)>,
    /// Even label at least 4, living endpoints with values summing to 0.
    pub dead_edges: Vec<(Vertex, Vertex)>,
    pub three_dead_edges: Vec<(Vertex, Vertex)>,
    pub liv0_components: Vec<Vec<Vertex>>,
    pub liv_components: Vec<Vec<Vertex>>,
    pub liv0_connected: bool,
    pub liv_connected: bool,
    /// Every dead vertex has a living neighbour.
    pub dominant: bool,
}

impl LivingSubgraph {
    pub fn is_dead_edge(&self, u: Vertex, v: Vertex) -> bool {
        let k = (u.min(v), u.max(v));
        self.dead_edges.binary_search(&k).is_ok()
    }

    pub fn is_liv_edge(&self, u: Vertex, v: Vertex) -> bool {
        let k = (u.min(v), u.max(v));
        self.liv_edges.binary_search(&k).is_ok()
    }

    pub fn is_three_dead(&self, u: Vertex, v: Vertex) -> bool {
        let k = (u.min(v), u.max(v));
        self.three_dead_edges.binary_search(&k).is_ok()
    }

    /// Liv component index of a living vertex.
    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.liv_components.iter().position(|c| c.contains(&v))
    }
}

pub fn living_analysis(g: &LabeledGraph, chi: &Character) -> LivingSubgraph {
    let liv0: Vec<Vertex> = g.vertices().filter(|&v| chi.is_living(v)).collect();
    let dead: Vec<Vertex> = g.vertices().filter(|&v| !chi.is_living(v)).collect();
    let mut liv_edges = Vec::new();
    let mut dead_edges = Vec::new();
    for (u, v, l) in g.edges() {
        if !chi.is_living(u) || !chi.is_living(v) {
            continue;
        }
        if l % 2 == 0 && l >= 4 && (chi.value(u) + chi.value(v)).is_zero() {
            dead_edges.push((u, v));
        } else {
            liv_edges.push((u, v));
        }
    }
    let three_dead_edges = three_dead_edges(g, chi);
    let liv0_components = g.components(&liv0, |_, _| true);
    let dead_set: BTreeSet<(Vertex, Vertex)> = dead_edges.iter().copied().collect();
    let liv_components = g.components(&liv0, |u, v| !dead_set.contains(&(u.min(v), u.max(v))));
    let dominant = dead
        .iter()
        .all(|&v| g.neighbors(v).iter().any(|&w| chi.is_living(w)));
    LivingSubgraph {
        liv0_connected: liv0_components.len() <= 1,
        liv_connected: liv_components.len() <= 1,
        liv0_vertices: liv0,
        dead_vertices: dead,
        liv_edges,
        dead_edges,
        three_dead_edges,
        liv0_components,
        liv_components,
        dominant,
    }
}

/// Label-4 edges `{v, w}` in a `B3` triangle `{v, w, x}` with `l(w, x) = 3`
/// and `2 chi(v) + chi(w) = 0`.
fn three_dead_edges(g: &LabeledGraph, chi: &Character) -> Vec<(Vertex, Vertex)> {
    let mut out = BTreeSet::new();
    for (a, b, l) in g.edges() {
        if l != 4 {
            continue;
        }
        for &x in g.neighbors(a) {
            if x == b || !g.adjacent(b, x) {
                continue;
            }
            let Some(ty) = classify_clique(g, &[a, b, x]).spherical().cloned() else {
                continue;
            };
            if !ty.has(Irreducible::B(3)) {
                continue;
            }
            for (v, w) in [(a, b), (b, a)] {
                if g.label(w, x) == Some(3) {
                    let two = Rational64::from_integer(2);
                    if (two * chi.value(v) + chi.value(w)).is_zero() {
                        out.insert((a, b));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalLinkComplex {
    pub base_vertex: Vertex,
    /// `cells[m]` lists the `m`-cells, each a sorted vertex list.
    pub cells: Vec<Vec<Vec<Vertex>>>,
    pub nonempty: bool,
    pub connected: bool,
}

impl SphericalLinkComplex {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.cells
            .first()
            .map_or(Vec::new(), |c| c.iter().map(|x| x[0]).collect())
    }

    /// Components of the 1-skeleton.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let verts = self.vertices();
        let mut uf = UnionFind::new(verts.len());
        if let Some(edges) = self.cells.get(1) {
            for e in edges {
                let i = verts.binary_search(&e[0]).unwrap();
                let j = verts.binary_search(&e[1]).unwrap();
                uf.union(i, j);
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// Cliques of the link of `v` inside `Liv` (vertices of `Liv` adjacent to `v`
/// in the whole graph, edges of `Liv`) that stay spherical with `v` added.
pub fn spherical_link(g: &LabeledGraph, liv: &LivingSubgraph, v: Vertex) -> SphericalLinkComplex {
    let link: Vec<Vertex> = liv
        .liv0_vertices
        .iter()
        .copied()
        .filter(|&w| w != v && g.adjacent(v, w))
        .collect();
    let mut cells: Vec<Vec<Vec<Vertex>>> = Vec::new();
    let mut layer: Vec<Vec<Vertex>> = link
        .iter()
        .map(|&w| vec![w])
        .filter(|x| is_spherical(g, &with(x, v)))
        .collect();
    while !layer.is_empty() {
        let next: Vec<Vec<Vertex>> = layer
            .iter()
            .flat_map(|x| {
                let last = *x.last().unwrap();
                link.iter()
                    .copied()
                    .filter(move |&w| w > last)
                    .filter(|&w| x.iter().all(|&u| liv.is_liv_edge(u, w)))
                    .map(|w| {
                        let mut y = x.clone();
                        y.push(w);
                        y
                    })
                    .filter(|y| is_spherical(g, y) && is_spherical(g, &with(y, v)))
                    .collect::<Vec<_>>()
            })
            .collect();
        cells.push(layer);
        layer = next;
    }
    let mut slk = SphericalLinkComplex {
        base_vertex: v,
        cells,
        nonempty: false,
        connected: false,
    };
    let comps = slk.components();
    slk.nonempty = !comps.is_empty();
    slk.connected = comps.len() == 1;
    slk
}

fn with(x: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut y = x.to_vec();
    y.push(v);
    y
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Delete a vertex with value 0 and its edges.
    DeleteDeadVertex(Vertex),
    /// Join non-adjacent vertices by an even label.
    AddEvenEdge(Vertex, Vertex, u32),
    /// Join non-adjacent vertices of equal value by any label.
    AddEdgeEqualValues(Vertex, Vertex, u32),
    /// Replace `l(u, v)` by a divisor `beta >= 2`, even or with equal values.
    ReplaceLabel(Vertex, Vertex, u32),
    /// Identify vertices of equal value, then merge parallel edges by gcd,
    /// contract label-1 edges and drop loops until simplicial.
    Identify(Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: LabeledGraph,
    pub character: Character,
    /// Old vertex to new vertex; `None` when deleted.
    pub vertex_map: Vec<Option<Vertex>>,
}

/// Apply one move. The quotient map `A_Gamma -> A_Gamma'` is onto and the
/// character factors through it.
pub fn reduce(g: &LabeledGraph, chi: &Character, mv: &Move) -> Result<Reduction, CharacterError> {
    let bad = |s: &str| Err(CharacterError::MovePreconditionViolated(s.to_string()));
    let n = g.vertex_count();
    let check = |v: Vertex| -> Result<(), CharacterError> {
        if v < n {
            Ok(())
        } else {
            Err(CharacterError::MovePreconditionViolated(format!(
                "vertex #{v} out of range"
            )))
        }
    };
    let mut edges: Vec<(Vertex, Vertex, u32)> = g.edges().collect();
    match *mv {
        Move::DeleteDeadVertex(v) => {
            check(v)?;
            if chi.is_living(v) {
                return bad("deleted vertex must have value 0");
            }
            let keep: Vec<Vertex> = g.vertices().filter(|&u| u != v).collect();
            let graph = g.induced_subgraph(&keep)?;
            let values = keep.iter().map(|&u| chi.value(u)).collect();
            let character = Character::new(&graph, values)?;
            let vertex_map = g
                .vertices()
                .map(|u| keep.iter().position(|&k| k == u))
                .collect();
            return Ok(Reduction {
                graph,
                character,
                vertex_map,
            });
        }
        Move::AddEvenEdge(u, v, l) => {
            check(u)?;
            check(v)?;
            if u == v || g.adjacent(u, v) {
                return bad("endpoints must be distinct and non-adjacent");
            }
            if l % 2 != 0 || l < 2 {
                return bad("label must be even");
            }
            edges.push((u, v, l));
        }
        Move::AddEdgeEqualValues(u, v, l) => {
            check(u)?;
            check(v)?;
            if u == v || g.adjacent(u, v) {
                return bad("endpoints must be distinct and non-adjacent");
            }
            if chi.value(u) != chi.value(v) {
                return bad("endpoints must have equal values");
            }
            if l < 2 {
                return bad("label must be at least 2");
            }
            edges.push((u, v, l));
        }
        Move::ReplaceLabel(u, v, beta) => {
            check(u)?;
            check(v)?;
            let Some(l) = g.label(u, v) else {
                return bad("no such edge");
            };
            if beta < 2 || l % beta != 0 {
                return bad("new label must be a divisor of the old label, at least 2");
            }
            if beta % 2 != 0 && chi.value(u) != chi.value(v) {
                return bad("odd label requires equal values");
            }
            let k = (u.min(v), u.max(v));
            for e in edges.iter_mut() {
                if (e.0, e.1) == k {
                    e.2 = beta;
                }
            }
        }
        Move::Identify(u, v) => {
            check(u)?;
            check(v)?;
            if u == v || chi.value(u) != chi.value(v) {
                return bad("identified vertices must be distinct with equal values");
            }
            return Ok(identify(g, chi, u, v));
        }
    }
    let graph = LabeledGraph::from_parts(g.names().to_vec(), &edges)?;
    let character = Character::new(&graph, chi.values().to_vec())?;
    Ok(Reduction {
        graph,
        character,
        vertex_map: (0..n).map(Some).collect(),
    })
}

/// Deterministic worklist for the identification move: merge, collapse
/// parallel edges by gcd, contract label-1 edges, repeat.
fn identify(g: &LabeledGraph, chi: &Character, u: Vertex, v: Vertex) -> Reduction {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    uf.union(u, v);
    let base: Vec<(Vertex, Vertex, u32)> = g.edges().collect();
    let merged = loop {
        let mut multi: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(a, b, l) in &base {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                continue;
            }
            let k = (ra.min(rb), ra.max(rb));
            let e = multi.entry(k).or_insert(l);
            *e = e.gcd(&l);
        }
        let ones: Vec<(usize, usize)> = multi
            .iter()
            .filter(|(_, &l)| l == 1)
            .map(|(&k, _)| k)
            .collect();
        if ones.is_empty() {
            break multi;
        }
        for (a, b) in ones {
            uf.union(a, b);
        }
    };
    // Classes numbered by smallest member.
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut members: Vec<Vec<Vertex>> = Vec::new();
    let mut vertex_map = vec![None; n];
    for w in 0..n {
        let r = uf.find(w);
        let next = class_index.len();
        let idx = *class_index.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            next
        });
        members[idx].push(w);
        vertex_map[w] = Some(idx);
    }
    let names: Vec<String> = members
        .iter()
        .map(|m| m.iter().map(|&w| g.name(w)).collect::<Vec<_>>().join("+"))
        .collect();
    let edges: Vec<(Vertex, Vertex, u32)> = merged
        .into_iter()
        .map(|((a, b), l)| (class_index[&a], class_index[&b], l))
        .collect();
    let graph = LabeledGraph::from_parts(names, &edges).expect("merged graph is simplicial");
    let values = members.iter().map(|m| chi.value(m[0])).collect();
    let character = Character::new(&graph, values).expect("values agree on merged classes");
    Reduction {
        graph,
        character,
        vertex_map,
    }
}

/// Rational parsing helper shared with front ends: `"3"`, `"-2/5"`.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let den: i64 = b.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            Rational64::new(a.trim().parse().ok()?, den)
        }
        None => Rational64::from_integer(s.parse().ok()?),
    };
    Some(r)
}

/// Absolute value of the largest numerator, for bounds checks.
pub fn max_abs(values: &[Rational64]) -> Rational64 {
    values
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational64::zero)
}
