//! Decision engine for `Sigma^1` and `Sigma^2` membership, family
//! classification, finite-quotient witnesses and fibring reports.
//!
//! Every verdict names the result it rests on through a [`Provenance`] tag
//! and carries a [`Certificate`] that can be re-checked.

mod balanced;
mod classify;
mod complex;
mod decide;
mod witness;

use std::fmt;

use serde::Serialize;

use crate::chain::CoefficientField;
use crate::graph::Vertex;

pub use balanced::{
    balanced_structure, build_balanced_homomorphism, BalancedColouring, BalancedOutcome,
};
pub use classify::{classify_group, coherence_violation, uniform_prime, FamilyFlags, Flag};
pub use complex::{AttachedComplex, SimpleConnectivity};
pub use decide::{
    fibring_report, sigma1_decide, sigma1_decide_with, sigma2_decide, sigma2_decide_homological,
    sigma2_decide_with, sigma2_sufficient, sufficient_conditions, FibringReport, Sigma2Variant,
    SufficientConditions,
};
pub use witness::{
    cut_edges, uniform_witness, validate_cut, verify_quotient_witness, witness_search,
    QuotientWitness, WitnessSearch,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Yes,
    No,
    /// The combinatorial criterion fails but no proven family or witness
    /// applies.
    ConjecturalNo,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::ConjecturalNo => "conjectural-no",
            Verdict::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Fixed enumeration of the results a verdict may rest on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `Liv` connected and dominant implies `Sigma^1`.
    MeierSufficient,
    /// `Sigma^1` forces `Liv_0` connected and dominant.
    MeierNecessary,
    /// Some prime divides `l(e)/2` for every even label above 2.
    UniformPrimeFamily,
    /// Balanced colouring of the even core.
    BalancedFamily,
    /// Finite abelian quotient with a character killing every cut generator.
    FiniteQuotientWitness,
    /// Infinite-dimensional kernel homology.
    KernelHomologyObstruction,
    /// Conjectured characterisation of `Sigma^1` by `Liv`.
    Sigma1Conjecture,
    /// `Sigma^2` contained in `Sigma^1`.
    Sigma1Containment,
    /// Three-condition sufficient criterion for `Sigma^2`.
    Sigma2Sufficient,
    TwoDimensionalCharacterisation,
    CoherentCharacterisation,
    Condition1Necessity,
    Condition2Necessity,
    /// No result applies.
    Undecided,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::MeierSufficient => "meier-sufficient",
            Provenance::MeierNecessary => "meier-necessary",
            Provenance::UniformPrimeFamily => "uniform-prime-family",
            Provenance::BalancedFamily => "balanced-family",
            Provenance::FiniteQuotientWitness => "finite-quotient-witness",
            Provenance::KernelHomologyObstruction => "kernel-homology-obstruction",
            Provenance::Sigma1Conjecture => "sigma1-conjecture",
            Provenance::Sigma1Containment => "sigma1-containment",
            Provenance::Sigma2Sufficient => "sigma2-sufficient-criterion",
            Provenance::TwoDimensionalCharacterisation => "two-dimensional-characterisation",
            Provenance::CoherentCharacterisation => "coherent-characterisation",
            Provenance::Condition1Necessity => "condition1-necessity",
            Provenance::Condition2Necessity => "condition2-necessity",
            Provenance::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Living {
        liv0_connected: bool,
        liv_connected: bool,
        dominant: bool,
        liv_components: Vec<Vec<Vertex>>,
        /// Dead vertices without a living neighbour.
        undominated: Vec<Vertex>,
    },
    Quotient(QuotientWitness),
    Homology {
        field: String,
        twist_character: Option<Vec<u64>>,
        degree: usize,
    },
    Conditions(SufficientConditions),
    TwoDimensional {
        /// Edge with both ends dead, or a dead edge.
        bad_edge: Option<(Vertex, Vertex)>,
        /// Dead vertex and its number of living neighbours, when not one.
        bad_dead_vertex: Option<(Vertex, usize)>,
        liv_is_tree: bool,
    },
    /// Offending edge without a spherical triangle through a suitable
    /// third vertex.
    EdgeWithoutTriangle {
        edge: (Vertex, Vertex),
        any_spherical_triangle: bool,
    },
    DisconnectedLink {
        vertex: Vertex,
        components: Vec<Vec<Vertex>>,
        /// Common prime divisor of `l(e)/2` over the dead edges of the link.
        prime: Option<u64>,
    },
    /// The inner decision justifying this one.
    Inherited(Box<Decision>),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub provenance: Provenance,
    pub certificate: Certificate,
    /// The cited result assumes the `K(pi, 1)`-conjecture and the graph is
    /// in no family where it is known.
    pub conditional_on_kpi1: bool,
    pub notes: Vec<String>,
}

impl Decision {
    fn new(verdict: Verdict, provenance: Provenance, certificate: Certificate) -> Self {
        Decision {
            verdict,
            provenance,
            certificate,
            conditional_on_kpi1: false,
            notes: Vec::new(),
        }
    }

    fn conditional(mut self, c: bool) -> Self {
        self.conditional_on_kpi1 = c;
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecideOptions {
    /// Treat the `K(pi, 1)`-conjecture as known for the input graph.
    pub assume_kpi1: bool,
    /// Fields for homology oracles; empty selects the default menu.
    pub fields: Vec<CoefficientField>,
}
