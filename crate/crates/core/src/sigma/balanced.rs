//! Balanced colourings of the even core and the homomorphism built from a
//! colouring of a cut.
//!
//! Closed paths in the balance condition are read as simple cycles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use super::witness::{cut_edges, validate_cut, verify_quotient_witness, QuotientWitness};
use crate::algebra::primes::prime_factors;
use crate::algebra::FiniteAbelianGroup;
use crate::character::{Character, FiniteQuotient};
use crate::error::SigmaError;
use crate::graph::{LabeledGraph, Vertex};

/// Multiedge count up to which every simple cycle is checked.
const EXACT_EDGE_LIMIT: usize = 12;
const CYCLE_CAP: usize = 200_000;
const SEARCH_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedColouring {
    /// Multiedges of the even core, named by their original endpoints.
    pub edges: Vec<(Vertex, Vertex, u32)>,
    /// Colour index per multiedge.
    pub colour: Vec<usize>,
    /// Prime per colour, dividing `l/2` on every edge of that colour.
    pub primes: Vec<u64>,
    /// `+1` or `-1` per multiedge.
    pub parity: Vec<i8>,
    /// Parity products agree with every even cycle.
    pub parity_consistent: bool,
    /// All simple cycles were checked, not only a cycle basis.
    pub exact: bool,
    pub notes: Vec<String>,
}

impl BalancedColouring {
    pub fn colour_count(&self) -> usize {
        self.primes.len()
    }

    pub fn index_of(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let k = (u.min(v), u.max(v));
        self.edges.iter().position(|&(a, b, _)| (a, b) == k)
    }

    pub fn summary(&self) -> String {
        if self.edges.is_empty() {
            return "even core has no edges".into();
        }
        let primes: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        format!(
            "{} colour(s), primes [{}]",
            self.primes.len(),
            primes.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BalancedOutcome {
    Balanced(BalancedColouring),
    NotBalanced { reason: String },
}

/// Simple cycles of a multigraph as edge sequences in traversal order;
/// `false` when the cap cut the enumeration short.
pub(crate) fn simple_cycles(
    nodes: usize,
    edges: &[(usize, usize)],
    cap: usize,
) -> (Vec<Vec<usize>>, bool) {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (i, &(a, b)) in edges.iter().enumerate() {
        inc[a].push((i, b));
        inc[b].push((i, a));
    }
    let mut out = Vec::new();
    let mut complete = true;
    for s in 0..nodes {
        let mut on_path = vec![false; nodes];
        on_path[s] = true;
        let mut path = Vec::new();
        dfs_cycles(
            s,
            s,
            &inc,
            &mut on_path,
            &mut path,
            &mut out,
            cap,
            &mut complete,
        );
        if !complete {
            break;
        }
    }
    (out, complete)
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles(
    s: usize,
    x: usize,
    inc: &[Vec<(usize, usize)>],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
    complete: &mut bool,
) {
    for &(e, y) in &inc[x] {
        if !*complete {
            return;
        }
        if y == s {
            // Each cycle is found in both directions; keep first < last.
            if !path.is_empty() && path[0] < e {
                let mut c = path.clone();
                c.push(e);
                out.push(c);
                if out.len() >= cap {
                    *complete = false;
                }
            }
        } else if y > s && !on_path[y] {
            on_path[y] = true;
            path.push(e);
            dfs_cycles(s, y, inc, on_path, path, out, cap, complete);
            path.pop();
            on_path[y] = false;
        }
    }
}

/// Fundamental cycles of a spanning forest.
fn fundamental_cycles(nodes: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (i, &(a, b)) in edges.iter().enumerate() {
        inc[a].push((i, b));
        inc[b].push((i, a));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nodes];
    let mut depth = vec![usize::MAX; nodes];
    let mut tree = vec![false; edges.len()];
    for r in 0..nodes {
        if depth[r] != usize::MAX {
            continue;
        }
        depth[r] = 0;
        let mut q = VecDeque::from([r]);
        while let Some(x) = q.pop_front() {
            for &(e, y) in &inc[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, e));
                    tree[e] = true;
                    q.push_back(y);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        // Walk both ends up to their common ancestor.
        let (mut x, mut y) = (a, b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let (p, e) = parent[x].unwrap();
                left.push(e);
                x = p;
            } else {
                let (p, e) = parent[y].unwrap();
                right.push(e);
                y = p;
            }
        }
        // Cycle: a -> ... -> lca -> ... -> b -> a.
        let mut c = left;
        c.extend(right.into_iter().rev());
        c.push(i);
        out.push(c);
    }
    out
}

/// Each colour appears zero or two times on the cycle.
fn two_or_zero(cycle: &[usize], colour: &[usize]) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in cycle {
        *counts.entry(colour[e]).or_default() += 1;
    }
    counts.values().all(|&c| c == 2)
}

/// Signs with `p(e) p(f) = (-1)^(edges strictly between e and f)` for each
/// same-colour pair on an even cycle; the flag reports consistency.
fn parity_map(m: usize, cycles: &[Vec<usize>], colour: &[usize]) -> (Vec<i8>, bool) {
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); m];
    for c in cycles.iter().filter(|c| c.len() % 2 == 0) {
        let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &e) in c.iter().enumerate() {
            by_colour.entry(colour[e]).or_default().push(pos);
        }
        for positions in by_colour.values() {
            if let [i, j] = positions[..] {
                let sign = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
                adj[c[i]].push((c[j], sign));
                adj[c[j]].push((c[i], sign));
            }
        }
    }
    let mut p = vec![0i8; m];
    let mut consistent = true;
    for r in 0..m {
        if p[r] != 0 {
            continue;
        }
        p[r] = 1;
        let mut q = VecDeque::from([r]);
        while let Some(e) = q.pop_front() {
            for &(f, s) in &adj[e] {
                let want = p[e] * s;
                if p[f] == 0 {
                    p[f] = want;
                    q.push_back(f);
                } else if p[f] != want {
                    consistent = false;
                }
            }
        }
    }
    (p, consistent)
}

struct ColourSearch<'a> {
    halves: &'a [u64],
    order: Vec<usize>,
    cycles: &'a [Vec<usize>],
    cycles_of: Vec<Vec<usize>>,
    colour: Vec<Option<usize>>,
    gcds: Vec<u64>,
    budget: usize,
}

impl ColourSearch<'_> {
    fn cycle_ok(&self, c: &[usize]) -> bool {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut complete = true;
        for &e in c {
            match self.colour[e] {
                Some(k) => *counts.entry(k).or_default() += 1,
                None => complete = false,
            }
        }
        counts.values().all(|&n| n <= 2 && (!complete || n == 2))
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let e = self.order[pos];
        let options = self.gcds.len() + 1;
        for k in 0..options {
            let fresh = k == self.gcds.len();
            let g = if fresh {
                self.halves[e]
            } else {
                self.gcds[k].gcd(&self.halves[e])
            };
            if g <= 1 {
                continue;
            }
            let saved = if fresh {
                self.gcds.push(g);
                None
            } else {
                Some(std::mem::replace(&mut self.gcds[k], g))
            };
            self.colour[e] = Some(k);
            let ok = self.cycles_of[e]
                .iter()
                .all(|&c| self.cycle_ok(&self.cycles[c]));
            if ok && self.run(pos + 1) {
                return true;
            }
            self.colour[e] = None;
            match saved {
                None => {
                    self.gcds.pop();
                }
                Some(old) => self.gcds[k] = old,
            }
        }
        false
    }
}

/// Searches a balanced colouring of the even core.
pub fn balanced_structure(g: &LabeledGraph) -> BalancedOutcome {
    let core = g.collapse_to_even_core();
    let edges: Vec<(usize, usize)> = core.edges.iter().map(|e| (e.a, e.b)).collect();
    let m = edges.len();
    let mut notes = vec!["closed paths read as simple cycles".to_string()];
    let (cycles, exact) = if m <= EXACT_EDGE_LIMIT {
        let (c, complete) = simple_cycles(core.class_count(), &edges, CYCLE_CAP);
        (c, complete)
    } else {
        notes.push(format!(
            "{m} multiedges: checked on a fundamental cycle basis only"
        ));
        (fundamental_cycles(core.class_count(), &edges), false)
    };
    let even: Vec<Vec<usize>> = cycles.into_iter().filter(|c| c.len() % 2 == 0).collect();
    let halves: Vec<u64> = core.edges.iter().map(|e| (e.label / 2) as u64).collect();
    let mut cycles_of = vec![Vec::new(); m];
    for (i, c) in even.iter().enumerate() {
        for &e in c {
            if !cycles_of[e].contains(&i) {
                cycles_of[e].push(i);
            }
        }
    }
    // Constrained edges first, then the rest in index order.
    let mut order: Vec<usize> = (0..m).filter(|&e| !cycles_of[e].is_empty()).collect();
    order.extend((0..m).filter(|&e| cycles_of[e].is_empty()));
    let mut search = ColourSearch {
        halves: &halves,
        order,
        cycles: &even,
        cycles_of,
        colour: vec![None; m],
        gcds: Vec::new(),
        budget: SEARCH_BUDGET,
    };
    if !search.run(0) {
        let reason = if search.budget == 0 {
            "colouring search budget exhausted".to_string()
        } else {
            "no colouring meets every even cycle zero or two times per colour".to_string()
        };
        return BalancedOutcome::NotBalanced { reason };
    }
    let colour: Vec<usize> = search.colour.iter().map(|c| c.unwrap()).collect();
    let primes: Vec<u64> = search.gcds.iter().map(|&g| prime_factors(g)[0]).collect();
    let (parity, parity_consistent) = parity_map(m, &even, &colour);
    if !parity_consistent {
        notes.push("parity is not consistent on the whole core; recomputed on each cut".into());
    }
    BalancedOutcome::Balanced(BalancedColouring {
        edges: core
            .edges
            .iter()
            .map(|e| (e.original.0, e.original.1, e.label))
            .collect(),
        colour,
        primes,
        parity,
        parity_consistent,
        exact,
        notes,
    })
}

/// Quotient `prod C_{p_i}` over the colours met by the cut, with the cut
/// edges mapped to generators up to sign by spanning-tree propagation.
pub fn build_balanced_homomorphism(
    g: &LabeledGraph,
    chi: &Character,
    side: &[Vertex],
    colouring: &BalancedColouring,
) -> Result<QuotientWitness, SigmaError> {
    let side = validate_cut(g, chi, side)?;
    let cut = cut_edges(g, chi, &side);
    let core = g.collapse_to_even_core();
    let invalid = |s: String| SigmaError::ColouringInvalidOnCut(s);

    // Lambda: classes touched by cut edges.
    let mut node_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut lam_edges: Vec<(usize, usize)> = Vec::new();
    let mut lam_colour: Vec<usize> = Vec::new();
    for &(u, v, l) in &cut {
        let k = colouring
            .index_of(u, v)
            .ok_or_else(|| invalid(format!("edge {}-{} has no colour", g.name(u), g.name(v))))?;
        let c = colouring.colour[k];
        let p = *colouring
            .primes
            .get(c)
            .ok_or_else(|| invalid(format!("colour {c} has no prime")))?;
        if (l as u64 / 2) % p != 0 {
            return Err(invalid(format!(
                "prime {p} does not divide {}/2 on {}-{}",
                l,
                g.name(u),
                g.name(v)
            )));
        }
        let n = node_of.len();
        let a = *node_of.entry(core.class_of[u]).or_insert(n);
        let n = node_of.len();
        let b = *node_of.entry(core.class_of[v]).or_insert(n);
        lam_edges.push((a, b));
        lam_colour.push(c);
    }
    let nodes = node_of.len();
    let (cycles, complete) = simple_cycles(nodes, &lam_edges, CYCLE_CAP);
    for c in &cycles {
        if c.len() % 2 == 1 {
            return Err(invalid("cut subgraph has an odd cycle".into()));
        }
        if !two_or_zero(c, &lam_colour) {
            return Err(invalid(
                "an even cycle of the cut meets some colour once or more than twice".into(),
            ));
        }
    }
    let (parity, consistent) = parity_map(lam_edges.len(), &cycles, &lam_colour);
    if !consistent {
        return Err(invalid("no parity map exists on the cut".into()));
    }

    let used: BTreeSet<usize> = lam_colour.iter().copied().collect();
    let factor: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let orders: Vec<u64> = used.iter().map(|&c| colouring.primes[c]).collect();
    let group = FiniteAbelianGroup::new(orders.clone());
    let generator = |c: usize| {
        let mut x = group.identity();
        x[factor[&c]] = 1;
        x
    };

    // Propagate from roots: phi(x) phi(y) = g_c^{p(e)} on tree edges.
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (i, &(a, b)) in lam_edges.iter().enumerate() {
        inc[a].push((i, b));
        inc[b].push((i, a));
    }
    let mut value: Vec<Option<Vec<u64>>> = vec![None; nodes];
    for r in 0..nodes {
        if value[r].is_some() {
            continue;
        }
        value[r] = Some(group.identity());
        let mut q = VecDeque::from([r]);
        while let Some(x) = q.pop_front() {
            for &(e, y) in &inc[x] {
                if value[y].is_none() {
                    let target = group.pow(&generator(lam_colour[e]), parity[e] as i64);
                    let vx = value[x].clone().unwrap();
                    value[y] = Some(group.op(&target, &group.pow(&vx, -1)));
                    q.push_back(y);
                }
            }
        }
    }
    let value: Vec<Vec<u64>> = value.into_iter().map(Option::unwrap).collect();
    for (i, &(a, b)) in lam_edges.iter().enumerate() {
        let img = group.op(&value[a], &value[b]);
        let gen = generator(lam_colour[i]);
        if img != gen && img != group.pow(&gen, -1) {
            return Err(invalid(format!("postcondition fails on cut edge {}", i)));
        }
    }

    let phi: Vec<Vec<u64>> = g
        .vertices()
        .map(|v| match node_of.get(&core.class_of[v]) {
            Some(&n) => value[n].clone(),
            None => group.identity(),
        })
        .collect();
    let quotient = FiniteQuotient { group, phi };
    let mut w = QuotientWitness::new(
        g,
        chi,
        quotient,
        vec![1; orders.len()],
        &side,
        "balanced colouring",
    );
    if !complete {
        w.notes.push("cut cycle enumeration capped".into());
    }
    if !verify_quotient_witness(g, chi, &w) {
        return Err(invalid(
            "constructed quotient does not certify the cut".into(),
        ));
    }
    Ok(w)
}
