//! Labelled simplicial graphs. Vertices are indices `0..n` in declaration
//! order; that order fixes every incidence sign downstream.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::GraphError;

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    /// Keys are `(u, v)` with `u < v`.
    labels: BTreeMap<(Vertex, Vertex), u32>,
    adj: Vec<BTreeSet<Vertex>>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl LabeledGraph {
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u32)]) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(n.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(s.as_ref().to_string()))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (a, b, l) in edges {
            indexed.push((lookup(a)?, lookup(b)?, *l));
        }
        Self::from_parts(names, &indexed)
    }

    /// Vertices named `v0, v1, ...`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex, u32)]) -> Result<Self, GraphError> {
        Self::from_parts((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn from_parts(
        names: Vec<String>,
        edges: &[(Vertex, Vertex, u32)],
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut labels = BTreeMap::new();
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v, l) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::UnknownVertex(format!("#{w}")));
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(names[u].clone()));
            }
            if l < 2 {
                return Err(GraphError::BadLabel(names[u].clone(), names[v].clone(), l));
            }
            if labels.insert(key(u, v), l).is_some() {
                return Err(GraphError::DuplicateEdge(
                    names[u].clone(),
                    names[v].clone(),
                ));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(LabeledGraph { names, labels, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    /// `None` for non-adjacent vertices (label infinity).
    pub fn label(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.labels.get(&key(u, v)).copied()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.labels.contains_key(&key(u, v))
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    /// `(u, v, label)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.labels.iter().map(|(&(u, v), &l)| (u, v, l))
    }

    pub fn is_clique(&self, s: &[Vertex]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Induced subgraph on `s`, keeping names and the relative order of `s`
    /// as given in the parent order.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<LabeledGraph, GraphError> {
        let mut sorted: Vec<Vertex> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(GraphError::UnknownVertex(format!("#{bad}")));
        }
        let pos: BTreeMap<Vertex, usize> =
            sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<_> = self
            .edges()
            .filter_map(|(u, v, l)| Some((*pos.get(&u)?, *pos.get(&v)?, l)))
            .collect();
        let names = sorted.iter().map(|&v| self.names[v].clone()).collect();
        Self::from_parts(names, &edges)
    }

    /// All cliques with `1..=max_size` vertices, by size then lexicographic.
    pub fn enumerate_cliques(&self, max_size: usize) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        let mut layer: Vec<Vec<Vertex>> = self.vertices().map(|v| vec![v]).collect();
        let mut size = 1;
        while size <= max_size && !layer.is_empty() {
            let next: Vec<Vec<Vertex>> = layer
                .iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap();
                    self.adj[last]
                        .range(last + 1..)
                        .filter(|&&w| c.iter().all(|&u| self.adjacent(u, w)))
                        .map(|&w| {
                            let mut d = c.clone();
                            d.push(w);
                            d
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            out.extend(layer);
            layer = next;
            size += 1;
        }
        out
    }

    /// Maximum cardinality search; the reverse visiting order is a perfect
    /// elimination ordering exactly when the graph is chordal.
    fn mcs_is_chordal(&self) -> bool {
        let n = self.vertex_count();
        let mut weight = vec![0usize; n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !visited[v])
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            visited[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !visited[w] {
                    weight[w] += 1;
                }
            }
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        // Earlier-visited neighbours of each vertex must form a clique; it
        // suffices to check them against the latest of them.
        for &v in &order {
            let earlier: Vec<Vertex> = self.adj[v]
                .iter()
                .copied()
                .filter(|&w| pos[w] < pos[v])
                .collect();
            if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
                if earlier
                    .iter()
                    .any(|&w| w != parent && !self.adjacent(w, parent))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Some induced cycle of length at least four, if any.
    pub fn induced_long_cycle(&self) -> Option<Vec<Vertex>> {
        for v in self.vertices() {
            let nbrs: Vec<Vertex> = self.adj[v].iter().copied().collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if self.adjacent(a, b) {
                        continue;
                    }
                    let blocked = |w: Vertex| w == v || (w != a && w != b && self.adjacent(v, w));
                    if let Some(path) = self.shortest_path(a, b, blocked) {
                        let mut cycle = vec![v];
                        cycle.extend(path);
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    fn shortest_path(
        &self,
        from: Vertex,
        to: Vertex,
        blocked: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        let mut prev = vec![usize::MAX; self.vertex_count()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if prev[w] == usize::MAX && !blocked(w) {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn is_chordal(&self) -> Chordality {
        if self.mcs_is_chordal() {
            Chordality {
                chordal: true,
                certificate: None,
            }
        } else {
            let cycle = self.induced_long_cycle();
            debug_assert!(cycle.is_some());
            Chordality {
                chordal: false,
                certificate: cycle,
            }
        }
    }

    /// Connected components of the subgraph on `vertices` using only the
    /// edges accepted by `keep`. Components and their members are sorted.
    pub fn components(
        &self,
        vertices: &[Vertex],
        keep: impl Fn(Vertex, Vertex) -> bool,
    ) -> Vec<Vec<Vertex>> {
        let inside: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &inside {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if inside.contains(&w) && keep(u, w) && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<Vertex> = self.vertices().collect();
        self.components(&all, |_, _| true).len() <= 1
    }

    /// A tree: connected with one fewer edge than vertices.
    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0
            && self.is_connected()
            && self.edge_count() + 1 == self.vertex_count()
    }

    /// Contract odd edges, drop label-2 edges and loops, keep parallels.
    pub fn collapse_to_even_core(&self) -> EvenCore {
        let mut uf = UnionFind::new(self.vertex_count());
        for (u, v, l) in self.edges() {
            if l % 2 == 1 {
                uf.union(u, v);
            }
        }
        let mut class_of = vec![0; self.vertex_count()];
        let mut reps: BTreeMap<Vertex, usize> = BTreeMap::new();
        for v in self.vertices() {
            let r = uf.find(v);
            let next = reps.len();
            class_of[v] = *reps.entry(r).or_insert(next);
        }
        let mut members = vec![Vec::new(); reps.len()];
        for v in self.vertices() {
            members[class_of[v]].push(v);
        }
        let edges = self
            .edges()
            .filter(|&(u, v, l)| l % 2 == 0 && l >= 4 && class_of[u] != class_of[v])
            .map(|(u, v, l)| MultiEdge {
                a: class_of[u],
                b: class_of[v],
                label: l,
                original: (u, v),
            })
            .collect();
        EvenCore {
            class_of,
            members,
            edges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chordality {
    pub chordal: bool,
    /// An induced cycle of length at least four when not chordal.
    pub certificate: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiEdge {
    pub a: usize,
    pub b: usize,
    pub label: u32,
    /// The edge of the original graph, `(u, v)` with `u < v`.
    pub original: (Vertex, Vertex),
}

/// Multigraph on odd classes; every edge label is even and at least 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCore {
    /// Vertex to class index; classes numbered by first member.
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<Vertex>>,
    pub edges: Vec<MultiEdge>,
}

impl EvenCore {
    pub fn class_count(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_one() -> LabeledGraph {
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

    fn example_two() -> LabeledGraph {
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

    fn brute_force_chordal(g: &LabeledGraph) -> bool {
        let n = g.vertex_count();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() < 4 {
                continue;
            }
            let s: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let sub = g.induced_subgraph(&s).unwrap();
            if sub.is_connected() && sub.vertices().all(|v| sub.neighbors(v).len() == 2) {
                return false;
            }
        }
        true
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            LabeledGraph::build(&["a", "b"], &[("a", "b", 1)]),
            Err(GraphError::BadLabel(..))
        ));
        assert!(matches!(
            LabeledGraph::build(&["a"], &[("a", "a", 3)]),
            Err(GraphError::LoopEdge(_))
        ));
        assert!(matches!(
            LabeledGraph::build(&["a", "b"], &[("a", "b", 3), ("b", "a", 4)]),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(
            LabeledGraph::build(&["a"], &[("a", "z", 3)]),
            Err(GraphError::UnknownVertex(_))
        ));
        let g = example_one();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
    }

    #[test]
    fn induced_triangle_of_example_one() {
        let g = example_one();
        let t = g.induced_subgraph(&[0, 1, 2]).unwrap();
        let mut labels: Vec<u32> = t.edges().map(|e| e.2).collect();
        labels.sort();
        assert_eq!(labels, vec![2, 3, 3]);
        assert_eq!(g.induced_subgraph(&[]).unwrap().vertex_count(), 0);
        let all: Vec<Vertex> = g.vertices().collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn cliques() {
        let tri = LabeledGraph::from_edges(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        assert_eq!(tri.enumerate_cliques(3).len(), 7);
        assert_eq!(
            LabeledGraph::from_edges(5, &[])
                .unwrap()
                .enumerate_cliques(3)
                .len(),
            5
        );
        let g = example_two();
        let c = g.enumerate_cliques(3);
        assert_eq!(c.len(), 11);
        let tris: Vec<_> = c.iter().filter(|c| c.len() == 3).cloned().collect();
        assert_eq!(tris, vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn chordality() {
        let c4 =
            LabeledGraph::from_edges(4, &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)]).unwrap();
        let r = c4.is_chordal();
        assert!(!r.chordal);
        assert_eq!(r.certificate.unwrap().len(), 4);
        assert!(example_two().is_chordal().chordal);
        assert!(brute_force_chordal(&example_two()));
    }

    #[test]
    fn even_core_collapse() {
        let p = LabeledGraph::from_edges(3, &[(0, 1, 3), (1, 2, 4)]).unwrap();
        let core = p.collapse_to_even_core();
        assert_eq!(core.class_count(), 2);
        assert_eq!(core.edges.len(), 1);
        let raag = LabeledGraph::from_edges(3, &[(0, 1, 2), (1, 2, 2)]).unwrap();
        let core = raag.collapse_to_even_core();
        assert_eq!((core.class_count(), core.edges.len()), (3, 0));
        let core = example_two().collapse_to_even_core();
        assert_eq!((core.class_count(), core.edges.len()), (4, 5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
            (1..=max_n).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                proptest::collection::vec(prop_oneof![Just(0u32), 2u32..7], pairs.len()).prop_map(
                    move |ls| {
                        let edges: Vec<_> = pairs
                            .iter()
                            .zip(ls)
                            .filter(|(_, l)| *l > 0)
                            .map(|(&(u, v), l)| (u, v, l))
                            .collect();
                        LabeledGraph::from_edges(n, &edges).unwrap()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn chordality_matches_brute_force(g in arb_graph(7)) {
                let r = g.is_chordal();
                prop_assert_eq!(r.chordal, brute_force_chordal(&g));
                if let Some(c) = r.certificate {
                    prop_assert!(c.len() >= 4);
                    let sub = g.induced_subgraph(&c).unwrap();
                    prop_assert!(sub.vertices().all(|v| sub.neighbors(v).len() == 2));
                }
            }

            #[test]
            fn induced_subgraph_idempotent(g in arb_graph(6), mask in 0u32..64) {
                let s: Vec<Vertex> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
                let once = g.induced_subgraph(&s).unwrap();
                let all: Vec<Vertex> = once.vertices().collect();
                prop_assert_eq!(once.induced_subgraph(&all).unwrap(), once);
            }

            #[test]
            fn cliques_closed_under_subsets(g in arb_graph(6)) {
                let cl: BTreeSet<Vec<Vertex>> = g.enumerate_cliques(3).into_iter().collect();
                for c in &cl {
                    prop_assert!(g.is_clique(c));
                    for i in 0..c.len() {
                        if c.len() > 1 {
                            let mut d = c.clone();
                            d.remove(i);
                            prop_assert!(cl.contains(&d));
                        }
                    }
                }
            }

            #[test]
            fn collapse_classes_are_odd_path_classes(g in arb_graph(6)) {
                let core = g.collapse_to_even_core();
                let all: Vec<Vertex> = g.vertices().collect();
                let comps = g.components(&all, |u, v| g.label(u, v).unwrap() % 2 == 1);
                for comp in comps {
                    for &v in &comp {
                        prop_assert_eq!(core.class_of[v], core.class_of[comp[0]]);
                    }
                }
                let classes: BTreeSet<usize> = core.class_of.iter().copied().collect();
                let n_comps = g.components(&all, |u, v| g.label(u, v).unwrap() % 2 == 1).len();
                prop_assert_eq!(classes.len(), n_comps);
            }
        }
    }
}
