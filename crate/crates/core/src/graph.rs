//! The empty triangle graph incident at x, G_P(x), and the graph analytics
//! the counting identities reduce to: triangle counting, kite detection,
//! complete-bipartite search.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{angle_sum_exceeds_pi, orient, PointSet};
use crate::triangles::{enumerate_empty_fast, EmptyTriangleSet, Triangle};

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are kept as a sorted set of `(a, b)` pairs with `a < b`, so edge
/// iteration order is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(vertex_count);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loops are not allowed");
        assert!(
            a < self.vertex_count && b < self.vertex_count,
            "edge endpoint out of range"
        );
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.insert((a, b));
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(a, b))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency_of(v).count()
    }

    fn adjacency_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Sorted adjacency lists for all vertices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Number of unordered vertex triples forming 3-cycles.
pub fn count_triangles(g: &Graph) -> u64 {
    let adj = g.adjacency();
    let mut count = 0u64;
    for (a, b) in g.edges() {
        // Count the third vertex above b so each triangle is seen once.
        count += sorted_intersection(&adj[a], &adj[b])
            .into_iter()
            .filter(|&c| c > b)
            .count() as u64;
    }
    count
}

/// All triangles of `g`, each as a sorted vertex triple, in sorted order.
pub fn list_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for c in sorted_intersection(&adj[a], &adj[b]) {
            if c > b {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// One occurrence of K₄∖{e}: two triangles sharing `edge`, with the two
/// off-edge vertices in `apexes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KiteWitness {
    pub edge: (usize, usize),
    pub apexes: (usize, usize),
}

/// Every occurrence of the kite K₄∖{e} as a subgraph; empty means kite-free.
/// Equivalent formulation: every edge lies in at most one triangle.
pub fn find_kites(g: &Graph) -> Vec<KiteWitness> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let common = sorted_intersection(&adj[a], &adj[b]);
        for (i, &c) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                out.push(KiteWitness {
                    edge: (a, b),
                    apexes: (c, d),
                });
            }
        }
    }
    out
}

/// A subgraph witness for K_{r,s}: every vertex of `left` is adjacent to
/// every vertex of `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// The K_{r,s} search ran out of its node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteBudgetError {
    pub nodes_visited: u64,
}

impl fmt::Display for BipartiteBudgetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "complete-bipartite search exceeded its node budget ({} nodes)",
            self.nodes_visited
        )
    }
}

impl core::error::Error for BipartiteBudgetError {}

const BIPARTITE_NODE_BUDGET: u64 = 5_000_000;

/// Searches for K_{r,s} (r ≤ s) as a subgraph, exhaustively with pruning.
///
/// Intended for small r, s; the backtracking node budget turns oversized
/// queries into an explicit resource error instead of an open-ended run.
pub fn contains_complete_bipartite(
    g: &Graph,
    r: usize,
    s: usize,
) -> Result<Option<BipartiteWitness>, BipartiteBudgetError> {
    assert!(r >= 1 && r <= s, "require 1 <= r <= s");
    if r + s > g.vertex_count() {
        return Ok(None);
    }
    let adj = g.adjacency();
    let mut nodes = 0u64;
    let mut left: Vec<usize> = Vec::with_capacity(r);

    fn extend(
        adj: &[Vec<usize>],
        r: usize,
        s: usize,
        left: &mut Vec<usize>,
        common: &[usize],
        start: usize,
        nodes: &mut u64,
    ) -> Result<Option<BipartiteWitness>, BipartiteBudgetError> {
        *nodes += 1;
        if *nodes > BIPARTITE_NODE_BUDGET {
            return Err(BipartiteBudgetError {
                nodes_visited: *nodes,
            });
        }
        if left.len() == r {
            let right: Vec<usize> = common
                .iter()
                .copied()
                .filter(|c| !left.contains(c))
                .take(s)
                .collect();
            if right.len() == s {
                return Ok(Some(BipartiteWitness {
                    left: left.clone(),
                    right,
                }));
            }
            return Ok(None);
        }
        for v in start..adj.len() {
            if adj[v].len() < s {
                continue;
            }
            let next_common = if left.is_empty() {
                adj[v].clone()
            } else {
                sorted_intersection(common, &adj[v])
            };
            // Everything already picked for the left side may still sit in
            // the common list; discount it when checking viability.
            let usable = next_common.iter().filter(|c| !left.contains(c)).count();
            if usable < s {
                continue;
            }
            left.push(v);
            let found = extend(adj, r, s, left, &next_common, v + 1, nodes)?;
            left.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    extend(&adj, r, s, &mut left, &[], 0, &mut nodes)
}

/// G_P(x) together with its vertex labels (the empty triangles at x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub graph: Graph,
    /// Vertex v of `graph` is the empty triangle `labels[v]`, lexicographic.
    pub labels: Vec<Triangle>,
    pub apex: usize,
}

impl IncidenceGraph {
    pub fn label(&self, v: usize) -> Triangle {
        self.labels[v]
    }
}

/// Precondition violations of [`edge_predicate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgePredicateError {
    IdenticalTriangles,
    ApexNotShared,
}

impl fmt::Display for EdgePredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgePredicateError::IdenticalTriangles => {
                write!(f, "edge predicate requires two distinct triangles")
            }
            EdgePredicateError::ApexNotShared => {
                write!(f, "edge predicate requires both triangles incident on the apex")
            }
        }
    }
}

impl core::error::Error for EdgePredicateError {}

/// The G_P(x) adjacency test for two distinct empty triangles at x: they
/// share an edge, are area disjoint, and their angles at x sum past 180°.
///
/// Two distinct triangles with common vertex x can only share an edge
/// through x (a shared edge avoiding x would force a common third vertex),
/// so the test reduces to: exactly one more common vertex a, the two
/// remaining vertices b, c strictly on opposite sides of line (x, a), and
/// the exact angle-sum sign. Callers guarantee both triangles are empty.
pub fn edge_predicate(
    s: &PointSet,
    x: usize,
    t1: Triangle,
    t2: Triangle,
) -> Result<bool, EdgePredicateError> {
    if t1 == t2 {
        return Err(EdgePredicateError::IdenticalTriangles);
    }
    if !t1.contains(x) || !t2.contains(x) {
        return Err(EdgePredicateError::ApexNotShared);
    }
    let common: Vec<usize> = t1
        .indices()
        .into_iter()
        .filter(|&v| t2.contains(v))
        .collect();
    debug_assert!(common.contains(&x));
    if common.len() != 2 {
        debug_assert_eq!(common.len(), 1, "three shared vertices mean equal triangles");
        return Ok(false);
    }
    let a = if common[0] == x { common[1] } else { common[0] };
    let b = t1.indices().into_iter().find(|&v| v != x && v != a).unwrap();
    let c = t2.indices().into_iter().find(|&v| v != x && v != a).unwrap();

    // Area disjointness: b and c strictly on opposite sides of line (x, a).
    if orient(s[x], s[a], s[b]) == orient(s[x], s[a], s[c]) {
        return Ok(false);
    }
    let exceeds = angle_sum_exceeds_pi(s[x], s[a], s[b], s[c])
        .expect("validated point set admits no zero angle expression");
    Ok(exceeds)
}

/// Builds G_P(x): vertices are the empty triangles incident on x in
/// lexicographic label order; edges are all pairs passing [`edge_predicate`].
pub fn build_incidence_graph(s: &PointSet, x: usize) -> IncidenceGraph {
    incidence_graph_with_empties(s, x, &enumerate_empty_fast(s))
}

/// [`build_incidence_graph`] over an already-enumerated empty-triangle set,
/// so callers sweeping every apex enumerate only once.
pub fn incidence_graph_with_empties(
    s: &PointSet,
    x: usize,
    empties: &EmptyTriangleSet,
) -> IncidenceGraph {
    assert!(x < s.len(), "apex index out of range");
    let labels: Vec<Triangle> = empties.iter().filter(|t| t.contains(x)).copied().collect();
    let mut graph = Graph::new(labels.len());
    for u in 0..labels.len() {
        for w in (u + 1)..labels.len() {
            let adjacent = edge_predicate(s, x, labels[u], labels[w])
                .expect("labels are distinct empty triangles at x");
            if adjacent {
                graph.add_edge(u, w);
            }
        }
    }
    IncidenceGraph {
        graph,
        labels,
        apex: x,
    }
}
