//! Behrend graphs from 3-AP-free residue sets and exhaustive computation of
//! H(n, K₃, K₄∖{e}), the maximum triangle count of a kite-free graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

/// Trial-division primality test; p stays desk-scale here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Finds one mod-p 3-term arithmetic progression among distinct elements of
/// `a`, returned as (a₁, mid, a₃) with a₁ + a₃ ≡ 2·mid, or None if AP-free.
pub fn find_ap(p: u64, a: &BTreeSet<u64>) -> Option<(u64, u64, u64)> {
    let elems: Vec<u64> = a.iter().copied().collect();
    for (i, &x) in elems.iter().enumerate() {
        for &z in &elems[i + 1..] {
            for &y in &elems {
                if y != x && y != z && (x + z) % p == (2 * y) % p {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_ap_free(p: u64, a: &BTreeSet<u64>) -> bool {
    find_ap(p, a).is_none()
}

/// Why a (p, A) pair is not a valid Behrend parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BehrendSpecError {
    NotOddPrime { p: u64 },
    ResidueOutOfRange { value: u64 },
    HasArithmeticProgression { a1: u64, mid: u64, a3: u64 },
}

impl fmt::Display for BehrendSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BehrendSpecError::NotOddPrime { p } => write!(f, "{p} is not an odd prime"),
            BehrendSpecError::ResidueOutOfRange { value } => {
                write!(f, "residue {value} is not in 0..p")
            }
            BehrendSpecError::HasArithmeticProgression { a1, mid, a3 } => {
                write!(f, "set has the 3-term progression ({a1}, {mid}, {a3}) mod p")
            }
        }
    }
}

impl core::error::Error for BehrendSpecError {}

/// Parameters of a Behrend graph: an odd prime p and a 3-AP-free set of
/// residues mod p. Validity is established at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehrendSpec {
    p: u64,
    a: BTreeSet<u64>,
}

impl BehrendSpec {
    pub fn new(p: u64, a: BTreeSet<u64>) -> Result<Self, BehrendSpecError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(BehrendSpecError::NotOddPrime { p });
        }
        if let Some(&value) = a.iter().find(|&&v| v >= p) {
            return Err(BehrendSpecError::ResidueOutOfRange { value });
        }
        if let Some((a1, mid, a3)) = find_ap(p, &a) {
            return Err(BehrendSpecError::HasArithmeticProgression { a1, mid, a3 });
        }
        Ok(BehrendSpec { p, a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.a
    }
}

/// Builds a 3-AP-free set greedily: residues 0..p in order, keeping each one
/// that closes no mod-p progression with the set so far.
pub fn greedy_ap_free(p: u64) -> BehrendSpec {
    assert!(p >= 3 && p % 2 == 1 && is_prime(p), "p must be an odd prime");
    let inv2 = (p + 1) / 2;
    let mut a: BTreeSet<u64> = BTreeSet::new();
    for r in 0..p {
        let mut ok = true;
        for &x in &a {
            // r as the middle, r as an endpoint with the middle solved for,
            // or x as the middle; distinctness is automatic because r is not
            // yet in the set.
            let r_middle = (2 * r % p + p - x) % p;
            let solved_middle = ((x + r) % p * inv2) % p;
            let x_middle = (2 * x % p + p - r) % p;
            if a.contains(&r_middle) || a.contains(&solved_middle) || a.contains(&x_middle) {
                ok = false;
                break;
            }
        }
        if ok {
            a.insert(r);
        }
    }
    BehrendSpec::new(p, a).expect("greedy construction maintains AP-freeness")
}

/// The tripartite parts of a Behrend graph on vertices 0..3p:
/// X = 0..p, Y = p..2p, Z = 2p..3p.
pub fn behrend_parts(p: u64) -> [core::ops::Range<usize>; 3] {
    let p = p as usize;
    [0..p, p..2 * p, 2 * p..3 * p]
}

/// The Behrend graph G(p, A): for each residue z and each a in A, the
/// triangle (X_z, Y_{z+a}, Z_{z+2a}) taken mod p. 3p vertices, 3|A|p edges,
/// and when A is AP-free every edge lies in exactly one triangle.
pub fn build_behrend_graph(spec: &BehrendSpec) -> Graph {
    let p = spec.p();
    let mut g = Graph::new(3 * p as usize);
    for z in 0..p {
        for &a in spec.residues() {
            let x = z as usize;
            let y = (p + (z + a) % p) as usize;
            let zz = (2 * p + (z + 2 * a) % p) as usize;
            g.add_edge(x, y);
            g.add_edge(y, zz);
            g.add_edge(x, zz);
        }
    }
    g
}

/// Per-edge triangle multiplicities of a graph.
///
/// `pass` holds iff every edge lies in exactly one triangle (the
/// Ruzsa–Szemerédi property); `kite_free` iff every edge lies in at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueTriangleReport {
    pub multiplicities: BTreeMap<(usize, usize), u64>,
    pub edges_in_zero: usize,
    pub edges_in_one: usize,
    pub edges_in_more: usize,
}

impl UniqueTriangleReport {
    pub fn pass(&self) -> bool {
        self.edges_in_zero == 0 && self.edges_in_more == 0
    }

    pub fn kite_free(&self) -> bool {
        self.edges_in_more == 0
    }
}

pub fn verify_unique_triangle(g: &Graph) -> UniqueTriangleReport {
    let adj = g.adjacency();
    let mut multiplicities = BTreeMap::new();
    let (mut zero, mut one, mut more) = (0, 0, 0);
    for (a, b) in g.edges() {
        let mut m = 0u64;
        let (mut i, mut j) = (0, 0);
        let (na, nb) = (&adj[a], &adj[b]);
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    m += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        match m {
            0 => zero += 1,
            1 => one += 1,
            _ => more += 1,
        }
        multiplicities.insert((a, b), m);
    }
    UniqueTriangleReport {
        multiplicities,
        edges_in_zero: zero,
        edges_in_one: one,
        edges_in_more: more,
    }
}

/// Largest n for which [`max_triangles_kite_free`] runs exhaustively.
pub const MAX_EXHAUSTIVE_N: usize = 12;

/// The exact maximum H(n) with a certifying witness graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub h: u64,
    pub witness: Graph,
}

/// Requested n is beyond the guaranteed exhaustive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimitError {
    pub n: usize,
    pub max: usize,
}

impl fmt::Display for SearchLimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exhaustive search supports n <= {} (requested n = {})",
            self.max, self.n
        )
    }
}

impl core::error::Error for SearchLimitError {}

struct KiteFreeSearch {
    n: usize,
    dmax: usize,
    /// Adjacency as per-vertex bitmasks (n <= 8 fits in u8, use u16 headroom).
    adj: [u16; MAX_EXHAUSTIVE_N],
    degree: [usize; MAX_EXHAUSTIVE_N],
    /// Triangle multiplicity per edge slot (i * n + j).
    mult: [u8; MAX_EXHAUSTIVE_N * MAX_EXHAUSTIVE_N],
    /// Edges present with multiplicity zero: capacity for future triangles.
    free_edges: u64,
    triangles: u64,
    slots: Vec<(usize, usize)>,
    best: u64,
    best_edges: Vec<(usize, usize)>,
}

impl KiteFreeSearch {
    fn common(&self, i: usize, j: usize) -> u16 {
        self.adj[i] & self.adj[j]
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj[i] & (1 << j) != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn dfs(&mut self, slot: usize) {
        let undecided = (self.slots.len() - slot) as u64;
        // Every future triangle consumes three currently-free or undecided
        // edges (kite-freeness makes triangles edge-disjoint), so this bound
        // is sound; only strict improvements matter.
        if self.triangles + (self.free_edges + undecided) / 3 <= self.best {
            return;
        }
        if slot == self.slots.len() {
            if self.triangles > self.best {
                self.best = self.triangles;
                self.best_edges = self.edges();
            }
            return;
        }
        let (i, j) = self.slots[slot];

        // Branch 1: include edge (i, j) if degrees stay within dmax and no
        // edge would end up in two triangles.
        if self.degree[i] < self.dmax && self.degree[j] < self.dmax {
            let common = self.common(i, j);
            let c = common.count_ones();
            if c <= 1 {
                let mut legal = true;
                let mut w = usize::MAX;
                if c == 1 {
                    w = common.trailing_zeros() as usize;
                    legal = self.mult[i * self.n + w] == 0 && self.mult[j * self.n + w] == 0;
                }
                if legal {
                    self.adj[i] |= 1 << j;
                    self.adj[j] |= 1 << i;
                    self.degree[i] += 1;
                    self.degree[j] += 1;
                    if c == 1 {
                        self.mult[i * self.n + j] = 1;
                        self.mult[j * self.n + i] = 1;
                        self.mult[i * self.n + w] = 1;
                        self.mult[w * self.n + i] = 1;
                        self.mult[j * self.n + w] = 1;
                        self.mult[w * self.n + j] = 1;
                        // Edges (i,w) and (j,w) were free; (i,j) never was.
                        self.free_edges -= 2;
                        self.triangles += 1;
                    } else {
                        self.free_edges += 1;
                    }

                    self.dfs(slot + 1);

                    self.adj[i] &= !(1 << j);
                    self.adj[j] &= !(1 << i);
                    self.degree[i] -= 1;
                    self.degree[j] -= 1;
                    if c == 1 {
                        self.mult[i * self.n + j] = 0;
                        self.mult[j * self.n + i] = 0;
                        self.mult[i * self.n + w] = 0;
                        self.mult[w * self.n + i] = 0;
                        self.mult[j * self.n + w] = 0;
                        self.mult[w * self.n + j] = 0;
                        self.free_edges += 2;
                        self.triangles -= 1;
                    } else {
                        self.free_edges -= 1;
                    }
                }
            }
        }

        // Branch 2: exclude edge (i, j).
        self.dfs(slot + 1);
    }
}

/// Exact H(n, K₃, K₄∖{e}) by exhaustive search with isomorph pruning.
///
/// Canonical form: vertex 0 has maximum degree d and its neighborhood is the
/// prefix {1..d}; every isomorphism class contains such a labeling, so the
/// search over the remaining edge slots (with all degrees capped at d) is
/// exhaustive. For n < 3 the maximum is 0 by convention.
pub fn max_triangles_kite_free(n: usize) -> Result<ExtremalRecord, SearchLimitError> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(SearchLimitError {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let mut best: u64 = 0;
    let mut best_edges: Vec<(usize, usize)> = Vec::new();

    if n >= 2 {
        for dmax in 0..n {
            let mut search = KiteFreeSearch {
                n,
                dmax,
                adj: [0; MAX_EXHAUSTIVE_N],
                degree: [0; MAX_EXHAUSTIVE_N],
                mult: [0; MAX_EXHAUSTIVE_N * MAX_EXHAUSTIVE_N],
                free_edges: 0,
                triangles: 0,
                slots: Vec::new(),
                best,
                best_edges: Vec::new(),
            };
            // Force N(0) = {1..dmax}.
            for v in 1..=dmax {
                search.adj[0] |= 1 << v;
                search.adj[v] |= 1;
                search.degree[0] += 1;
                search.degree[v] += 1;
            }
            search.free_edges = dmax as u64;
            for i in 1..n {
                for j in (i + 1)..n {
                    search.slots.push((i, j));
                }
            }
            search.dfs(0);
            if search.best > best {
                best = search.best;
                best_edges = search.best_edges;
            }
        }
    }

    Ok(ExtremalRecord {
        n,
        h: best,
        witness: Graph::from_edges(n, best_edges),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_triangles, find_kites};
    use alloc::vec;

    #[test]
    fn greedy_p3() {
        let spec = greedy_ap_free(3);
        assert_eq!(
            spec.residues().iter().copied().collect::<Vec<_>>(),
            vec![0, 1]
        );
    }

    #[test]
    fn greedy_p7() {
        let spec = greedy_ap_free(7);
        assert_eq!(
            spec.residues().iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 3]
        );
    }

    #[test]
    fn fig5_parameter_set_is_ap_free() {
        let a: BTreeSet<u64> = [1, 2].into_iter().collect();
        assert!(is_ap_free(3, &a));
        assert!(BehrendSpec::new(3, a).is_ok());
    }

    #[test]
    fn full_set_has_progression() {
        let a: BTreeSet<u64> = [0, 1, 2].into_iter().collect();
        let (a1, mid, a3) = find_ap(3, &a).expect("0,1,2 mod 3 contains a progression");
        assert!(a1 != mid && mid != a3 && a1 != a3);
        assert_eq!((a1 + a3) % 3, (2 * mid) % 3);
    }

    #[test]
    fn behrend_p3_a12_matches_figure_counts() {
        let spec = BehrendSpec::new(3, [1, 2].into_iter().collect()).unwrap();
        let g = build_behrend_graph(&spec);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(count_triangles(&g), 6);
        assert!(verify_unique_triangle(&g).pass());
    }

    #[test]
    fn behrend_p3_single_residue() {
        let spec = BehrendSpec::new(3, [1].into_iter().collect()).unwrap();
        let g = build_behrend_graph(&spec);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(count_triangles(&g), 3);
        assert!(find_kites(&g).is_empty());
    }

    #[test]
    fn behrend_p7_greedy() {
        let spec = greedy_ap_free(7);
        let g = build_behrend_graph(&spec);
        assert_eq!(g.vertex_count(), 21);
        assert_eq!(g.edge_count(), 63);
        assert_eq!(count_triangles(&g), 21);
        assert!(verify_unique_triangle(&g).pass());
    }

    #[test]
    fn unique_triangle_fails_on_k4() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let report = verify_unique_triangle(&k4);
        assert!(!report.pass());
        assert!(!report.kite_free());
        assert_eq!(report.edges_in_more, 6);
    }

    #[test]
    fn unique_triangle_passes_on_c3() {
        let c3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert!(verify_unique_triangle(&c3).pass());
    }

    #[test]
    fn h_small_values() {
        assert_eq!(max_triangles_kite_free(2).unwrap().h, 0);
        assert_eq!(max_triangles_kite_free(3).unwrap().h, 1);
        assert_eq!(max_triangles_kite_free(4).unwrap().h, 1);
        assert_eq!(max_triangles_kite_free(5).unwrap().h, 2);
    }

    #[test]
    fn h_witnesses_are_kite_free_and_tight() {
        for n in 0..=6 {
            let rec = max_triangles_kite_free(n).unwrap();
            assert_eq!(rec.witness.vertex_count(), n);
            assert!(find_kites(&rec.witness).is_empty());
            assert_eq!(count_triangles(&rec.witness), rec.h);
        }
    }

    #[test]
    fn h_rejects_oversized_n() {
        assert!(max_triangles_kite_free(100).is_err());
    }

    #[test]
    fn h_monotone() {
        let mut prev = 0;
        for n in 0..=MAX_EXHAUSTIVE_N {
            let h = max_triangles_kite_free(n).unwrap().h;
            assert!(h >= prev);
            prev = h;
        }
    }
}
