//! Geometric realizability of small graphs as G_P(x): exact isomorphism
//! testing, the counting-based infeasibility checker, and a seeded randomized
//! search for realizing point sets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extremal::{build_behrend_graph, BehrendSpec};
use crate::geom::{orient, point_in_triangle, Orientation, Point, PointSet, TrianglePosition};
use crate::graph::{count_triangles, incidence_graph_with_empties, Graph};
use crate::triangles::{enumerate_empty_fast, Triangle};

/// The 9-vertex Paley graph, constructed as the Behrend graph G(3, {1, 2}).
pub fn paley9() -> Graph {
    let spec = BehrendSpec::new(3, [1, 2].into_iter().collect())
        .expect("{1, 2} is 3-AP-free mod 3");
    build_behrend_graph(&spec)
}

/// Isomorphism testing is exact only for small graphs.
pub const MAX_ISOMORPHISM_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsomorphismSizeError {
    pub n: usize,
}

impl fmt::Display for IsomorphismSizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "isomorphism test supports at most {MAX_ISOMORPHISM_N} vertices (got {})",
            self.n
        )
    }
}

impl core::error::Error for IsomorphismSizeError {}

/// Backtracking isomorphism test; returns a vertex bijection g -> h if the
/// graphs are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, IsomorphismSizeError> {
    let n = g.vertex_count();
    if n > MAX_ISOMORPHISM_N || h.vertex_count() > MAX_ISOMORPHISM_N {
        return Err(IsomorphismSizeError {
            n: n.max(h.vertex_count()),
        });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }

    let mask = |gr: &Graph| -> Vec<u32> {
        let mut m = alloc::vec![0u32; n];
        for (a, b) in gr.edges() {
            m[a] |= 1 << b;
            m[b] |= 1 << a;
        }
        m
    };
    let gm = mask(g);
    let hm = mask(h);

    let mut g_degrees: Vec<usize> = gm.iter().map(|m| m.count_ones() as usize).collect();
    let h_degrees: Vec<usize> = hm.iter().map(|m| m.count_ones() as usize).collect();
    {
        let mut a = g_degrees.clone();
        let mut b = h_degrees.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }

    // Map high-degree vertices first; they are the most constrained.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g_degrees[v], v));
    g_degrees.truncate(n);

    fn assign(
        pos: usize,
        order: &[usize],
        gm: &[u32],
        hm: &[u32],
        mapping: &mut [usize],
        used: &mut u32,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let gv = order[pos];
        for hv in 0..order.len() {
            if *used & (1 << hv) != 0 {
                continue;
            }
            if gm[gv].count_ones() != hm[hv].count_ones() {
                continue;
            }
            let mut consistent = true;
            for &gu in &order[..pos] {
                let g_adj = gm[gv] & (1 << gu) != 0;
                let h_adj = hm[hv] & (1 << mapping[gu]) != 0;
                if g_adj != h_adj {
                    consistent = false;
                    break;
                }
            }
            if !consistent {
                continue;
            }
            mapping[gv] = hv;
            *used |= 1 << hv;
            if assign(pos + 1, order, gm, hm, mapping, used) {
                return true;
            }
            *used &= !(1 << hv);
        }
        false
    }

    let mut mapping = alloc::vec![0usize; n];
    let mut used = 0u32;
    if assign(0, &order, &gm, &hm, &mut mapping, &mut used) {
        Ok(Some(mapping))
    } else {
        Ok(None)
    }
}

/// Outcome of the counting-based feasibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    InfeasibleByCounting,
    NotRefuted,
}

/// The counting trace behind a feasibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub status: FeasibilityStatus,
    /// Vertex count of the target (= V_P(x) of any realization).
    pub vertices: u64,
    /// Triangle count of the target (= I_P(x) of any realization).
    pub triangles: u64,
    pub detail: String,
}

/// Necessary counting conditions for a graph to be some G_P(x).
///
/// In a realization with v = |V(target)| and t triangles, every edge of an
/// interior triangle generates a distinct empty triangle at x, so the
/// interior triangles span at most v distinct edges; no such edge lies in 3
/// interior triangles, hence 3t <= 2v. Exact equality would force every edge
/// into exactly two triangles, making all three edges of some triangle
/// shared, which is impossible; the equality case for t > 0 is therefore
/// infeasible as well (generalized from the Prop-1 argument for v=9, t=6).
pub fn counting_feasibility(target: &Graph) -> FeasibilityVerdict {
    let v = target.vertex_count() as u64;
    let t = count_triangles(target);
    let (status, detail) = if 3 * t > 2 * v {
        (
            FeasibilityStatus::InfeasibleByCounting,
            format!("3t = {} exceeds 2v = {}", 3 * t, 2 * v),
        )
    } else if 3 * t == 2 * v && t > 0 {
        (
            FeasibilityStatus::InfeasibleByCounting,
            format!(
                "3t = 2v = {}: every interior-triangle edge would lie in exactly 2 \
                 triangles, forcing a triangle with all three edges shared \
                 (generalized from the Prop-1 argument)",
                3 * t
            ),
        )
    } else {
        (
            FeasibilityStatus::NotRefuted,
            format!("3t = {} <= 2v = {} with slack", 3 * t, 2 * v),
        )
    };
    FeasibilityVerdict {
        status,
        vertices: v,
        triangles: t,
        detail,
    }
}

/// Parameters of a randomized realization search.
#[derive(Debug, Clone)]
pub struct RealizationTask {
    pub target: Graph,
    /// Points are sampled from [-grid_bound, grid_bound]².
    pub grid_bound: i64,
    /// Largest candidate point-set size.
    pub point_budget: usize,
    /// Number of (P, x) candidate configurations to examine.
    pub trial_budget: u64,
    pub seed: u64,
}

pub const DEFAULT_GRID_BOUND: i64 = 64;
pub const DEFAULT_POINT_BUDGET: usize = 12;
pub const DEFAULT_TRIAL_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SEARCH_SEED: u64 = 20240917;

impl RealizationTask {
    pub fn new(target: Graph) -> Self {
        RealizationTask {
            target,
            grid_bound: DEFAULT_GRID_BOUND,
            point_budget: DEFAULT_POINT_BUDGET,
            trial_budget: DEFAULT_TRIAL_BUDGET,
            seed: DEFAULT_SEARCH_SEED,
        }
    }
}

/// A verified realization: `build_incidence_graph(points, apex)` is
/// isomorphic to the task's target.
#[derive(Debug, Clone)]
pub struct Realization {
    pub points: PointSet,
    pub apex: usize,
}

fn sample_general_position(
    rng: &mut ChaCha8Rng,
    n: usize,
    grid_bound: i64,
) -> Option<Vec<Point>> {
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut rejects = 0u32;
    while points.len() < n {
        let p = Point::new(
            rng.gen_range(-grid_bound..=grid_bound),
            rng.gen_range(-grid_bound..=grid_bound),
        );
        let mut ok = !points.contains(&p);
        if ok {
            'outer: for i in 0..points.len() {
                for j in (i + 1)..points.len() {
                    if orient(points[i], points[j], p) == Orientation::Collinear {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            points.push(p);
        } else {
            rejects += 1;
            if rejects > 1000 {
                return None;
            }
        }
    }
    Some(points)
}

/// Seeded randomized search for a point set P and apex x with G_P(x)
/// isomorphic to the task target. A returned witness has been re-verified by
/// rebuilding the graph from scratch; `None` after budget exhaustion is
/// evidence, not proof, of non-realizability.
///
/// The budget counts candidate (P, x) configurations; candidate set sizes
/// cycle through 3..=point_budget.
pub fn search_realization(
    task: &RealizationTask,
) -> Result<Option<Realization>, IsomorphismSizeError> {
    let tn = task.target.vertex_count();
    if tn > MAX_ISOMORPHISM_N {
        return Err(IsomorphismSizeError { n: tn });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(task.seed);
    let sizes = if task.point_budget >= 4 {
        task.point_budget - 2
    } else {
        1
    };
    let mut configs = 0u64;
    let mut set_index = 0u64;
    while configs < task.trial_budget {
        let n = 3 + (set_index % sizes as u64) as usize;
        set_index += 1;
        let Some(points) = sample_general_position(&mut rng, n, task.grid_bound) else {
            // A failed sample still charges its would-be apex count so a
            // too-small grid cannot stall the budget.
            configs += n as u64;
            continue;
        };
        let s = PointSet::new(points).expect("sampler enforces general position");
        let empties = enumerate_empty_fast(&s);
        for x in 0..n {
            configs += 1;
            if empties.incident_count(x) != tn {
                if configs >= task.trial_budget {
                    break;
                }
                continue;
            }
            let ig = incidence_graph_with_empties(&s, x, &empties);
            if ig.graph.edge_count() == task.target.edge_count()
                && is_isomorphic(&ig.graph, &task.target)?.is_some()
            {
                // Re-verify from scratch before returning the witness.
                let rebuilt = crate::graph::build_incidence_graph(&s, x);
                if is_isomorphic(&rebuilt.graph, &task.target)?.is_some() {
                    return Ok(Some(Realization { points: s, apex: x }));
                }
            }
            if configs >= task.trial_budget {
                break;
            }
        }
    }
    Ok(None)
}

/// The I_P(x) triangles: triangles of P \ {x} whose interior contains x and
/// nothing else, expressed in the index space of the full set.
pub fn interior_triangles(s: &PointSet, x: usize) -> Vec<Triangle> {
    let reduced = s.without(x);
    let xp = s[x];
    enumerate_empty_fast(&reduced)
        .iter()
        .filter(|t| {
            let [a, b, c] = t.points(&reduced);
            point_in_triangle(a, b, c, xp)
                .expect("validated point set admits no boundary case")
                == TrianglePosition::Inside
        })
        .map(|t| t.reindex_with(x))
        .collect()
}

/// Edge-multiplicity structure of the interior triangles at x, with the two
/// sharing constraints any realization must satisfy: no edge lies in 3 of
/// them, and no triangle has all three edges shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorSharingReport {
    pub interior_triangles: Vec<Triangle>,
    pub edge_multiplicities: BTreeMap<(usize, usize), u64>,
    /// Edges of interior triangles lying in 3 or more of them.
    pub overshared_edges: Vec<((usize, usize), u64)>,
    /// Interior triangles all three of whose edges have multiplicity >= 2.
    pub fully_shared_triangles: Vec<Triangle>,
}

impl InteriorSharingReport {
    pub fn ok(&self) -> bool {
        self.overshared_edges.is_empty() && self.fully_shared_triangles.is_empty()
    }
}

pub fn check_interior_edge_sharing(s: &PointSet, x: usize) -> InteriorSharingReport {
    let tris = interior_triangles(s, x);
    let mut mult: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for t in &tris {
        let [a, b, c] = t.indices();
        for e in [(a, b), (a, c), (b, c)] {
            *mult.entry(e).or_insert(0) += 1;
        }
    }
    let overshared: Vec<((usize, usize), u64)> = mult
        .iter()
        .filter(|&(_, &m)| m >= 3)
        .map(|(&e, &m)| (e, m))
        .collect();
    let fully_shared: Vec<Triangle> = tris
        .iter()
        .copied()
        .filter(|t| {
            let [a, b, c] = t.indices();
            [(a, b), (a, c), (b, c)]
                .into_iter()
                .all(|e| mult.get(&e).copied().unwrap_or(0) >= 2)
        })
        .collect();
    InteriorSharingReport {
        interior_triangles: tris,
        edge_multiplicities: mult,
        overshared_edges: overshared,
        fully_shared_triangles: fully_shared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// The figure's 9-vertex Paley graph, transcribed independently as the
    /// 3x3 rook's graph: vertices r*3+c, adjacency = same row or column.
    fn paley9_figure_edges() -> Graph {
        let mut g = Graph::new(9);
        for r in 0..3 {
            for c1 in 0..3 {
                for c2 in (c1 + 1)..3 {
                    g.add_edge(3 * r + c1, 3 * r + c2);
                    g.add_edge(3 * c1 + r, 3 * c2 + r);
                }
            }
        }
        g
    }

    #[test]
    fn paley9_counts() {
        let g = paley9();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(count_triangles(&g), 6);
    }

    #[test]
    fn behrend_construction_matches_figure_graph() {
        let a = paley9();
        let b = paley9_figure_edges();
        assert_eq!(b.edge_count(), 18);
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn isomorphic_cycles() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let permuted = Graph::from_edges(5, [(2, 4), (4, 1), (1, 3), (3, 0), (2, 0)]);
        let mapping = is_isomorphic(&c5, &permuted).unwrap().unwrap();
        for (a, b) in c5.edges() {
            assert!(permuted.has_edge(mapping[a], mapping[b]));
        }
    }

    #[test]
    fn triangle_vs_path_not_isomorphic() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(is_isomorphic(&k3, &p3).unwrap(), None);
    }

    #[test]
    fn oversized_isomorphism_is_error() {
        let g = Graph::new(17);
        assert!(is_isomorphic(&g, &g).is_err());
    }

    #[test]
    fn paley9_is_infeasible_by_counting() {
        let verdict = counting_feasibility(&paley9());
        assert_eq!(verdict.status, FeasibilityStatus::InfeasibleByCounting);
        assert_eq!(verdict.vertices, 9);
        assert_eq!(verdict.triangles, 6);
    }

    #[test]
    fn k3_is_not_refuted() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let verdict = counting_feasibility(&k3);
        assert_eq!(verdict.status, FeasibilityStatus::NotRefuted);
    }

    #[test]
    fn dense_hypothetical_is_infeasible() {
        // v = 4, t = 4 (K4): 12 > 8.
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let verdict = counting_feasibility(&k4);
        assert_eq!(verdict.status, FeasibilityStatus::InfeasibleByCounting);
    }

    #[test]
    fn search_finds_three_cycle() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let mut task = RealizationTask::new(k3);
        task.grid_bound = 8;
        task.point_budget = 5;
        task.trial_budget = 50_000;
        let found = search_realization(&task).unwrap().expect("3-cycle is realizable");
        let ig = crate::graph::build_incidence_graph(&found.points, found.apex);
        assert!(is_isomorphic(&ig.graph, &task.target).unwrap().is_some());
    }

    #[test]
    fn search_finds_single_vertex() {
        let trivial = Graph::new(1);
        let mut task = RealizationTask::new(trivial);
        task.trial_budget = 1_000;
        let found = search_realization(&task).unwrap().expect("trivially realizable");
        assert_eq!(
            crate::graph::build_incidence_graph(&found.points, found.apex)
                .graph
                .vertex_count(),
            1
        );
    }

    #[test]
    fn interior_sharing_on_inner_apex_set() {
        let s = PointSet::new(vec![
            Point::new(1, 1),
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(0, 4),
        ])
        .unwrap();
        let report = check_interior_edge_sharing(&s, 0);
        assert!(report.ok());
        assert_eq!(report.interior_triangles, vec![Triangle::new(1, 2, 3)]);
        assert!(report.edge_multiplicities.values().all(|&m| m == 1));
    }
}
