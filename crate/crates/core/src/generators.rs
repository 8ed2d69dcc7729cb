//! Point-configuration generators: the three-chain lower-bound family, the
//! two-chain bipartite family, and random / convex fixtures.
//!
//! Constructions are rounded to the integer grid and then validated
//! post-hoc: the floating-point placement is only a guess, every structural
//! property is re-established with exact predicates, and the radius (or
//! shape variant) escalates until validation passes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{point_in_triangle, Point, PointSet, TrianglePosition};
use crate::graph::edge_predicate;
use crate::triangles::{counts_report_with, interior_multiset, Enumerator, Triangle};

/// Binomial coefficient; arguments stay desk-scale so u64 suffices.
pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Which construction produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Three convex chains of length l around a center apex; n = 3l + 1.
    LowerBound { l: usize },
    /// Two convex chains of lengths r and s facing the shared edge (x, x').
    Bipartite { r: usize, s: usize },
    /// Uniform samples on the integer grid, general position enforced.
    Random { n: usize, seed: u64 },
    /// Points in strictly convex position.
    Convex { n: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::LowerBound { l } => write!(f, "lower-bound L={l}"),
            Family::Bipartite { r, s } => write!(f, "bipartite r={r} s={s}"),
            Family::Random { n, seed } => write!(f, "random n={n} seed={seed}"),
            Family::Convex { n } => write!(f, "convex n={n}"),
        }
    }
}

/// A generated point set with its designated apex (and the second apex x'
/// for the bipartite family).
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub points: PointSet,
    pub apex: usize,
    pub apex2: Option<usize>,
    pub family: Family,
}

/// Construction failed even after parameter escalation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorError {
    pub family: Family,
    pub reason: String,
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "failed to generate {}: {}", self.family, self.reason)
    }
}

impl core::error::Error for GeneratorError {}

/// Grid side for [`gen_random`]: coordinates are drawn from 0..2^16.
pub const RANDOM_GRID_SIDE: i64 = 1 << 16;

const DEG: f64 = core::f64::consts::PI / 180.0;

fn circle_point(radius: f64, angle_deg: f64) -> Point {
    let x = libm::round(radius * libm::cos(angle_deg * DEG));
    let y = libm::round(radius * libm::sin(angle_deg * DEG));
    Point::new(x as i64, y as i64)
}

/// Half-width, in degrees, of each chain arc of the lower-bound family.
/// Narrow arcs keep two-chain triples from capturing the center while the
/// 120-degree spacing makes every one-per-chain triple contain it.
const CHAIN_HALF_WIDTH_DEG: f64 = 8.0;

const LOWER_BOUND_RADII: [f64; 4] = [200_000.0, 400_000.0, 800_000.0, 1_000_000.0];

const APEX_PERTURBATIONS: [(i64, i64); 8] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, 1),
    (-1, 1),
    (2, 1),
];

fn lower_bound_points(l: usize, radius: f64, apex: (i64, i64)) -> Vec<Point> {
    let mut points = Vec::with_capacity(3 * l + 1);
    points.push(Point::new(apex.0, apex.1));
    for chain in 0..3 {
        let base = 90.0 + 120.0 * chain as f64;
        for k in 0..l {
            let offset = if l == 1 {
                0.0
            } else {
                -CHAIN_HALF_WIDTH_DEG + 2.0 * CHAIN_HALF_WIDTH_DEG * k as f64 / (l - 1) as f64
            };
            points.push(circle_point(radius, base + offset));
        }
    }
    points
}

/// Exact structural check of a lower-bound candidate: containment pattern of
/// the apex plus all four closed-form counts.
fn validate_lower_bound(s: &PointSet, l: usize) -> Result<(), String> {
    let n = 3 * l;
    let x = s[0];
    let chain_of = |idx: usize| (idx - 1) / l;
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let one_per_chain =
                    chain_of(i) != chain_of(j) && chain_of(j) != chain_of(k) && chain_of(i) != chain_of(k);
                let inside = point_in_triangle(s[i], s[j], s[k], x)
                    .map_err(|e| format!("predicate failure on triple ({i},{j},{k}): {e}"))?
                    == TrianglePosition::Inside;
                if one_per_chain && !inside {
                    return Err(format!("one-per-chain triple ({i},{j},{k}) misses the apex"));
                }
                if !one_per_chain && inside {
                    return Err(format!("two-chain triple ({i},{j},{k}) captures the apex"));
                }
            }
        }
    }
    let rep = counts_report_with(s, 0, Enumerator::Fast).map_err(|e| format!("{e}"))?;
    let lu = l as u64;
    let checks = [
        ("V", rep.v, choose(3 * lu, 2)),
        ("I", rep.i, lu * lu * lu),
        ("U", rep.u, 3 * choose(lu, 3) + 6 * lu * choose(lu, 2)),
        ("N_removed", rep.n_delta_without_x, choose(3 * lu, 3)),
    ];
    for (name, actual, expected) in checks {
        if actual != expected {
            return Err(format!("{name} = {actual}, closed form expects {expected}"));
        }
    }
    Ok(())
}

/// The Theorem-1 lower-bound family: 3l points along three convex chains on
/// a large circle, 120 degrees apart, with the apex at the center.
/// Index 0 is the apex; chain points follow in angular order per chain.
pub fn gen_lower_bound(l: usize) -> Result<GeneratedInstance, GeneratorError> {
    let family = Family::LowerBound { l };
    if l == 0 {
        return Err(GeneratorError {
            family,
            reason: String::from("chain length must be at least 1"),
        });
    }
    let mut last_failure = String::new();
    for radius in LOWER_BOUND_RADII {
        for apex in APEX_PERTURBATIONS {
            let candidate = lower_bound_points(l, radius, apex);
            let s = match PointSet::new(candidate) {
                Ok(s) => s,
                Err(report) => {
                    last_failure = format!("R={radius}: {report}");
                    continue;
                }
            };
            match validate_lower_bound(&s, l) {
                Ok(()) => {
                    return Ok(GeneratedInstance {
                        points: s,
                        apex: 0,
                        apex2: None,
                        family,
                    })
                }
                Err(reason) => last_failure = format!("R={radius}: {reason}"),
            }
        }
    }
    Err(GeneratorError {
        family,
        reason: last_failure,
    })
}

/// Shape variants tried in order for the bipartite family:
/// (chain spacing W, height step D, extra x' height).
const BIPARTITE_VARIANTS: [(i64, i64, i64); 6] =
    [(8, 4, 0), (8, 4, 1), (8, 4, 3), (16, 4, 0), (16, 8, 5), (32, 8, 11)];

fn bipartite_points(r: usize, s: usize, w: i64, d: i64, h_off: i64) -> Vec<Point> {
    let m = r.max(s) as i64;
    // Steep enough that consecutive chords from x stay convex: F - D must
    // exceed i^2 + 3i + 1 for every chain index i.
    let f = d + m * (m + 1);
    let g = |i: i64| f + i * d + i * i;
    let mut points = Vec::with_capacity(r + s + 2);
    points.push(Point::new(0, 0));
    points.push(Point::new(0, 4 * f + h_off));
    for i in 0..r as i64 {
        points.push(Point::new(-(i + 1) * w, -g(i)));
    }
    for j in 0..s as i64 {
        points.push(Point::new((j + 1) * (w + 1), -g(j)));
    }
    points
}

/// Checks the Lemma-4 structure: every designated triangle xx'a_i and xx'b_j
/// is empty and every (a_i, b_j) pair passes the incidence-edge predicate.
fn validate_bipartite(s: &PointSet, r: usize, t: usize) -> Result<(), String> {
    let a_tri = |i: usize| Triangle::new(0, 1, 2 + i);
    let b_tri = |j: usize| Triangle::new(0, 1, 2 + r + j);
    for i in 0..r {
        if !interior_multiset(s, a_tri(i)).is_empty() {
            return Err(format!("designated triangle x x' a_{i} is not empty"));
        }
    }
    for j in 0..t {
        if !interior_multiset(s, b_tri(j)).is_empty() {
            return Err(format!("designated triangle x x' b_{j} is not empty"));
        }
    }
    for i in 0..r {
        for j in 0..t {
            match edge_predicate(s, 0, a_tri(i), b_tri(j)) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(format!("designated pair (a_{i}, b_{j}) fails the edge predicate"))
                }
                Err(e) => return Err(format!("edge predicate error on (a_{i}, b_{j}): {e}")),
            }
        }
    }
    Ok(())
}

/// The Lemma-4 bipartite family: r + s + 2 points with x at index 0, x' at
/// index 1, the a-chain at 2..2+r and the b-chain at 2+r..2+r+s, arranged so
/// that every triangle xx'a_i and xx'b_j is empty and each (a_i, b_j) pair is
/// an edge of G_P(x).
pub fn gen_bipartite(r: usize, s: usize) -> Result<GeneratedInstance, GeneratorError> {
    let family = Family::Bipartite { r, s };
    if r == 0 || s == 0 {
        return Err(GeneratorError {
            family,
            reason: String::from("both chain sizes must be at least 1"),
        });
    }
    let mut last_failure = String::new();
    for (w, d, h_off) in BIPARTITE_VARIANTS {
        let candidate = bipartite_points(r, s, w, d, h_off);
        let set = match PointSet::new(candidate) {
            Ok(set) => set,
            Err(report) => {
                last_failure = format!("W={w} D={d}: {report}");
                continue;
            }
        };
        match validate_bipartite(&set, r, s) {
            Ok(()) => {
                return Ok(GeneratedInstance {
                    points: set,
                    apex: 0,
                    apex2: Some(1),
                    family,
                })
            }
            Err(reason) => last_failure = format!("W={w} D={d}: {reason}"),
        }
    }
    Err(GeneratorError {
        family,
        reason: last_failure,
    })
}

/// Uniform random points on the 2^16 grid with rejection of duplicates and
/// collinear triples; deterministic for a given seed.
pub fn gen_random(n: usize, seed: u64) -> Result<GeneratedInstance, GeneratorError> {
    let family = Family::Random { n, seed };
    if n < 3 {
        return Err(GeneratorError {
            family,
            reason: String::from("need at least 3 points"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut rejects = 0u32;
    while points.len() < n {
        let p = Point::new(
            rng.gen_range(0..RANDOM_GRID_SIDE),
            rng.gen_range(0..RANDOM_GRID_SIDE),
        );
        let ok = !points.contains(&p) && {
            let mut clean = true;
            'pairs: for i in 0..points.len() {
                for j in (i + 1)..points.len() {
                    if crate::geom::orient(points[i], points[j], p)
                        == crate::geom::Orientation::Collinear
                    {
                        clean = false;
                        break 'pairs;
                    }
                }
            }
            clean
        };
        if ok {
            points.push(p);
        } else {
            rejects += 1;
            if rejects > 1000 {
                return Err(GeneratorError {
                    family,
                    reason: format!("rejection rate pathological ({rejects} rejects)"),
                });
            }
        }
    }
    let set = PointSet::new(points).map_err(|report| GeneratorError {
        family,
        reason: format!("{report}"),
    })?;
    Ok(GeneratedInstance {
        points: set,
        apex: 0,
        apex2: None,
        family,
    })
}

const CONVEX_VARIANTS: [(f64, f64); 6] = [
    (400_000.0, 0.0),
    (400_000.0, 7.3),
    (600_000.0, 0.0),
    (600_000.0, 3.7),
    (800_000.0, 1.3),
    (1_000_000.0, 0.9),
];

/// n integer points in strictly convex position (a grid-rounded circle),
/// in counterclockwise angular order.
pub fn gen_convex(n: usize) -> Result<GeneratedInstance, GeneratorError> {
    let family = Family::Convex { n };
    if n < 3 {
        return Err(GeneratorError {
            family,
            reason: String::from("need at least 3 points"),
        });
    }
    let mut last_failure = String::new();
    for (radius, rot) in CONVEX_VARIANTS {
        let points: Vec<Point> = (0..n)
            .map(|k| circle_point(radius, rot + 360.0 * k as f64 / n as f64))
            .collect();
        let strictly_convex = (0..n).all(|k| {
            crate::geom::orient(points[k], points[(k + 1) % n], points[(k + 2) % n])
                == crate::geom::Orientation::CounterClockwise
        });
        if !strictly_convex {
            last_failure = format!("R={radius}: rounded points not strictly convex");
            continue;
        }
        match PointSet::new(points) {
            Ok(set) => {
                return Ok(GeneratedInstance {
                    points: set,
                    apex: 0,
                    apex2: None,
                    family,
                })
            }
            Err(report) => last_failure = format!("R={radius}: {report}"),
        }
    }
    Err(GeneratorError {
        family,
        reason: last_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangles::{counts_report, enumerate_empty_brute};

    #[test]
    fn choose_small_values() {
        assert_eq!(choose(6, 2), 15);
        assert_eq!(choose(6, 3), 20);
        assert_eq!(choose(2, 3), 0);
        assert_eq!(choose(120, 2), 7140);
    }

    #[test]
    fn lower_bound_l1_is_inner_apex_shape() {
        let inst = gen_lower_bound(1).unwrap();
        assert_eq!(inst.points.len(), 4);
        let rep = counts_report(&inst.points, inst.apex).unwrap();
        assert_eq!((rep.v, rep.i, rep.delta), (3, 1, 2));
    }

    #[test]
    fn lower_bound_l2_counts() {
        let inst = gen_lower_bound(2).unwrap();
        assert_eq!(inst.points.len(), 7);
        let rep = counts_report(&inst.points, inst.apex).unwrap();
        assert_eq!(rep.v, 15);
        assert_eq!(rep.u, 12);
        assert_eq!(rep.i, 8);
        assert_eq!(rep.n_delta, 27);
        assert_eq!(rep.n_delta_without_x, 20);
        assert_eq!(rep.delta, 7);
    }

    #[test]
    fn lower_bound_l3_counts() {
        let inst = gen_lower_bound(3).unwrap();
        let rep = counts_report(&inst.points, inst.apex).unwrap();
        assert_eq!(rep.v, 36);
        assert_eq!(rep.i, 27);
        assert_eq!(rep.delta, 9);
        assert_eq!(rep.n_delta_without_x, 84);
    }

    #[test]
    fn lower_bound_interior_multiset_one_per_chain() {
        let inst = gen_lower_bound(2).unwrap();
        // One point from each chain: indices 1, 3, 5 with l = 2.
        let t = Triangle::new(1, 3, 5);
        assert_eq!(interior_multiset(&inst.points, t), alloc::vec![0]);
    }

    #[test]
    fn bipartite_minimal_pair() {
        let inst = gen_bipartite(1, 1).unwrap();
        assert_eq!(inst.points.len(), 4);
        assert_eq!(inst.apex2, Some(1));
    }

    #[test]
    fn bipartite_counts_points() {
        let inst = gen_bipartite(2, 3).unwrap();
        assert_eq!(inst.points.len(), 7);
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(10, 1).unwrap();
        let b = gen_random(10, 1).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn random_passes_validation() {
        let inst = gen_random(100, 7).unwrap();
        assert_eq!(inst.points.len(), 100);
    }

    #[test]
    fn convex_all_triples_empty() {
        let inst = gen_convex(5).unwrap();
        assert_eq!(enumerate_empty_brute(&inst.points).len(), 10);
        let inst8 = gen_convex(8).unwrap();
        assert_eq!(enumerate_empty_brute(&inst8.points).len(), 56);
    }

    #[test]
    fn convex_apex_has_no_interior() {
        let inst = gen_convex(8).unwrap();
        for x in 0..8 {
            let rep = counts_report(&inst.points, x).unwrap();
            assert_eq!(rep.i, 0);
            assert_eq!(rep.delta, rep.v);
        }
    }
}
