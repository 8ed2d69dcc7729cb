//! Enumeration of empty triangles and the scalar counts derived from them.
//!
//! Two enumerators produce the same set: a quartic brute-force scan that
//! serves as the reference oracle, and a per-vertex angular sweep whose
//! emptiness test is a single orientation sign per candidate pair.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{orient, point_in_triangle, Orientation, Point, PointSet, TrianglePosition};

/// An index triple into a [`PointSet`], stored sorted so that set membership
/// and iteration order are canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    i: usize,
    j: usize,
    k: usize,
}

impl Triangle {
    /// Canonicalizes the (distinct) indices into sorted order.
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        debug_assert!(a != b && b != c && a != c, "triangle indices must be distinct");
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if c < lo {
            Triangle { i: c, j: lo, k: hi }
        } else if c < hi {
            Triangle { i: lo, j: c, k: hi }
        } else {
            Triangle { i: lo, j: hi, k: c }
        }
    }

    pub fn indices(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i == v || self.j == v || self.k == v
    }

    pub fn points(&self, s: &PointSet) -> [Point; 3] {
        [s[self.i], s[self.j], s[self.k]]
    }

    /// Re-expresses a triangle of `S` that avoids `x` in the index space of
    /// `S.without(x)`.
    pub fn reindex_without(&self, x: usize) -> Triangle {
        debug_assert!(!self.contains(x));
        let shift = |v: usize| if v > x { v - 1 } else { v };
        Triangle::new(shift(self.i), shift(self.j), shift(self.k))
    }

    /// Re-expresses a triangle of `S.without(x)` in the index space of `S`.
    pub fn reindex_with(&self, x: usize) -> Triangle {
        let shift = |v: usize| if v >= x { v + 1 } else { v };
        Triangle::new(shift(self.i), shift(self.j), shift(self.k))
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// The set of empty triangles of one point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyTriangleSet {
    triangles: BTreeSet<Triangle>,
}

impl EmptyTriangleSet {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.triangles.contains(t)
    }

    /// Triangles in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = &Triangle> {
        self.triangles.iter()
    }

    /// Number of members with `x` as a vertex, i.e. V_P(x) when `x` indexes
    /// the owning set.
    pub fn incident_count(&self, x: usize) -> usize {
        self.triangles.iter().filter(|t| t.contains(x)).count()
    }
}

/// Indices of all points of `s` strictly inside triangle `t`, ascending.
pub fn interior_multiset(s: &PointSet, t: Triangle) -> Vec<usize> {
    let [a, b, c] = t.points(s);
    let mut inside = Vec::new();
    for (m, &p) in s.points().iter().enumerate() {
        if t.contains(m) {
            continue;
        }
        let pos = point_in_triangle(a, b, c, p)
            .expect("validated point set admits no degenerate or boundary case");
        if pos == TrianglePosition::Inside {
            inside.push(m);
        }
    }
    inside
}

/// Reference enumerator: every triple, every witness point. O(n⁴).
pub fn enumerate_empty_brute(s: &PointSet) -> EmptyTriangleSet {
    let n = s.len();
    let mut triangles = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (s[i], s[j], s[k]);
                let mut empty = true;
                for (m, &p) in s.points().iter().enumerate() {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    let pos = point_in_triangle(a, b, c, p)
                        .expect("validated point set admits no degenerate or boundary case");
                    if pos == TrianglePosition::Inside {
                        empty = false;
                        break;
                    }
                }
                if empty {
                    triangles.insert(Triangle::new(i, j, k));
                }
            }
        }
    }
    EmptyTriangleSet { triangles }
}

/// Fast enumerator: per-vertex angular sweep with a visibility chain.
///
/// Each triangle is charged to its lexicographically least vertex `p`. The
/// points after `p` lie in an open half-plane, so their angular order around
/// `p` is a total order, and within it a triangle `(p, q_i, q_j)` is empty
/// exactly when every intermediate point lies beyond the chord — which
/// reduces to a single orientation test against the last chain member.
/// Output is identical to [`enumerate_empty_brute`].
pub fn enumerate_empty_fast(s: &PointSet) -> EmptyTriangleSet {
    let n = s.len();
    let mut triangles = BTreeSet::new();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (s[v].x, s[v].y));

    let mut cands: Vec<usize> = Vec::with_capacity(n);
    for t in 0..n {
        let p_idx = order[t];
        let p = s[p_idx];
        cands.clear();
        cands.extend_from_slice(&order[t + 1..]);
        // Counterclockwise angular order around p; all candidates lie in the
        // half-plane right of / lex-above p, so the comparison is total.
        cands.sort_by(|&a, &b| match orient(p, s[a], s[b]) {
            Orientation::CounterClockwise => core::cmp::Ordering::Less,
            Orientation::Clockwise => core::cmp::Ordering::Greater,
            Orientation::Collinear => {
                unreachable!("validated point set has no collinear triple")
            }
        });

        for i in 0..cands.len() {
            let qi = cands[i];
            // Chain invariant: `last` is the intermediate whose direction
            // from q_i is angularly extreme; a candidate is empty iff it
            // lies strictly left of the ray q_i -> last.
            let mut last: Option<usize> = None;
            for &qj in &cands[i + 1..] {
                let empty = match last {
                    None => true,
                    Some(l) => orient(s[qi], s[l], s[qj]) == Orientation::CounterClockwise,
                };
                if empty {
                    triangles.insert(Triangle::new(p_idx, qi, qj));
                    last = Some(qj);
                }
            }
        }
    }
    EmptyTriangleSet { triangles }
}

/// Which enumerator backs a counting run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumerator {
    Brute,
    Fast,
}

impl Enumerator {
    pub fn run(self, s: &PointSet) -> EmptyTriangleSet {
        match self {
            Enumerator::Brute => enumerate_empty_brute(s),
            Enumerator::Fast => enumerate_empty_fast(s),
        }
    }
}

/// All scalar counts for one (P, x) pair.
///
/// Invariants checked before a report is returned:
/// `n_delta = v + u`, `n_delta_without_x = u + i`, `delta = |v - i|`,
/// and `delta <= v + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsReport {
    /// Empty triangles of P.
    pub n_delta: u64,
    /// Empty triangles of P \ {x}.
    pub n_delta_without_x: u64,
    /// V_P(x): empty triangles with x as a vertex.
    pub v: u64,
    /// U_P(x): empty triangles avoiding x.
    pub u: u64,
    /// I_P(x): triangles of P \ {x} whose interior contains x and nothing else.
    pub i: u64,
    /// |N(P) - N(P \ {x})|.
    pub delta: u64,
}

/// A counting identity failed; this certifies a predicate or enumerator bug,
/// never a property of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyError {
    pub identity: &'static str,
    pub report: CountsReport,
}

impl fmt::Display for InconsistencyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "internal inconsistency: identity `{}` failed on {:?}",
            self.identity, self.report
        )
    }
}

impl core::error::Error for InconsistencyError {}

/// Computes every count for `(s, x)` with the fast enumerator.
pub fn counts_report(s: &PointSet, x: usize) -> Result<CountsReport, InconsistencyError> {
    counts_report_with(s, x, Enumerator::Fast)
}

/// Computes every count for `(s, x)` with the chosen enumerator.
///
/// I_P(x) is obtained by enumerating the triangles of `S \ {x}` that are
/// empty there and keeping those whose interior multiset in `S` is exactly
/// `[x]`; a triangle empty in `S \ {x}` contains no other point, so the
/// filter is a single interior test against x.
pub fn counts_report_with(
    s: &PointSet,
    x: usize,
    enumerator: Enumerator,
) -> Result<CountsReport, InconsistencyError> {
    assert!(x < s.len(), "apex index out of range");

    let empties = enumerator.run(s);
    let v = empties.incident_count(x) as u64;
    let n_delta = empties.len() as u64;
    let u = n_delta - v;

    let reduced = s.without(x);
    let xp = s[x];
    let reduced_empties = enumerator.run(&reduced);
    let n_delta_without_x = reduced_empties.len() as u64;

    let mut i = 0u64;
    for t in reduced_empties.iter() {
        let [a, b, c] = t.points(&reduced);
        let pos = point_in_triangle(a, b, c, xp)
            .expect("validated point set admits no degenerate or boundary case");
        if pos == TrianglePosition::Inside {
            i += 1;
        }
    }

    let delta = n_delta.abs_diff(n_delta_without_x);
    let report = CountsReport {
        n_delta,
        n_delta_without_x,
        v,
        u,
        i,
        delta,
    };

    let fail = |identity: &'static str| InconsistencyError { identity, report };
    if n_delta != v + u {
        return Err(fail("n_delta = v + u"));
    }
    if n_delta_without_x != u + i {
        return Err(fail("n_delta_without_x = u + i"));
    }
    if delta != v.abs_diff(i) {
        return Err(fail("delta = |v - i|"));
    }
    if delta > v + i {
        return Err(fail("delta <= v + i"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    /// The four-point configuration with x strictly inside triangle abc:
    /// indices [x, a, b, c].
    fn inner_apex_set() -> PointSet {
        PointSet::new(vec![pt(1, 1), pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap()
    }

    fn convex_pentagon() -> PointSet {
        PointSet::new(vec![pt(2, 0), pt(1, 2), pt(-1, 1), pt(-1, -1), pt(1, -2)]).unwrap()
    }

    #[test]
    fn triangle_canonical_order() {
        assert_eq!(Triangle::new(5, 2, 9).indices(), [2, 5, 9]);
        assert_eq!(Triangle::new(9, 5, 2), Triangle::new(2, 9, 5));
    }

    #[test]
    fn convex_position_all_triples_empty() {
        let s = convex_pentagon();
        let empties = enumerate_empty_brute(&s);
        assert_eq!(empties.len(), 10);
    }

    #[test]
    fn inner_apex_has_three_empty_triangles() {
        let s = inner_apex_set();
        let empties = enumerate_empty_brute(&s);
        assert_eq!(empties.len(), 3);
        for t in [
            Triangle::new(0, 1, 2),
            Triangle::new(0, 2, 3),
            Triangle::new(0, 1, 3),
        ] {
            assert!(empties.contains(&t));
        }
        assert!(!empties.contains(&Triangle::new(1, 2, 3)));
    }

    #[test]
    fn three_points_one_triangle() {
        let s = PointSet::new(vec![pt(0, 0), pt(3, 1), pt(1, 4)]).unwrap();
        assert_eq!(enumerate_empty_brute(&s).len(), 1);
        assert_eq!(enumerate_empty_fast(&s).len(), 1);
    }

    #[test]
    fn fast_matches_brute_on_fixtures() {
        for s in [inner_apex_set(), convex_pentagon()] {
            assert_eq!(enumerate_empty_fast(&s), enumerate_empty_brute(&s));
        }
    }

    #[test]
    fn interior_multiset_finds_apex() {
        let s = inner_apex_set();
        assert_eq!(interior_multiset(&s, Triangle::new(1, 2, 3)), vec![0]);
        assert_eq!(interior_multiset(&s, Triangle::new(0, 1, 2)), Vec::<usize>::new());
    }

    #[test]
    fn interior_multiset_empty_for_convex() {
        let s = convex_pentagon();
        assert_eq!(interior_multiset(&s, Triangle::new(0, 2, 4)), Vec::<usize>::new());
    }

    #[test]
    fn counts_report_inner_apex() {
        let s = inner_apex_set();
        let r = counts_report(&s, 0).unwrap();
        assert_eq!(
            r,
            CountsReport {
                n_delta: 3,
                n_delta_without_x: 1,
                v: 3,
                u: 0,
                i: 1,
                delta: 2,
            }
        );
    }

    #[test]
    fn counts_report_convex_any_apex() {
        let s = convex_pentagon();
        for x in 0..s.len() {
            let r = counts_report(&s, x).unwrap();
            assert_eq!(r.i, 0);
            assert_eq!(r.delta, r.v);
            assert_eq!(r.n_delta, 10);
            assert_eq!(r.n_delta_without_x, 4);
        }
    }

    #[test]
    fn avoiding_triangles_stay_empty_after_removal() {
        let s = inner_apex_set();
        let x = 0;
        let empties = enumerate_empty_brute(&s);
        let reduced = s.without(x);
        let reduced_empties = enumerate_empty_brute(&reduced);
        for t in empties.iter().filter(|t| !t.contains(x)) {
            assert!(reduced_empties.contains(&t.reindex_without(x)));
        }
    }

    #[test]
    fn reindex_round_trip() {
        let t = Triangle::new(1, 4, 7);
        assert_eq!(t.reindex_without(3).reindex_with(3), t);
        assert_eq!(t.reindex_without(0).indices(), [0, 3, 6]);
    }
}
