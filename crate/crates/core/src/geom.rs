//! Exact integer planar predicates and point-set validation.
//!
//! All predicates are signs of polynomials of degree at most 4 in the input
//! coordinates, evaluated in `i128`. With coordinates bounded by
//! [`COORD_BOUND`] (2^20) the widest intermediate stays below 2^88, so no
//! expression can overflow and no floating point is involved anywhere.

use alloc::vec::Vec;
use core::fmt;

/// Exclusive bound on the absolute value of every coordinate: |x|, |y| < 2^20.
///
/// Degree-4 sign expressions over differences of bounded coordinates stay
/// below 2^88 and are therefore exact in `i128`.
pub const COORD_BOUND: i64 = 1 << 20;

/// A point on the integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// True iff both coordinates are strictly inside [`COORD_BOUND`].
    pub fn in_bounds(&self) -> bool {
        self.x.abs() < COORD_BOUND && self.y.abs() < COORD_BOUND
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the signed area of a point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    /// Swapping two arguments of `orient` flips the sign.
    pub fn flipped(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of triangle `pqr`, exact in `i128`.
#[inline]
pub fn signed_area2(p: Point, q: Point, r: Point) -> i128 {
    let qx = (q.x - p.x) as i128;
    let qy = (q.y - p.y) as i128;
    let rx = (r.x - p.x) as i128;
    let ry = (r.y - p.y) as i128;
    qx * ry - qy * rx
}

/// Orientation of the triple `(p, q, r)`: the sign of det |q-p, r-p|.
#[inline]
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    let det = signed_area2(p, q, r);
    if det > 0 {
        Orientation::CounterClockwise
    } else if det < 0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Strict position of a query point relative to a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrianglePosition {
    Inside,
    Outside,
}

/// Failures of the exact predicates.
///
/// Every variant certifies a general-position violation in the input (or a
/// degenerate query); none of them can occur for points drawn from a
/// validated [`PointSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateError {
    /// The three triangle vertices are collinear.
    DegenerateTriangle,
    /// The query point lies on the closed boundary of the triangle.
    PointOnBoundary,
    /// The angle-sum sign expression vanished (b, x, c collinear).
    ZeroAngleExpression,
}

impl fmt::Display for PredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateError::DegenerateTriangle => write!(f, "degenerate (collinear) triangle"),
            PredicateError::PointOnBoundary => write!(f, "query point on triangle boundary"),
            PredicateError::ZeroAngleExpression => {
                write!(f, "angle-sum expression is zero (collinear configuration)")
            }
        }
    }
}

impl core::error::Error for PredicateError {}

/// True iff `p` lies on the closed axis-aligned bounding box of segment `ab`.
/// Only meaningful when `p` is already known to be collinear with `a`, `b`.
fn on_segment_collinear(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Decides whether `p` is strictly interior to triangle `abc`.
///
/// Boundary contact is an error rather than a classification: for the point
/// sets this crate works with it certifies a general-position violation that
/// would invalidate every downstream count.
pub fn point_in_triangle(
    a: Point,
    b: Point,
    c: Point,
    p: Point,
) -> Result<TrianglePosition, PredicateError> {
    let (b, c) = match orient(a, b, c) {
        Orientation::Collinear => return Err(PredicateError::DegenerateTriangle),
        Orientation::CounterClockwise => (b, c),
        Orientation::Clockwise => (c, b),
    };
    let s_ab = orient(a, b, p);
    let s_bc = orient(b, c, p);
    let s_ca = orient(c, a, p);
    if s_ab == Orientation::CounterClockwise
        && s_bc == Orientation::CounterClockwise
        && s_ca == Orientation::CounterClockwise
    {
        return Ok(TrianglePosition::Inside);
    }
    if (s_ab == Orientation::Collinear && on_segment_collinear(a, b, p))
        || (s_bc == Orientation::Collinear && on_segment_collinear(b, c, p))
        || (s_ca == Orientation::Collinear && on_segment_collinear(c, a, p))
    {
        return Err(PredicateError::PointOnBoundary);
    }
    Ok(TrianglePosition::Outside)
}

/// Decides whether the angle sum ∠(b,x,a) + ∠(a,x,c) exceeds 180°.
///
/// Both angles lie in (0°, 180°), so the sum exceeds 180° exactly when
/// sin(θ₁+θ₂) < 0. Expanding the sine of the sum with u = a−x, v = b−x,
/// w = c−x gives the exact integer sign test
/// |v×u|·(u·w) + (v·u)·|u×w| < 0.
///
/// Callers must ensure `b` and `c` lie strictly on opposite sides of line
/// `(x, a)`; under that precondition plus general position the expression is
/// never zero, and a zero is reported as an error.
pub fn angle_sum_exceeds_pi(
    x: Point,
    a: Point,
    b: Point,
    c: Point,
) -> Result<bool, PredicateError> {
    debug_assert!(
        {
            let sb = orient(x, a, b);
            let sc = orient(x, a, c);
            sb != Orientation::Collinear && sc != Orientation::Collinear && sb != sc
        },
        "angle_sum_exceeds_pi requires b, c strictly on opposite sides of line (x, a)"
    );
    let ux = (a.x - x.x) as i128;
    let uy = (a.y - x.y) as i128;
    let vx = (b.x - x.x) as i128;
    let vy = (b.y - x.y) as i128;
    let wx = (c.x - x.x) as i128;
    let wy = (c.y - x.y) as i128;

    let cross_vu = (vx * uy - vy * ux).abs();
    let cross_uw = (ux * wy - uy * wx).abs();
    let dot_uw = ux * wx + uy * wy;
    let dot_vu = vx * ux + vy * uy;

    let sin_sign = cross_vu * dot_uw + dot_vu * cross_uw;
    if sin_sign == 0 {
        return Err(PredicateError::ZeroAngleExpression);
    }
    Ok(sin_sign < 0)
}

/// Outcome of scanning a point list for general-position violations.
///
/// Empty lists mean the input is valid. Collinear triples are only reported
/// for pairwise-distinct points; coincident points show up as duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Indices of points with a coordinate outside [`COORD_BOUND`].
    pub out_of_bounds: Vec<usize>,
    /// Index pairs (i < j) of coincident points.
    pub duplicate_pairs: Vec<(usize, usize)>,
    /// Index triples (i < j < k) of collinear points.
    pub collinear_triples: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.out_of_bounds.is_empty()
            && self.duplicate_pairs.is_empty()
            && self.collinear_triples.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid: in general position");
        }
        let mut first = true;
        for &i in &self.out_of_bounds {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "coordinate out of bounds at index {i}")?;
        }
        for &(i, j) in &self.duplicate_pairs {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "duplicate points ({i}, {j})")?;
        }
        for &(i, j, k) in &self.collinear_triples {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "collinear triple ({i}, {j}, {k})")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationReport {}

/// Full O(n³) scan for duplicates, collinear triples, and bound violations.
pub fn validate_general_position(points: &[Point]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, p) in points.iter().enumerate() {
        if !p.in_bounds() {
            report.out_of_bounds.push(i);
        }
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                report.duplicate_pairs.push((i, j));
            }
        }
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                continue;
            }
            for k in (j + 1)..points.len() {
                if points[k] == points[i] || points[k] == points[j] {
                    continue;
                }
                if orient(points[i], points[j], points[k]) == Orientation::Collinear {
                    report.collinear_triples.push((i, j, k));
                }
            }
        }
    }
    report
}

/// A validated planar point set: bounded integer coordinates, pairwise
/// distinct, no three collinear.
///
/// Validity is established at construction, so downstream enumeration never
/// re-checks it and predicate errors cannot occur on members of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates and wraps a point list; the failed report is the error.
    pub fn new(points: Vec<Point>) -> Result<Self, ValidationReport> {
        let report = validate_general_position(&points);
        if report.is_valid() {
            Ok(PointSet { points })
        } else {
            Err(report)
        }
    }

    /// Wraps points that are already known valid (e.g. a subset of a
    /// validated set). Debug builds re-validate.
    pub(crate) fn new_unchecked(points: Vec<Point>) -> Self {
        debug_assert!(validate_general_position(&points).is_valid());
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    /// The set with point `x` removed. Indices above `x` shift down by one;
    /// a subset of a valid set is valid, so no re-validation is needed.
    pub fn without(&self, x: usize) -> PointSet {
        let mut points = Vec::with_capacity(self.points.len() - 1);
        points.extend_from_slice(&self.points[..x]);
        points.extend_from_slice(&self.points[x + 1..]);
        PointSet::new_unchecked(points)
    }
}

impl core::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_unit_basis() {
        assert_eq!(
            orient(pt(0, 0), pt(1, 0), pt(0, 1)),
            Orientation::CounterClockwise
        );
    }

    #[test]
    fn orient_collinear_diagonal() {
        assert_eq!(orient(pt(0, 0), pt(1, 1), pt(2, 2)), Orientation::Collinear);
    }

    #[test]
    fn orient_large_coordinates_exact() {
        // det = 10^6 * 3 - 1 * 2*10^6 = 10^6 > 0; check against a direct
        // i128 evaluation of the same determinant.
        let p = pt(0, 0);
        let q = pt(1_000_000, 1);
        let r = pt(2_000_000, 3);
        let det: i128 = 1_000_000i128 * 3 - 1 * 2_000_000;
        assert!(det > 0);
        assert_eq!(orient(p, q, r), Orientation::CounterClockwise);
        assert_eq!(signed_area2(p, q, r), det);
    }

    #[test]
    fn point_in_triangle_interior() {
        assert_eq!(
            point_in_triangle(pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1)),
            Ok(TrianglePosition::Inside)
        );
    }

    #[test]
    fn point_in_triangle_exterior() {
        assert_eq!(
            point_in_triangle(pt(0, 0), pt(4, 0), pt(0, 4), pt(5, 5)),
            Ok(TrianglePosition::Outside)
        );
    }

    #[test]
    fn point_on_hypotenuse_is_error() {
        assert_eq!(
            point_in_triangle(pt(0, 0), pt(4, 0), pt(0, 4), pt(2, 2)),
            Err(PredicateError::PointOnBoundary)
        );
    }

    #[test]
    fn point_collinear_with_edge_but_outside_segment() {
        // On the line through (0,0)-(4,0) but beyond it: outside, not boundary.
        assert_eq!(
            point_in_triangle(pt(0, 0), pt(4, 0), pt(0, 4), pt(7, 0)),
            Ok(TrianglePosition::Outside)
        );
    }

    #[test]
    fn degenerate_triangle_is_error() {
        assert_eq!(
            point_in_triangle(pt(0, 0), pt(1, 1), pt(2, 2), pt(1, 0)),
            Err(PredicateError::DegenerateTriangle)
        );
    }

    /// Test-only oracle: angle sum via f64 atan2, in degrees.
    fn angle_sum_deg(x: Point, a: Point, b: Point, c: Point) -> f64 {
        let ang = |p: Point, q: Point| -> f64 {
            let ux = (p.x - x.x) as f64;
            let uy = (p.y - x.y) as f64;
            let vx = (q.x - x.x) as f64;
            let vy = (q.y - x.y) as f64;
            let cross = ux * vy - uy * vx;
            let dot = ux * vx + uy * vy;
            cross.abs().atan2(dot).to_degrees()
        };
        ang(b, a) + ang(a, c)
    }

    #[test]
    fn angle_sum_wide_pair() {
        let (x, a, b, c) = (pt(0, 0), pt(1, 0), pt(-1, 2), pt(-1, -2));
        assert!((angle_sum_deg(x, a, b, c) - 233.13).abs() < 0.01);
        assert_eq!(angle_sum_exceeds_pi(x, a, b, c), Ok(true));
    }

    #[test]
    fn angle_sum_narrow_pair() {
        let (x, a, b, c) = (pt(0, 0), pt(1, 0), pt(0, 1), pt(1, -10));
        assert!((angle_sum_deg(x, a, b, c) - 174.29).abs() < 0.01);
        assert_eq!(angle_sum_exceeds_pi(x, a, b, c), Ok(false));
    }

    #[test]
    fn angle_sum_obtuse_plus_right() {
        let (x, a, b, c) = (pt(0, 0), pt(1, 0), pt(-3, 1), pt(0, -1));
        assert!((angle_sum_deg(x, a, b, c) - 251.57).abs() < 0.01);
        assert_eq!(angle_sum_exceeds_pi(x, a, b, c), Ok(true));
    }

    #[test]
    fn angle_sum_exactly_pi_is_error() {
        // b, x, c collinear: the sum is exactly 180 and the sign expression 0.
        let (x, a, b, c) = (pt(0, 0), pt(1, 0), pt(-1, 2), pt(1, -2));
        assert_eq!(
            angle_sum_exceeds_pi(x, a, b, c),
            Err(PredicateError::ZeroAngleExpression)
        );
    }

    #[test]
    fn validate_accepts_triangle() {
        let report = validate_general_position(&[pt(0, 0), pt(1, 0), pt(0, 1)]);
        assert!(report.is_valid());
    }

    #[test]
    fn validate_reports_collinear_triple() {
        let report = validate_general_position(&[pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 1)]);
        assert_eq!(report.collinear_triples, [(0, 1, 2)]);
        assert!(report.duplicate_pairs.is_empty());
    }

    #[test]
    fn validate_reports_duplicate_pair() {
        let report = validate_general_position(&[pt(0, 0), pt(0, 0), pt(1, 2)]);
        assert_eq!(report.duplicate_pairs, [(0, 1)]);
        assert!(report.collinear_triples.is_empty());
    }

    #[test]
    fn validate_reports_out_of_bounds() {
        let report = validate_general_position(&[pt(0, 0), pt(COORD_BOUND, 3)]);
        assert_eq!(report.out_of_bounds, [1]);
    }

    #[test]
    fn point_set_rejects_invalid() {
        assert!(PointSet::new(alloc::vec![pt(0, 0), pt(1, 1), pt(2, 2)]).is_err());
    }

    #[test]
    fn without_shifts_indices() {
        let s = PointSet::new(alloc::vec![pt(0, 0), pt(5, 1), pt(1, 7)]).unwrap();
        let t = s.without(1);
        assert_eq!(t.points(), &[pt(0, 0), pt(1, 7)]);
    }
}
