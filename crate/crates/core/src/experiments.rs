//! Scripted reproductions of the quantitative claims: the Δ ~ V^{3/2}
//! scaling of the lower-bound family, theorem-level property sweeps over a
//! corpus of instances, and the random-set density check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::extremal::max_triangles_kite_free;
use crate::generators::{
    choose, gen_bipartite, gen_convex, gen_lower_bound, gen_random, Family, GeneratedInstance,
    GeneratorError,
};
use crate::graph::{count_triangles, find_kites, incidence_graph_with_empties, list_triangles};
use crate::realizability::check_interior_edge_sharing;
use crate::triangles::{
    counts_report_with, enumerate_empty_fast, interior_multiset, Enumerator, InconsistencyError,
    Triangle,
};
use crate::geom::PointSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    Generator(GeneratorError),
    Counts(InconsistencyError),
    ClosedForm {
        l: u64,
        field: &'static str,
        actual: u64,
        expected: u64,
    },
    WrongFamily {
        family: Family,
    },
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::Generator(e) => write!(f, "{e}"),
            ExperimentError::Counts(e) => write!(f, "{e}"),
            ExperimentError::ClosedForm {
                l,
                field,
                actual,
                expected,
            } => write!(f, "L={l}: {field} = {actual} but closed form gives {expected}"),
            ExperimentError::WrongFamily { family } => {
                write!(f, "expected a random-family instance, got {family}")
            }
        }
    }
}

impl core::error::Error for ExperimentError {}

impl From<GeneratorError> for ExperimentError {
    fn from(e: GeneratorError) -> Self {
        ExperimentError::Generator(e)
    }
}

impl From<InconsistencyError> for ExperimentError {
    fn from(e: InconsistencyError) -> Self {
        ExperimentError::Counts(e)
    }
}

/// One lower-bound instance: enumerated counts beside their closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub l: u64,
    pub n: u64,
    pub v: u64,
    pub i: u64,
    pub u: u64,
    pub delta: u64,
    pub v_closed: u64,
    pub i_closed: u64,
    pub u_closed: u64,
    /// delta / v^{3/2}.
    pub ratio: f64,
}

/// Scaling rows plus the fitted log-log slope of delta against v over the
/// upper half of the L range (lower-order terms dominate small L).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSummary {
    pub rows: Vec<ScalingRow>,
    pub slope: f64,
    /// First L included in the slope fit.
    pub slope_from: u64,
}

/// Least-squares slope of y against x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    (k * sxy - sx * sy) / (k * sxx - sx * sx)
}

/// One row per L in [l_min, l_max]: generate the lower-bound instance,
/// enumerate (brute force for L <= 8, fast sweep beyond), and pin every
/// count to its closed form. Closed forms are the ground truth; the
/// enumerated counts are the system under test.
pub fn run_scaling(l_min: usize, l_max: usize) -> Result<ScalingSummary, ExperimentError> {
    assert!(l_min >= 1 && l_min <= l_max);
    let mut rows = Vec::with_capacity(l_max - l_min + 1);
    for l in l_min..=l_max {
        let inst = gen_lower_bound(l)?;
        let enumerator = if l <= 8 {
            Enumerator::Brute
        } else {
            Enumerator::Fast
        };
        let rep = counts_report_with(&inst.points, inst.apex, enumerator)?;
        let lu = l as u64;
        let v_closed = choose(3 * lu, 2);
        debug_assert_eq!(v_closed, 3 * choose(lu, 2) + 3 * lu * lu);
        let i_closed = lu * lu * lu;
        let u_closed = 3 * choose(lu, 3) + 6 * lu * choose(lu, 2);
        let n_removed_closed = choose(3 * lu, 3);
        let checks = [
            ("V", rep.v, v_closed),
            ("I", rep.i, i_closed),
            ("U", rep.u, u_closed),
            ("N_removed", rep.n_delta_without_x, n_removed_closed),
            ("delta", rep.delta, v_closed.abs_diff(i_closed)),
        ];
        for (field, actual, expected) in checks {
            if actual != expected {
                return Err(ExperimentError::ClosedForm {
                    l: lu,
                    field,
                    actual,
                    expected,
                });
            }
        }
        let vf = rep.v as f64;
        let ratio = rep.delta as f64 / (vf * libm::sqrt(vf));
        rows.push(ScalingRow {
            l: lu,
            n: 3 * lu + 1,
            v: rep.v,
            i: rep.i,
            u: rep.u,
            delta: rep.delta,
            v_closed,
            i_closed,
            u_closed,
            ratio,
        });
    }
    let slope_from = ((l_min + l_max) / 2) as u64;
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.l >= slope_from && r.delta > 0)
        .map(|r| (libm::log(r.v as f64), libm::log(r.delta as f64)))
        .collect();
    let slope = if fit.len() >= 2 {
        least_squares_slope(&fit)
    } else {
        f64::NAN
    };
    Ok(ScalingSummary {
        rows,
        slope,
        slope_from,
    })
}

fn serialize_instance(s: &PointSet, apex: usize) -> String {
    let mut out = format!("apex {apex}; points:");
    for p in s.points() {
        out.push_str(&format!(" {} {},", p.x, p.y));
    }
    out
}

/// Checks every theorem-level property of one (P, x) pair; the error string
/// carries the serialized counterexample.
///
/// Checked: the counting identities, Lemma 2 (graph triangles = I_P(x)),
/// Lemma 3 (kite-freeness), the shared-edge-through-x structure of every
/// graph edge, the geometric union property of every graph triangle, the
/// interior-triangle census, monotonicity of empty triangles under removal,
/// and (when a table is supplied) the extremal bound I <= H(V).
///
/// The interior-edge *sharing* constraints of the Proposition-1 argument are
/// deliberately not asserted here: they are hypotheses of that specific
/// contradiction proof, and plain point sets can put an edge in three
/// only-x triangles. [`check_interior_edge_sharing`] reports them separately.
pub fn check_instance(
    s: &PointSet,
    x: usize,
    h_table: Option<&[u64]>,
) -> Result<(), String> {
    let fail = |what: &str| -> String {
        format!("{what} [{}]", serialize_instance(s, x))
    };

    let rep = crate::triangles::counts_report(s, x).map_err(|e| fail(&format!("{e}")))?;
    let empties = enumerate_empty_fast(s);
    let ig = incidence_graph_with_empties(s, x, &empties);

    if ig.graph.vertex_count() as u64 != rep.v {
        return Err(fail("graph vertex count differs from V_P(x)"));
    }
    let nk3 = count_triangles(&ig.graph);
    if nk3 != rep.i {
        return Err(fail(&format!(
            "Lemma 2 identity failed: N_K3 = {nk3}, I_P(x) = {}",
            rep.i
        )));
    }
    if !find_kites(&ig.graph).is_empty() {
        return Err(fail("Lemma 3 failed: incidence graph contains a kite"));
    }

    // Every graph edge joins triangles sharing exactly one edge, through x.
    for (a, b) in ig.graph.edges() {
        let ta = ig.label(a);
        let tb = ig.label(b);
        let common: Vec<usize> = ta
            .indices()
            .into_iter()
            .filter(|&v| tb.contains(v))
            .collect();
        if common.len() != 2 || !common.contains(&x) {
            return Err(fail("graph edge labels do not share exactly one edge through x"));
        }
    }

    // Every graph triangle's labels tile an interior triangle around x.
    for [a, b, c] in list_triangles(&ig.graph) {
        let mut rim: Vec<usize> = Vec::new();
        for t in [ig.label(a), ig.label(b), ig.label(c)] {
            rim.extend(t.indices().into_iter().filter(|&v| v != x));
        }
        rim.sort_unstable();
        let mut distinct = rim.clone();
        distinct.dedup();
        // Three triangles sharing apex x, pairwise sharing an edge, must
        // cover three rim vertices twice each.
        if distinct.len() != 3 || rim.len() != 6 {
            return Err(fail("graph triangle labels do not form a 3-vertex rim"));
        }
        let union = Triangle::new(distinct[0], distinct[1], distinct[2]);
        if interior_multiset(s, union) != alloc::vec![x] {
            return Err(fail(
                "union of graph-triangle labels does not contain exactly the apex",
            ));
        }
    }

    let sharing = check_interior_edge_sharing(s, x);
    if sharing.interior_triangles.len() as u64 != rep.i {
        return Err(fail("interior triangle census differs from I_P(x)"));
    }

    // Empty triangles avoiding x stay empty after x is removed.
    let reduced = s.without(x);
    let reduced_empties = enumerate_empty_fast(&reduced);
    for t in empties.iter().filter(|t| !t.contains(x)) {
        if !reduced_empties.contains(&t.reindex_without(x)) {
            return Err(fail("empty triangle avoiding x vanished after removal"));
        }
    }

    if let Some(table) = h_table {
        let v = rep.v as usize;
        if v < table.len() && rep.i > table[v] {
            return Err(fail(&format!(
                "extremal bound violated: I = {} > H({v}) = {}",
                rep.i, table[v]
            )));
        }
    }
    Ok(())
}

/// Exact H(n) values for n = 0..=max_n, shared across sweep instances.
pub fn h_table(max_n: usize) -> Vec<u64> {
    (0..=max_n)
        .map(|n| {
            max_triangles_kite_free(n)
                .expect("table range within exhaustive limit")
                .h
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub instances: u64,
    pub apexes_checked: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn zero_failures(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Property sweep over seeded random instances, every apex of each.
/// Set sizes cycle through the inclusive n range; per-set seeds derive from
/// the base seed by offset.
pub fn run_property_sweep(
    num_sets: usize,
    n_range: (usize, usize),
    seed: u64,
) -> Result<SweepReport, GeneratorError> {
    let (n_min, n_max) = n_range;
    assert!(3 <= n_min && n_min <= n_max);
    let table = h_table(7);
    let mut report = SweepReport {
        instances: 0,
        apexes_checked: 0,
        violations: Vec::new(),
    };
    for t in 0..num_sets {
        let n = n_min + (t % (n_max - n_min + 1));
        let inst = gen_random(n, seed.wrapping_add(t as u64))?;
        report.instances += 1;
        for x in 0..n {
            report.apexes_checked += 1;
            if let Err(v) = check_instance(&inst.points, x, Some(&table)) {
                report.violations.push(format!("{}: {v}", inst.family));
            }
        }
    }
    Ok(report)
}

/// The fixed generator-family corpus used beside random sweeps: lower-bound
/// L = 1..=5, bipartite pairs up to (4, 4), convex n = 4..=12.
pub fn standard_family_corpus() -> Result<Vec<GeneratedInstance>, GeneratorError> {
    let mut out = Vec::new();
    for l in 1..=5 {
        out.push(gen_lower_bound(l)?);
    }
    for r in 1..=4 {
        for s in r..=4 {
            out.push(gen_bipartite(r, s)?);
        }
    }
    for n in 4..=12 {
        out.push(gen_convex(n)?);
    }
    Ok(out)
}

/// Empty-triangle density N_Δ / n² of one random-family instance.
pub fn density_sample(inst: &GeneratedInstance) -> Result<f64, ExperimentError> {
    match inst.family {
        Family::Random { .. } => {}
        family => return Err(ExperimentError::WrongFamily { family }),
    }
    let n = inst.points.len() as f64;
    let count = enumerate_empty_fast(&inst.points).len() as f64;
    Ok(count / (n * n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub n: usize,
    pub samples: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
}

/// Mean and sample standard deviation of N_Δ / n² over seeded random trials.
pub fn run_random_density(
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DensityReport, ExperimentError> {
    assert!(n >= 50, "density check is meaningful only for n >= 50");
    assert!(trials >= 1);
    let mut samples = Vec::with_capacity(trials);
    for t in 0..trials {
        let inst = gen_random(n, seed.wrapping_add(t as u64))?;
        samples.push(density_sample(&inst)?);
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let std_dev = if samples.len() > 1 {
        let var = samples.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>()
            / (samples.len() - 1) as f64;
        libm::sqrt(var)
    } else {
        0.0
    };
    Ok(DensityReport {
        n,
        samples,
        mean,
        std_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_line() {
        let pts = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)];
        assert!((least_squares_slope(&pts) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scaling_small_range() {
        let summary = run_scaling(1, 6).unwrap();
        assert_eq!(summary.rows.len(), 6);
        let r2 = &summary.rows[1];
        assert_eq!((r2.l, r2.v, r2.i, r2.delta), (2, 15, 8, 7));
        let r4 = &summary.rows[3];
        // L = 4 nearly cancels: v = C(12,2) = 66, i = 64.
        assert_eq!((r4.v, r4.i, r4.delta), (66, 64, 2));
    }

    #[test]
    fn scaling_l20_row() {
        let summary = run_scaling(20, 20).unwrap();
        let row = &summary.rows[0];
        assert_eq!(row.v, 1770);
        assert_eq!(row.i, 8000);
        assert_eq!(row.delta, 6230);
        assert!(row.ratio > 0.07 && row.ratio < 0.12);
    }

    #[test]
    fn sweep_small_corpus_clean() {
        let report = run_property_sweep(5, (4, 8), 42).unwrap();
        assert!(report.zero_failures(), "{:?}", report.violations);
        assert_eq!(report.instances, 5);
    }

    #[test]
    fn density_rejects_wrong_family() {
        let inst = gen_convex(6).unwrap();
        assert!(matches!(
            density_sample(&inst),
            Err(ExperimentError::WrongFamily { .. })
        ));
    }

    #[test]
    fn density_runs_at_min_n() {
        let report = run_random_density(50, 3, 7).unwrap();
        assert_eq!(report.samples.len(), 3);
        assert!(report.mean > 0.5 && report.mean < 5.0);
    }

    #[test]
    fn h_table_prefix() {
        assert_eq!(h_table(5), alloc::vec![0, 0, 0, 1, 1, 2]);
    }
}
