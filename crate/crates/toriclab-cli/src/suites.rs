//! Verification suites behind `toriclab verify`: curated checks that
//! recompute library claims from scratch and emit one case row per check.
//! Every suite is deterministic for a fixed seed, so its machine output can
//! be compared byte for byte across runs and thread counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toriclab::ffield::{FieldElement, FieldSpec};
use toriclab::minklen::{
    minkowski_length, predicted_length_quad_clipped, scaled_exceptional_length, SearchBudget,
};
use toriclab::polytope::{LatticePoint, LatticePolytope};
use toriclab::toric::{
    build_code, min_distance_exhaustive, predicted_min_dist_staircase, predicted_min_dist_zonotope,
    Prediction, ToricError,
};
use toriclab::vandermonde::{
    find_staircase, random_staircase, random_torus_subset, staircase_size, threshold_size,
    verify_block_structure, BlockReport,
};

use crate::report::{CaseResult, VerificationReport};

fn roomy() -> SearchBudget {
    SearchBudget { max_lattice_points: 300, max_directions: 512 }
}

fn case(name: String, passed: bool, detail: String) -> CaseResult {
    CaseResult { name, passed, detail }
}

fn torus(field: &FieldSpec) -> Vec<(FieldElement, FieldElement)> {
    let units = field.units();
    units.iter().flat_map(|&x| units.iter().map(move |&y| (x, y))).collect()
}

/// Closed-form Minkowski lengths against the exhaustive search: a sweep of
/// clipped quads plus simplex and exceptional-triangle dilates.
pub fn minkowski(seed: u64) -> VerificationReport {
    let budget = roomy();
    let mut cases = Vec::new();
    for m in 0..=1i64 {
        for n in 0..=1i64 {
            for l in 0..=2i64 {
                for s in 0..=1i64 {
                    for r in 0..=2i64 {
                        let name = format!("quad:{m},{n},{l},{s},{r}");
                        let p = LatticePolytope::quad_clipped(m, n, l, s, r).unwrap();
                        let want = predicted_length_quad_clipped(m, n, l, s, r).unwrap();
                        cases.push(match minkowski_length(&p, &budget) {
                            Ok((got, _)) => case(
                                name,
                                got as i64 == want,
                                format!("search {got}, closed form {want}"),
                            ),
                            Err(e) => case(name, false, e.to_string()),
                        });
                    }
                }
            }
        }
    }
    for t in 0..=4i64 {
        let name = format!("simplex:{t}");
        let p = LatticePolytope::simplex(t).unwrap();
        cases.push(match minkowski_length(&p, &budget) {
            Ok((got, _)) => case(name, got as i64 == t, format!("search {got}, closed form {t}")),
            Err(e) => case(name, false, e.to_string()),
        });
    }
    for t in 0..=4i64 {
        let name = format!("t0:{t}");
        let p = LatticePolytope::exceptional_triangle(t).unwrap();
        let want = scaled_exceptional_length(t).unwrap();
        cases.push(match minkowski_length(&p, &budget) {
            Ok((got, _)) => {
                case(name, got as i64 == want, format!("search {got}, closed form {want}"))
            }
            Err(e) => case(name, false, e.to_string()),
        });
    }
    VerificationReport::new("minkowski", seed, cases)
}

fn distance_case(
    name: String,
    p: &LatticePolytope,
    q: u32,
    budget: u64,
    pred: Result<Prediction, ToricError>,
) -> CaseResult {
    let pred = match pred {
        Ok(pred) => pred,
        Err(e) => return case(name, false, e.to_string()),
    };
    let code = match build_code(p, q) {
        Ok(code) => code,
        Err(e) => return case(name, false, e.to_string()),
    };
    match min_distance_exhaustive(&code, budget) {
        Ok(res) => case(
            name,
            res.d as i64 == pred.d && pred.hypothesis_satisfied,
            format!(
                "exhaustive {}, predicted {}, hypothesis {}, steps {}",
                res.d, pred.d, pred.hypothesis_satisfied, res.steps
            ),
        ),
        Err(e) => case(name, false, e.to_string()),
    }
}

/// Exhaustive minimum distances against the closed forms, on cases where the
/// prediction hypotheses hold.
pub fn mindist(seed: u64, budget: u64) -> VerificationReport {
    let mut cases = Vec::new();
    for q in [4u32, 5, 7] {
        let p = LatticePolytope::staircase(1).unwrap();
        cases.push(distance_case(
            format!("stair:1 q={q}"),
            &p,
            q,
            budget,
            predicted_min_dist_staircase(1, q),
        ));
    }
    let z = LatticePolytope::zonotope(0, 0, 1).unwrap();
    cases.push(distance_case(
        "zono:0,0,1 q=41".into(),
        &z,
        41,
        budget,
        predicted_min_dist_zonotope(0, 0, 1, 41),
    ));
    let z = LatticePolytope::zonotope(1, 0, 1).unwrap();
    cases.push(distance_case(
        "zono:1,0,1 q=43".into(),
        &z,
        43,
        budget,
        predicted_min_dist_zonotope(1, 0, 1, 43),
    ));
    VerificationReport::new("mindist", seed, cases)
}

/// Staircase configurations: the full torus always contains one of the
/// nominal size, and random subsets at the threshold size always contain one.
pub fn staircase(seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for (l, q) in [(1u32, 5u32), (1, 7), (2, 9)] {
        let name = format!("torus:l={l} q={q}");
        let field = FieldSpec::new(q).unwrap();
        cases.push(match find_staircase(&field, l, &torus(&field)) {
            Ok(Some(config)) => {
                let ok = config.size() as u64 == staircase_size(l);
                case(name, ok, config.to_string())
            }
            Ok(None) => case(name, false, "no configuration found".into()),
            Err(e) => case(name, false, e.to_string()),
        });
    }
    for (l, q) in [(1u32, 7u32), (2, 11)] {
        let field = FieldSpec::new(q).unwrap();
        let size = threshold_size(l, q);
        for i in 0..10 {
            let name = format!("threshold:l={l} q={q} [{i:02}]");
            let subset = random_torus_subset(&field, size, &mut rng).unwrap();
            cases.push(match find_staircase(&field, l, &subset) {
                Ok(Some(_)) => case(name, true, format!("found in {size} points")),
                Ok(None) => case(name, false, format!("no staircase in {size} points")),
                Err(e) => case(name, false, e.to_string()),
            });
        }
    }
    VerificationReport::new("staircase", seed, cases)
}

fn block_detail(r: &BlockReport) -> String {
    format!(
        "zero pattern {}, diagonal blocks {}, det(V) nonzero {}, det(A) one {}",
        r.zero_pattern_ok, r.diagonal_blocks_ok, r.det_v_nonzero, r.det_a_is_one
    )
}

/// Block triangular structure of staircase evaluation matrices, on greedy
/// full-torus configurations and on random ones.
pub fn vandermonde(seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for (l, q) in [(1u32, 5u32), (1, 7), (2, 9)] {
        let name = format!("torus:l={l} q={q}");
        let field = FieldSpec::new(q).unwrap();
        cases.push(match find_staircase(&field, l, &torus(&field)) {
            Ok(Some(config)) => match verify_block_structure(&config, &field) {
                Ok(report) => case(name, report.all_ok(), block_detail(&report)),
                Err(e) => case(name, false, e.to_string()),
            },
            Ok(None) => case(name, false, "no configuration found".into()),
            Err(e) => case(name, false, e.to_string()),
        });
    }
    for (l, q) in [(1u32, 8u32), (2, 11)] {
        let field = FieldSpec::new(q).unwrap();
        for i in 0..5 {
            let name = format!("random:l={l} q={q} [{i}]");
            cases.push(match random_staircase(&field, l, &mut rng) {
                Ok(config) => match verify_block_structure(&config, &field) {
                    Ok(report) => case(name, report.all_ok(), block_detail(&report)),
                    Err(e) => case(name, false, e.to_string()),
                },
                Err(e) => case(name, false, e.to_string()),
            });
        }
    }
    VerificationReport::new("vandermonde", seed, cases)
}

/// Monotonicity under taking subsets: the hull of any subset of a host's
/// lattice points keeps both its boundary count and its Minkowski length
/// within the host's, on hosts where the search leans on those bounds.
pub fn boundary(seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = roomy();
    let mut cases = Vec::new();
    for (m, n, l, s, r) in [(1i64, 1, 1, 1, 1), (2, 0, 1, 0, 2), (1, 0, 0, 2, 1)] {
        let host = LatticePolytope::quad_clipped(m, n, l, s, r).unwrap();
        let host_boundary = host.boundary_lattice_points().len();
        let (host_len, _) = minkowski_length(&host, &budget).unwrap();
        let pts = host.lattice_points();
        for i in 0..20 {
            let name = format!("quad:{m},{n},{l},{s},{r} [{i:02}]");
            let subset: Vec<LatticePoint> =
                pts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if subset.is_empty() {
                cases.push(case(name, true, "empty subset, nothing to check".into()));
                continue;
            }
            let hull = LatticePolytope::convex_hull(&subset).unwrap();
            let hull_boundary = hull.boundary_lattice_points().len();
            cases.push(match minkowski_length(&hull, &budget) {
                Ok((hull_len, _)) => case(
                    name,
                    hull_boundary <= host_boundary && hull_len <= host_len,
                    format!(
                        "boundary {hull_boundary} <= {host_boundary}, \
                         length {hull_len} <= {host_len}"
                    ),
                ),
                Err(e) => case(name, false, e.to_string()),
            });
        }
    }
    VerificationReport::new("boundary", seed, cases)
}
