//! Post-hoc consistency checks of a [`Plan`].

use crate::conic::{classify, ConicKind, Relation};
use crate::oracle::trace_cone_footprint;
use crate::planner::{binomial_sigma, coverage_fraction_mc, Plan, CONTAINMENT_SAMPLES};

/// Relative tolerance of the cone-geometry comparison.
pub const CONE_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }
}

/// Runs every check; never stops at the first failure.
pub fn verify_plan(plan: &Plan, samples: usize, seed: u64) -> Vec<Check> {
    vec![
        check_ellipses(plan),
        check_containment(plan),
        check_tangency(plan),
        check_coverage_mc(plan, samples, seed),
        check_cone_geometry(plan),
    ]
}

pub fn check_ellipses(plan: &Plan) -> Check {
    let bad: Vec<usize> = plan
        .conics
        .iter()
        .enumerate()
        .filter(|(_, c)| !(classify(c) == ConicKind::Ellipse && c.discriminant() > 0.0 && c.ellipse_condition() > 0.0))
        .map(|(k, _)| k + 1)
        .collect();
    Check::new(
        "ellipse",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} conics are real ellipses", plan.conics.len())
        } else {
            format!("not an ellipse: UAV {bad:?}")
        },
    )
}

pub fn check_containment(plan: &Plan) -> Check {
    let outside: Vec<usize> =
        plan.footprints().filter(|e| !e.inside(&plan.region, CONTAINMENT_SAMPLES)).map(|e| e.index).collect();
    Check::new(
        "containment",
        outside.is_empty(),
        if outside.is_empty() {
            format!("{} footprints inside the region", plan.placements.len())
        } else {
            format!("outside the region: UAV {outside:?}")
        },
    )
}

/// Every circle pair keeps its relation after mapping, and nothing overlaps.
pub fn check_tangency(plan: &Plan) -> Check {
    let circles = plan.packing.pair_relations();
    let ellipses = plan.footprint_relations();
    let mut problems = Vec::new();
    let mut tangent = 0;
    for ((i, j, rc), (_, _, re)) in circles.iter().zip(&ellipses) {
        if *re == Relation::Tangent {
            tangent += 1;
        }
        if rc != re || *re == Relation::Overlapping {
            problems.push(format!("{}-{}: circles {rc:?}, ellipses {re:?}", i + 1, j + 1));
        }
    }
    Check::new(
        "tangency",
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} pairs preserved ({tangent} tangent)", ellipses.len())
        } else {
            problems.join("; ")
        },
    )
}

/// Monte Carlo coverage of the region agrees with the analytic value to 3σ.
pub fn check_coverage_mc(plan: &Plan, samples: usize, seed: u64) -> Check {
    let mc = coverage_fraction_mc(plan, samples, seed);
    let analytic = plan.region_coverage_fraction;
    let sigma = binomial_sigma(analytic, samples.max(1));
    let diff = (mc - analytic).abs();
    Check::new(
        "coverage_mc",
        diff <= 3.0 * sigma,
        format!("mc={mc:.6} analytic={analytic:.6} |diff|={diff:.2e} 3sigma={:.2e}", 3.0 * sigma),
    )
}

/// The traced cone reproduces each footprint's semi-axes and offset, and
/// `h·tan(ψ±θ) = d ± a`.
pub fn check_cone_geometry(plan: &Plan) -> Check {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for p in &plan.placements {
        let (a, b, h) = (p.footprint.a, p.footprint.b, p.h_opt);
        let d = p.offset.abs();
        let rel = |x: f64, y: f64, scale: f64| (x - y).abs() / scale;
        let errs = match trace_cone_footprint(h, p.psi, p.theta) {
            Some(t) => vec![
                rel(t.a, a, a),
                rel(t.b, b, b),
                rel(t.center_offset, d, a),
                rel(h * (p.psi + p.theta).to_radians().tan(), d + a, d + a),
                rel(h * (p.psi - p.theta).to_radians().tan(), d - a, d + a),
            ],
            None => vec![f64::INFINITY],
        };
        let e = errs.into_iter().fold(0.0, f64::max);
        worst = worst.max(e);
        if e.is_nan() || e > CONE_REL_TOL {
            failures.push(p.footprint.index);
        }
    }
    Check::new(
        "cone_geometry",
        failures.is_empty(),
        if failures.is_empty() {
            format!("max relative error {worst:.2e}")
        } else {
            format!("UAV {failures:?} off by up to {worst:.2e}")
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Environment;
    use crate::geometry::{Point2, Quadrilateral};
    use crate::packing::{PackingConfig, PackingSource};
    use crate::planner::{plan, plan_with, Scenario, Validation};

    fn quad() -> Quadrilateral {
        Quadrilateral::from_coords([[-100.0, -100.0], [200.0, -300.0], [1500.0, 250.0], [50.0, 400.0]]).unwrap()
    }

    #[test]
    fn case_study_plan_passes_everything() {
        let p = plan(&Scenario::new(quad(), 9, 2e9, Environment::suburban())).unwrap();
        for c in verify_plan(&p, 50_000, 42) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn overlapping_packing_fails_tangency() {
        let bad = PackingConfig::new_unchecked(
            0.25,
            vec![Point2::new(0.3, 0.5), Point2::new(0.6, 0.5)],
            PackingSource::External,
        );
        let s = Scenario::new(quad(), 2, 2e9, Environment::suburban()).with_packing(bad);
        let p = plan_with(&s, Validation::Skip).unwrap();
        let t = check_tangency(&p);
        assert!(!t.passed, "{}", t.detail);
    }
}
