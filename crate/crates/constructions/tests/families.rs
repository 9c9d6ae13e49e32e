//! Conformal-product families from the profile and exponent flows: measured
//! signatures against closed-form predictions, classification of the runs,
//! rejection of collapsed inputs and a positive floor on the
//! curvature-divergence residual away from the Einstein subfamily.

use constructions::{harmonic_family, profile_family, BuildError, ConstructedMetric};
use metric_field::curvature_divergence_residual;
use ode_solver::{FamilyClass, Variant};

fn assert_matches(m: &ConstructedMetric, count: usize, seed: u64) {
    for x in m.chart.sample_points(count, seed) {
        let ck = m.check_at(&x, 1e-6).expect("signature");
        assert!(ck.signature.direct_residual < 1e-9, "direct {}", ck.signature.direct_residual);
        assert!(ck.signature.weyl_residual < 1e-9, "weyl {}", ck.signature.weyl_residual);
        assert!(ck.scalar_err < 1e-9, "scalar {}", ck.scalar_err);
        assert!(ck.e_err < 1e-9, "e {}", ck.e_err);
        assert!(ck.w_err < 1e-9, "w {}", ck.w_err);
    }
}

#[test]
fn first_variant_runs_match_predictions() {
    let runs: [(f64, (f64, f64, f64), (f64, f64), FamilyClass); 5] = [
        (0.0, (1.0, 1.0, 0.0), (0.0, 0.8), FamilyClass::Homogeneous),
        (1.0, (1.0, 0.3, 0.1), (0.0, 0.5), FamilyClass::Proper),
        (-1.0, (1.0, 0.5, -0.2), (0.0, 0.5), FamilyClass::Proper),
        (0.0, (1.0, 0.5, 0.3), (0.0, 0.5), FamilyClass::Proper),
        (0.5, (1.2, -0.4, 0.3), (0.0, 0.5), FamilyClass::Proper),
    ];
    for (c, init, span, class) in runs {
        let m = profile_family(Variant::I, c, init, span, 1e-9).expect("family");
        assert_eq!(m.family, "profile-i");
        assert_eq!(m.class, class, "c={c} init={init:?}");
        assert_matches(&m, 6, 21);
    }
}

#[test]
fn second_variant_runs_match_predictions() {
    let runs: [(f64, (f64, f64, f64), (f64, f64)); 5] = [
        (1.0, (1.0, 0.5, 0.3), (0.0, 0.5)),
        (0.0, (1.0, 0.5, -1.0), (0.0, 0.4)),
        (-1.0, (1.0, 0.3, 0.5), (0.0, 0.5)),
        (2.0, (1.0, -0.3, 0.4), (0.0, 0.5)),
        (0.5, (0.8, 0.4, 0.1), (0.0, 0.5)),
    ];
    for (c, init, span) in runs {
        let m = profile_family(Variant::II, c, init, span, 1e-9).expect("family");
        assert_eq!(m.family, "profile-ii");
        assert_eq!(m.class, FamilyClass::Proper, "c={c} init={init:?}");
        assert_matches(&m, 6, 31);
    }
}

#[test]
fn exponential_profiles_classify_as_einstein() {
    // phi = e^t solves both profile equations at c = 1 and degenerates the
    // family: all four invariants vanish identically.
    for variant in [Variant::I, Variant::II] {
        let m = profile_family(variant, 1.0, (1.0, 1.0, 1.0), (0.0, 0.5), 1e-9).expect("family");
        assert_eq!(m.class, FamilyClass::Einstein, "{variant:?}");
        for x in m.chart.sample_points(3, 91) {
            let ck = m.check_at(&x, 1e-6).expect("signature");
            assert!(ck.signature.direct_residual < 1e-12);
            assert!(m.predicted.scalar_at(&x).abs() < 1e-12);
            assert!(m.predicted.lambda_at(&x).abs() < 1e-12);
        }
    }
}

#[test]
fn harmonic_runs_match_predictions() {
    let runs: [(f64, (f64, f64), (f64, f64)); 5] = [
        (-1.0, (0.1, 0.5), (0.0, 0.55)),
        (-1.0, (0.2, -0.3), (-0.5, 0.5)),
        (0.5, (0.1, 0.4), (0.0, 0.8)),
        (1.0, (0.3, 0.2), (0.0, 0.7)),
        (2.0, (-0.2, 0.1), (-0.6, 0.4)),
    ];
    for (c, init, span) in runs {
        let m = harmonic_family(c, init, span, (-0.5, 0.5), 1e-9).expect("family");
        assert_eq!(m.family, "harmonic");
        assert_eq!(m.class, FamilyClass::Proper, "c={c} init={init:?}");
        assert_matches(&m, 6, 41);
    }
}

#[test]
fn harmonic_rejects_the_log_solution() {
    // kappa = -log cos y with rest data reproduces the log profile exactly;
    // the construction degenerates there.
    match harmonic_family(1.0, (0.0, 0.0), (0.0, 0.7), (-0.5, 0.5), 1e-9) {
        Err(BuildError::Degenerate { what }) => assert!(what.contains("log"), "{what}"),
        other => panic!("expected a degenerate rejection, got {:?}", other.map(|m| m.family)),
    }
}

#[test]
fn harmonic_rejects_vanishing_deviation() {
    // Rest data at y = 0 starts the deviation channel at exactly zero.
    match harmonic_family(-1.0, (0.0, 0.0), (0.0, 0.7), (-0.5, 0.5), 1e-9) {
        Err(BuildError::Degenerate { what }) => assert!(what.contains("deviation"), "{what}"),
        other => panic!("expected a degenerate rejection, got {:?}", other.map(|m| m.family)),
    }
}

#[test]
fn proper_runs_clear_the_divergence_floor() {
    // Proper members are never Einstein, so div r - ds/4 stays away from
    // zero; 0.1 is a frozen floor for these runs at these sample points.
    let mut charts = Vec::new();
    charts.push(
        profile_family(Variant::I, 1.0, (1.0, 0.3, 0.1), (0.0, 0.5), 1e-9).expect("family").chart,
    );
    charts.push(
        profile_family(Variant::II, 0.5, (0.8, 0.4, 0.1), (0.0, 0.5), 1e-9).expect("family").chart,
    );
    charts.push(
        harmonic_family(-1.0, (0.2, -0.3), (-0.5, 0.5), (-0.5, 0.5), 1e-9).expect("family").chart,
    );
    charts.push(
        harmonic_family(1.0, (0.3, 0.2), (0.0, 0.7), (-0.5, 0.5), 1e-9).expect("family").chart,
    );
    for chart in &charts {
        for x in chart.sample_points(4, 22) {
            let r = curvature_divergence_residual(chart, &x).expect("residual");
            assert!(r > 0.1, "{}: residual {r}", chart.label());
        }
    }
}
