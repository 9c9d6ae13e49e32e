//! Ready-made charts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::build::product_chart;
use crate::chart::MetricChart;
use crate::ChartError;

const BOX: (f64, f64) = (-2.0, 2.0);

/// Euclidean space in 1 to 4 coordinates.
pub fn flat(n: usize) -> MetricChart {
    let coords = ["x", "y", "u", "v"];
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push(if i == j { "1" } else { "0" });
        }
    }
    MetricChart::from_exprs(
        &format!("flat{n}"),
        &coords[..n],
        &entries,
        &vec![BOX; n],
        &[],
    )
    .expect("flat chart")
}

fn sphere2_with(rho: f64, coords: (&str, &str), pname: &str) -> MetricChart {
    assert!(rho > 0.0);
    let (t, p) = coords;
    let rr = format!("{pname}^2");
    let ss = format!("{pname}^2*sin({t})^2");
    MetricChart::from_exprs(
        "sphere2",
        &[t, p],
        &[&rr, "0", "0", &ss],
        &[(0.1, std::f64::consts::PI - 0.1), (-3.0, 3.0)],
        &[(pname, rho)],
    )
    .expect("sphere chart")
}

/// Round 2-sphere of radius `rho` in polar coordinates, poles excluded.
pub fn sphere2(rho: f64) -> MetricChart {
    sphere2_with(rho, ("th", "ph"), "rho")
}

fn hyperbolic2_with(rho: f64, coords: (&str, &str), pname: &str) -> MetricChart {
    assert!(rho > 0.0);
    let (x, y) = coords;
    let c = format!("{pname}^2/{y}^2");
    MetricChart::from_exprs(
        "hyperbolic2",
        &[x, y],
        &[&c, "0", "0", &c],
        &[BOX, (0.5, 3.0)],
        &[(pname, rho)],
    )
    .expect("hyperbolic chart")
}

/// Hyperbolic plane of curvature −1/rho², upper-half-plane chart.
pub fn hyperbolic2(rho: f64) -> MetricChart {
    hyperbolic2_with(rho, ("x", "y"), "rho")
}

/// Round 4-sphere of radius `rho` in a stereographic chart; scalar curvature
/// 12/rho².
pub fn sphere4(rho: f64) -> MetricChart {
    assert!(rho > 0.0);
    let c = "(2*rho^2/(rho^2 + x^2 + y^2 + u^2 + v^2))^2";
    let mut entries = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            entries.push(if i == j { c } else { "0" });
        }
    }
    MetricChart::from_exprs(
        "sphere4",
        &["x", "y", "u", "v"],
        &entries,
        &vec![BOX; 4],
        &[("rho", rho)],
    )
    .expect("sphere4 chart")
}

/// Product of two round 2-spheres of radii `r1`, `r2`.
pub fn s2xs2(r1: f64, r2: f64) -> MetricChart {
    product_chart(
        &sphere2_with(r1, ("th", "ph"), "rho1"),
        &sphere2_with(r2, ("th2", "ph2"), "rho2"),
    )
    .expect("sphere product")
    .with_label("s2xs2")
}

/// Product of a round 2-sphere (radius `r1`) and a hyperbolic plane
/// (curvature −1/r2²); scalar-flat when r1 = r2.
pub fn s2xh2(r1: f64, r2: f64) -> MetricChart {
    product_chart(
        &sphere2_with(r1, ("th", "ph"), "rho1"),
        &hyperbolic2_with(r2, ("x", "y"), "rho2"),
    )
    .expect("sphere-hyperbolic product")
    .with_label("s2xh2")
}

/// The homogeneous chart 4a²g = dϑ² + e^{−ϑ}dξ² + e^ϑ(dη² + dζ²) with
/// parameter a ≠ 0. Curvature-homogeneous with Ricci eigenvalue pattern
/// (−3a², a², −a², −a²) and scalar curvature −4a².
pub fn homogeneous(a: f64) -> MetricChart {
    assert!(a != 0.0);
    let d0 = "1/(4*a^2)";
    let d1 = "exp(-th)/(4*a^2)";
    let d2 = "exp(th)/(4*a^2)";
    let entries = [
        d0, "0", "0", "0", //
        "0", d1, "0", "0", //
        "0", "0", d2, "0", //
        "0", "0", "0", d2,
    ];
    MetricChart::from_exprs(
        "homogeneous",
        &["th", "xi", "eta", "zeta"],
        &entries,
        &vec![(-2.5, 2.5); 4],
        &[("a", a)],
    )
    .expect("homogeneous chart")
}

/// A deterministic smooth perturbation of flat 4-space: diagonal entries
/// 1 + 0.02·sin·cos waves, off-diagonal 0.01 waves. Gershgorin keeps it
/// positive definite. Not Einstein, not conformally flat; useful as generic
/// curvature input.
pub fn perturbed_flat4(seed: u64) -> MetricChart {
    let coords = ["x", "y", "u", "v"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut entries = vec![String::new(); 16];
    for i in 0..4 {
        for j in i..4 {
            let amp = if i == j { "0.02" } else { "0.01" };
            let om1 = rng.gen_range(2..5u32);
            let om2 = rng.gen_range(2..5u32);
            let c1 = coords[rng.gen_range(0..4)];
            let c2 = coords[rng.gen_range(0..4)];
            let ph1: f64 = rng.gen_range(0.5..6.0);
            let ph2: f64 = rng.gen_range(0.5..6.0);
            let wave = format!("{amp}*sin({om1}*{c1} + {ph1:?})*cos({om2}*{c2} + {ph2:?})");
            entries[i * 4 + j] = if i == j { format!("1 + {wave}") } else { wave };
            entries[j * 4 + i] = entries[i * 4 + j].clone();
        }
    }
    let refs: Vec<&str> = entries.iter().map(String::as_str).collect();
    MetricChart::from_exprs(
        &format!("perturbed4#{seed}"),
        &coords,
        &refs,
        &vec![BOX; 4],
        &[],
    )
    .expect("perturbed chart")
}

pub fn labels() -> &'static [&'static str] {
    &[
        "flat1",
        "flat2",
        "flat3",
        "flat4",
        "sphere2",
        "sphere4",
        "hyperbolic2",
        "s2xs2",
        "s2xh2",
        "homogeneous",
        "perturbed4",
    ]
}

/// Catalog lookup by label with parameter map; used by the command-line
/// front end. Radii default to 1, `a` to 1, `seed` to 1.
pub fn builtin(label: &str, params: &BTreeMap<String, f64>) -> Result<MetricChart, ChartError> {
    let get = |name: &str, default: f64| params.get(name).copied().unwrap_or(default);
    let positive = |name: &str, default: f64| -> Result<f64, ChartError> {
        let v = get(name, default);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(ChartError::NotPositive { what: format!("parameter {name:?}") })
        }
    };
    match label {
        "flat1" => Ok(flat(1)),
        "flat2" => Ok(flat(2)),
        "flat3" => Ok(flat(3)),
        "flat4" => Ok(flat(4)),
        "sphere2" => Ok(sphere2(positive("rho", 1.0)?)),
        "sphere4" => Ok(sphere4(positive("rho", 1.0)?)),
        "hyperbolic2" => Ok(hyperbolic2(positive("rho", 1.0)?)),
        "s2xs2" => Ok(s2xs2(positive("rho1", 1.0)?, positive("rho2", 1.0)?)),
        "s2xh2" => Ok(s2xh2(positive("rho1", 1.0)?, positive("rho2", 1.0)?)),
        "homogeneous" => {
            let a = get("a", 1.0);
            if a == 0.0 {
                return Err(ChartError::NotPositive { what: "parameter \"a\"".into() });
            }
            Ok(homogeneous(a))
        }
        "perturbed4" => Ok(perturbed_flat4(get("seed", 1.0) as u64)),
        _ => Err(ChartError::UnknownLabel { label: label.to_string() }),
    }
}

/// A representative spread of catalog charts for batch diagnostics.
pub fn standard_set() -> Vec<MetricChart> {
    vec![
        flat(2),
        flat(4),
        sphere2(1.3),
        sphere4(1.0),
        hyperbolic2(0.8),
        s2xs2(1.0, 0.7),
        s2xh2(1.1, 0.9),
        homogeneous(1.0),
        perturbed_flat4(1),
    ]
}
