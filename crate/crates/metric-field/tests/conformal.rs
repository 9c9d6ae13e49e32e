//! Conformal-change laws: scalar/Ricci/Einstein transformation, Weyl
//! invariance, Hessian/Laplacian rescaling, and the split of the Einstein
//! tensor on conformal products with its Weyl spectra.

use std::sync::Arc;

use metric_field::{
    catalog, conformal_scale, covariant_data, curvature_at, product_chart, MetricChart,
};
use scalar_dsl::{ExprField, ScalarField};
use tensor_core::{spectrum3, sym_eigen, weyl_blocks, BivectorFrame, SymMat};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Base chart, conformally scaled chart g = base/phi^2, and the factor field.
fn conf_pair(base: MetricChart, phi_src: &str) -> (MetricChart, MetricChart, ExprField) {
    let coords: Vec<&str> = base.coords().iter().map(|s| s.as_str()).collect();
    let phi = ExprField::parse(phi_src, &coords).unwrap();
    let scaled = conformal_scale(&base, Arc::new(phi.clone())).unwrap();
    (base, scaled, phi)
}

#[test]
fn scalar_ricci_and_einstein_laws() {
    // s = phi^2 sb + 2(n-1) phi lap(phi) - n(n-1) gb(grad phi, grad phi)
    // r = rb + (n-2) phi^{-1} hess(phi) + [phi^{-1} lap(phi) - (n-1) phi^{-2} Q] gb
    // e = eb + (n-2) phi^{-1} [hess(phi) - (lap(phi)/n) gb]
    let cases = vec![
        (catalog::perturbed_flat4(5), "2 + 0.3*sin(x)*cos(y) + 0.1*u"),
        (catalog::sphere4(1.0), "2 + 0.3*sin(x)*cos(y) + 0.1*u"),
        (catalog::hyperbolic2(1.1), "2 + 0.5*sin(x)*sin(y)"),
    ];
    for (base, phi_src) in cases {
        let n = base.n();
        let nf = n as f64;
        let (base, scaled, phi) = conf_pair(base, phi_src);
        for p in base.sample_points(5, 0xc0f) {
            let bp = curvature_at(&base, &p).unwrap();
            let sp = curvature_at(&scaled, &p).unwrap();
            let cd = covariant_data(&base, &phi, &p).unwrap();
            let f = cd.value;

            let s_pred = f * f * bp.scalar + 2.0 * (nf - 1.0) * f * cd.laplacian
                - nf * (nf - 1.0) * cd.grad_sq;
            assert!(close(sp.scalar, s_pred, 1e-7), "scalar law: {} vs {s_pred}", sp.scalar);

            let coef = cd.laplacian / f - (nf - 1.0) * cd.grad_sq / (f * f);
            for i in 0..n {
                for j in 0..n {
                    let r_pred = bp.ricci.m[i][j]
                        + (nf - 2.0) * cd.hessian.m[i][j] / f
                        + coef * bp.g.m[i][j];
                    assert!(close(sp.ricci.m[i][j], r_pred, 1e-7));
                    let e_pred = bp.einstein.m[i][j]
                        + (nf - 2.0) / f
                            * (cd.hessian.m[i][j] - cd.laplacian / nf * bp.g.m[i][j]);
                    assert!(close(sp.einstein.m[i][j], e_pred, 1e-7));
                }
            }
        }
    }
}

#[test]
fn weyl_tensor_is_conformally_invariant() {
    // W^i_jkl of g and of g/phi^2 agree.
    for base in [catalog::perturbed_flat4(5), catalog::s2xh2(1.1, 0.9)] {
        let coords: Vec<&str> = base.coords().iter().map(|s| s.as_str()).collect();
        let src = format!("2 + 0.3*sin({0})*cos({1}) + 0.1*{2}", coords[0], coords[1], coords[3]);
        let (base, scaled, _) = conf_pair(base, &src);
        for p in base.sample_points(5, 0x3e) {
            let bp = curvature_at(&base, &p).unwrap();
            let sp = curvature_at(&scaled, &p).unwrap();
            let mix = |pack: &metric_field::CurvaturePack| {
                let w = pack.weyl.as_ref().unwrap();
                let mut m = [[[[0.0f64; 4]; 4]; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        for k in 0..4 {
                            for l in 0..4 {
                                for a in 0..4 {
                                    m[i][j][k][l] += pack.ginv.m[i][a] * w.r[a][j][k][l];
                                }
                            }
                        }
                    }
                }
                m
            };
            let wb = mix(&bp);
            let ws = mix(&sp);
            let mut sup = 0.0f64;
            let mut gap = 0.0f64;
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        for l in 0..4 {
                            sup = sup.max(wb[i][j][k][l].abs());
                            gap = gap.max((wb[i][j][k][l] - ws[i][j][k][l]).abs());
                        }
                    }
                }
            }
            assert!(sup > 1e-3, "test needs nonzero Weyl");
            assert!(gap < 1e-7 * (1.0 + sup), "mixed Weyl gap {gap:.3e}");
        }
    }
}

#[test]
fn hessian_and_laplacian_rescaling_laws() {
    // For g = gb/chi^2 and any scalar phi:
    //   hess_g(phi) = hess_gb(phi) + chi^{-1}[dchi dphi + dphi dchi - gb(grad chi, grad phi) gb]
    //   lap_g(phi) = chi^2 lap_gb(phi) - (n-2) chi gb(grad chi, grad phi)
    //   g(grad phi, grad phi) = chi^2 gb(grad phi, grad phi)
    let cases = vec![
        (catalog::sphere2(1.0), "2 + 0.3*sin(th)*cos(ph)", "1 + 0.2*sin(ph)"),
        (
            catalog::perturbed_flat4(6),
            "2 + 0.3*sin(x)*cos(y)",
            "1 + 0.2*u*v + 0.1*x",
        ),
    ];
    for (base, chi_src, phi_src) in cases {
        let n = base.n();
        let coords: Vec<&str> = base.coords().iter().map(|s| s.as_str()).collect();
        let phi = ExprField::parse(phi_src, &coords).unwrap();
        let (base, scaled, chi) = conf_pair(base, chi_src);
        for p in base.sample_points(5, 0xdd) {
            let bp = curvature_at(&base, &p).unwrap();
            let cb = covariant_data(&base, &phi, &p).unwrap();
            let cc = covariant_data(&base, &chi, &p).unwrap();
            let cs = covariant_data(&scaled, &phi, &p).unwrap();
            let x = cc.value;

            let mut ip = 0.0;
            for i in 0..n {
                for j in 0..n {
                    ip += bp.ginv.m[i][j] * cc.df[i] * cb.df[j];
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let pred = cb.hessian.m[i][j]
                        + (cc.df[i] * cb.df[j] + cb.df[i] * cc.df[j] - ip * bp.g.m[i][j]) / x;
                    assert!(close(cs.hessian.m[i][j], pred, 1e-7));
                }
            }
            let lap_pred = x * x * cb.laplacian - (n as f64 - 2.0) * x * ip;
            assert!(close(cs.laplacian, lap_pred, 1e-7));
            assert!(close(cs.grad_sq, x * x * cb.grad_sq, 1e-7));
        }
    }
}

struct SplitData {
    hat: MetricChart,
    tilde: MetricChart,
    scaled: MetricChart,
    phi4: ExprField,
}

fn split_2p2(phi4: &str) -> SplitData {
    // Unit sphere and a curvature -1/1.44 hyperbolic plane, radii baked in so
    // the factors carry no clashing parameter names.
    let hat = MetricChart::from_exprs(
        "hat",
        &["th", "ph"],
        &["1", "0", "0", "sin(th)^2"],
        &[(0.1, std::f64::consts::PI - 0.1), (-3.0, 3.0)],
        &[],
    )
    .unwrap();
    let tilde = MetricChart::from_exprs(
        "tilde",
        &["x", "y"],
        &["1.44/y^2", "0", "0", "1.44/y^2"],
        &[(-2.0, 2.0), (0.5, 3.0)],
        &[],
    )
    .unwrap();
    let product = product_chart(&hat, &tilde).unwrap();
    let coords: Vec<&str> = product.coords().iter().map(|s| s.as_str()).collect();
    let phi4 = ExprField::parse(phi4, &coords).unwrap();
    let scaled = conformal_scale(&product, Arc::new(phi4.clone())).unwrap();
    SplitData { hat, tilde, scaled, phi4 }
}

#[test]
fn einstein_split_on_separated_conformal_products() {
    // phi = hat-part + tilde-part makes the factor blocks of e decouple; the
    // blocks obey the split laws and the off-block vanishes.
    let data = split_2p2("2 + 0.2*sin(th) + 0.1*y");
    let hat_field = ExprField::parse("0.2*sin(th)", &["th", "ph"]).unwrap();
    let tilde_field = ExprField::parse("2 + 0.1*y", &["x", "y"]).unwrap();

    for p in data.scaled.sample_points(6, 0xa5) {
        let hat_pt = [p[0], p[1]];
        let tilde_pt = [p[2], p[3]];
        let hp = curvature_at(&data.hat, &hat_pt).unwrap();
        let tp = curvature_at(&data.tilde, &tilde_pt).unwrap();
        let ch = covariant_data(&data.hat, &hat_field, &hat_pt).unwrap();
        let ct = covariant_data(&data.tilde, &tilde_field, &tilde_pt).unwrap();
        let sp = curvature_at(&data.scaled, &p).unwrap();
        let f = data.phi4.value(&p).unwrap();

        let (sh, st) = (hp.scalar, tp.scalar);
        let ysum = ch.laplacian + ct.laplacian;
        let qsum = ch.grad_sq + ct.grad_sq;

        let s_pred = f * f * (sh + st) + 6.0 * f * ysum - 12.0 * qsum;
        assert!(close(sp.scalar, s_pred, 1e-7));

        // xi-hat and xi-tilde, with the p = q cross-check.
        let mean = 0.25 * (sh + st + 2.0 * ysum / f);
        let xi_hat = 0.5 * sh - mean;
        let xi_tilde = 0.5 * st - mean;
        assert!(close(4.0 * xi_hat, sh - st - 2.0 * ysum / f, 1e-10));
        assert!(close(4.0 * xi_tilde, st - sh - 2.0 * ysum / f, 1e-10));

        for a in 0..2 {
            for b in 0..2 {
                let pred = hp.einstein.m[a][b] + 2.0 * ch.hessian.m[a][b] / f
                    + xi_hat * hp.g.m[a][b];
                assert!(close(sp.einstein.m[a][b], pred, 1e-7), "hat block ({a},{b})");
                let pred = tp.einstein.m[a][b] + 2.0 * ct.hessian.m[a][b] / f
                    + xi_tilde * tp.g.m[a][b];
                assert!(
                    close(sp.einstein.m[a + 2][b + 2], pred, 1e-7),
                    "tilde block ({a},{b})"
                );
                assert!(sp.einstein.m[a][b + 2].abs() < 1e-9, "off block ({a},{b})");
            }
        }
    }
}

#[test]
fn einstein_off_block_detects_non_separated_factor()
{
    // A multiplicative phi couples the factors: the off-block of e is visibly
    // nonzero.
    let data = split_2p2("2 + 0.2*sin(th)*y");
    let p = [0.5, 1.0, 0.3, 1.2];
    let sp = curvature_at(&data.scaled, &p).unwrap();
    let mut off = 0.0f64;
    for a in 0..2 {
        for b in 2..4 {
            off = off.max(sp.einstein.m[a][b].abs());
        }
    }
    assert!(off > 1e-4, "off block sup {off:.3e}");
}

/// Oriented g-orthonormal frame aligned with the coordinate axes of a
/// diagonal metric.
fn diag_frame(g: &SymMat) -> [[f64; 4]; 4] {
    let mut u = [[0.0f64; 4]; 4];
    for k in 0..4 {
        u[k][k] = 1.0 / g.m[k][k].sqrt();
    }
    u
}

#[test]
fn conformal_product_2p2_weyl_spectra() {
    // Both halves of the Weyl operator have spectrum
    // phi^2 (s-hat + s-tilde)/12 * (2, -1, -1), for any conformal factor.
    for phi_src in ["2 + 0.2*sin(th) + 0.1*y", "2 + 0.2*sin(th)*y"] {
        let data = split_2p2(phi_src);
        for p in data.scaled.sample_points(4, 0x22) {
            let hp = curvature_at(&data.hat, &[p[0], p[1]]).unwrap();
            let tp = curvature_at(&data.tilde, &[p[2], p[3]]).unwrap();
            let sp = curvature_at(&data.scaled, &p).unwrap();
            let f = data.phi4.value(&p).unwrap();

            let frame = BivectorFrame::from_frame(&diag_frame(&sp.g), &sp.g).unwrap();
            let blocks = weyl_blocks(sp.weyl.as_ref().unwrap(), &sp.g, &frame).unwrap();
            assert!(blocks.cross_sup < 1e-8);

            let sigma = f * f * (hp.scalar + tp.scalar) / 12.0;
            let mut want = [2.0 * sigma, -sigma, -sigma];
            want.sort_by(f64::total_cmp);
            for spec in [spectrum3(&blocks.plus), spectrum3(&blocks.minus)] {
                for k in 0..3 {
                    assert!(
                        (spec[k] - want[k]).abs() < 1e-7 * (1.0 + want[k].abs()),
                        "{phi_src}: spectrum {spec:?} vs {want:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn conformal_product_3p1_weyl_spectra() {
    // For a 3+1 conformal product, both halves of the Weyl operator have
    // eigenvalues -phi^2 theta/2, where theta runs over the eigenvalues of
    // the Einstein tensor of the 3-dimensional factor.
    let hat = product_chart(
        &catalog::sphere2(1.0),
        &MetricChart::from_exprs("line", &["w"], &["1"], &[(-2.0, 2.0)], &[]).unwrap(),
    )
    .unwrap();
    let tilde = MetricChart::from_exprs("line2", &["q"], &["1"], &[(-2.0, 2.0)], &[]).unwrap();
    let product = product_chart(&hat, &tilde).unwrap();
    let coords: Vec<&str> = product.coords().iter().map(|s| s.as_str()).collect();
    let phi4 = ExprField::parse("2 + 0.2*sin(th) + 0.1*w*q", &coords).unwrap();
    let scaled = conformal_scale(&product, Arc::new(phi4.clone())).unwrap();

    for p in scaled.sample_points(4, 0x31) {
        let hp = curvature_at(&hat, &[p[0], p[1], p[2]]).unwrap();
        let sp = curvature_at(&scaled, &p).unwrap();
        let f = phi4.value(&p).unwrap();

        let theta = sym_eigen(&hp.einstein, &hp.g).unwrap();
        let mut want = [0.0f64; 3];
        for k in 0..3 {
            want[k] = -f * f * theta.values[k] / 2.0;
        }
        want.sort_by(f64::total_cmp);

        let frame = BivectorFrame::from_frame(&diag_frame(&sp.g), &sp.g).unwrap();
        let blocks = weyl_blocks(sp.weyl.as_ref().unwrap(), &sp.g, &frame).unwrap();
        assert!(blocks.cross_sup < 1e-8);
        for spec in [spectrum3(&blocks.plus), spectrum3(&blocks.minus)] {
            for k in 0..3 {
                assert!(
                    (spec[k] - want[k]).abs() < 1e-7 * (1.0 + want[k].abs()),
                    "spectrum {spec:?} vs {want:?}"
                );
            }
        }
    }
}
