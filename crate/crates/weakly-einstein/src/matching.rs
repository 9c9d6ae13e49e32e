use crate::SpectralSignature;
use curvature_kit::nine_case_table;
use std::collections::BTreeMap;
use std::fmt;

/// Classification outcome for one signature.
///
/// `flat-type` means both the traceless Ricci and Weyl parts vanish (constant
/// curvature); `einstein` and `conformally-flat` cover the two degenerate
/// solution families; `case-a/b/c` are the proper solution shapes; `table-k`
/// marks a hit on one of the nine closed-form rows, reported by the lowest
/// index among rows sharing the same sorted block spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    FlatType,
    Einstein,
    ConformallyFlat,
    CaseA,
    CaseB,
    CaseC,
    Table(usize),
    None,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::FlatType => write!(f, "flat-type"),
            CaseLabel::Einstein => write!(f, "einstein"),
            CaseLabel::ConformallyFlat => write!(f, "conformally-flat"),
            CaseLabel::CaseA => write!(f, "case-a"),
            CaseLabel::CaseB => write!(f, "case-b"),
            CaseLabel::CaseC => write!(f, "case-c"),
            CaseLabel::Table(i) => write!(f, "table-{i}"),
            CaseLabel::None => write!(f, "none"),
        }
    }
}

/// A label, the fitted parameters, and the worst fit residual.
#[derive(Clone, Debug)]
pub struct CaseMatch {
    pub label: CaseLabel,
    pub params: BTreeMap<String, f64>,
    pub residual: f64,
}

const PERMS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

struct Fit {
    residual: f64,
    c: [f64; 3],
    xi: f64,
}

// Least-squares fit of the block templates (±c2 + o1, ±c3 ± ξ + o2, ±c4 ∓ ξ + o3)
// with offsets (−s/12, −s/12, s/6), over all slot assignments of the two
// sorted spectra.  `with_xi` frees the shear; case A is the s = 0, ξ = 0
// instance.  The shear keeps its sign on both halves.
fn fit_blocks(wp: &[f64; 3], wm: &[f64; 3], s: f64, with_xi: bool) -> Fit {
    let mut best = Fit { residual: f64::INFINITY, c: [0.0; 3], xi: 0.0 };
    for pp in PERMS {
        let a = [wp[pp[0]], wp[pp[1]], wp[pp[2]]];
        for pm in PERMS {
            let b = [wm[pm[0]], wm[pm[1]], wm[pm[2]]];
            let c = [
                (a[0] - b[0]) / 2.0,
                (a[1] - b[1]) / 2.0,
                (a[2] - b[2]) / 2.0,
            ];
            let xi = if with_xi {
                let from_mid = (a[1] + b[1]) / 2.0 + s / 12.0;
                let from_last = s / 6.0 - (a[2] + b[2]) / 2.0;
                0.5 * (from_mid + from_last)
            } else {
                0.0
            };
            let tp = [c[0] - s / 12.0, c[1] + xi - s / 12.0, c[2] - xi + s / 6.0];
            let tm = [-c[0] - s / 12.0, -c[1] + xi - s / 12.0, -c[2] - xi + s / 6.0];
            let mut r = (c[0] + c[1] + c[2]).abs();
            for k in 0..3 {
                r = r.max((a[k] - tp[k]).abs()).max((b[k] - tm[k]).abs());
            }
            if r < best.residual {
                best = Fit { residual: r, c, xi };
            }
        }
    }
    best
}

// Detects a shared block spectrum of the form {σ, −σ/2, −σ/2} on two sorted
// triples; returns the simple eigenvalue and the shape residual.
fn shared_degenerate(wp: &[f64; 3], wm: &[f64; 3]) -> (f64, f64) {
    let mut halves = 0.0f64;
    let mut t = [0.0; 3];
    for k in 0..3 {
        halves = halves.max((wp[k] - wm[k]).abs());
        t[k] = 0.5 * (wp[k] + wm[k]);
    }
    // the simple eigenvalue sits at one end of the sorted triple
    let low = (t[1] - t[2])
        .abs()
        .max((t[1] + t[0] / 2.0).abs())
        .max((t[2] + t[0] / 2.0).abs());
    let high = (t[0] - t[1])
        .abs()
        .max((t[0] + t[2] / 2.0).abs())
        .max((t[1] + t[2] / 2.0).abs());
    if low <= high {
        (t[0], halves.max(low))
    } else {
        (t[2], halves.max(high))
    }
}

fn sigma_membership(sigma: f64, s: f64) -> f64 {
    (sigma + s / 3.0)
        .abs()
        .min((sigma + s / 12.0).abs())
        .min((sigma - s / 6.0).abs())
}

/// Classifies a signature against the solution shapes.
///
/// Tolerances are absolute, scaled by 1 + |s|.  Constant-curvature data
/// short-circuits to `flat-type`; vanishing traceless Ricci or Weyl parts
/// give `einstein` / `conformally-flat`; otherwise the Ricci spectrum decides
/// between the proper shapes and the block spectra are fitted over every slot
/// assignment.  When both halves share a degenerate spectrum and s ≠ 0, the
/// simple eigenvalue must lie in {−s/3, −s/12, s/6}; its gap is folded into
/// the residual.
pub fn match_case(sig: &SpectralSignature, tol: f64) -> CaseMatch {
    let s = sig.scalar;
    let ts = tol * (1.0 + s.abs());
    let e = sig.e_spec;
    let wp = sig.wplus_spec;
    let wm = sig.wminus_spec;
    let e_sup = e.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let w_sup = wp.iter().chain(wm.iter()).fold(0.0f64, |a, x| a.max(x.abs()));

    let mut params = BTreeMap::new();
    params.insert("s".to_string(), s);

    if e_sup <= ts && w_sup <= ts {
        return CaseMatch {
            label: CaseLabel::FlatType,
            params,
            residual: e_sup.max(w_sup),
        };
    }
    if e_sup <= ts {
        return CaseMatch { label: CaseLabel::Einstein, params, residual: e_sup };
    }
    if w_sup <= ts {
        return CaseMatch { label: CaseLabel::ConformallyFlat, params, residual: w_sup };
    }

    // proper solutions from here on; the Ricci spectrum picks the shape
    let b_shape = (e[0] + e[3]).abs().max((e[1] + e[2]).abs());
    let c_shape = b_shape.max((e[0] - e[1]).abs()).max((e[2] - e[3]).abs());

    if c_shape <= ts {
        let lambda = (e[2] + e[3] - e[0] - e[1]) / 4.0;
        params.insert("lambda".to_string(), lambda);
        if s != 0.0 {
            if let Ok(table) = nine_case_table(s) {
                for row in &table {
                    let mut rp = row.wplus_at(s);
                    let mut rm = row.wminus_at(s);
                    rp.sort_by(f64::total_cmp);
                    rm.sort_by(f64::total_cmp);
                    let mut r = c_shape;
                    for k in 0..3 {
                        r = r.max((wp[k] - rp[k]).abs()).max((wm[k] - rm[k]).abs());
                    }
                    if r <= ts {
                        let (c, xi) = row.params_at(s);
                        for (k, v) in c.iter().enumerate() {
                            params.insert(format!("c{}", k + 2), *v);
                        }
                        params.insert("xi".to_string(), xi);
                        params.insert("sigma".to_string(), row.sigma_at(s));
                        return CaseMatch { label: CaseLabel::Table(row.index), params, residual: r };
                    }
                }
            }
        }
        let fit = fit_blocks(&wp, &wm, s, true);
        let mut r = fit.residual.max(c_shape);
        if r <= ts {
            params.insert("c2".to_string(), fit.c[0]);
            params.insert("c3".to_string(), fit.c[1]);
            params.insert("c4".to_string(), fit.c[2]);
            params.insert("xi".to_string(), fit.xi);
            let (sigma, shape) = shared_degenerate(&wp, &wm);
            if s != 0.0 && shape <= ts {
                params.insert("sigma".to_string(), sigma);
                r = r.max(sigma_membership(sigma, s));
            }
            if r <= ts {
                return CaseMatch { label: CaseLabel::CaseC, params, residual: r };
            }
        }
        return CaseMatch { label: CaseLabel::None, params: BTreeMap::new(), residual: r };
    }

    if s.abs() <= ts {
        // scalar-flat without double Ricci pairs; blocks are exactly opposite
        let fit = fit_blocks(&wp, &wm, 0.0, false);
        let r = fit.residual.max(s.abs());
        if r <= ts {
            params.insert("c2".to_string(), fit.c[0]);
            params.insert("c3".to_string(), fit.c[1]);
            params.insert("c4".to_string(), fit.c[2]);
            for (k, mu) in e.iter().enumerate() {
                params.insert(format!("mu{}", k + 1), *mu);
            }
            return CaseMatch { label: CaseLabel::CaseA, params, residual: r };
        }
        return CaseMatch { label: CaseLabel::None, params: BTreeMap::new(), residual: r };
    }

    if b_shape <= ts {
        let lambda = (e[3] - e[0]) / 2.0;
        let mu = (e[2] - e[1]) / 2.0;
        let fit = fit_blocks(&wp, &wm, s, false);
        let mut r = fit.residual.max(b_shape);
        if r <= ts {
            params.insert("lambda".to_string(), lambda);
            params.insert("mu".to_string(), mu);
            params.insert("c2".to_string(), fit.c[0]);
            params.insert("c3".to_string(), fit.c[1]);
            params.insert("c4".to_string(), fit.c[2]);
            let (sigma, shape) = shared_degenerate(&wp, &wm);
            if shape <= ts {
                params.insert("sigma".to_string(), sigma);
                r = r.max(sigma_membership(sigma, s));
            }
            if r <= ts {
                return CaseMatch { label: CaseLabel::CaseB, params, residual: r };
            }
        }
        return CaseMatch { label: CaseLabel::None, params: BTreeMap::new(), residual: r };
    }

    CaseMatch { label: CaseLabel::None, params: BTreeMap::new(), residual: b_shape }
}
