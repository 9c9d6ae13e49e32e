use crate::error::EvalError;
use crate::jet::{Jet2, Jet3, NMAX};

/// Central-difference order-2 jet built from values only. Step sizes follow
/// the usual truncation/rounding balance: h ~ eps^(1/3) for first derivatives
/// and eps^(1/4) for second, scaled by coordinate magnitude.
pub fn fd_jet2<F>(f: &F, x: &[f64]) -> Result<Jet2, EvalError>
where
    F: Fn(&[f64]) -> Result<f64, EvalError> + ?Sized,
{
    let n = x.len();
    if n > NMAX {
        return Err(EvalError::Dimension { want: NMAX, got: n });
    }
    let eps = f64::EPSILON;
    let h1: Vec<f64> = x.iter().map(|xi| eps.powf(1.0 / 3.0) * (1.0 + xi.abs())).collect();
    let h2: Vec<f64> = x.iter().map(|xi| eps.powf(0.25) * (1.0 + xi.abs())).collect();

    let mut out = Jet2::constant(n, f(x)?);
    let mut p = x.to_vec();
    for i in 0..n {
        p.copy_from_slice(x);
        p[i] = x[i] + h1[i];
        let fp = f(&p)?;
        p[i] = x[i] - h1[i];
        let fm = f(&p)?;
        out.d[i] = (fp - fm) / (2.0 * h1[i]);

        p[i] = x[i] + h2[i];
        let fp2 = f(&p)?;
        p[i] = x[i] - h2[i];
        let fm2 = f(&p)?;
        out.dd[i][i] = (fp2 - 2.0 * out.v + fm2) / (h2[i] * h2[i]);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            p.copy_from_slice(x);
            p[i] = x[i] + h2[i];
            p[j] = x[j] + h2[j];
            let fpp = f(&p)?;
            p[j] = x[j] - h2[j];
            let fpm = f(&p)?;
            p[i] = x[i] - h2[i];
            let fmm = f(&p)?;
            p[j] = x[j] + h2[j];
            let fmp = f(&p)?;
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h2[i] * h2[j]);
            out.dd[i][j] = v;
            out.dd[j][i] = v;
        }
    }
    if !out.is_finite() {
        return Err(EvalError::NonFinite);
    }
    Ok(out)
}

/// Order-3 jet: order-2 part from `jet2`, third derivatives by central
/// differencing of the Hessian. The result is symmetrized over all index
/// orders since mixed FD does not commute exactly.
pub fn fd_jet3<F>(jet2: &F, x: &[f64]) -> Result<Jet3, EvalError>
where
    F: Fn(&[f64]) -> Result<Jet2, EvalError> + ?Sized,
{
    let n = x.len();
    if n > NMAX {
        return Err(EvalError::Dimension { want: NMAX, got: n });
    }
    let eps = f64::EPSILON;
    let center = jet2(x)?;
    let mut out = Jet3 { j: center, ddd: [[[0.0; NMAX]; NMAX]; NMAX] };

    let mut p = x.to_vec();
    let mut raw = [[[0.0; NMAX]; NMAX]; NMAX];
    for k in 0..n {
        let h = eps.powf(0.25) * (1.0 + x[k].abs());
        p.copy_from_slice(x);
        p[k] = x[k] + h;
        let jp = jet2(&p)?;
        p[k] = x[k] - h;
        let jm = jet2(&p)?;
        for i in 0..n {
            for j in 0..n {
                raw[k][i][j] = (jp.dd[i][j] - jm.dd[i][j]) / (2.0 * h);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.ddd[i][j][k] = (raw[i][j][k] + raw[j][i][k] + raw[k][i][j]) / 3.0;
            }
        }
    }
    if !out.is_finite() {
        return Err(EvalError::NonFinite);
    }
    Ok(out)
}
