//! Chart assembly: products, conformal rescaling, warped products.

use std::collections::BTreeMap;
use std::sync::Arc;

use scalar_dsl::{fn_field, ConstField, EvalError, Jet2, ScalarField};
use tensor_core::NMAX;

use crate::chart::MetricChart;
use crate::ChartError;

/// A field of `inner.dim()` variables viewed as a field of `dim` variables
/// that ignores everything outside `offset..offset+inner.dim()`.
pub struct EmbedField {
    inner: Arc<dyn ScalarField>,
    dim: usize,
    offset: usize,
}

impl EmbedField {
    pub fn new(inner: Arc<dyn ScalarField>, dim: usize, offset: usize) -> Self {
        assert!(offset + inner.dim() <= dim && dim <= NMAX);
        EmbedField { inner, dim, offset }
    }

    fn slice<'a>(&self, point: &'a [f64]) -> Result<&'a [f64], EvalError> {
        if point.len() != self.dim {
            return Err(EvalError::Dimension { want: self.dim, got: point.len() });
        }
        Ok(&point[self.offset..self.offset + self.inner.dim()])
    }
}

impl ScalarField for EmbedField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        self.inner.value(self.slice(point)?)
    }

    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        let j = self.inner.jet2(self.slice(point)?)?;
        let d = self.inner.dim();
        let mut out = Jet2::constant(self.dim, j.v);
        for a in 0..d {
            out.d[self.offset + a] = j.d[a];
            for b in 0..d {
                out.dd[self.offset + a][self.offset + b] = j.dd[a][b];
            }
        }
        Ok(out)
    }
}

fn merged_params(
    a: &BTreeMap<String, f64>,
    b: &BTreeMap<String, f64>,
) -> Result<BTreeMap<String, f64>, ChartError> {
    let mut out = a.clone();
    for (k, v) in b {
        match out.get(k) {
            Some(prev) if prev != v => {
                return Err(ChartError::ParamConflict { name: k.clone() })
            }
            _ => {
                out.insert(k.clone(), *v);
            }
        }
    }
    Ok(out)
}

fn block_grid(
    a: &MetricChart,
    b: &MetricChart,
    n: usize,
) -> Vec<Arc<dyn ScalarField>> {
    let p = a.n();
    let mut comps: Vec<Arc<dyn ScalarField>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let f: Arc<dyn ScalarField> = if i < p && j < p {
                Arc::new(EmbedField::new(a.component(i, j).clone(), n, 0))
            } else if i >= p && j >= p {
                Arc::new(EmbedField::new(b.component(i - p, j - p).clone(), n, p))
            } else {
                Arc::new(ConstField { dim: n, v: 0.0 })
            };
            comps.push(f);
        }
    }
    comps
}

/// Block-diagonal product of two charts on the concatenated coordinate box.
pub fn product_chart(a: &MetricChart, b: &MetricChart) -> Result<MetricChart, ChartError> {
    let n = a.n() + b.n();
    assert!(n <= NMAX, "product dimension exceeds 4");
    let coords: Vec<String> = a.coords().iter().chain(b.coords()).cloned().collect();
    let domain: Vec<(f64, f64)> = a.domain().iter().chain(b.domain()).copied().collect();
    let comps = block_grid(a, b, n);
    MetricChart::from_fields(
        &format!("({})x({})", a.label(), b.label()),
        coords,
        comps,
        domain,
        merged_params(a.params(), b.params())?,
    )
}

/// Sign check for conformal factors and warping functions: the field must
/// keep one strict sign over the sampled domain.
fn check_sign(
    domain: &[(f64, f64)],
    f: &Arc<dyn ScalarField>,
    what: &str,
    positive_only: bool,
) -> Result<(), ChartError> {
    let mut reference = 0.0f64;
    for p in crate::chart::sample_box(domain, 32, 0x7c) {
        let v = f.value(&p)?;
        if !v.is_finite() || v.abs() < 1e-12 || (positive_only && v < 0.0) {
            return Err(ChartError::NotPositive { what: what.to_string() });
        }
        if reference == 0.0 {
            reference = v;
        } else if reference * v < 0.0 {
            return Err(ChartError::NotPositive { what: what.to_string() });
        }
    }
    Ok(())
}

/// The chart with every component divided by φ², i.e. the metric g/φ² in the
/// same coordinates. φ must be nonvanishing on the domain.
pub fn conformal_scale(
    chart: &MetricChart,
    phi: Arc<dyn ScalarField>,
) -> Result<MetricChart, ChartError> {
    let n = chart.n();
    if phi.dim() != n {
        return Err(ChartError::BadShape { want: n, got: phi.dim() });
    }
    check_sign(chart.domain(), &phi, "conformal factor", false)?;
    let mut comps: Vec<Arc<dyn ScalarField>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let comp = chart.component(i, j).clone();
            let phi = phi.clone();
            comps.push(Arc::new(fn_field(n, move |x: &[f64]| {
                let p = phi.jet2(x)?;
                let c = comp.jet2(x)?;
                c.div(p.mul(p))
                    .map_err(|d| EvalError::Domain { func: d.func, arg: d.arg, offset: 0 })
            })));
        }
    }
    MetricChart::from_fields(
        &format!("conformal({})", chart.label()),
        chart.coords().to_vec(),
        comps,
        chart.domain().to_vec(),
        chart.params().clone(),
    )
}

/// Warped product: the product chart with the fibre block multiplied by f²,
/// where f > 0 lives on the base coordinates.
pub fn warped_chart(
    base: &MetricChart,
    fibre: &MetricChart,
    f: Arc<dyn ScalarField>,
) -> Result<MetricChart, ChartError> {
    let p = base.n();
    let n = p + fibre.n();
    assert!(n <= NMAX, "warped-product dimension exceeds 4");
    if f.dim() != p {
        return Err(ChartError::BadShape { want: p, got: f.dim() });
    }
    let coords: Vec<String> = base.coords().iter().chain(fibre.coords()).cloned().collect();
    let domain: Vec<(f64, f64)> = base.domain().iter().chain(fibre.domain()).copied().collect();
    let warp: Arc<dyn ScalarField> = Arc::new(EmbedField::new(f, n, 0));
    check_sign(&domain, &warp, "warping function", true)?;
    let mut comps = block_grid(base, fibre, n);
    for i in p..n {
        for j in p..n {
            let comp = comps[i * n + j].clone();
            let warp = warp.clone();
            comps[i * n + j] = Arc::new(fn_field(n, move |x: &[f64]| {
                let w = warp.jet2(x)?;
                Ok(comp.jet2(x)?.mul(w.mul(w)))
            }));
        }
    }
    MetricChart::from_fields(
        &format!("warped({},{})", base.label(), fibre.label()),
        coords,
        comps,
        domain,
        merged_params(base.params(), fibre.params())?,
    )
}
