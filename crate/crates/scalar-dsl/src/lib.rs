//! A small expression language for metric components, evaluated on jets.
//!
//! Expressions are infix arithmetic over named coordinates with `sin`, `cos`,
//! `tan`, `sec`, `exp`, `log`, `sqrt`, `abs` and rational powers. Evaluation
//! produces an order-2 jet (value, gradient, Hessian) by forward-mode
//! propagation, so chart curvature downstream is exact to roundoff. Order-3
//! data, needed only for divergence-of-Ricci diagnostics, comes from one level
//! of central differencing over order-2 jets.
//!
//! Everything here is an immutable value; fields are `Send + Sync` and safe to
//! evaluate from many threads.

pub mod ast;
pub mod error;
pub mod fd;
pub mod jet;
pub mod lexer;
pub mod parser;

use std::sync::Arc;

pub use ast::{BinOp, Expr, Func};
pub use error::{EvalError, ParseError};
pub use fd::{fd_jet2, fd_jet3};
pub use jet::{Jet2, Jet3, Rat, NMAX};
pub use parser::{parse, parse_with_consts};

fn check_point(dim: usize, point: &[f64]) -> Result<(), EvalError> {
    if point.len() != dim {
        return Err(EvalError::Dimension { want: dim, got: point.len() });
    }
    if point.iter().any(|x| !x.is_finite()) {
        return Err(EvalError::BadPoint);
    }
    Ok(())
}

/// A scalar function of up to four coordinates, with derivatives.
pub trait ScalarField: Send + Sync {
    fn dim(&self) -> usize;

    /// Plain value; cheaper than a jet and usable by the finite-difference
    /// evaluation path.
    fn value(&self, point: &[f64]) -> Result<f64, EvalError>;

    /// Value, gradient and Hessian at `point`.
    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError>;

    /// Order-3 jet; the default differences order-2 jets with step
    /// eps^(1/4)·(1+|x_i|).
    fn jet3(&self, point: &[f64]) -> Result<Jet3, EvalError> {
        check_point(self.dim(), point)?;
        fd_jet3(&|x: &[f64]| self.jet2(x), point)
    }
}

impl<T: ScalarField + ?Sized> ScalarField for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        (**self).value(point)
    }
    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        (**self).jet2(point)
    }
    fn jet3(&self, point: &[f64]) -> Result<Jet3, EvalError> {
        (**self).jet3(point)
    }
}

/// A parsed expression bound to its coordinate list.
#[derive(Clone)]
pub struct ExprField {
    expr: Expr,
    coords: Arc<Vec<String>>,
}

impl ExprField {
    pub fn new(expr: Expr, coords: Arc<Vec<String>>) -> Self {
        assert!(expr.min_dim() <= coords.len() && coords.len() <= NMAX);
        ExprField { expr, coords }
    }

    pub fn parse(src: &str, coords: &[impl AsRef<str>]) -> Result<Self, ParseError> {
        Self::parse_with_consts(src, coords, &[] as &[(&str, f64)])
    }

    pub fn parse_with_consts(
        src: &str,
        coords: &[impl AsRef<str>],
        consts: &[(impl AsRef<str>, f64)],
    ) -> Result<Self, ParseError> {
        let expr = parser::parse_with_consts(src, coords, consts)?;
        let names = coords.iter().map(|c| c.as_ref().to_string()).collect();
        Ok(ExprField { expr, coords: Arc::new(names) })
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    /// Canonical printed form; parses back to the same evaluation behavior.
    pub fn source(&self) -> String {
        self.expr.print(&self.coords)
    }
}

impl std::fmt::Debug for ExprField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExprField({})", self.source())
    }
}

impl ScalarField for ExprField {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        check_point(self.dim(), point)?;
        let v = self.expr.value(point)?;
        if !v.is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(v)
    }

    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        check_point(self.dim(), point)?;
        let j = self.expr.jet2(point)?;
        if !j.is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(j)
    }
}

/// Field backed by a jet-producing closure; used for trajectory-interpolated
/// quantities that have no closed form.
pub struct FnField<F> {
    dim: usize,
    f: F,
}

pub fn fn_field<F>(dim: usize, f: F) -> FnField<F>
where
    F: Fn(&[f64]) -> Result<Jet2, EvalError> + Send + Sync,
{
    assert!(dim <= NMAX);
    FnField { dim, f }
}

impl<F> ScalarField for FnField<F>
where
    F: Fn(&[f64]) -> Result<Jet2, EvalError> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        Ok(self.jet2(point)?.v)
    }

    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        check_point(self.dim, point)?;
        let j = (self.f)(point)?;
        if !j.is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(j)
    }
}

/// Field that only knows its values. `jet2` fails; use the finite-difference
/// path (`fd_jet2` over `value`) instead.
pub struct ValueField<F> {
    dim: usize,
    f: F,
}

pub fn value_field<F>(dim: usize, f: F) -> ValueField<F>
where
    F: Fn(&[f64]) -> Result<f64, EvalError> + Send + Sync,
{
    assert!(dim <= NMAX);
    ValueField { dim, f }
}

impl<F> ScalarField for ValueField<F>
where
    F: Fn(&[f64]) -> Result<f64, EvalError> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        check_point(self.dim, point)?;
        let v = (self.f)(point)?;
        if !v.is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(v)
    }

    fn jet2(&self, _point: &[f64]) -> Result<Jet2, EvalError> {
        Err(EvalError::NoDerivatives)
    }
}

/// Constant function; handy for vanishing off-diagonal metric components.
#[derive(Clone, Copy, Debug)]
pub struct ConstField {
    pub dim: usize,
    pub v: f64,
}

impl ScalarField for ConstField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        check_point(self.dim, point)?;
        Ok(self.v)
    }

    fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        check_point(self.dim, point)?;
        Ok(Jet2::constant(self.dim, self.v))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum JetAny {
    Order2(Jet2),
    Order3(Jet3),
}

/// Evaluate `field` at `point` to the requested derivative order (2 or 3).
pub fn eval_jet(field: &dyn ScalarField, point: &[f64], order: u8) -> Result<JetAny, EvalError> {
    match order {
        2 => Ok(JetAny::Order2(field.jet2(point)?)),
        3 => Ok(JetAny::Order3(field.jet3(point)?)),
        _ => panic!("jet order must be 2 or 3, got {order}"),
    }
}
