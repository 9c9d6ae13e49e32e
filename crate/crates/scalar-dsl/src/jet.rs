//! Order-2 jets: value, gradient and symmetric Hessian of a scalar quantity,
//! propagated exactly (to roundoff) through arithmetic and elementary functions.
//!
//! Dimensions never exceed 4, so storage is fixed-size and `Copy`.

use crate::error::DomainIssue;
use num_rational::Ratio;

pub const NMAX: usize = 4;

pub type Rat = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub n: usize,
    pub v: f64,
    pub d: [f64; NMAX],
    pub dd: [[f64; NMAX]; NMAX],
}

/// Order-3 extension. `ddd` is fully symmetric; it is produced by one level of
/// central differencing over order-2 jets, never by closed-form arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet3 {
    pub j: Jet2,
    pub ddd: [[[f64; NMAX]; NMAX]; NMAX],
}

impl Jet2 {
    pub fn constant(n: usize, v: f64) -> Self {
        Jet2 { n, v, d: [0.0; NMAX], dd: [[0.0; NMAX]; NMAX] }
    }

    /// The coordinate function `x_idx` at value `x`.
    pub fn var(n: usize, idx: usize, x: f64) -> Self {
        assert!(idx < n && n <= NMAX);
        let mut j = Self::constant(n, x);
        j.d[idx] = 1.0;
        j
    }

    pub fn add(self, o: Jet2) -> Jet2 {
        debug_assert_eq!(self.n, o.n);
        let mut r = self;
        r.v += o.v;
        for i in 0..self.n {
            r.d[i] += o.d[i];
            for j in 0..self.n {
                r.dd[i][j] += o.dd[i][j];
            }
        }
        r
    }

    pub fn sub(self, o: Jet2) -> Jet2 {
        self.add(o.neg())
    }

    pub fn neg(self) -> Jet2 {
        let mut r = self;
        r.v = -r.v;
        for i in 0..self.n {
            r.d[i] = -r.d[i];
            for j in 0..self.n {
                r.dd[i][j] = -r.dd[i][j];
            }
        }
        r
    }

    pub fn scale(self, k: f64) -> Jet2 {
        let mut r = self;
        r.v *= k;
        for i in 0..self.n {
            r.d[i] *= k;
            for j in 0..self.n {
                r.dd[i][j] *= k;
            }
        }
        r
    }

    pub fn mul(self, o: Jet2) -> Jet2 {
        debug_assert_eq!(self.n, o.n);
        let n = self.n;
        let mut r = Jet2::constant(n, self.v * o.v);
        for i in 0..n {
            r.d[i] = self.d[i] * o.v + self.v * o.d[i];
            for j in 0..n {
                r.dd[i][j] = self.dd[i][j] * o.v
                    + self.v * o.dd[i][j]
                    + self.d[i] * o.d[j]
                    + self.d[j] * o.d[i];
            }
        }
        r
    }

    pub fn div(self, o: Jet2) -> Result<Jet2, DomainIssue> {
        if o.v == 0.0 {
            return Err(DomainIssue { func: "division", arg: 0.0 });
        }
        Ok(self.mul(o.recip()))
    }

    fn recip(self) -> Jet2 {
        let iv = 1.0 / self.v;
        self.lift(iv, -iv * iv, 2.0 * iv * iv * iv)
    }

    /// Chain rule for a smooth unary `f` with `f(v), f'(v), f''(v)` given.
    fn lift(self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let n = self.n;
        let mut r = Jet2::constant(n, f0);
        for i in 0..n {
            r.d[i] = f1 * self.d[i];
            for j in 0..n {
                r.dd[i][j] = f1 * self.dd[i][j] + f2 * self.d[i] * self.d[j];
            }
        }
        r
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.lift(s, c, -s)
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        self.lift(c, -s, -c)
    }

    pub fn tan(self) -> Result<Jet2, DomainIssue> {
        if self.v.cos().abs() < 1e-9 {
            return Err(DomainIssue { func: "tan", arg: self.v });
        }
        let t = self.v.tan();
        let s2 = 1.0 + t * t;
        Ok(self.lift(t, s2, 2.0 * t * s2))
    }

    pub fn sec(self) -> Result<Jet2, DomainIssue> {
        let c = self.v.cos();
        if c.abs() < 1e-9 {
            return Err(DomainIssue { func: "sec", arg: self.v });
        }
        let s = 1.0 / c;
        let t = self.v.tan();
        Ok(self.lift(s, s * t, s * (t * t + s * s)))
    }

    pub fn exp(self) -> Jet2 {
        let e = self.v.exp();
        self.lift(e, e, e)
    }

    pub fn ln(self) -> Result<Jet2, DomainIssue> {
        if self.v <= 0.0 {
            return Err(DomainIssue { func: "log", arg: self.v });
        }
        let iv = 1.0 / self.v;
        Ok(self.lift(self.v.ln(), iv, -iv * iv))
    }

    pub fn sqrt(self) -> Result<Jet2, DomainIssue> {
        if self.v <= 0.0 {
            return Err(DomainIssue { func: "sqrt", arg: self.v });
        }
        let s = self.v.sqrt();
        Ok(self.lift(s, 0.5 / s, -0.25 / (s * self.v)))
    }

    pub fn abs(self) -> Result<Jet2, DomainIssue> {
        if self.v == 0.0 {
            return Err(DomainIssue { func: "abs", arg: 0.0 });
        }
        let s = self.v.signum();
        Ok(self.lift(self.v.abs(), s, 0.0))
    }

    /// `self` raised to the rational exponent `r`. Integer exponents work for
    /// any base (nonzero base when negative); fractional ones need a positive
    /// base.
    pub fn powr(self, r: Rat) -> Result<Jet2, DomainIssue> {
        let (p, q) = (*r.numer(), *r.denom());
        if q == 1 {
            return self.powi(p);
        }
        if self.v <= 0.0 {
            return Err(DomainIssue { func: "power", arg: self.v });
        }
        let e = p as f64 / q as f64;
        let f0 = self.v.powf(e);
        let f1 = e * self.v.powf(e - 1.0);
        let f2 = e * (e - 1.0) * self.v.powf(e - 2.0);
        Ok(self.lift(f0, f1, f2))
    }

    fn powi(self, p: i64) -> Result<Jet2, DomainIssue> {
        if p < 0 && self.v == 0.0 {
            return Err(DomainIssue { func: "power", arg: 0.0 });
        }
        if p == 0 {
            return Ok(Jet2::constant(self.n, 1.0));
        }
        let f0 = self.v.powi(p as i32);
        let f1 = p as f64 * self.v.powi(p as i32 - 1);
        let c2 = (p * (p - 1)) as f64;
        let f2 = if c2 == 0.0 { 0.0 } else { c2 * self.v.powi(p as i32 - 2) };
        Ok(self.lift(f0, f1, f2))
    }

    pub fn is_finite(&self) -> bool {
        if !self.v.is_finite() {
            return false;
        }
        for i in 0..self.n {
            if !self.d[i].is_finite() {
                return false;
            }
            for j in 0..self.n {
                if !self.dd[i][j].is_finite() {
                    return false;
                }
            }
        }
        true
    }
}

impl Jet3 {
    pub fn is_finite(&self) -> bool {
        if !self.j.is_finite() {
            return false;
        }
        let n = self.j.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.ddd[i][j][k].is_finite() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
