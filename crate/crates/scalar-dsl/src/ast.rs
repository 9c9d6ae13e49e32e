use crate::error::{DomainIssue, EvalError};
use crate::jet::{Jet2, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sec,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sec => "sec",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sec" => Func::Sec,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// Parsed expression. Variables are indices into the coordinate list the
/// expression was parsed against. The `usize` payloads on fallible nodes are
/// byte offsets into the source, used for domain-error reporting.
#[derive(Debug, Clone)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, Rat, usize),
    Func(Func, Box<Expr>, usize),
}

impl Expr {
    /// Largest variable index appearing in the tree, plus one.
    pub fn min_dim(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) => a.min_dim(),
            Expr::Bin(_, a, b, _) => a.min_dim().max(b.min_dim()),
            Expr::Pow(a, _, _) => a.min_dim(),
            Expr::Func(_, a, _) => a.min_dim(),
        }
    }

    /// Order-2 jet of the expression at `point`. The point is trusted to have
    /// enough coordinates; callers wanting a checked entry point go through
    /// `ExprField`.
    pub fn jet2(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        let n = point.len();
        let at = |r: Result<Jet2, DomainIssue>, off: usize| {
            r.map_err(|d| EvalError::Domain { func: d.func, arg: d.arg, offset: off })
        };
        match self {
            Expr::Const(c) => Ok(Jet2::constant(n, *c)),
            Expr::Var(i) => Ok(Jet2::var(n, *i, point[*i])),
            Expr::Neg(a) => Ok(a.jet2(point)?.neg()),
            Expr::Bin(op, a, b, off) => {
                let (ja, jb) = (a.jet2(point)?, b.jet2(point)?);
                match op {
                    BinOp::Add => Ok(ja.add(jb)),
                    BinOp::Sub => Ok(ja.sub(jb)),
                    BinOp::Mul => Ok(ja.mul(jb)),
                    BinOp::Div => at(ja.div(jb), *off),
                }
            }
            Expr::Pow(a, r, off) => at(a.jet2(point)?.powr(*r), *off),
            Expr::Func(f, a, off) => {
                let j = a.jet2(point)?;
                match f {
                    Func::Sin => Ok(j.sin()),
                    Func::Cos => Ok(j.cos()),
                    Func::Exp => Ok(j.exp()),
                    Func::Tan => at(j.tan(), *off),
                    Func::Sec => at(j.sec(), *off),
                    Func::Log => at(j.ln(), *off),
                    Func::Sqrt => at(j.sqrt(), *off),
                    Func::Abs => at(j.abs(), *off),
                }
            }
        }
    }

    /// Plain value, without derivative bookkeeping. Used by the
    /// finite-difference evaluation path and by domain sampling.
    pub fn value(&self, point: &[f64]) -> Result<f64, EvalError> {
        let dom = |ok: bool, func: &'static str, arg: f64, off: usize| {
            if ok { Ok(()) } else { Err(EvalError::Domain { func, arg, offset: off }) }
        };
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(i) => Ok(point[*i]),
            Expr::Neg(a) => Ok(-a.value(point)?),
            Expr::Bin(op, a, b, off) => {
                let (x, y) = (a.value(point)?, b.value(point)?);
                match op {
                    BinOp::Add => Ok(x + y),
                    BinOp::Sub => Ok(x - y),
                    BinOp::Mul => Ok(x * y),
                    BinOp::Div => {
                        dom(y != 0.0, "division", 0.0, *off)?;
                        Ok(x / y)
                    }
                }
            }
            Expr::Pow(a, r, off) => {
                let x = a.value(point)?;
                let (p, q) = (*r.numer(), *r.denom());
                if q == 1 {
                    dom(p >= 0 || x != 0.0, "power", x, *off)?;
                    if p == 0 {
                        return Ok(1.0);
                    }
                    Ok(x.powi(p as i32))
                } else {
                    dom(x > 0.0, "power", x, *off)?;
                    Ok(x.powf(p as f64 / q as f64))
                }
            }
            Expr::Func(f, a, off) => {
                let x = a.value(point)?;
                match f {
                    Func::Sin => Ok(x.sin()),
                    Func::Cos => Ok(x.cos()),
                    Func::Exp => Ok(x.exp()),
                    Func::Tan => {
                        dom(x.cos().abs() >= 1e-9, "tan", x, *off)?;
                        Ok(x.tan())
                    }
                    Func::Sec => {
                        dom(x.cos().abs() >= 1e-9, "sec", x, *off)?;
                        Ok(1.0 / x.cos())
                    }
                    Func::Log => {
                        dom(x > 0.0, "log", x, *off)?;
                        Ok(x.ln())
                    }
                    Func::Sqrt => {
                        dom(x > 0.0, "sqrt", x, *off)?;
                        Ok(x.sqrt())
                    }
                    Func::Abs => {
                        dom(x != 0.0, "abs", x, *off)?;
                        Ok(x.abs())
                    }
                }
            }
        }
    }

    /// Canonical text form; parses back to an expression with identical
    /// evaluation behavior, bit for bit.
    pub fn print(&self, coords: &[impl AsRef<str>]) -> String {
        let mut s = String::new();
        self.fmt(coords, 0, &mut s);
        s
    }

    // Binding powers: additive 1, unary minus 2, multiplicative 3, power 7.
    // A negative constant prints with a leading '-', so it must bind like a
    // unary minus or `(-2)^-4` would round-trip as `-(2^-4)`.
    fn fmt(&self, coords: &[impl AsRef<str>], min_bp: u8, out: &mut String) {
        let bp = match self {
            Expr::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => 2,
            Expr::Const(_) | Expr::Var(_) | Expr::Func(..) => 9,
            Expr::Pow(..) => 7,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 3,
            Expr::Neg(_) => 2,
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        };
        let paren = bp < min_bp;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Const(c) => {
                if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) {
                    out.push('-');
                    out.push_str(&format!("{:?}", -c));
                } else {
                    out.push_str(&format!("{c:?}"));
                }
            }
            Expr::Var(i) => out.push_str(coords[*i].as_ref()),
            Expr::Neg(a) => {
                out.push('-');
                a.fmt(coords, 2, out);
            }
            Expr::Bin(op, a, b, _) => {
                a.fmt(coords, bp, out);
                out.push(match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                });
                b.fmt(coords, bp + 1, out);
            }
            Expr::Pow(a, r, _) => {
                a.fmt(coords, 8, out);
                out.push('^');
                let (p, q) = (*r.numer(), *r.denom());
                if q == 1 {
                    out.push_str(&p.to_string());
                } else {
                    out.push_str(&format!("({p}/{q})"));
                }
            }
            Expr::Func(f, a, _) => {
                out.push_str(f.name());
                out.push('(');
                a.fmt(coords, 0, out);
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }
}
