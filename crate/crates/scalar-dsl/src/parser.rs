use crate::ast::{BinOp, Expr, Func};
use crate::error::ParseError;
use crate::jet::Rat;
use crate::lexer::{lex, Spanned, Tok};

/// Parse `src` against an ordered coordinate list. Any identifier that is not
/// a function name must be a declared coordinate.
pub fn parse<S: AsRef<str>>(src: &str, coords: &[S]) -> Result<Expr, ParseError> {
    parse_with_consts(src, coords, &[] as &[(&str, f64)])
}

/// Like [`parse`], but identifiers found in `consts` become numeric constants.
/// Used to bake chart parameters into component expressions.
pub fn parse_with_consts<S: AsRef<str>, T: AsRef<str>>(
    src: &str,
    coords: &[S],
    consts: &[(T, f64)],
) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, coords, consts };
    let e = p.expr(0)?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        return Err(ParseError::new("unexpected trailing input", t.offset));
    }
    Ok(e)
}

struct Parser<'a, S: AsRef<str>, T: AsRef<str>> {
    toks: Vec<Spanned>,
    pos: usize,
    coords: &'a [S],
    consts: &'a [(T, f64)],
}

impl<S: AsRef<str>, T: AsRef<str>> Parser<'_, S, T> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(())
        } else {
            Err(ParseError::new(format!("expected {what}"), t.offset))
        }
    }

    // Precedence climbing; additive 1, multiplicative 3, power handled after
    // each primary (exponents are literal rationals, so chains never nest).
    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, lbp, off) = match self.peek() {
                Spanned { tok: Tok::Plus, offset } => (BinOp::Add, 1, *offset),
                Spanned { tok: Tok::Minus, offset } => (BinOp::Sub, 1, *offset),
                Spanned { tok: Tok::Star, offset } => (BinOp::Mul, 3, *offset),
                Spanned { tok: Tok::Slash, offset } => (BinOp::Div, 3, *offset),
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.expr(lbp + 1)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), off);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        let base = match t.tok {
            Tok::Minus => {
                // Unary minus binds tighter than +- and looser than ^.
                let inner = self.expr(3)?;
                return Ok(Expr::Neg(Box::new(inner)));
            }
            Tok::Num { value, .. } => Expr::Const(value),
            Tok::LParen => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                e
            }
            Tok::Ident(name) => self.ident(&name, t.offset)?,
            _ => return Err(ParseError::new("expected an expression", t.offset)),
        };
        self.postfix_pow(base)
    }

    fn ident(&mut self, name: &str, offset: usize) -> Result<Expr, ParseError> {
        if let Some(f) = Func::from_name(name) {
            let t = self.bump();
            if t.tok != Tok::LParen {
                return Err(ParseError::new(
                    format!("function '{name}' takes exactly one parenthesized argument"),
                    t.offset,
                ));
            }
            let arg = self.expr(0)?;
            let t = self.bump();
            if t.tok != Tok::RParen {
                return Err(ParseError::new(
                    format!("function '{name}' takes exactly one argument"),
                    t.offset,
                ));
            }
            return Ok(Expr::Func(f, Box::new(arg), offset));
        }
        if let Some(i) = self.coords.iter().position(|c| c.as_ref() == name) {
            return Ok(Expr::Var(i));
        }
        if let Some((_, v)) = self.consts.iter().find(|(k, _)| k.as_ref() == name) {
            return Ok(Expr::Const(*v));
        }
        Err(ParseError::new(format!("unknown identifier '{name}'"), offset))
    }

    fn postfix_pow(&mut self, base: Expr) -> Result<Expr, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let off = self.bump().offset;
        let r = self.exponent()?;
        if self.peek().tok == Tok::Caret {
            return Err(ParseError::new(
                "chained '^' needs parentheses",
                self.peek().offset,
            ));
        }
        Ok(Expr::Pow(Box::new(base), r, off))
    }

    // exponent := ['-'] number | '(' ['-'] integer '/' integer ')'
    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let mut neg = false;
        if self.peek().tok == Tok::Minus {
            self.bump();
            neg = true;
        }
        let t = self.bump();
        let r = match t.tok {
            Tok::Num { rat: Some(r), .. } => r,
            Tok::Num { rat: None, .. } => {
                return Err(ParseError::new("exponent literal too large to be exact", t.offset))
            }
            Tok::LParen => {
                let mut inner_neg = false;
                if self.peek().tok == Tok::Minus {
                    self.bump();
                    inner_neg = true;
                }
                let p = self.integer("exponent numerator")?;
                self.expect(Tok::Slash, "'/' in rational exponent")?;
                let q = self.integer("exponent denominator")?;
                if q == 0 {
                    return Err(ParseError::new("zero exponent denominator", t.offset));
                }
                self.expect(Tok::RParen, "')'")?;
                let r = Rat::new(p, q);
                if inner_neg {
                    -r
                } else {
                    r
                }
            }
            _ => {
                return Err(ParseError::new(
                    "exponent must be a rational literal like 2, -1.5 or (1/2)",
                    t.offset,
                ))
            }
        };
        Ok(if neg { -r } else { r })
    }

    fn integer(&mut self, what: &str) -> Result<i64, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num { rat: Some(r), .. } if *r.denom() == 1 => Ok(*r.numer()),
            _ => Err(ParseError::new(format!("{what} must be an integer"), t.offset)),
        }
    }
}
