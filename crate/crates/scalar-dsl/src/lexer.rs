use crate::error::ParseError;
use crate::jet::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// Numeric literal; `rat` is the exact rational value when it fits i64,
    /// needed for exponents.
    Num { value: f64, rat: Option<Rat> },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push(Spanned { tok: Tok::Plus, offset: start }),
            '-' => out.push(Spanned { tok: Tok::Minus, offset: start }),
            '*' => out.push(Spanned { tok: Tok::Star, offset: start }),
            '/' => out.push(Spanned { tok: Tok::Slash, offset: start }),
            '^' => out.push(Spanned { tok: Tok::Caret, offset: start }),
            '(' => out.push(Spanned { tok: Tok::LParen, offset: start }),
            ')' => out.push(Spanned { tok: Tok::RParen, offset: start }),
            '0'..='9' => {
                let tok = lex_number(b, &mut i)?;
                out.push(Spanned { tok, offset: start });
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut j = i;
                while j < b.len()
                    && matches!(b[j] as char, 'a'..='z' | 'A'..='Z' | '0'..='9' | '_')
                {
                    j += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(src[i..j].to_string()),
                    offset: start,
                });
                i = j;
                continue;
            }
            _ => return Err(ParseError::new(format!("unexpected character '{c}'"), start)),
        }
        i += 1;
    }
    out.push(Spanned { tok: Tok::Eof, offset: b.len() });
    Ok(out)
}

/// digits [ '.' digits ] [ ('e'|'E') ['+'|'-'] digits ]
fn lex_number(b: &[u8], i: &mut usize) -> Result<Tok, ParseError> {
    let start = *i;
    let mut j = *i;
    while j < b.len() && b[j].is_ascii_digit() {
        j += 1;
    }
    let int_end = j;
    let mut frac = (j, j);
    if j < b.len() && b[j] == b'.' {
        j += 1;
        let fs = j;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        if j == fs {
            return Err(ParseError::new("digits expected after decimal point", j));
        }
        frac = (fs, j);
    }
    let mut exp10: i64 = 0;
    if j < b.len() && (b[j] == b'e' || b[j] == b'E') {
        let es = j;
        j += 1;
        let neg = if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            let n = b[j] == b'-';
            j += 1;
            n
        } else {
            false
        };
        let ds = j;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        if j == ds {
            return Err(ParseError::new("digits expected in exponent", es));
        }
        let txt = std::str::from_utf8(&b[ds..j]).unwrap();
        match txt.parse::<i64>() {
            Ok(v) => exp10 = if neg { -v } else { v },
            Err(_) => return Err(ParseError::new("exponent out of range", ds)),
        }
    }
    let text = std::str::from_utf8(&b[start..j]).unwrap();
    let value: f64 = text
        .parse()
        .map_err(|_| ParseError::new("malformed number", start))?;

    // Exact rational form: mantissa digits scaled by a power of ten.
    let rat = exact_rat(&b[start..int_end], &b[frac.0..frac.1], exp10);
    *i = j;
    Ok(Tok::Num { value, rat })
}

fn exact_rat(int_digits: &[u8], frac_digits: &[u8], exp10: i64) -> Option<Rat> {
    let mut mant: i64 = 0;
    for &d in int_digits.iter().chain(frac_digits) {
        mant = mant.checked_mul(10)?.checked_add((d - b'0') as i64)?;
    }
    let e = exp10.checked_sub(frac_digits.len() as i64)?;
    let mut num = mant;
    let mut den: i64 = 1;
    if e >= 0 {
        for _ in 0..e {
            num = num.checked_mul(10)?;
        }
    } else {
        for _ in 0..-e {
            den = den.checked_mul(10)?;
        }
    }
    Some(Rat::new(num, den))
}
