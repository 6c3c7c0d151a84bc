//! Polynomial expression parser shared by element literals and relations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Raw Laurent polynomial over Q keyed by exponent vectors.
pub(crate) type RawPoly = BTreeMap<Vec<i32>, BigRational>;

pub(crate) fn parse_poly(text: &str, vars: &[String]) -> Result<RawPoly> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, vars, nvars: vars.len() };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => { out.push(Tok::Plus); i += 1 }
            '-' => { out.push(Tok::Minus); i += 1 }
            '*' => { out.push(Tok::Star); i += 1 }
            '/' => { out.push(Tok::Slash); i += 1 }
            '^' => { out.push(Tok::Caret); i += 1 }
            '(' => { out.push(Tok::LParen); i += 1 }
            ')' => { out.push(Tok::RParen); i += 1 }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(format!("bad number {s}")))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {text:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(acc, t, false);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(acc, t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = mul(&acc, &f);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = match self.next() {
                        Some(Tok::Num(n)) => n,
                        _ => return Err(Error::Parse("only integer denominators are allowed".into())),
                    };
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    let inv = BigRational::new(BigInt::one(), d);
                    acc = acc.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RawPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(v.into_iter().map(|(k, c)| (k, -c)).collect())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RawPoly> {
        let (base, single_var) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        let e: i32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
        if negative {
            let Some(v) = single_var else {
                return Err(Error::Parse("negative exponents only apply to variables".into()));
            };
            let mut mono = vec![0i32; self.nvars];
            mono[v] = -e;
            let mut out = RawPoly::new();
            out.insert(mono, BigRational::one());
            return Ok(out);
        }
        let mut acc = constant(self.nvars, BigRational::one());
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<(RawPoly, Option<usize>)> {
        match self.next() {
            Some(Tok::Num(n)) => Ok((constant(self.nvars, BigRational::from_integer(n)), None)),
            Some(Tok::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                let mut mono = vec![0i32; self.nvars];
                mono[idx] = 1;
                let mut out = RawPoly::new();
                out.insert(mono, BigRational::one());
                Ok((out, Some(idx)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok((inner, None)),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn constant(nvars: usize, c: BigRational) -> RawPoly {
    let mut out = RawPoly::new();
    if !c.is_zero() {
        out.insert(vec![0; nvars], c);
    }
    out
}

fn add(mut a: RawPoly, b: RawPoly, negate: bool) -> RawPoly {
    for (k, v) in b {
        let v = if negate { -v } else { v };
        let entry = a.entry(k.clone()).or_insert_with(BigRational::zero);
        *entry += v;
        if entry.is_zero() {
            a.remove(&k);
        }
    }
    a
}

fn mul(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = RawPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let entry = out.entry(k).or_insert_with(BigRational::zero);
            *entry += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Formats a rational coefficient as `n` or `n/d`.
pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else if q.is_negative() {
        format!("-{}/{}", -q.numer(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_sums_products_powers() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("(x+y)^2 - 2*x*y", &v).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[&vec![2, 0]], BigRational::one());
        assert_eq!(p[&vec![0, 2]], BigRational::one());
        let q = parse_poly("1/2*x^-1 + -3", &v).unwrap();
        assert_eq!(q[&vec![-1, 0]], BigRational::new(1.into(), 2.into()));
        assert_eq!(q[&vec![0, 0]], BigRational::from_integer((-3).into()));
    }

    #[test]
    fn rejects_garbage() {
        let v = vars(&["x"]);
        assert!(parse_poly("x +", &v).is_err());
        assert!(parse_poly("z", &v).is_err());
        assert!(parse_poly("(x+1)^-1", &v).is_err());
        assert!(parse_poly("x/0", &v).is_err());
    }
}
