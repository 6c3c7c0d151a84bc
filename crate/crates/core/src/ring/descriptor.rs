use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// Textual description of one of the supported rings.
///
/// Grammar: `integers | rationals | zmod:N | poly(<base>; v1,v2,...; inv vi,...)
/// | quot(<poly>; rel1, rel2, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    ZMod(BigUint),
    Poly {
        base: Box<RingDescriptor>,
        vars: Vec<String>,
        inverted: Vec<String>,
    },
    Quotient {
        base: Box<RingDescriptor>,
        relations: Vec<String>,
    },
}

impl RingDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "integers" | "Z" => return Ok(RingDescriptor::Integers),
            "rationals" | "Q" => return Ok(RingDescriptor::Rationals),
            _ => {}
        }
        if let Some(n) = text.strip_prefix("zmod:") {
            let n: BigUint = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in {text:?}")))?;
            return Ok(RingDescriptor::ZMod(n));
        }
        if let Some(body) = strip_call(text, "poly")? {
            let parts = split_top(body, ';');
            if parts.len() < 2 || parts.len() > 3 {
                return Err(Error::Parse(format!("poly needs base; vars[; inv ...]: {text:?}")));
            }
            let base = RingDescriptor::parse(parts[0])?;
            let vars = split_names(parts[1]);
            let inverted = match parts.get(2) {
                None => Vec::new(),
                Some(p) => {
                    let p = p.trim();
                    let rest = p
                        .strip_prefix("inv")
                        .ok_or_else(|| Error::Parse(format!("expected 'inv ...', got {p:?}")))?;
                    split_names(rest)
                }
            };
            return Ok(RingDescriptor::Poly { base: Box::new(base), vars, inverted });
        }
        if let Some(body) = strip_call(text, "quot")? {
            let parts = split_top(body, ';');
            if parts.len() != 2 {
                return Err(Error::Parse(format!("quot needs base; relations: {text:?}")));
            }
            let base = RingDescriptor::parse(parts[0])?;
            let relations = split_top(parts[1], ',')
                .into_iter()
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            return Ok(RingDescriptor::Quotient { base: Box::new(base), relations });
        }
        Err(Error::Parse(format!("unrecognised ring descriptor {text:?}")))
    }

    /// Structural checks that do not need element parsing.
    pub(crate) fn validate_shape(&self) -> Result<()> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => Ok(()),
            RingDescriptor::ZMod(n) => {
                if *n <= BigUint::one() {
                    Err(Error::InvalidRing(format!("zmod requires N >= 2, got {n}")))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::Poly { base, vars, inverted } => {
                base.validate_shape()?;
                if matches!(**base, RingDescriptor::Quotient { .. }) {
                    return Err(Error::InvalidRing("polynomials over a quotient are not supported".into()));
                }
                if vars.is_empty() {
                    return Err(Error::InvalidRing("poly needs at least one variable".into()));
                }
                for (i, v) in vars.iter().enumerate() {
                    if !is_identifier(v) {
                        return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
                    }
                    if vars[..i].contains(v) {
                        return Err(Error::InvalidRing(format!("duplicate variable {v}")));
                    }
                }
                for v in inverted {
                    if !vars.contains(v) {
                        return Err(Error::InvalidRing(format!("unknown variable {v} in inv list")));
                    }
                }
                Ok(())
            }
            RingDescriptor::Quotient { base, relations } => {
                base.validate_shape()?;
                if !matches!(**base, RingDescriptor::Poly { .. }) {
                    return Err(Error::InvalidRing("quot base must be a poly ring".into()));
                }
                if relations.is_empty() {
                    return Err(Error::InvalidRing("quot needs at least one relation".into()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => f.write_str("integers"),
            RingDescriptor::Rationals => f.write_str("rationals"),
            RingDescriptor::ZMod(n) => write!(f, "zmod:{n}"),
            RingDescriptor::Poly { base, vars, inverted } => {
                write!(f, "poly({base}; {}", vars.join(","))?;
                if !inverted.is_empty() {
                    write!(f, "; inv {}", inverted.join(","))?;
                }
                f.write_str(")")
            }
            RingDescriptor::Quotient { base, relations } => {
                write!(f, "quot({base}; {})", relations.join(", "))
            }
        }
    }
}

impl core::str::FromStr for RingDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RingDescriptor::parse(s)
    }
}

fn strip_call<'a>(text: &'a str, name: &str) -> Result<Option<&'a str>> {
    let Some(rest) = text.strip_prefix(name) else { return Ok(None) };
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix('(') else { return Ok(None) };
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {text:?}")))?;
    let mut depth = 0i32;
    for c in body.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
    }
    Ok(Some(body))
}

/// Splits on `sep` at parenthesis depth zero.
pub(crate) fn split_top(body: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&body[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        assert_eq!(RingDescriptor::parse("zmod:4").unwrap(), RingDescriptor::ZMod(4u32.into()));
        let laurent = RingDescriptor::parse("poly(rationals; x; inv x)").unwrap();
        assert_eq!(
            laurent,
            RingDescriptor::Poly {
                base: Box::new(RingDescriptor::Rationals),
                vars: alloc::vec!["x".into()],
                inverted: alloc::vec!["x".into()],
            }
        );
        assert_eq!(laurent.to_string(), "poly(rationals; x; inv x)");
        let q = RingDescriptor::parse("quot(poly(rationals; t); t^3)").unwrap();
        assert_eq!(q.to_string(), "quot(poly(rationals; t); t^3)");
    }

    #[test]
    fn rejects_bad_modulus_and_names() {
        assert!(RingDescriptor::parse("zmod:1").unwrap().validate_shape().is_err());
        assert!(RingDescriptor::parse("zmod:x").is_err());
        assert!(RingDescriptor::parse("poly(integers; x; inv y)").unwrap().validate_shape().is_err());
        assert!(RingDescriptor::parse("poly(integers; x, x)").unwrap().validate_shape().is_err());
        assert!(RingDescriptor::parse("poly(integers; x").is_err());
    }
}
