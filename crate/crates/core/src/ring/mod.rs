//! Concrete commutative rings and their elements.
//!
//! A [`Ring`] is built from a [`RingDescriptor`]. Elements are sparse
//! Laurent polynomials with rational coefficients, normalized for the
//! scalar kind of the ring (integers, rationals, or residues in `[0, N)`)
//! and reduced modulo the monic relations of a quotient ring.

mod descriptor;
mod elem;
mod expr;
mod units;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use descriptor::RingDescriptor;
pub use elem::{Elem, Mono};

pub(crate) use expr::{format_rational, parse_poly};

use crate::{Error, Result};

/// Minimal commutative ring interface shared by base rings, Witt rings and
/// cone levels.
pub trait CommRing {
    type Elem: Clone + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// All elements, when the ring is finite with at most `limit` of them.
    fn elements(&self, limit: usize) -> Result<Vec<Self::Elem>>;

    /// Human readable form used in counterexample reports.
    fn describe(&self, a: &Self::Elem) -> String;
}

/// Scalar layer underneath all variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Integers,
    Rationals,
    ZMod(BigInt),
}

/// `x_var^degree = -(tail)`, with `tail` of degree below `degree` in `var`.
#[derive(Debug, Clone)]
struct Relation {
    var: usize,
    degree: i32,
    tail: Vec<(Vec<i32>, BigRational)>,
}

#[derive(Debug)]
struct RingData {
    descriptor: RingDescriptor,
    scalar: Scalar,
    vars: Vec<String>,
    inverted: Vec<bool>,
    relations: Vec<Relation>,
}

/// A concrete commutative ring. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(descriptor: RingDescriptor) -> Result<Ring> {
        descriptor.validate_shape()?;
        let (scalar, vars, inverted, rel_src) = flatten(&descriptor);
        let mut ring = RingData { descriptor, scalar, vars, inverted, relations: Vec::new() };
        let mut relations = Vec::new();
        for text in &rel_src {
            relations.push(parse_relation(&ring, text)?);
        }
        ring.relations = relations;
        Ok(Ring(Arc::new(ring)))
    }

    pub fn parse(text: &str) -> Result<Ring> {
        Ring::new(RingDescriptor::parse(text)?)
    }

    pub fn integers() -> Ring {
        Ring::new(RingDescriptor::Integers).expect("integers")
    }

    pub fn rationals() -> Ring {
        Ring::new(RingDescriptor::Rationals).expect("rationals")
    }

    /// Panics when `n < 2`.
    pub fn zmod(n: u64) -> Ring {
        Ring::new(RingDescriptor::ZMod(n.into())).expect("zmod needs N >= 2")
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.descriptor
    }

    pub fn scalar(&self) -> &Scalar {
        &self.0.scalar
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match &self.0.scalar {
            Scalar::ZMod(n) => Some(n),
            _ => None,
        }
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn is_inverted(&self, var: usize) -> bool {
        self.0.inverted[var]
    }

    /// Degree of the relation in `var`, if that variable is constrained.
    pub fn relation_degree(&self, var: usize) -> Option<u32> {
        self.0.relations.iter().find(|r| r.var == var).map(|r| r.degree as u32)
    }

    pub fn has_relations(&self) -> bool {
        !self.0.relations.is_empty()
    }

    /// Multiplication by any nonzero integer is injective.
    pub fn is_torsion_free(&self) -> bool {
        !matches!(self.0.scalar, Scalar::ZMod(_))
    }

    pub fn is_q_algebra(&self) -> bool {
        matches!(self.0.scalar, Scalar::Rationals)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.scalar, Scalar::ZMod(_))
            && (0..self.nvars()).all(|v| self.relation_degree(v).is_some())
    }

    pub fn cardinality(&self) -> Option<BigUint> {
        if !self.is_finite() {
            return None;
        }
        let n = self.modulus()?.magnitude().clone();
        let rank: u32 = (0..self.nvars()).map(|v| self.relation_degree(v).unwrap()).product();
        Some(num_traits::pow(n, rank as usize))
    }

    pub fn var(&self, name: &str) -> Result<Elem> {
        let idx = self
            .0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        Ok(self.var_at(idx))
    }

    pub fn var_at(&self, idx: usize) -> Elem {
        let mut mono = vec![0i32; self.nvars()];
        mono[idx] = 1;
        self.reduce(vec![(mono, BigRational::one())])
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_int(&BigInt::from(n))
    }

    /// Image of a rational number; its denominator must be a unit.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let c = self.normalize_coeff(q)?;
        Ok(Elem::constant(self.nvars(), c))
    }

    pub(crate) fn normalize_coeff(&self, q: &BigRational) -> Result<BigRational> {
        match &self.0.scalar {
            Scalar::Rationals => Ok(q.clone()),
            Scalar::Integers => {
                if q.is_integer() {
                    Ok(q.clone())
                } else {
                    Err(Error::InexactDivision(format!("{} is not an integer", format_rational(q))))
                }
            }
            Scalar::ZMod(n) => {
                let inv = mod_inverse(q.denom(), n).ok_or_else(|| {
                    Error::NotInvertible(format!("{} modulo {n}", q.denom()))
                })?;
                Ok(BigRational::from_integer((q.numer() * inv).mod_floor(n)))
            }
        }
    }

    /// Builds an element from raw terms, checking exponents and coefficients.
    pub fn elem_from_terms<I>(&self, terms: I) -> Result<Elem>
    where
        I: IntoIterator<Item = (Vec<i32>, BigRational)>,
    {
        let mut raw = Vec::new();
        for (mono, c) in terms {
            if mono.len() != self.nvars() {
                return Err(Error::Parse(format!("monomial has {} exponents, ring has {} variables", mono.len(), self.nvars())));
            }
            for (i, &e) in mono.iter().enumerate() {
                if e < 0 && !self.0.inverted[i] {
                    return Err(Error::Parse(format!("negative power of non-inverted variable {}", self.0.vars[i])));
                }
            }
            raw.push((mono, self.normalize_coeff(&c)?));
        }
        Ok(self.reduce(raw))
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let raw = parse_poly(text, &self.0.vars)?;
        self.elem_from_terms(raw)
    }

    /// Canonical text: terms in monomial order joined by `+`, coefficient
    /// always written, `^1` omitted, `0` for zero.
    pub fn format_elem(&self, a: &Elem) -> String {
        if a.is_zero() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::with_capacity(a.terms().len());
        for (mono, c) in a.terms() {
            let mut s = format_rational(c);
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                s.push('*');
                s.push_str(&self.0.vars[i]);
                if e != 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
            parts.push(s);
        }
        parts.join("+")
    }

    /// Re-normalizes an element; the identity on canonical input.
    pub fn normalize(&self, a: &Elem) -> Result<Elem> {
        self.elem_from_terms(a.terms().iter().map(|(m, c)| (m.exps().to_vec(), c.clone())))
    }

    pub fn scale_int(&self, a: &Elem, n: &BigInt) -> Elem {
        let k = BigRational::from_integer(n.clone());
        self.reduce(a.terms().iter().map(|(m, c)| (m.exps().to_vec(), c * &k)).collect())
    }

    pub fn scale(&self, a: &Elem, c: &BigRational) -> Elem {
        self.reduce(a.terms().iter().map(|(m, x)| (m.exps().to_vec(), x * c)).collect())
    }

    /// Division by a nonzero integer that fails unless it is exact.
    ///
    /// Over `Z`-based rings every coefficient must be divisible by `n`; over
    /// `Z/N` the integer must be a unit.
    pub fn exact_div_int(&self, a: &Elem, n: &BigInt) -> Result<Elem> {
        if n.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        match &self.0.scalar {
            Scalar::Rationals => Ok(self.scale(a, &BigRational::new(BigInt::one(), n.clone()))),
            Scalar::Integers => {
                let mut out = Vec::with_capacity(a.terms().len());
                for (m, c) in a.terms() {
                    let (q, r) = c.numer().div_rem(n);
                    if !r.is_zero() {
                        return Err(Error::InexactDivision(format!("{} by {n}", self.format_elem(a))));
                    }
                    out.push((m.clone(), BigRational::from_integer(q)));
                }
                Ok(Elem::from_sorted(out))
            }
            Scalar::ZMod(modulus) => {
                let inv = mod_inverse(n, modulus).ok_or_else(|| {
                    Error::InexactDivision(format!("{n} is not a unit modulo {modulus}"))
                })?;
                Ok(self.scale_int(a, &inv))
            }
        }
    }

    /// Inverse of the integer `n` in this ring, when it exists.
    pub fn int_inverse(&self, n: &BigInt) -> Option<Elem> {
        if n.is_zero() {
            return None;
        }
        match &self.0.scalar {
            Scalar::Rationals => Some(Elem::constant(self.nvars(), BigRational::new(BigInt::one(), n.clone()))),
            Scalar::Integers => (n.abs().is_one()).then(|| self.from_int(n)),
            Scalar::ZMod(m) => mod_inverse(n, m).map(|inv| self.from_int(&inv)),
        }
    }

    /// The constant term when `a` has no variable part.
    pub fn constant_value(&self, a: &Elem) -> Option<BigRational> {
        match a.terms() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_constant() => Some(c.clone()),
            _ => None,
        }
    }

    /// Image of `a` from `src` under the canonical map, when one exists.
    ///
    /// Supported: identical rings, `Z` into anything with the same
    /// variables, `Z/N -> Z/M` for `M | N`, `Z -> Q` and `Q`-coefficient
    /// maps between rings with the same variable names.
    pub fn map_from(&self, src: &Ring, a: &Elem) -> Result<Elem> {
        if src == self {
            return Ok(a.clone());
        }
        if src.var_names() != self.var_names() {
            return Err(Error::RingMismatch(format!("{} -> {}", src.descriptor(), self.descriptor())));
        }
        let ok = match (src.scalar(), self.scalar()) {
            (Scalar::Integers, _) => true,
            (Scalar::Rationals, Scalar::Rationals) => true,
            (Scalar::ZMod(n), Scalar::ZMod(m)) => n.is_multiple_of(m),
            _ => false,
        };
        if !ok {
            return Err(Error::RingMismatch(format!("no canonical map {} -> {}", src.descriptor(), self.descriptor())));
        }
        self.elem_from_terms(a.terms().iter().map(|(m, c)| (m.exps().to_vec(), c.clone())))
    }

    /// A small pseudo-random element driven by `next`.
    pub fn sample(&self, next: &mut dyn FnMut() -> u64) -> Elem {
        let coeff = |next: &mut dyn FnMut() -> u64| -> BigRational {
            match &self.0.scalar {
                Scalar::Integers => BigRational::from_integer(BigInt::from((next() % 41) as i64 - 20)),
                Scalar::Rationals => {
                    let num = (next() % 41) as i64 - 20;
                    let den = (next() % 6) as i64 + 1;
                    BigRational::new(num.into(), den.into())
                }
                Scalar::ZMod(n) => {
                    let r = match n.to_u64() {
                        Some(small) => BigInt::from(next() % small),
                        None => BigInt::from(next()).mod_floor(n),
                    };
                    BigRational::from_integer(r)
                }
            }
        };
        let nv = self.nvars();
        if nv == 0 {
            return Elem::constant(0, self.normalize_coeff(&coeff(next)).unwrap());
        }
        let nterms = (next() % 4) as usize;
        let mut raw = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let mono: Vec<i32> = (0..nv)
                .map(|v| {
                    if self.0.inverted[v] {
                        (next() % 5) as i32 - 2
                    } else {
                        (next() % 3) as i32
                    }
                })
                .collect();
            raw.push((mono, self.normalize_coeff(&coeff(next)).unwrap()));
        }
        self.reduce(raw)
    }

    /// Collects terms, normalizes coefficients and reduces by relations.
    /// Coefficients must already be valid for the scalar kind.
    pub(crate) fn reduce(&self, raw: Vec<(Vec<i32>, BigRational)>) -> Elem {
        let mut acc: hashbrown::HashMap<Vec<i32>, BigRational> = hashbrown::HashMap::with_capacity(raw.len());
        let mut work = raw;
        while let Some((mono, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            if let Some(rel) = self.0.relations.iter().find(|r| mono[r.var] >= r.degree) {
                for (tm, tc) in &rel.tail {
                    let mut m = mono.clone();
                    m[rel.var] -= rel.degree;
                    for (a, b) in m.iter_mut().zip(tm) {
                        *a += b;
                    }
                    work.push((m, -(&c * tc)));
                }
                continue;
            }
            match acc.get_mut(&mono) {
                Some(x) => *x += c,
                None => {
                    acc.insert(mono, c);
                }
            }
        }
        let mut terms: Vec<(Mono, BigRational)> = Vec::with_capacity(acc.len());
        for (m, c) in acc {
            let c = match &self.0.scalar {
                Scalar::ZMod(n) => BigRational::from_integer(c.numer().mod_floor(n)),
                _ => c,
            };
            if !c.is_zero() {
                terms.push((Mono::new(m), c));
            }
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Elem::from_sorted(terms)
    }

    fn enumerate(&self, limit: usize) -> Result<Vec<Elem>> {
        let card = self
            .cardinality()
            .ok_or_else(|| Error::Infeasible(format!("{} is infinite", self.descriptor())))?;
        if card > BigUint::from(limit) {
            return Err(Error::Infeasible(format!("{} has {card} elements (limit {limit})", self.descriptor())));
        }
        let n = self.modulus().unwrap().to_u64().unwrap();
        let nv = self.nvars();
        let degs: Vec<i32> = (0..nv).map(|v| self.relation_degree(v).unwrap() as i32).collect();
        let mut basis: Vec<Vec<i32>> = vec![vec![0; nv]];
        for v in 0..nv {
            let mut next = Vec::new();
            for m in &basis {
                for e in 0..degs[v] {
                    let mut m2 = m.clone();
                    m2[v] = e;
                    next.push(m2);
                }
            }
            basis = next;
        }
        let total = card.to_usize().unwrap();
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0u64; basis.len()];
        for _ in 0..total {
            let raw = basis
                .iter()
                .zip(&digits)
                .map(|(m, &d)| (m.clone(), BigRational::from_integer(d.into())))
                .collect();
            out.push(self.reduce(raw));
            for d in digits.iter_mut() {
                *d += 1;
                if *d < n {
                    break;
                }
                *d = 0;
            }
        }
        out.sort();
        Ok(out)
    }
}

impl CommRing for Ring {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Elem::zero()
    }

    fn one(&self) -> Elem {
        self.reduce(vec![(vec![0; self.nvars()], BigRational::one())])
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let modulus = self.modulus();
        elem::merge(a, b, |x, y| {
            let s = x + y;
            match modulus {
                Some(n) if s.numer() >= n => BigRational::from_integer(s.numer() - n),
                _ => s,
            }
        })
    }

    fn neg(&self, a: &Elem) -> Elem {
        match self.modulus() {
            None => a.map_coeffs(|c| -c),
            Some(n) => a.map_coeffs(|c| BigRational::from_integer(n - c.numer())),
        }
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::zero();
        }
        if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
            return self.reduce(vec![(vec![0; self.nvars()], x * y)]);
        }
        let mut raw = Vec::with_capacity(a.terms().len() * b.terms().len());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let m: Vec<i32> = ma.exps().iter().zip(mb.exps()).map(|(x, y)| x + y).collect();
                raw.push((m, ca * cb));
            }
        }
        self.reduce(raw)
    }

    fn from_int(&self, n: &BigInt) -> Elem {
        let c = BigRational::from_integer(n.clone());
        let c = self.normalize_coeff(&c).expect("integers are always valid coefficients");
        Elem::constant(self.nvars(), c)
    }

    fn elements(&self, limit: usize) -> Result<Vec<Elem>> {
        self.enumerate(limit)
    }

    fn describe(&self, a: &Elem) -> String {
        self.format_elem(a)
    }
}

fn flatten(desc: &RingDescriptor) -> (Scalar, Vec<String>, Vec<bool>, Vec<String>) {
    match desc {
        RingDescriptor::Integers => (Scalar::Integers, Vec::new(), Vec::new(), Vec::new()),
        RingDescriptor::Rationals => (Scalar::Rationals, Vec::new(), Vec::new(), Vec::new()),
        RingDescriptor::ZMod(n) => (
            Scalar::ZMod(BigInt::from_biguint(Sign::Plus, n.clone())),
            Vec::new(),
            Vec::new(),
            Vec::new(),
        ),
        RingDescriptor::Poly { base, vars, inverted } => {
            let (scalar, mut all, mut inv, rels) = flatten(base);
            for v in vars {
                all.push(v.clone());
                inv.push(inverted.contains(v));
            }
            (scalar, all, inv, rels)
        }
        RingDescriptor::Quotient { base, relations } => {
            let (scalar, all, inv, mut rels) = flatten(base);
            rels.extend(relations.iter().cloned());
            (scalar, all, inv, rels)
        }
    }
}

fn parse_relation(ring: &RingData, text: &str) -> Result<Relation> {
    let raw = parse_poly(text, &ring.vars)?;
    if raw.is_empty() {
        return Err(Error::InvalidRing(format!("relation {text:?} is zero")));
    }
    let mut var: Option<usize> = None;
    for mono in raw.keys() {
        for (i, &e) in mono.iter().enumerate() {
            if e < 0 {
                return Err(Error::Unsupported(format!("relation {text:?} has negative exponents")));
            }
            if e > 0 {
                match var {
                    None => var = Some(i),
                    Some(v) if v == i => {}
                    Some(_) => {
                        return Err(Error::Unsupported(format!("relation {text:?} is not univariate")));
                    }
                }
            }
        }
    }
    let var = var.ok_or_else(|| Error::InvalidRing(format!("relation {text:?} is a constant")))?;
    if ring.inverted[var] {
        return Err(Error::Unsupported(format!("relation {text:?} constrains an inverted variable")));
    }
    if ring.relations.iter().any(|r| r.var == var) {
        return Err(Error::Unsupported(format!("two relations in variable {}", ring.vars[var])));
    }
    let degree = raw.keys().map(|m| m[var]).max().unwrap();
    let lead = raw.iter().find(|(m, _)| m[var] == degree).unwrap().1.clone();
    // Normalize to a monic relation; the leading coefficient must be a unit.
    let lead_inv = match &ring.scalar {
        Scalar::Rationals => BigRational::one() / &lead,
        Scalar::Integers => {
            if lead.is_integer() && lead.numer().abs().is_one() {
                lead.recip()
            } else {
                return Err(Error::Unsupported(format!("relation {text:?} is not monic")));
            }
        }
        Scalar::ZMod(n) => {
            if !lead.is_integer() {
                return Err(Error::Unsupported(format!("relation {text:?} has fractional leading coefficient")));
            }
            let inv = mod_inverse(lead.numer(), n)
                .ok_or_else(|| Error::Unsupported(format!("relation {text:?} is not monic")))?;
            BigRational::from_integer(inv)
        }
    };
    let mut tail = Vec::new();
    for (m, c) in &raw {
        if m[var] == degree {
            continue;
        }
        let mut c = c * &lead_inv;
        match &ring.scalar {
            Scalar::Integers if !c.is_integer() => {
                return Err(Error::InvalidRing(format!("relation {text:?} has fractional coefficients")));
            }
            Scalar::ZMod(n) => {
                let inv = mod_inverse(c.denom(), n)
                    .ok_or_else(|| Error::InvalidRing(format!("relation {text:?}: denominator not a unit")))?;
                c = BigRational::from_integer((c.numer() * inv).mod_floor(n));
            }
            _ => {}
        }
        if !c.is_zero() {
            tail.push((m.clone(), c));
        }
    }
    Ok(Relation { var, degree, tail })
}

/// Inverse of `a` modulo `n`, in `[0, n)`.
pub(crate) fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(n);
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
