//! Quasi-ideals `d: I → R` and the ring levels `R_n = R × I^{n-1}` of
//! their cones.
//!
//! `I` is presented as `R^k` modulo the span of relation rows. `d` is
//! given on the generators and must vanish on the relations. Equality in
//! `I` is decided exactly when there are no relations or when `R` is
//! finite; otherwise representatives are compared as given.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ring::{CommRing, Elem, Ring, Scalar};
use crate::{Error, Result};

/// An element of `I`, as coefficients on the generators.
pub type ModuleElem<E> = Vec<E>;

/// `d: I → R` with `I = R^k / relations`.
#[derive(Debug, Clone)]
pub struct QuasiIdeal<R: CommRing> {
    ring: R,
    rank: usize,
    relations: Vec<Vec<R::Elem>>,
    d: Vec<R::Elem>,
    span: Option<Vec<Vec<R::Elem>>>,
}

/// A generator pair on which `x·d(y) = y·d(x)` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub i: usize,
    pub j: usize,
}

impl<R: CommRing + Clone> QuasiIdeal<R> {
    /// Builds the module and checks `d(relation) = 0`. `limit` bounds the
    /// enumeration of the relation span over finite rings.
    pub fn new(ring: R, d: Vec<R::Elem>, relations: Vec<Vec<R::Elem>>, limit: usize) -> Result<QuasiIdeal<R>> {
        let rank = d.len();
        for (k, row) in relations.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidModule(format!("relation {k} has {} entries, expected {rank}", row.len())));
            }
        }
        let mut q = QuasiIdeal { ring, rank, relations, d, span: None };
        for (k, row) in q.relations.iter().enumerate() {
            if !q.ring.is_zero(&q.apply_d(row)) {
                return Err(Error::InvalidModule(format!("d does not vanish on relation {k}")));
            }
        }
        if !q.relations.is_empty() {
            q.span = q.enumerate_span(limit);
        }
        Ok(q)
    }

    /// Free module with the given `d` values.
    pub fn free(ring: R, d: Vec<R::Elem>) -> QuasiIdeal<R> {
        QuasiIdeal { rank: d.len(), ring, relations: Vec::new(), d, span: None }
    }

    /// The ideal generated by `gens`, presented with its Koszul relations
    /// `g_j e_i - g_i e_j`, and `d` the inclusion.
    pub fn from_ideal(ring: R, gens: Vec<R::Elem>, limit: usize) -> Result<QuasiIdeal<R>> {
        let k = gens.len();
        let mut relations = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut row = vec![ring.zero(); k];
                row[i] = gens[j].clone();
                row[j] = ring.neg(&gens[i]);
                relations.push(row);
            }
        }
        QuasiIdeal::new(ring, gens, relations, limit)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<R::Elem>] {
        &self.relations
    }

    pub fn d_values(&self) -> &[R::Elem] {
        &self.d
    }

    pub fn apply_d(&self, x: &[R::Elem]) -> R::Elem {
        x.iter().zip(&self.d).fold(self.ring.zero(), |acc, (c, d)| self.ring.add(&acc, &self.ring.mul(c, d)))
    }

    pub fn generator(&self, i: usize) -> ModuleElem<R::Elem> {
        let mut v = vec![self.ring.zero(); self.rank];
        v[i] = self.ring.one();
        v
    }

    pub fn module_zero(&self) -> ModuleElem<R::Elem> {
        vec![self.ring.zero(); self.rank]
    }

    pub fn module_add(&self, x: &[R::Elem], y: &[R::Elem]) -> ModuleElem<R::Elem> {
        self.canonical(x.iter().zip(y).map(|(a, b)| self.ring.add(a, b)).collect())
    }

    pub fn module_neg(&self, x: &[R::Elem]) -> ModuleElem<R::Elem> {
        self.canonical(x.iter().map(|a| self.ring.neg(a)).collect())
    }

    pub fn module_scale(&self, r: &R::Elem, x: &[R::Elem]) -> ModuleElem<R::Elem> {
        self.canonical(x.iter().map(|a| self.ring.mul(r, a)).collect())
    }

    /// `x = 0` in `I`.
    pub fn module_is_zero(&self, x: &[R::Elem]) -> Result<bool> {
        if x.iter().all(|c| self.ring.is_zero(c)) {
            return Ok(true);
        }
        if self.relations.is_empty() {
            return Ok(false);
        }
        if let Some(span) = &self.span {
            return Ok(span.iter().any(|s| s.as_slice() == x));
        }
        let neg: Vec<R::Elem> = x.iter().map(|a| self.ring.neg(a)).collect();
        if self.relations.iter().any(|row| *row == x || *row == neg) {
            return Ok(true);
        }
        Err(Error::Unsupported(String::from("submodule membership over an infinite ring")))
    }

    /// Least representative of the class of `x`, when the span is known.
    pub fn canonical(&self, x: ModuleElem<R::Elem>) -> ModuleElem<R::Elem> {
        match &self.span {
            Some(span) => span
                .iter()
                .map(|s| s.iter().zip(&x).map(|(a, b)| self.ring.add(a, b)).collect::<Vec<_>>())
                .min()
                .unwrap_or(x),
            None => x,
        }
    }

    fn enumerate_span(&self, limit: usize) -> Option<Vec<Vec<R::Elem>>> {
        let scalars = self.ring.elements(limit).ok()?;
        let mut span = vec![self.module_zero()];
        for row in &self.relations {
            let mut next = Vec::new();
            for s in &span {
                for c in &scalars {
                    let v: Vec<R::Elem> = s.iter().zip(row).map(|(a, b)| self.ring.add(a, &self.ring.mul(c, b))).collect();
                    next.push(v);
                }
                if next.len() > limit {
                    return None;
                }
            }
            next.sort();
            next.dedup();
            span = next;
        }
        Some(span)
    }

    /// Distinct elements of `I` over a finite ring.
    pub fn module_elements(&self, limit: usize) -> Result<Vec<ModuleElem<R::Elem>>> {
        if !self.relations.is_empty() && self.span.is_none() {
            return Err(Error::Infeasible(String::from("relation span is not enumerable")));
        }
        let scalars = self.ring.elements(limit)?;
        let mut out: Vec<Vec<R::Elem>> = vec![Vec::new()];
        for _ in 0..self.rank {
            if out.len().saturating_mul(scalars.len()) > limit {
                return Err(Error::Infeasible(format!("module has more than {limit} elements")));
            }
            out = out
                .into_iter()
                .flat_map(|v| {
                    scalars.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        let mut out: Vec<_> = out.into_iter().map(|v| self.canonical(v)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Checks `e_i·d(e_j) = e_j·d(e_i)` for every generator pair.
    pub fn check(&self) -> Result<Option<LawViolation>> {
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let lhs = self.module_scale(&self.d[j], &self.generator(i));
                let rhs = self.module_scale(&self.d[i], &self.generator(j));
                let diff: Vec<R::Elem> = lhs.iter().zip(&rhs).map(|(a, b)| self.ring.sub(a, b)).collect();
                if !self.module_is_zero(&diff)? {
                    return Ok(Some(LawViolation { i, j }));
                }
            }
        }
        Ok(None)
    }

    /// `Hom(r1, r2) = d^{-1}(r2 - r1)` by enumeration.
    pub fn hom_set_enumerated(&self, r1: &R::Elem, r2: &R::Elem, limit: usize) -> Result<Vec<ModuleElem<R::Elem>>> {
        let target = self.ring.sub(r2, r1);
        Ok(self.module_elements(limit)?.into_iter().filter(|x| self.apply_d(x) == target).collect())
    }

    /// `ker d`, the automorphisms of any object.
    pub fn kernel(&self, limit: usize) -> Result<Vec<ModuleElem<R::Elem>>> {
        let z = self.ring.zero();
        self.hom_set_enumerated(&z, &z, limit)
    }

    /// Classes of `R / d(I)` over a finite ring, each sorted, listed by
    /// least element.
    pub fn pi0_classes(&self, limit: usize) -> Result<Vec<Vec<R::Elem>>> {
        let mut image: Vec<R::Elem> = self.module_elements(limit)?.iter().map(|x| self.apply_d(x)).collect();
        image.sort();
        image.dedup();
        let mut seen: Vec<R::Elem> = Vec::new();
        let mut classes = Vec::new();
        for r in self.ring.elements(limit)? {
            if seen.binary_search(&r).is_ok() {
                continue;
            }
            let mut class: Vec<R::Elem> = image.iter().map(|i| self.ring.add(&r, i)).collect();
            class.sort();
            class.dedup();
            for c in &class {
                if let Err(pos) = seen.binary_search(c) {
                    seen.insert(pos, c.clone());
                }
            }
            classes.push(class);
        }
        Ok(classes)
    }

    /// Level `n ≥ 1` of the cone.
    pub fn level(&self, n: usize) -> Result<ConeRing<'_, R>> {
        if n == 0 {
            return Err(Error::Precondition(String::from("cone levels start at 1")));
        }
        Ok(ConeRing { q: self, n })
    }
}

impl QuasiIdeal<Ring> {
    /// `Hom(r1, r2)` over a rank-one free module on `Z` or `Q`, solved by
    /// exact division; other cases fall back to enumeration.
    pub fn hom_set(&self, r1: &Elem, r2: &Elem, limit: usize) -> Result<Vec<ModuleElem<Elem>>> {
        let ring = &self.ring;
        let target = ring.sub(r2, r1);
        if ring.is_finite() {
            return self.hom_set_enumerated(r1, r2, limit);
        }
        if self.rank != 1 || !self.relations.is_empty() || ring.nvars() != 0 {
            return Err(Error::Unsupported(format!("hom sets of this quasi-ideal over {}", ring.descriptor())));
        }
        let d = &self.d[0];
        if d.is_zero() {
            return if target.is_zero() {
                Err(Error::Infeasible(String::from("Hom(r, r) = I is infinite")))
            } else {
                Ok(Vec::new())
            };
        }
        let (t, dv) = (ring.constant_value(&target).unwrap(), ring.constant_value(d).unwrap());
        let x = &t / &dv;
        match ring.scalar() {
            Scalar::Integers if !x.is_integer() => Ok(Vec::new()),
            _ => Ok(vec![vec![ring.from_rational(&x)?]]),
        }
    }

    /// `π₀ = R / d(I)` when the quotient is again a supported ring.
    pub fn pi0(&self) -> Result<Pi0> {
        let ring = &self.ring;
        let ideal: Vec<Elem> = self.d.iter().filter(|x| !x.is_zero()).cloned().collect();
        if ideal.is_empty() {
            return Ok(Pi0::Quotient { ring: ring.clone(), ideal });
        }
        if ring.nvars() != 0 {
            return Ok(match ring.univariate_quotient(&ideal)? {
                Some(quotient) => Pi0::Quotient { ring: quotient, ideal },
                None => Pi0::Zero { ideal },
            });
        }
        let mut g = match ring.scalar() {
            Scalar::Rationals => return Ok(Pi0::Zero { ideal }),
            Scalar::Integers => BigInt::from(0),
            Scalar::ZMod(n) => n.clone(),
        };
        for x in &ideal {
            g = num_integer::Integer::gcd(&g, &ring.constant_value(x).unwrap().to_integer());
        }
        if g == BigInt::from(1) {
            return Ok(Pi0::Zero { ideal });
        }
        let desc = crate::ring::RingDescriptor::ZMod(g.magnitude().clone());
        Ok(Pi0::Quotient { ring: Ring::new(desc)?, ideal })
    }
}

/// `π₀` of a cone as a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pi0 {
    Quotient { ring: Ring, ideal: Vec<Elem> },
    Zero { ideal: Vec<Elem> },
}

impl Pi0 {
    /// The canonical surjection from the base ring.
    pub fn project(&self, base: &Ring, r: &Elem) -> Result<Option<Elem>> {
        match self {
            Pi0::Quotient { ring, .. } => Ok(Some(ring.map_from(base, r)?)),
            Pi0::Zero { .. } => Ok(None),
        }
    }
}

/// `R_n = R × I^{n-1}` with `(r, x)·(s, y) = (rs, r y_i + s x_i + d(x_i) y_i)`.
#[derive(Debug, Clone, Copy)]
pub struct ConeRing<'a, R: CommRing> {
    q: &'a QuasiIdeal<R>,
    n: usize,
}

/// `(r, x_1, ..., x_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeElem<E> {
    pub r: E,
    pub xs: Vec<ModuleElem<E>>,
}

impl<R: CommRing + Clone> ConeRing<'_, R> {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn element(&self, r: R::Elem, xs: Vec<ModuleElem<R::Elem>>) -> Result<ConeElem<R::Elem>> {
        if xs.len() != self.n - 1 || xs.iter().any(|x| x.len() != self.q.rank) {
            return Err(Error::InvalidModule(format!("level {} element needs {} module entries", self.n, self.n - 1)));
        }
        Ok(ConeElem { r, xs: xs.into_iter().map(|x| self.q.canonical(x)).collect() })
    }

    /// Face to the base ring.
    pub fn base(&self, a: &ConeElem<R::Elem>) -> R::Elem {
        a.r.clone()
    }
}

impl<R: CommRing + Clone> CommRing for ConeRing<'_, R> {
    type Elem = ConeElem<R::Elem>;

    fn zero(&self) -> Self::Elem {
        ConeElem { r: self.q.ring.zero(), xs: vec![self.q.module_zero(); self.n - 1] }
    }

    fn one(&self) -> Self::Elem {
        ConeElem { r: self.q.ring.one(), xs: vec![self.q.module_zero(); self.n - 1] }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ConeElem {
            r: self.q.ring.add(&a.r, &b.r),
            xs: a.xs.iter().zip(&b.xs).map(|(x, y)| self.q.module_add(x, y)).collect(),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ConeElem { r: self.q.ring.neg(&a.r), xs: a.xs.iter().map(|x| self.q.module_neg(x)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let q = self.q;
        let xs = a
            .xs
            .iter()
            .zip(&b.xs)
            .map(|(x, y)| {
                let dx = q.apply_d(x);
                let coeff_y = q.ring.add(&a.r, &dx);
                x.iter()
                    .zip(y)
                    .map(|(xi, yi)| q.ring.add(&q.ring.mul(&coeff_y, yi), &q.ring.mul(&b.r, xi)))
                    .collect::<Vec<_>>()
            })
            .map(|v| q.canonical(v))
            .collect();
        ConeElem { r: q.ring.mul(&a.r, &b.r), xs }
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        ConeElem { r: self.q.ring.from_int(n), xs: vec![self.q.module_zero(); self.n - 1] }
    }

    fn elements(&self, limit: usize) -> Result<Vec<Self::Elem>> {
        let base = self.q.ring.elements(limit)?;
        let module = self.q.module_elements(limit)?;
        let mut tails: Vec<Vec<ModuleElem<R::Elem>>> = vec![Vec::new()];
        for _ in 1..self.n {
            if tails.len().saturating_mul(module.len()).saturating_mul(base.len()) > limit {
                return Err(Error::Infeasible(format!("cone level has more than {limit} elements")));
            }
            tails = tails
                .into_iter()
                .flat_map(|t| {
                    module.iter().map(move |m| {
                        let mut t = t.clone();
                        t.push(m.clone());
                        t
                    })
                })
                .collect();
        }
        if tails.len().saturating_mul(base.len()) > limit {
            return Err(Error::Infeasible(format!("cone level has more than {limit} elements")));
        }
        Ok(base
            .iter()
            .flat_map(|r| tails.iter().map(move |t| ConeElem { r: r.clone(), xs: t.clone() }))
            .collect())
    }

    fn describe(&self, a: &Self::Elem) -> String {
        let mut s = format!("({}", self.q.ring.describe(&a.r));
        for x in &a.xs {
            let parts: Vec<String> = x.iter().map(|c| self.q.ring.describe(c)).collect();
            s.push_str(&format!(", [{}]", parts.join(", ")));
        }
        s.push(')');
        s
    }
}
