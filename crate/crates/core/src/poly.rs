//! Sparse multivariate polynomials with packed exponent keys.
//!
//! Monomials are stored as `u128` keys holding one bit field per variable.
//! Field widths come from a per-variable exponent bound, so multiplying two
//! monomials is a single addition as long as the bounds are respected.
//! The Witt polynomials are isobaric, which is what keeps them in range.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::CommRing;
use crate::{Error, Result};

/// Bit layout of packed monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    shifts: Vec<u32>,
    widths: Vec<u32>,
    bounds: Vec<u32>,
}

impl Layout {
    /// One field per variable, wide enough for exponents up to `bounds[i]`.
    pub fn new(bounds: &[u32]) -> Result<Layout> {
        let mut shifts = Vec::with_capacity(bounds.len());
        let mut widths = Vec::with_capacity(bounds.len());
        let mut total = 0u32;
        for &b in bounds {
            let w = 32 - b.leading_zeros();
            let w = w.max(1);
            shifts.push(total);
            widths.push(w);
            total += w;
        }
        if total > 128 {
            return Err(Error::Unsupported(format!("{total} exponent bits exceed the 128-bit monomial key")));
        }
        Ok(Layout { shifts, widths, bounds: bounds.to_vec() })
    }

    pub fn nvars(&self) -> usize {
        self.shifts.len()
    }

    pub fn bound(&self, var: usize) -> u32 {
        self.bounds[var]
    }

    pub fn var_key(&self, var: usize) -> u128 {
        1u128 << self.shifts[var]
    }

    pub fn exponent(&self, key: u128, var: usize) -> u32 {
        ((key >> self.shifts[var]) & ((1u128 << self.widths[var]) - 1)) as u32
    }

    pub fn decode(&self, key: u128) -> Vec<u32> {
        (0..self.nvars()).map(|v| self.exponent(key, v)).collect()
    }

    pub fn encode(&self, exps: &[u32]) -> Result<u128> {
        let mut key = 0u128;
        for (v, &e) in exps.iter().enumerate() {
            if e > self.bounds[v] {
                return Err(Error::Unsupported(format!("exponent {e} of variable {v} exceeds bound {}", self.bounds[v])));
            }
            key |= (e as u128) << self.shifts[v];
        }
        Ok(key)
    }
}

/// Coefficient domains used for universal polynomials.
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + for<'a> AddAssign<&'a Self> + for<'a> Mul<&'a Self, Output = Self>
{
}
impl Coeff for BigInt {}
impl Coeff for BigRational {}

/// Polynomial with coefficients in `C`; terms sorted by key, no zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C> {
    layout: Arc<Layout>,
    terms: Vec<(u128, C)>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(layout: &Arc<Layout>) -> Self {
        MPoly { layout: layout.clone(), terms: Vec::new() }
    }

    pub fn constant(layout: &Arc<Layout>, c: C) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        MPoly { layout: layout.clone(), terms }
    }

    pub fn var(layout: &Arc<Layout>, v: usize) -> Self {
        MPoly { layout: layout.clone(), terms: vec![(layout.var_key(v), C::one())] }
    }

    pub fn monomial(layout: &Arc<Layout>, exps: &[u32], c: C) -> Result<Self> {
        let key = layout.encode(exps)?;
        let terms = if c.is_zero() { Vec::new() } else { vec![(key, c)] };
        Ok(MPoly { layout: layout.clone(), terms })
    }

    pub fn from_terms(layout: &Arc<Layout>, terms: Vec<(u128, C)>) -> Self {
        let mut acc: hashbrown::HashMap<u128, C> = hashbrown::HashMap::with_capacity(terms.len());
        for (k, c) in terms {
            acc.entry(k).and_modify(|x| *x += &c).or_insert(c);
        }
        Self::collect(layout, acc)
    }

    fn collect(layout: &Arc<Layout>, acc: hashbrown::HashMap<u128, C>) -> Self {
        let mut terms: Vec<(u128, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        MPoly { layout: layout.clone(), terms }
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn terms(&self) -> &[(u128, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    c += &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { layout: self.layout.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        MPoly { layout: self.layout.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MPoly::zero(&self.layout);
        }
        let terms = self.terms.iter().map(|(k, x)| (*k, x.clone() * c)).collect();
        MPoly { layout: self.layout.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.layout);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: hashbrown::HashMap<u128, C> = hashbrown::HashMap::with_capacity(large.len() * 2);
        for (ka, ca) in &small.terms {
            for (kb, cb) in &large.terms {
                let c = ca.clone() * cb;
                match acc.get_mut(&(ka + kb)) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(ka + kb, c);
                    }
                }
            }
        }
        Self::collect(&self.layout, acc)
    }

    /// `self^e` by repeated multiplication with the (usually small) base.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::constant(&self.layout, C::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates in `ring`, mapping coefficients with `coeff`.
    pub fn eval<R: CommRing>(
        &self,
        ring: &R,
        values: &[R::Elem],
        mut coeff: impl FnMut(&C) -> R::Elem,
    ) -> R::Elem {
        let layout = &self.layout;
        let mut powers: Vec<Vec<R::Elem>> = Vec::with_capacity(layout.nvars());
        for v in 0..layout.nvars() {
            let max = self.terms.iter().map(|(k, _)| layout.exponent(*k, v)).max().unwrap_or(0);
            let mut pv = Vec::with_capacity(max as usize + 1);
            pv.push(ring.one());
            for i in 1..=max as usize {
                let next = ring.mul(&pv[i - 1], &values[v]);
                pv.push(next);
            }
            powers.push(pv);
        }
        let mut total = ring.zero();
        for (k, c) in &self.terms {
            let mut term = coeff(c);
            for (v, pv) in powers.iter().enumerate() {
                let e = layout.exponent(*k, v) as usize;
                if e > 0 {
                    term = ring.mul(&term, &pv[e]);
                }
            }
            total = ring.add(&total, &term);
        }
        total
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, target: &Arc<Layout>, values: &[MPoly<C>]) -> MPoly<C> {
        let layout = &self.layout;
        let mut powers: Vec<Vec<MPoly<C>>> = Vec::with_capacity(layout.nvars());
        for (v, value) in values.iter().enumerate().take(layout.nvars()) {
            let max = self.terms.iter().map(|(k, _)| layout.exponent(*k, v)).max().unwrap_or(0);
            let mut pv = vec![MPoly::constant(target, C::one())];
            for i in 1..=max as usize {
                let next = pv[i - 1].mul(value);
                pv.push(next);
            }
            powers.push(pv);
        }
        let mut total = MPoly::zero(target);
        for (k, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (v, pv) in powers.iter().enumerate() {
                let e = layout.exponent(*k, v) as usize;
                if e > 0 {
                    term = term.mul(&pv[e]);
                }
            }
            total = total.add(&term);
        }
        total
    }
}

impl MPoly<BigInt> {
    /// Exact division of every coefficient by `n`.
    pub fn exact_div(&self, n: &BigInt) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient {c} of monomial {:?} by {n}",
                    self.layout.decode(*k)
                )));
            }
            terms.push((*k, q));
        }
        Ok(MPoly { layout: self.layout.clone(), terms })
    }

    pub fn to_rational(&self) -> MPoly<BigRational> {
        let terms = self.terms.iter().map(|(k, c)| (*k, BigRational::from_integer(c.clone()))).collect();
        MPoly { layout: self.layout.clone(), terms }
    }
}

impl MPoly<BigRational> {
    pub fn div_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::new(BigInt::one(), n.clone()))
    }

    /// Converts back to integer coefficients when all are integral.
    pub fn to_integer(&self) -> Option<MPoly<BigInt>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            terms.push((*k, c.to_integer()));
        }
        Some(MPoly { layout: self.layout.clone(), terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn layout(bounds: &[u32]) -> Arc<Layout> {
        Arc::new(Layout::new(bounds).unwrap())
    }

    #[test]
    fn packing_round_trips() {
        let l = layout(&[30, 15, 1]);
        let key = l.encode(&[29, 3, 1]).unwrap();
        assert_eq!(l.decode(key), vec![29, 3, 1]);
        assert!(l.encode(&[31, 0, 0]).is_err());
        assert!(Layout::new(&[u32::MAX; 5]).is_err());
    }

    #[test]
    fn binomial_expansion() {
        let l = layout(&[8, 8]);
        let x = MPoly::<BigInt>::var(&l, 0);
        let y = MPoly::<BigInt>::var(&l, 1);
        let p = x.add(&y).pow(4);
        assert_eq!(p.len(), 5);
        let coeffs: Vec<i64> = p.terms().iter().map(|(_, c)| i64::try_from(c.clone()).unwrap()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 4, 4, 6]);
        assert!(p.sub(&p).is_zero());
        assert!(p.exact_div(&BigInt::from(2)).is_err());
        let q = p.scale(&BigInt::from(6)).exact_div(&BigInt::from(3)).unwrap();
        assert_eq!(q, p.scale(&BigInt::from(2)));
    }

    #[test]
    fn evaluation_matches_ring_arithmetic() {
        let l = layout(&[4, 4]);
        let x = MPoly::<BigInt>::var(&l, 0);
        let y = MPoly::<BigInt>::var(&l, 1);
        let p = x.mul(&y).add(&x.pow(3)).scale(&BigInt::from(5));
        let z7 = Ring::zmod(7);
        let v = p.eval(&z7, &[z7.from_i64(3), z7.from_i64(4)], |c| z7.from_int(c));
        // 5*(12 + 27) = 195 = 6 mod 7
        assert_eq!(v, z7.from_i64(6));
        let sq = l.clone();
        let composed = p.compose(&sq, &[y.clone(), x.clone()]);
        let w = composed.eval(&z7, &[z7.from_i64(4), z7.from_i64(3)], |c| z7.from_int(c));
        assert_eq!(w, v);
    }
}
