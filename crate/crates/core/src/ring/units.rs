//! Unit and nilpotence decisions.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{mod_inverse, CommRing, Elem, Ring, RingDescriptor, Scalar};
use crate::{Error, Result};

/// Largest finite quotient searched exhaustively for inverses.
const BRUTE_FORCE_LIMIT: usize = 1 << 20;

impl Ring {
    /// Decides whether `a` is a unit, returning the inverse when it is.
    pub fn is_unit(&self, a: &Elem) -> Result<Option<Elem>> {
        if a.is_zero() {
            return Ok(None);
        }
        if let Some(c) = self.constant_value(a) {
            // A constant is a unit iff it is a unit of the scalars: every
            // supported ring is free over its scalar ring.
            return Ok(self.scalar_inverse(&c).map(|inv| self.from_rational(&inv).unwrap()));
        }
        if !self.has_relations() {
            return match self.scalar().clone() {
                Scalar::Integers | Scalar::Rationals => Ok(self.monomial_unit(a)),
                Scalar::ZMod(n) => self.zmod_poly_unit(a, &n),
            };
        }
        if self.is_finite() {
            let all = self.elements(BRUTE_FORCE_LIMIT)?;
            let one = self.one();
            return Ok(all.into_iter().find(|b| self.mul(a, b) == one));
        }
        if self.is_q_algebra() && self.nvars() == 1 {
            return Ok(self.univariate_q_inverse(a));
        }
        Err(Error::Unsupported(format!("unit test in {}", self.descriptor())))
    }

    /// Decides nilpotence, returning the least `k` with `a^k = 0`.
    pub fn is_nilpotent(&self, a: &Elem) -> Result<Option<u32>> {
        if a.is_zero() {
            return Ok(Some(1));
        }
        let max_exp = match self.scalar() {
            Scalar::Integers | Scalar::Rationals => {
                if !self.has_relations() {
                    return Ok(None);
                }
                1
            }
            Scalar::ZMod(n) => {
                let factors = factor(n)?;
                if !self.has_relations() {
                    let rad: BigInt = factors.iter().map(|(p, _)| p.clone()).product();
                    if a.terms().iter().any(|(_, c)| !c.numer().is_multiple_of(&rad)) {
                        return Ok(None);
                    }
                }
                factors.iter().map(|(_, e)| *e).max().unwrap_or(1)
            }
        };
        // Over a reduced scalar ring the relation module has rank prod(deg),
        // so Cayley-Hamilton bounds the index by prod(deg) times the largest
        // prime exponent of the modulus.
        let rank: u32 = (0..self.nvars()).map(|v| self.relation_degree(v).unwrap_or(1)).product();
        let bound = rank * max_exp;
        let mut power = a.clone();
        for k in 1..=bound {
            if power.is_zero() {
                return Ok(Some(k));
            }
            power = self.mul(&power, a);
        }
        Ok(None)
    }

    fn scalar_inverse(&self, c: &BigRational) -> Option<BigRational> {
        if c.is_zero() {
            return None;
        }
        match self.scalar() {
            Scalar::Rationals => Some(c.recip()),
            Scalar::Integers => c.numer().abs().is_one().then(|| c.clone()),
            Scalar::ZMod(n) => mod_inverse(c.numer(), n).map(BigRational::from_integer),
        }
    }

    /// Units of a Laurent ring over a domain are unit multiples of
    /// monomials in the inverted variables.
    fn monomial_unit(&self, a: &Elem) -> Option<Elem> {
        let [(m, c)] = a.terms() else { return None };
        let inv = self.scalar_inverse(c)?;
        let mut exps = Vec::with_capacity(self.nvars());
        for (i, &e) in m.exps().iter().enumerate() {
            if e != 0 && !self.is_inverted(i) {
                return None;
            }
            exps.push(-e);
        }
        Some(self.reduce(vec![(exps, inv)]))
    }

    /// Over `Z/N[x^±, y]`: split `N` into prime powers; modulo `p^k` an
    /// element is a unit iff exactly one coefficient is prime to `p` and that
    /// term is a unit monomial, the rest being nilpotent.
    fn zmod_poly_unit(&self, a: &Elem, n: &BigInt) -> Result<Option<Elem>> {
        let factors = factor(n)?;
        let mut result = self.zero();
        for (p, k) in &factors {
            let q = num_traits::pow(p.clone(), *k as usize);
            let local = self.with_modulus(&q)?;
            let a_local = local.map_from_coeffs(a);
            let mut unit_terms = a_local.terms().iter().filter(|(_, c)| !c.numer().is_multiple_of(p));
            let Some((m, c)) = unit_terms.next() else { return Ok(None) };
            if unit_terms.next().is_some() {
                return Ok(None);
            }
            if m.exps().iter().enumerate().any(|(i, &e)| e != 0 && !local.is_inverted(i)) {
                return Ok(None);
            }
            let u = local.reduce(vec![(m.exps().to_vec(), c.clone())]);
            let u_inv = local.monomial_inverse(&u).expect("unit monomial");
            // a = u (1 + t) with t having coefficients divisible by p.
            let t = local.sub(&local.mul(&a_local, &u_inv), &local.one());
            let mut series = local.one();
            let mut term = local.one();
            let neg_t = local.neg(&t);
            for _ in 1..*k {
                term = local.mul(&term, &neg_t);
                series = local.add(&series, &term);
            }
            let inv_local = local.mul(&u_inv, &series);
            // Chinese remaindering: e = (N/q) * ((N/q)^{-1} mod q).
            let cofactor = n / &q;
            let idem = &cofactor * mod_inverse(&cofactor, &q).unwrap();
            let lifted = self.map_from_coeffs(&inv_local);
            result = self.add(&result, &self.scale_int(&lifted, &idem));
        }
        debug_assert_eq!(self.mul(a, &result), self.one());
        Ok(Some(result))
    }

    fn monomial_inverse(&self, u: &Elem) -> Option<Elem> {
        let [(m, c)] = u.terms() else { return None };
        let inv = self.scalar_inverse(c)?;
        Some(self.reduce(vec![(m.exps().iter().map(|e| -e).collect(), inv)]))
    }

    /// Same variables and inverted set over `Z/q`.
    fn with_modulus(&self, q: &BigInt) -> Result<Ring> {
        let inverted = (0..self.nvars())
            .filter(|&i| self.is_inverted(i))
            .map(|i| self.var_names()[i].clone())
            .collect();
        Ring::new(RingDescriptor::Poly {
            base: alloc::boxed::Box::new(RingDescriptor::ZMod(q.magnitude().clone())),
            vars: self.var_names().to_vec(),
            inverted,
        })
    }

    /// Reinterprets integral coefficients in this ring.
    fn map_from_coeffs(&self, a: &Elem) -> Elem {
        let raw = a
            .terms()
            .iter()
            .map(|(m, c)| (m.exps().to_vec(), self.normalize_coeff(c).expect("integral coefficient")))
            .collect();
        self.reduce(raw)
    }

    fn univariate_q_inverse(&self, a: &Elem) -> Option<Elem> {
        let deg = self.relation_degree(0)? as usize;
        let f = self.relation_poly(0);
        let mut g = vec![BigRational::zero(); deg];
        for (m, c) in a.terms() {
            g[m.exps()[0] as usize] = c.clone();
        }
        let (gcd, s) = uni_ext_gcd(g, f);
        if gcd.len() != 1 {
            return None;
        }
        let scale = gcd[0].recip();
        let raw = s
            .into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as i32], c * &scale))
            .collect();
        Some(self.reduce(raw))
    }

    /// `self / (gens)` for a one-variable polynomial ring over `Q` or a
    /// quotient of one, as `Q[t]/(gcd)`. `None` is the zero ring.
    pub fn univariate_quotient(&self, gens: &[Elem]) -> Result<Option<Ring>> {
        let unsupported = || Error::Unsupported(format!("quotient of {}", self.descriptor()));
        if *self.scalar() != Scalar::Rationals || self.nvars() != 1 || self.is_inverted(0) {
            return Err(unsupported());
        }
        let mut g = match self.relation_degree(0) {
            Some(_) => self.relation_poly(0),
            None => Vec::new(),
        };
        for x in gens {
            let mut h = Vec::new();
            for (m, c) in x.terms() {
                let e = m.exps()[0] as usize;
                if h.len() <= e {
                    h.resize(e + 1, BigRational::zero());
                }
                h[e] = c.clone();
            }
            g = uni_ext_gcd(h, g).0;
        }
        if g.is_empty() {
            return Ok(Some(self.clone()));
        }
        if g.len() == 1 {
            return Ok(None);
        }
        let lead = g.last().unwrap().clone();
        let poly_desc = match self.descriptor() {
            RingDescriptor::Quotient { base, .. } => (**base).clone(),
            d => d.clone(),
        };
        let poly = Ring::new(poly_desc.clone())?;
        let raw = g.iter().enumerate().map(|(i, c)| (vec![i as i32], c / &lead)).collect();
        let text = poly.format_elem(&poly.reduce(raw));
        Ok(Some(Ring::new(RingDescriptor::Quotient { base: Box::new(poly_desc), relations: vec![text] })?))
    }

    /// Dense coefficients of the monic relation on variable `var`.
    fn relation_poly(&self, var: usize) -> Vec<BigRational> {
        let rel = self.0.relations.iter().find(|r| r.var == var).unwrap();
        let mut f = vec![BigRational::zero(); rel.degree as usize + 1];
        f[rel.degree as usize] = BigRational::one();
        for (m, c) in &rel.tail {
            f[m[var] as usize] = c.clone();
        }
        f
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    (q, r)
}

fn uni_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn uni_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Returns `(gcd, s)` with `s*a ≡ gcd` modulo `f`.
fn uni_ext_gcd(mut a: Vec<BigRational>, mut f: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    trim(&mut a);
    trim(&mut f);
    let (mut r0, mut r1) = (a, f);
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = uni_divrem(&r0, &r1);
        let s2 = uni_sub(&s0, &uni_mul(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Prime factorization of a modulus by trial division.
pub(crate) fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("factoring modulus {n}")))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((BigInt::from(m), 1));
    }
    Ok(out)
}
