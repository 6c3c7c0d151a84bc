//! The p-local product decomposition
//! `W_E(R) ≅ ∏_{n ∈ E_(p)} W_{E^(p)}(R)` when every prime of `E` other than
//! `p` is invertible in `R`, and the `V(1)` chart built on it.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::poly::MPoly;
use crate::ring::{CommRing, Elem};
use crate::witt::{is_prime, IndexSet, WittRing, WittVector};
use crate::{Error, Result};

/// Data for working p-locally over `R`: the prime `p` together with
/// verified inverses of every other prime of `E`.
#[derive(Debug, Clone)]
pub struct LocalContext {
    p: u64,
    witt: WittRing,
    local: WittRing,
    cofactors: IndexSet,
    inverses: Vec<(u64, Elem)>,
    recompose: Vec<MPoly<BigRational>>,
}

/// `(n, factor_n)` for `n ∈ E_(p)`, each factor a p-typical vector over
/// `E^(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedWitt {
    pub p: u64,
    pub factors: Vec<(u64, WittVector)>,
}

impl DecomposedWitt {
    pub fn factor(&self, n: u64) -> Option<&WittVector> {
        self.factors.iter().find(|(m, _)| *m == n).map(|(_, f)| f)
    }
}

impl LocalContext {
    /// Derives the inverses from the ring itself.
    pub fn new(witt: &WittRing, p: u64) -> Result<LocalContext> {
        let mut inverses = Vec::new();
        for l in witt.index().primes().into_iter().filter(|&l| l != p) {
            let inv = witt
                .ring()
                .int_inverse(&BigInt::from(l))
                .ok_or_else(|| Error::MissingCertificate(format!("{l} in {}", witt.ring().descriptor())))?;
            inverses.push((l, inv));
        }
        LocalContext::with_inverses(witt, p, inverses)
    }

    /// Uses caller-supplied inverses, each checked by multiplication.
    pub fn with_inverses(witt: &WittRing, p: u64, inverses: Vec<(u64, Elem)>) -> Result<LocalContext> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let ring = witt.ring();
        for l in witt.index().primes().into_iter().filter(|&l| l != p) {
            let (_, inv) = inverses
                .iter()
                .find(|(m, _)| *m == l)
                .ok_or_else(|| Error::MissingCertificate(format!("{l}")))?;
            if ring.mul(&ring.from_i64(l as i64), inv) != ring.one() {
                return Err(Error::MissingCertificate(format!("claimed inverse of {l} fails to verify")));
            }
        }
        let local = WittRing::new(ring.clone(), witt.index().p_part(p))?;
        let cofactors = witt.index().prime_to(p);
        let recompose = recomposition_polynomials(witt, p)?;
        Ok(LocalContext { p, witt: witt.clone(), local, cofactors, inverses, recompose })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn witt(&self) -> &WittRing {
        &self.witt
    }

    /// `W_{E^(p)}(R)`, the ring each factor lives in.
    pub fn local_ring(&self) -> &WittRing {
        &self.local
    }

    /// `E_(p)`.
    pub fn cofactors(&self) -> &IndexSet {
        &self.cofactors
    }

    pub fn inverses(&self) -> &[(u64, Elem)] {
        &self.inverses
    }

    /// Factor `n` is `F_n(a)` restricted to the coordinates in `E^(p)`.
    pub fn decompose(&self, a: &WittVector) -> Result<DecomposedWitt> {
        let sub = self.local.index();
        let mut factors = Vec::with_capacity(self.cofactors.len());
        for &n in self.cofactors.elements() {
            let fa = self.witt.frobenius(n, a)?;
            let factor = self.witt.quotient_ring(n)?.restrict(&fa, sub)?;
            factors.push((n, factor));
        }
        Ok(DecomposedWitt { p: self.p, factors })
    }

    pub fn recompose(&self, d: &DecomposedWitt) -> Result<WittVector> {
        self.check(d)?;
        let ring = self.witt.ring();
        let e = self.witt.index();
        let mut values = Vec::with_capacity(e.len());
        for &m in e.elements() {
            let (n, pk) = split_p(m, self.p);
            values.push(d.factor(n).unwrap().coord(pk).unwrap().clone());
        }
        values.extend(core::iter::repeat_n(Elem::zero(), e.len()));
        let mut coords = Vec::with_capacity(e.len());
        for poly in &self.recompose {
            let mut bad = None;
            let v = poly.eval(ring, &values, |c| match self.rational(c) {
                Ok(x) => x,
                Err(err) => {
                    bad = Some(err);
                    Elem::zero()
                }
            });
            if let Some(err) = bad {
                return Err(err);
            }
            coords.push(v);
        }
        self.witt.vector(coords)
    }

    fn check(&self, d: &DecomposedWitt) -> Result<()> {
        let ok = d.p == self.p
            && d.factors.len() == self.cofactors.len()
            && d.factors.iter().zip(self.cofactors.elements()).all(|((n, f), m)| n == m && f.index() == self.local.index());
        if ok {
            Ok(())
        } else {
            Err(Error::IndexMismatch(format!("decomposition does not match the p = {} context", self.p)))
        }
    }

    /// Image of `u/v`, inverting `v` with the certified inverses.
    fn rational(&self, c: &BigRational) -> Result<Elem> {
        let ring = self.witt.ring();
        let mut den = c.denom().clone();
        let mut out = ring.from_int(c.numer());
        for (l, inv) in &self.inverses {
            let lb = BigInt::from(*l);
            while den.is_multiple_of(&lb) {
                den /= &lb;
                out = ring.mul(&out, inv);
            }
        }
        if !den.is_one() {
            return Err(Error::MissingCertificate(format!("denominator {den}")));
        }
        Ok(out)
    }

    pub fn zero(&self) -> DecomposedWitt {
        self.constant_factors(self.local.zero())
    }

    /// Generator of the rank-one chart: every factor is `1`.
    pub fn generator(&self) -> DecomposedWitt {
        self.constant_factors(self.local.one())
    }

    fn constant_factors(&self, f: WittVector) -> DecomposedWitt {
        let factors = self.cofactors.elements().iter().map(|&n| (n, f.clone())).collect();
        DecomposedWitt { p: self.p, factors }
    }

    pub fn add(&self, a: &DecomposedWitt, b: &DecomposedWitt) -> Result<DecomposedWitt> {
        self.zip(a, b, |x, y| self.local.try_add(x, y))
    }

    pub fn mul(&self, a: &DecomposedWitt, b: &DecomposedWitt) -> Result<DecomposedWitt> {
        self.zip(a, b, |x, y| self.local.try_mul(x, y))
    }

    fn zip(
        &self,
        a: &DecomposedWitt,
        b: &DecomposedWitt,
        f: impl Fn(&WittVector, &WittVector) -> Result<WittVector>,
    ) -> Result<DecomposedWitt> {
        self.check(a)?;
        self.check(b)?;
        let factors = a
            .factors
            .iter()
            .zip(&b.factors)
            .map(|((n, x), (_, y))| Ok((*n, f(x, y)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DecomposedWitt { p: self.p, factors })
    }

    /// `V(1)` on the chart: factor 1 goes to `V_p(F_p(w))`, the other
    /// factors are unchanged, and the result is recomposed.
    pub fn v_one_apply(&self, w: &DecomposedWitt) -> Result<WittVector> {
        self.check(w)?;
        let mut image = w.clone();
        let first = &mut image.factors[0].1;
        *first = if self.local.index().contains(self.p) {
            let f = self.local.frobenius(self.p, first)?;
            self.local.verschiebung(self.p, &f)?
        } else {
            self.local.zero()
        };
        self.recompose(&image)
    }

    /// The chart `(F_p, id, id, ...)` through which `W/W[F]` is seen.
    pub fn wtilde_chart(&self, a: &WittVector) -> Result<DecomposedWitt> {
        let mut d = self.decompose(a)?;
        if self.local.index().contains(self.p) {
            let f = self.local.frobenius(self.p, &d.factors[0].1)?;
            d.factors[0].1 = f;
        } else {
            d.factors.remove(0);
        }
        Ok(d)
    }
}

/// `m = n * p^k` with `p ∤ n`.
pub(crate) fn split_p(mut m: u64, p: u64) -> (u64, u64) {
    let mut pk = 1;
    while m % p == 0 {
        m /= p;
        pk *= p;
    }
    (m, pk)
}

/// Rational polynomials expressing `a_m` through the factor coordinates
/// `y_{n p^j}` (variable at the position of `n p^j` in `E`), from
/// `g_{n p^k}(a) = g_{p^k}(factor_n)`. Denominators must be prime to `p`.
fn recomposition_polynomials(witt: &WittRing, p: u64) -> Result<Vec<MPoly<BigRational>>> {
    let e = witt.index();
    let layout = witt.polynomials().layout();
    let var = |m: u64| MPoly::<BigRational>::var(layout, e.position(m).unwrap());
    let mut out: Vec<MPoly<BigRational>> = Vec::with_capacity(e.len());
    for (pos, &m) in e.elements().iter().enumerate() {
        let (n, pk) = split_p(m, p);
        let mut target = MPoly::zero(layout);
        let mut pj = 1u64;
        while pj <= pk {
            let term = var(n * pj).pow((pk / pj) as u32).scale(&BigRational::from_integer(pj.into()));
            target = target.add(&term);
            pj *= p;
        }
        for j in e.divisor_positions(m) {
            if j == pos {
                continue;
            }
            let d = e.elements()[j];
            target = target.sub(&out[j].pow((m / d) as u32).scale(&BigRational::from_integer(d.into())));
        }
        let a = target.div_int(&BigInt::from(m));
        let pb = BigInt::from(p);
        if a.terms().iter().any(|(_, c)| c.denom().is_multiple_of(&pb)) {
            return Err(Error::InexactDivision(format!("recomposition at {m} needs to divide by {p}")));
        }
        out.push(a);
    }
    Ok(out)
}

/// The unit `u` with `V(1)_p = u · V(1)_ℓ` on a ring where both charts
/// exist: `g_n(u) = g_n(V(1)_p) / g_n(V(1)_ℓ)` for `n > 1` and `g_1(u) = 1`.
pub fn overlap_unit(at_p: &LocalContext, at_l: &LocalContext) -> Result<WittVector> {
    let witt = at_p.witt();
    if witt.index() != at_l.witt().index() || witt.ring() != at_l.witt().ring() {
        return Err(Error::RingMismatch("contexts over different Witt rings".into()));
    }
    let ring = witt.ring();
    let vp = witt.ghost(&at_p.v_one_apply(&at_p.generator())?);
    let vl = witt.ghost(&at_l.v_one_apply(&at_l.generator())?);
    let mut ghost = Vec::with_capacity(vp.len());
    ghost.push(ring.one());
    for (a, b) in vp.iter().zip(&vl).skip(1) {
        let inv = ring
            .is_unit(b)?
            .ok_or_else(|| Error::NotInvertible(format!("ghost component {}", ring.format_elem(b))))?;
        ghost.push(ring.mul(a, &inv));
    }
    witt.unghost(&ghost)
}
