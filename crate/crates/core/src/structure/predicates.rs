//! Hodge–Tate and distinguished predicates, plus the exhaustive oracles
//! they are compared against.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{is_in_wf, witt_is_unit, LocalContext};
use crate::ring::{CommRing, Elem, Ring, RingDescriptor};
use crate::witt::{WittRing, WittVector};
use crate::{Error, Result};

/// Where a predicate is evaluated: p-locally, or with every prime of `E`
/// invertible.
#[derive(Debug, Clone)]
pub enum PredicateContext {
    Local(Box<LocalContext>),
    Rational(WittRing),
}

impl PredicateContext {
    pub fn local(witt: &WittRing, p: u64) -> Result<PredicateContext> {
        Ok(PredicateContext::Local(Box::new(LocalContext::new(witt, p)?)))
    }

    /// Requires every prime of `E` to be invertible in `R`.
    pub fn rational(witt: &WittRing) -> Result<PredicateContext> {
        for l in witt.index().primes() {
            if witt.ring().int_inverse(&BigInt::from(l)).is_none() {
                return Err(Error::MissingCertificate(format!("{l} in {}", witt.ring().descriptor())));
            }
        }
        Ok(PredicateContext::Rational(witt.clone()))
    }

    /// Rational when possible, otherwise local at the unique prime of `E`
    /// that is not invertible.
    pub fn auto(witt: &WittRing) -> Result<PredicateContext> {
        let bad: Vec<u64> = witt
            .index()
            .primes()
            .into_iter()
            .filter(|&l| witt.ring().int_inverse(&BigInt::from(l)).is_none())
            .collect();
        match bad.as_slice() {
            [] => PredicateContext::rational(witt),
            [p] => PredicateContext::local(witt, *p),
            _ => Err(Error::Precondition(format!(
                "no usable context: primes {bad:?} are all non-invertible in {}",
                witt.ring().descriptor()
            ))),
        }
    }

    pub fn witt(&self) -> &WittRing {
        match self {
            PredicateContext::Local(ctx) => ctx.witt(),
            PredicateContext::Rational(w) => w,
        }
    }
}

/// `v` is Hodge–Tate.
///
/// Locally: factor 1 is `V_p(unit)` (or zero when `p ∉ E`) and every other
/// factor is a unit. Rationally: `g_1(v) = 0` and `g_n(v)` is a unit for
/// `n > 1`.
pub fn is_hodge_tate(ctx: &PredicateContext, v: &WittVector) -> Result<bool> {
    match ctx {
        PredicateContext::Rational(witt) => {
            let ring = witt.ring();
            let g = witt.ghost(v);
            if !g[0].is_zero() {
                return Ok(false);
            }
            for x in &g[1..] {
                if ring.is_unit(x)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PredicateContext::Local(ctx) => {
            let d = ctx.decompose(v)?;
            let local = ctx.local_ring();
            let first = &d.factors[0].1;
            if !first.coords()[0].is_zero() {
                return Ok(false);
            }
            if local.index().contains(ctx.p()) {
                let q = local.quotient_ring(ctx.p())?;
                let shifted = q.vector(
                    q.index().elements().iter().map(|&m| first.coord(m * ctx.p()).unwrap().clone()).collect(),
                )?;
                if witt_is_unit(&q, &shifted)?.is_none() {
                    return Ok(false);
                }
            }
            for (_, f) in &d.factors[1..] {
                if witt_is_unit(local, f)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `ξ = [x] + v` with `x` nilpotent and `v` Hodge–Tate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedWitness {
    pub x: Elem,
    pub nilpotency: u32,
    pub v: WittVector,
}

/// Uses `x = ξ_1`: `ξ - [ξ_1]` always has first ghost component zero.
pub fn is_distinguished(ctx: &PredicateContext, xi: &WittVector) -> Result<Option<DistinguishedWitness>> {
    let witt = ctx.witt();
    let x = xi.coords()[0].clone();
    let Some(k) = witt.ring().is_nilpotent(&x)? else { return Ok(None) };
    let v = witt.try_sub(xi, &witt.teichmuller(&x))?;
    if is_hodge_tate(ctx, &v)? {
        Ok(Some(DistinguishedWitness { x, nilpotency: k, v }))
    } else {
        Ok(None)
    }
}

/// Units of a finite Witt ring found by searching for inverses.
pub fn brute_force_units(witt: &WittRing, limit: usize) -> Result<Vec<WittVector>> {
    let all = witt.elements(limit)?;
    let one = witt.one();
    let mut out = Vec::new();
    for a in &all {
        if all.iter().any(|b| witt.mul(a, b) == one) {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Nilpotent elements of a finite ring by raising to the cardinality.
pub fn brute_force_nilpotents(ring: &Ring, limit: usize) -> Result<Vec<Elem>> {
    let all = ring.elements(limit)?;
    let n = all.len() as u64;
    Ok(all.into_iter().filter(|a| ring.pow(a, n).is_zero()).collect())
}

/// `∃ w` among `units` (units of `W_{E|p}(R)`) with `V_p(w) = v`.
pub fn exists_v_unit_preimage(witt: &WittRing, p: u64, v: &WittVector, units: &[WittVector]) -> Result<bool> {
    for w in units {
        if witt.verschiebung(p, w)? == *v {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `∃ x` nilpotent and `w` a unit with `ξ = [x] + V_p(w)`.
pub fn exists_teichmuller_plus_v_unit(
    witt: &WittRing,
    p: u64,
    xi: &WittVector,
    nilpotents: &[Elem],
    units: &[WittVector],
) -> Result<bool> {
    for x in nilpotents {
        let t = witt.teichmuller(x);
        for w in units {
            if witt.try_add(&t, &witt.verschiebung(p, w)?)? == *xi {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `{a : v·a = 0} = W[F]` over `R` and over the dual numbers `R[ε]/(ε²)`.
///
/// Over a single ring the two sides can agree even when `v` is not
/// Hodge–Tate (e.g. `(2, 1)` in `W_2(Z/4)`); the square-zero extension
/// detects the difference. Only rings without variables are supported.
pub fn kernel_equals_wf(witt: &WittRing, v: &WittVector, limit: usize) -> Result<bool> {
    if !kernel_equals_wf_pointwise(witt, v, limit)? {
        return Ok(false);
    }
    let (dual, vd) = to_dual_numbers(witt, v)?;
    kernel_equals_wf_pointwise(&dual, &vd, limit)
}

/// The kernel comparison over the base ring only.
pub fn kernel_equals_wf_pointwise(witt: &WittRing, v: &WittVector, limit: usize) -> Result<bool> {
    for a in witt.elements(limit)? {
        let killed = witt.is_zero(&witt.try_mul(v, &a)?);
        if killed != is_in_wf(witt, &a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_dual_numbers(witt: &WittRing, v: &WittVector) -> Result<(WittRing, WittVector)> {
    let ring = witt.ring();
    if ring.nvars() != 0 {
        return Err(Error::Unsupported(format!("dual numbers over {}", ring.descriptor())));
    }
    let name = String::from("eps");
    let desc = RingDescriptor::Quotient {
        base: Box::new(RingDescriptor::Poly { base: Box::new(ring.descriptor().clone()), vars: vec![name], inverted: vec![] }),
        relations: vec![String::from("eps^2")],
    };
    let dual_ring = Ring::new(desc)?;
    let dual = witt.over(dual_ring.clone());
    let coords = v
        .coords()
        .iter()
        .map(|c| dual_ring.from_rational(&ring.constant_value(c).unwrap()))
        .collect::<Result<Vec<_>>>()?;
    let vd = dual.vector(coords)?;
    Ok((dual, vd))
}
