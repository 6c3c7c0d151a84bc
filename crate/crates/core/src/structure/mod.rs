//! Structural ideals and predicates on `W_E(R)`: the Frobenius kernel
//! `W[F]`, the Verschiebung ideal, units, the p-local product
//! decomposition, the `V(1)` chart, Hodge–Tate and distinguished elements,
//! and the ghost-profile obstruction to a free `V(1)`.

mod local;
mod nonfree;
mod predicates;

use alloc::format;
use alloc::vec::Vec;

use crate::ring::{CommRing, Elem};
use crate::witt::{WittOp, WittRing, WittVector};
use crate::{Error, Result};

pub use local::{overlap_unit, DecomposedWitt, LocalContext};
pub use nonfree::{ghost_profile_search, v_nonfree_obstruction, Certificate};
pub use predicates::{
    brute_force_nilpotents, brute_force_units, exists_teichmuller_plus_v_unit, exists_v_unit_preimage, is_distinguished,
    is_hodge_tate, kernel_equals_wf, kernel_equals_wf_pointwise,
    DistinguishedWitness, PredicateContext,
};

/// Default cap on exhaustive enumerations.
pub const ENUMERATION_LIMIT: usize = 1_000_000;

/// `a ∈ W[F]`: `F_p(a) = 0` for every prime `p ∈ E`.
pub fn is_in_wf(witt: &WittRing, a: &WittVector) -> Result<bool> {
    for p in witt.index().primes() {
        let f = witt.frobenius(p, a)?;
        if f.coords().iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which side of the annihilator equivalence to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Annihilator {
    /// `a · V_p(b) = 0` for all primes `p ∈ E` and all `b`.
    KillsVW,
    /// `a · λ = 0` for all `λ ∈ W[F]`.
    KilledByWF,
}

/// Decides the annihilator condition by enumerating the finite ring.
pub fn wf_annihilator_check(witt: &WittRing, a: &WittVector, direction: Annihilator, limit: usize) -> Result<bool> {
    match direction {
        Annihilator::KillsVW => {
            for p in witt.index().primes() {
                let source = witt.quotient_ring(p)?;
                for b in source.elements(limit)? {
                    let vb = witt.verschiebung(p, &b)?;
                    if !witt.is_zero(&witt.try_mul(a, &vb)?) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Annihilator::KilledByWF => {
            for lambda in witt.elements(limit)? {
                if is_in_wf(witt, &lambda)? && !witt.is_zero(&witt.try_mul(a, &lambda)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Unit test in `W_E(R)`.
///
/// `a` is a unit iff every ghost component `g_n(a)` is a unit of `R`: the
/// product polynomial `m_n(x, y)` is `g_n(x) y_n` plus terms in `y_d`,
/// `d | n, d < n`, so the inverse can be solved for one coordinate at a
/// time. Returns the inverse.
pub fn witt_is_unit(witt: &WittRing, a: &WittVector) -> Result<Option<WittVector>> {
    let ring = witt.ring();
    let ghosts = witt.ghost(a);
    let mut ghost_inverses = Vec::with_capacity(ghosts.len());
    for g in &ghosts {
        match ring.is_unit(g)? {
            Some(inv) => ghost_inverses.push(inv),
            None => return Ok(None),
        }
    }
    let product = witt.polynomials().get(WittOp::Product)?;
    let k = witt.index().len();
    let mut values: Vec<Elem> = a.coords().to_vec();
    values.extend(core::iter::repeat_n(Elem::zero(), k));
    for (pos, poly) in product.iter().enumerate() {
        // b_n = 0 in `values` at this point.
        let rest = poly.eval(ring, &values, |c| ring.from_int(c));
        let target = if pos == 0 { ring.one() } else { ring.zero() };
        values[k + pos] = ring.mul(&ghost_inverses[pos], &ring.sub(&target, &rest));
    }
    let inverse = witt.vector(values.split_off(k))?;
    if witt.try_mul(a, &inverse)? != witt.one() {
        return Err(Error::Precondition(format!("inverse solve failed for {}", witt.describe(a))));
    }
    Ok(Some(inverse))
}

#[cfg(test)]
mod tests;
