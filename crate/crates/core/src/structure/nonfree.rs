//! Exhaustive search over the ghost profiles a free generator of the
//! `V(1)` module would need.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::{CommRing, Ring};
use crate::witt::index::{divisors, is_prime};
use crate::witt::index::valuation;
use crate::witt::{IndexSet, WittRing};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Every sign pattern violates `g_n ≡ g_m mod p^{1+v_p(m)}` with `n = mp`.
    /// `uniform` is false when no single congruence fails for all patterns;
    /// the reported one is then the first pattern's.
    Unsat { n: u64, m: u64, p: u64, uniform: bool },
    /// An integral Witt vector with the required ghost profile.
    Sat { ghost: Vec<BigInt>, coords: Vec<BigInt> },
}

/// Searches the profiles `g_1 = 0`, `g_{p^r} = ±p`, `g_n = ±1` otherwise.
/// `bound` caps the number of sign patterns examined.
pub fn ghost_profile_search(index: &IndexSet, bound: u64) -> Result<Certificate> {
    let e = index.elements();
    let free: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 1).collect();
    if free.len() >= 64 || (1u64 << free.len()) > bound {
        return Err(Error::Unsupported(format!("2^{} sign patterns exceed bound {bound}", free.len())));
    }
    let base: Vec<BigInt> = e.iter().map(|&n| BigInt::from(prime_power_base(n).unwrap_or(1))).collect();
    let mut first = None;
    let mut common: Option<Vec<(u64, u64, u64)>> = None;
    for mask in 0..(1u64 << free.len()) {
        let mut g: Vec<BigInt> = e.iter().map(|_| BigInt::from(0)).collect();
        for (bit, &i) in free.iter().enumerate() {
            g[i] = if mask >> bit & 1 == 1 { -base[i].clone() } else { base[i].clone() };
        }
        let violated = violations(&g, index);
        if violated.is_empty() {
            let witt = WittRing::new(Ring::integers(), index.clone())?;
            let ring = witt.ring().clone();
            let ghost: Vec<_> = g.iter().map(|x| ring.from_int(x)).collect();
            let w = witt.unghost(&ghost)?;
            let coords = w
                .coords()
                .iter()
                .map(|c| ring.constant_value(c).map(|q| q.to_integer()).unwrap_or_default())
                .collect();
            return Ok(Certificate::Sat { ghost: g, coords });
        }
        if first.is_none() {
            first = violated.first().copied();
        }
        common = Some(match common {
            None => violated,
            Some(c) => c.into_iter().filter(|x| violated.contains(x)).collect(),
        });
    }
    let (n, m, p, uniform) = match common.as_deref() {
        Some([(n, m, p), ..]) => (*n, *m, *p, true),
        _ => {
            let (n, m, p) = first.expect("some pattern failed");
            (n, m, p, false)
        }
    };
    Ok(Certificate::Unsat { n, m, p, uniform })
}

/// `ghost_profile_search` restricted to index sets containing `pℓ` for
/// distinct primes `p, ℓ`, where the obstruction applies.
pub fn v_nonfree_obstruction(index: &IndexSet, bound: u64) -> Result<Certificate> {
    let has_pair = index
        .elements()
        .iter()
        .any(|&n| n > 1 && prime_power_base(n).is_none() && divisors(n).iter().filter(|&&d| is_prime(d)).count() >= 2);
    if !has_pair {
        return Err(Error::Precondition(format!("{index} contains no product of two distinct primes")));
    }
    ghost_profile_search(index, bound)
}

fn prime_power_base(n: u64) -> Option<u64> {
    let ps: Vec<u64> = divisors(n).into_iter().filter(|&d| is_prime(d)).collect();
    match ps.as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

fn violations(g: &[BigInt], index: &IndexSet) -> Vec<(u64, u64, u64)> {
    let e = index.elements();
    let mut out = Vec::new();
    for (pos, &n) in e.iter().enumerate() {
        for p in divisors(n).into_iter().filter(|&p| is_prime(p)) {
            let m = n / p;
            let modulus = num_traits::pow(BigInt::from(p), 1 + valuation(m, p) as usize);
            if !((&g[pos] - &g[index.position(m).unwrap()]) % &modulus).is_zero() {
                out.push((n, m, p));
            }
        }
    }
    out
}
