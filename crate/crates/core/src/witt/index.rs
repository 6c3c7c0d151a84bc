use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// A finite set of positive integers closed under divisors and under
/// products of coprime members; indexes the coordinates of `W_E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    elems: Vec<u64>,
}

impl IndexSet {
    /// `{d : d | n}`.
    pub fn divisors_of(n: u64) -> Result<IndexSet> {
        if n == 0 {
            return Err(Error::InvalidIndexSet("divisors_of needs n >= 1".into()));
        }
        Ok(IndexSet { elems: divisors(n) })
    }

    /// `{1, p, ..., p^(len-1)}`: the p-typical set with `len` coordinates.
    pub fn p_typical(p: u64, len: u32) -> Result<IndexSet> {
        if !is_prime(p) {
            return Err(Error::InvalidIndexSet(format!("{p} is not prime")));
        }
        if len == 0 {
            return Err(Error::InvalidIndexSet("p_typical needs length >= 1".into()));
        }
        let mut elems = Vec::with_capacity(len as usize);
        let mut q = 1u64;
        for i in 0..len {
            elems.push(q);
            if i + 1 < len {
                q = q
                    .checked_mul(p)
                    .ok_or_else(|| Error::InvalidIndexSet("p_typical overflows u64".into()))?;
            }
        }
        Ok(IndexSet { elems })
    }

    /// Validates an explicit list.
    pub fn explicit(list: &[u64]) -> Result<IndexSet> {
        let mut elems = list.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&1) {
            return Err(Error::InvalidIndexSet("index set must contain 1".into()));
        }
        for &n in &elems {
            for d in divisors(n) {
                if elems.binary_search(&d).is_err() {
                    return Err(Error::InvalidIndexSet(format!("{d} divides {n} but is missing")));
                }
            }
        }
        for (i, &a) in elems.iter().enumerate() {
            for &b in &elems[i + 1..] {
                if a.gcd(&b) == 1 {
                    let prod = a.checked_mul(b);
                    if prod.is_none_or(|m| elems.binary_search(&m).is_err()) {
                        return Err(Error::InvalidIndexSet(format!(
                            "missing {} = {a}*{b} (coprime product)",
                            prod.map_or_else(|| String::from("overflow"), |m| format!("{m}"))
                        )));
                    }
                }
            }
        }
        Ok(IndexSet { elems })
    }

    /// `div:N`, `ptyp:p:len` or `set:a,b,c`.
    pub fn parse(text: &str) -> Result<IndexSet> {
        let text = text.trim();
        let bad = || Error::Parse(format!("bad index set {text:?}; expected div:N, ptyp:p:len or set:a,b,..."));
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
        if let Some(n) = text.strip_prefix("div:") {
            return IndexSet::divisors_of(num(n)?);
        }
        if let Some(rest) = text.strip_prefix("ptyp:") {
            let (p, len) = rest.split_once(':').ok_or_else(bad)?;
            let len = u32::try_from(num(len)?).map_err(|_| bad())?;
            return IndexSet::p_typical(num(p)?, len);
        }
        if let Some(rest) = text.strip_prefix("set:") {
            let list = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
            return IndexSet::explicit(&list);
        }
        Err(bad())
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn max(&self) -> u64 {
        *self.elems.last().unwrap()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn position(&self, n: u64) -> Option<usize> {
        self.elems.binary_search(&n).ok()
    }

    /// Positions of the members dividing `n`.
    pub fn divisor_positions(&self, n: u64) -> Vec<usize> {
        self.elems
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d <= n && n % d == 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `E|n = {m : mn ∈ E}`; empty unless `n ∈ E`.
    pub fn quotient(&self, n: u64) -> IndexSet {
        let elems = self.elems.iter().filter(|&&m| m % n == 0).map(|&m| m / n).collect();
        IndexSet { elems }
    }

    /// `E_(n) = {m ∈ E : gcd(m, n) = 1}`.
    pub fn prime_to(&self, n: u64) -> IndexSet {
        let elems = self.elems.iter().copied().filter(|m| m.gcd(&n) == 1).collect();
        IndexSet { elems }
    }

    /// `E^(p)`: the powers of `p` in `E`.
    pub fn p_part(&self, p: u64) -> IndexSet {
        let elems = self.elems.iter().copied().filter(|&m| is_power_of(m, p)).collect();
        IndexSet { elems }
    }

    /// Primes belonging to `E`.
    pub fn primes(&self) -> Vec<u64> {
        self.elems.iter().copied().filter(|&m| is_prime(m)).collect()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.elems.iter().all(|&m| other.contains(m))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// `v_p(n)`.
pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn constructors() {
        assert_eq!(IndexSet::divisors_of(6).unwrap().elements(), &[1, 2, 3, 6]);
        let e = IndexSet::p_typical(2, 3).unwrap();
        assert_eq!(e.elements(), &[1, 2, 4]);
        assert_eq!(e.p_part(2), e);
        assert_eq!(e.prime_to(2).elements(), &[1]);
        assert!(IndexSet::explicit(&[1, 2, 3]).is_err());
        assert!(IndexSet::explicit(&[1, 4]).is_err());
        assert_eq!(IndexSet::explicit(&[6, 1, 3, 2]).unwrap(), IndexSet::divisors_of(6).unwrap());
        assert!(IndexSet::p_typical(4, 2).is_err());
    }

    #[test]
    fn derived_sets() {
        let e = IndexSet::divisors_of(12).unwrap();
        assert_eq!(e.quotient(2).elements(), &[1, 2, 3, 6]);
        assert_eq!(e.quotient(5).elements(), &[] as &[u64]);
        assert_eq!(e.prime_to(2).elements(), &[1, 3]);
        assert_eq!(e.p_part(2).elements(), &[1, 2, 4]);
        assert_eq!(e.primes(), vec![2, 3]);
        assert_eq!(e.divisor_positions(6), vec![0, 1, 2, 4]);
    }

    #[test]
    fn parsing() {
        assert_eq!(IndexSet::parse("div:10").unwrap().elements(), &[1, 2, 5, 10]);
        assert_eq!(IndexSet::parse("ptyp:3:2").unwrap().elements(), &[1, 3]);
        assert_eq!(IndexSet::parse("set:1,2").unwrap().elements(), &[1, 2]);
        assert!(IndexSet::parse("set:1,2,3").is_err());
        assert!(IndexSet::parse("bogus").is_err());
        assert_eq!(IndexSet::divisors_of(6).unwrap().to_string(), "{1,2,3,6}");
    }

    #[test]
    fn derived_sets_are_index_sets() {
        for n in 1..=60u64 {
            let e = IndexSet::divisors_of(n).unwrap();
            for &m in e.elements() {
                IndexSet::explicit(e.quotient(m).elements()).unwrap();
                IndexSet::explicit(e.prime_to(m).elements()).unwrap();
            }
            for p in e.primes() {
                IndexSet::explicit(e.p_part(p).elements()).unwrap();
            }
        }
    }

    use alloc::string::ToString;
}
