//! Universal integral polynomials for Witt vector operations.
//!
//! Each family is produced by inverting the ghost map symbolically:
//! `n * s_n = (ghost-side target)_n - sum_{d | n, d < n} d * s_d^(n/d)`,
//! with an exact integer division at every step.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::race::OnceBox;

use super::IndexSet;
use crate::poly::{Layout, MPoly};
use crate::{Error, Result};

/// Operation whose universal polynomials are cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WittOp {
    Sum,
    Product,
    Negation,
    /// `F_n : W_E -> W_{E|n}`.
    Frobenius(u64),
}

impl fmt::Display for WittOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittOp::Sum => f.write_str("sum"),
            WittOp::Product => f.write_str("product"),
            WittOp::Negation => f.write_str("negation"),
            WittOp::Frobenius(n) => write!(f, "frobenius{n}"),
        }
    }
}

/// Lazily generated universal polynomials for one index set.
///
/// Variables `0..|E|` are `x_d` and `|E|..2|E|` are `y_d`, for `d` in
/// increasing order. Every family is write-once: concurrent generators
/// compute identical values and the first one wins.
pub struct WittPolynomials {
    index: IndexSet,
    layout: Arc<Layout>,
    sum: OnceBox<Vec<MPoly<BigInt>>>,
    product: OnceBox<Vec<MPoly<BigInt>>>,
    negation: OnceBox<Vec<MPoly<BigInt>>>,
    frobenius: Vec<(u64, OnceBox<Vec<MPoly<BigInt>>>)>,
    quotients: Vec<(u64, OnceBox<Arc<WittPolynomials>>)>,
}

impl fmt::Debug for WittPolynomials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WittPolynomials").field("index", &self.index).finish_non_exhaustive()
    }
}

impl WittPolynomials {
    pub fn new(index: &IndexSet) -> Result<WittPolynomials> {
        let max = index.max();
        let bound = |d: u64| -> Result<u32> {
            u32::try_from(max / d).map_err(|_| Error::Unsupported(format!("index set {index} too large")))
        };
        let mut bounds = Vec::with_capacity(2 * index.len());
        for _ in 0..2 {
            for &d in index.elements() {
                bounds.push(bound(d)?);
            }
        }
        let layout = Arc::new(Layout::new(&bounds)?);
        let others: Vec<u64> = index.elements().iter().copied().filter(|&n| n > 1).collect();
        Ok(WittPolynomials {
            index: index.clone(),
            layout,
            sum: OnceBox::new(),
            product: OnceBox::new(),
            negation: OnceBox::new(),
            frobenius: others.iter().map(|&n| (n, OnceBox::new())).collect(),
            quotients: others.iter().map(|&n| (n, OnceBox::new())).collect(),
        })
    }

    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    /// Name of variable `v`: `x{d}` or `y{d}`.
    pub fn var_name(&self, v: usize) -> String {
        let k = self.index.len();
        if v < k {
            format!("x{}", self.index.elements()[v])
        } else {
            format!("y{}", self.index.elements()[v - k])
        }
    }

    fn slot(&self, op: WittOp) -> Result<&OnceBox<Vec<MPoly<BigInt>>>> {
        match op {
            WittOp::Sum => Ok(&self.sum),
            WittOp::Product => Ok(&self.product),
            WittOp::Negation => Ok(&self.negation),
            WittOp::Frobenius(n) => self
                .frobenius
                .iter()
                .find(|(m, _)| *m == n)
                .map(|(_, slot)| slot)
                .ok_or_else(|| Error::IndexMismatch(format!("frobenius index {n} not in {} (or is 1)", self.index))),
        }
    }

    /// Polynomials of `op`, one per output coordinate, generating on first use.
    pub fn get(&self, op: WittOp) -> Result<&[MPoly<BigInt>]> {
        let slot = self.slot(op)?;
        if let Some(v) = slot.get() {
            return Ok(v);
        }
        let polys = self.generate(op)?;
        Ok(slot.get_or_init(|| Box::new(polys)))
    }

    /// Whether `op` has been generated or installed.
    pub fn is_ready(&self, op: WittOp) -> bool {
        self.slot(op).is_ok_and(|s| s.get().is_some())
    }

    /// Installs externally stored polynomials after a ghost spot check.
    pub fn install(&self, op: WittOp, polys: Vec<MPoly<BigInt>>) -> Result<()> {
        let slot = self.slot(op)?;
        if polys.len() != self.output_len(op) || polys.iter().any(|p| p.layout() != &self.layout) {
            return Err(Error::InvalidModule(format!("stored {op} polynomials have the wrong shape")));
        }
        self.ghost_spot_check(op, &polys)?;
        let _ = slot.set(Box::new(polys));
        Ok(())
    }

    /// Universal polynomials for `E|n`, shared across calls.
    pub fn quotient(&self, n: u64) -> Result<Arc<WittPolynomials>> {
        if n == 1 {
            return Err(Error::IndexMismatch("use the polynomials themselves for n = 1".into()));
        }
        let (_, slot) = self
            .quotients
            .iter()
            .find(|(m, _)| *m == n)
            .ok_or_else(|| Error::IndexMismatch(format!("{n} not in {}", self.index)))?;
        if let Some(q) = slot.get() {
            return Ok(q.clone());
        }
        let q = Arc::new(WittPolynomials::new(&self.index.quotient(n))?);
        Ok(slot.get_or_init(|| Box::new(q)).clone())
    }

    fn output_len(&self, op: WittOp) -> usize {
        match op {
            WittOp::Frobenius(n) => self.index.quotient(n).len(),
            _ => self.index.len(),
        }
    }

    /// `G_n` in the x variables (`offset = 0`) or y variables.
    pub fn ghost_poly(&self, n: u64, offset: usize) -> MPoly<BigInt> {
        let mut g = MPoly::zero(&self.layout);
        for i in self.index.divisor_positions(n) {
            let d = self.index.elements()[i];
            let term = MPoly::var(&self.layout, offset + i).pow((n / d) as u32).scale(&BigInt::from(d));
            g = g.add(&term);
        }
        g
    }

    fn generate(&self, op: WittOp) -> Result<Vec<MPoly<BigInt>>> {
        let k = self.index.len();
        let (outputs, scale): (IndexSet, u64) = match op {
            WittOp::Frobenius(n) => (self.index.quotient(n), n),
            _ => (self.index.clone(), 1),
        };
        let mut out: Vec<MPoly<BigInt>> = Vec::with_capacity(outputs.len());
        for (pos, &n) in outputs.elements().iter().enumerate() {
            let target = match op {
                WittOp::Sum => self.ghost_poly(n, 0).add(&self.ghost_poly(n, k)),
                WittOp::Product => self.ghost_poly(n, 0).mul(&self.ghost_poly(n, k)),
                WittOp::Negation => self.ghost_poly(n, 0).neg(),
                WittOp::Frobenius(_) => self.ghost_poly(n * scale, 0),
            };
            let mut rhs = target;
            for j in outputs.divisor_positions(n) {
                if j == pos {
                    continue;
                }
                let d = outputs.elements()[j];
                let term = out[j].pow((n / d) as u32).scale(&BigInt::from(d));
                rhs = rhs.sub(&term);
            }
            let s = rhs.exact_div(&BigInt::from(n)).map_err(|e| match e {
                Error::InexactDivision(m) => Error::InexactDivision(format!("{op} at n = {n}: {m}")),
                other => other,
            })?;
            out.push(s);
        }
        self.ghost_spot_check(op, &out)?;
        Ok(out)
    }

    /// Evaluates the family at two integer points with no zero coordinate
    /// and compares ghost components with the ghost-side operation.
    fn ghost_spot_check(&self, op: WittOp, polys: &[MPoly<BigInt>]) -> Result<()> {
        for shift in [0i64, 1] {
            self.ghost_check_at(op, polys, shift)?;
        }
        Ok(())
    }

    fn ghost_check_at(&self, op: WittOp, polys: &[MPoly<BigInt>], shift: i64) -> Result<()> {
        let k = self.index.len();
        let point: Vec<BigInt> = (0..2 * k as i64)
            .map(|v| {
                let m = (v + shift) % 3 + 1;
                BigInt::from(if (v + shift) % 2 == 0 { m } else { -m })
            })
            .collect();
        let z = crate::ring::Ring::integers();
        let values: Vec<_> = point.iter().map(|c| crate::ring::CommRing::from_int(&z, c)).collect();
        let eval: Vec<BigInt> = polys
            .iter()
            .map(|p| {
                let e = p.eval(&z, &values, |c| crate::ring::CommRing::from_int(&z, c));
                z.constant_value(&e).map(|q| q.to_integer()).unwrap_or_else(BigInt::zero)
            })
            .collect();
        let ghost = |coords: &[BigInt], set: &IndexSet, n: u64| -> BigInt {
            set.divisor_positions(n)
                .into_iter()
                .map(|i| {
                    let d = set.elements()[i];
                    BigInt::from(d) * num_traits::pow(coords[i].clone(), (n / d) as usize)
                })
                .sum()
        };
        let (xs, ys) = point.split_at(k);
        let outputs = match op {
            WittOp::Frobenius(n) => self.index.quotient(n),
            _ => self.index.clone(),
        };
        for &n in outputs.elements() {
            let expected = match op {
                WittOp::Sum => ghost(xs, &self.index, n) + ghost(ys, &self.index, n),
                WittOp::Product => ghost(xs, &self.index, n) * ghost(ys, &self.index, n),
                WittOp::Negation => -ghost(xs, &self.index, n),
                WittOp::Frobenius(m) => ghost(xs, &self.index, n * m),
            };
            if ghost(&eval, &outputs, n) != expected {
                return Err(Error::InvalidModule(format!("{op} polynomials fail the ghost check at n = {n}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn exps(p: &MPoly<BigInt>) -> Vec<(Vec<u32>, i64)> {
        p.terms()
            .iter()
            .map(|(k, c)| (p.layout().decode(*k), i64::try_from(c.clone()).unwrap()))
            .collect()
    }

    fn poly(w: &WittPolynomials, terms: &[(&[u32], i64)]) -> MPoly<BigInt> {
        let mut out = MPoly::zero(w.layout());
        for (e, c) in terms {
            out = out.add(&MPoly::monomial(w.layout(), e, BigInt::from(*c)).unwrap());
        }
        out
    }

    #[test]
    fn length_two_sum_and_product() {
        let w = WittPolynomials::new(&IndexSet::divisors_of(2).unwrap()).unwrap();
        // variables: x1, x2, y1, y2
        let s = w.get(WittOp::Sum).unwrap();
        assert_eq!(s[0], poly(&w, &[(&[1, 0, 0, 0], 1), (&[0, 0, 1, 0], 1)]));
        assert_eq!(s[1], poly(&w, &[(&[0, 1, 0, 0], 1), (&[0, 0, 0, 1], 1), (&[1, 0, 1, 0], -1)]));
        let m = w.get(WittOp::Product).unwrap();
        assert_eq!(m[0], poly(&w, &[(&[1, 0, 1, 0], 1)]));
        assert_eq!(m[1], poly(&w, &[(&[2, 0, 0, 1], 1), (&[0, 1, 2, 0], 1), (&[0, 1, 0, 1], 2)]));
        let f = w.get(WittOp::Frobenius(2)).unwrap();
        assert_eq!(exps(&f[0]).len(), 2);
        assert_eq!(f[0], poly(&w, &[(&[2, 0, 0, 0], 1), (&[0, 1, 0, 0], 2)]));
    }

    #[test]
    fn negation_is_additive_inverse_symbolically() {
        for e in [IndexSet::divisors_of(6).unwrap(), IndexSet::p_typical(2, 3).unwrap()] {
            let w = WittPolynomials::new(&e).unwrap();
            let k = e.len();
            let neg = w.get(WittOp::Negation).unwrap().to_vec();
            let sum = w.get(WittOp::Sum).unwrap();
            // substitute y := neg(x)
            let mut subst: Vec<MPoly<BigInt>> = (0..k).map(|v| MPoly::var(w.layout(), v)).collect();
            subst.extend(neg);
            for s in sum {
                assert!(s.compose(w.layout(), &subst).is_zero());
            }
        }
    }

    #[test]
    fn install_rejects_wrong_polynomials() {
        let e = IndexSet::divisors_of(2).unwrap();
        let w = WittPolynomials::new(&e).unwrap();
        let good = WittPolynomials::new(&e).unwrap().get(WittOp::Sum).unwrap().to_vec();
        let mut bad = good.clone();
        bad[1] = bad[1].add(&MPoly::var(w.layout(), 0));
        assert!(w.install(WittOp::Sum, bad).is_err());
        w.install(WittOp::Sum, good.clone()).unwrap();
        assert_eq!(w.get(WittOp::Sum).unwrap(), good.as_slice());
        assert!(w.install(WittOp::Sum, vec![]).is_err());
    }

    #[test]
    fn frobenius_of_missing_index_is_an_error() {
        let w = WittPolynomials::new(&IndexSet::divisors_of(6).unwrap()).unwrap();
        assert!(w.get(WittOp::Frobenius(5)).is_err());
        assert_eq!(w.quotient(2).unwrap().index().elements(), &[1, 3]);
    }
}
