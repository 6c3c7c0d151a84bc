//! E-typical Witt vectors.
//!
//! Coordinates are indexed directly by the members of a finite index set
//! `E`; the ghost components are `g_n = sum_{d | n} d * x_d^(n/d)`.
//! Arithmetic over torsion-free rings runs through the ghost map, over
//! everything else through the cached universal polynomials.

pub(crate) mod index;
mod universal;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

pub use index::IndexSet;
pub(crate) use index::{divisors, is_prime, valuation};
pub use universal::{WittOp, WittPolynomials};

use crate::ring::{CommRing, Elem, Ring};
use crate::{Error, Result};

/// A point of `W_E(R)`: one coordinate per member of `E`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WittVector {
    index: IndexSet,
    coords: Vec<Elem>,
}

impl WittVector {
    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Coordinate `x_n`.
    pub fn coord(&self, n: u64) -> Option<&Elem> {
        self.index.position(n).map(|i| &self.coords[i])
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.coords
    }
}

/// The ring `W_E(R)`.
#[derive(Debug, Clone)]
pub struct WittRing {
    ring: Ring,
    polys: Arc<WittPolynomials>,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.index() == other.index()
    }
}

impl WittRing {
    pub fn new(ring: Ring, index: IndexSet) -> Result<WittRing> {
        let polys = Arc::new(WittPolynomials::new(&index)?);
        Ok(WittRing { ring, polys })
    }

    /// Shares an existing polynomial cache.
    pub fn with_polynomials(ring: Ring, polys: Arc<WittPolynomials>) -> WittRing {
        WittRing { ring, polys }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn index(&self) -> &IndexSet {
        self.polys.index()
    }

    pub fn polynomials(&self) -> &Arc<WittPolynomials> {
        &self.polys
    }

    /// `W_{E|n}(R)`, sharing generated polynomials.
    pub fn quotient_ring(&self, n: u64) -> Result<WittRing> {
        if n == 1 {
            return Ok(self.clone());
        }
        Ok(WittRing { ring: self.ring.clone(), polys: self.polys.quotient(n)? })
    }

    /// The same index set over another base ring.
    pub fn over(&self, ring: Ring) -> WittRing {
        WittRing { ring, polys: self.polys.clone() }
    }

    pub fn vector(&self, coords: Vec<Elem>) -> Result<WittVector> {
        if coords.len() != self.index().len() {
            return Err(Error::IndexMismatch(format!(
                "{} coordinates for index set {}",
                coords.len(),
                self.index()
            )));
        }
        Ok(WittVector { index: self.index().clone(), coords })
    }

    /// Coordinates from integers, reduced into the base ring.
    pub fn from_i64s(&self, coords: &[i64]) -> Result<WittVector> {
        self.vector(coords.iter().map(|&c| self.ring.from_i64(c)).collect())
    }

    pub fn parse_coords(&self, texts: &[&str]) -> Result<WittVector> {
        let coords = texts.iter().map(|t| self.ring.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        self.vector(coords)
    }

    pub fn format(&self, a: &WittVector) -> Vec<String> {
        a.coords.iter().map(|c| self.ring.format_elem(c)).collect()
    }

    fn check(&self, a: &WittVector) -> Result<()> {
        if a.index != *self.index() {
            return Err(Error::IndexMismatch(format!("vector over {} used in W over {}", a.index, self.index())));
        }
        Ok(())
    }

    /// Teichmüller lift `[r] = (r, 0, 0, ...)`.
    pub fn teichmuller(&self, r: &Elem) -> WittVector {
        let mut coords = vec![Elem::zero(); self.index().len()];
        coords[0] = r.clone();
        WittVector { index: self.index().clone(), coords }
    }

    /// Ghost components `(g_n(a))_{n ∈ E}`.
    pub fn ghost(&self, a: &WittVector) -> Vec<Elem> {
        let e = self.index().elements();
        e.iter()
            .map(|&n| {
                let mut g = Elem::zero();
                for i in self.index().divisor_positions(n) {
                    let d = e[i];
                    let term = self.ring.pow(&a.coords[i], n / d);
                    g = self.ring.add(&g, &self.ring.scale_int(&term, &BigInt::from(d)));
                }
                g
            })
            .collect()
    }

    /// Inverse of the ghost map by the recursion
    /// `x_n = (w_n - sum_{d | n, d < n} d x_d^(n/d)) / n`.
    ///
    /// Needs each `n` to be invertible, or a torsion-free ring in which the
    /// divisions come out exact (for `Z` this is the Dwork condition).
    pub fn unghost(&self, w: &[Elem]) -> Result<WittVector> {
        let e = self.index().elements();
        if w.len() != e.len() {
            return Err(Error::IndexMismatch(format!("{} ghost components for {}", w.len(), self.index())));
        }
        if self.ring == Ring::integers() {
            let ints: Option<Vec<BigInt>> =
                w.iter().map(|x| self.ring.constant_value(x).map(|q| q.to_integer())).collect();
            if let Some(ints) = ints {
                if let Some((n, m, p)) = dwork_violation(&ints, self.index()) {
                    return Err(Error::InexactDivision(format!(
                        "ghost vector is not integral: w_{n} and w_{m} differ modulo a power of {p}"
                    )));
                }
            }
        }
        let mut coords: Vec<Elem> = Vec::with_capacity(e.len());
        for (pos, &n) in e.iter().enumerate() {
            let mut rhs = w[pos].clone();
            for i in self.index().divisor_positions(n) {
                if i == pos {
                    continue;
                }
                let d = e[i];
                let term = self.ring.scale_int(&self.ring.pow(&coords[i], n / d), &BigInt::from(d));
                rhs = self.ring.sub(&rhs, &term);
            }
            coords.push(self.ring.exact_div_int(&rhs, &BigInt::from(n))?);
        }
        Ok(WittVector { index: self.index().clone(), coords })
    }

    fn ghost_path(&self) -> bool {
        self.ring.is_torsion_free()
    }

    fn eval(&self, op: WittOp, args: &[&WittVector]) -> Result<Vec<Elem>> {
        let polys = self.polys.get(op)?;
        let k = self.index().len();
        let mut values: Vec<Elem> = Vec::with_capacity(2 * k);
        values.extend(args[0].coords.iter().cloned());
        match args.get(1) {
            Some(b) => values.extend(b.coords.iter().cloned()),
            None => values.extend(core::iter::repeat_n(Elem::zero(), k)),
        }
        Ok(polys.iter().map(|p| p.eval(&self.ring, &values, |c| self.ring.from_int(c))).collect())
    }

    /// Sum via the universal polynomials, bypassing the ghost fast path.
    pub fn add_by_polynomials(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        let coords = self.eval(WittOp::Sum, &[a, b])?;
        Ok(WittVector { index: self.index().clone(), coords })
    }

    /// Product via the universal polynomials, bypassing the ghost fast path.
    pub fn mul_by_polynomials(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        let coords = self.eval(WittOp::Product, &[a, b])?;
        Ok(WittVector { index: self.index().clone(), coords })
    }

    pub fn try_add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        if self.ghost_path() {
            let (ga, gb) = (self.ghost(a), self.ghost(b));
            let g: Vec<Elem> = ga.iter().zip(&gb).map(|(x, y)| self.ring.add(x, y)).collect();
            return self.unghost(&g);
        }
        self.add_by_polynomials(a, b)
    }

    pub fn try_mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        if self.ghost_path() {
            let (ga, gb) = (self.ghost(a), self.ghost(b));
            let g: Vec<Elem> = ga.iter().zip(&gb).map(|(x, y)| self.ring.mul(x, y)).collect();
            return self.unghost(&g);
        }
        self.mul_by_polynomials(a, b)
    }

    pub fn try_neg(&self, a: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        if self.ghost_path() {
            let g: Vec<Elem> = self.ghost(a).iter().map(|x| self.ring.neg(x)).collect();
            return self.unghost(&g);
        }
        let coords = self.eval(WittOp::Negation, &[a])?;
        Ok(WittVector { index: self.index().clone(), coords })
    }

    pub fn try_sub(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        let nb = self.try_neg(b)?;
        self.try_add(a, &nb)
    }

    /// `F_n : W_E(R) -> W_{E|n}(R)`, characterized by
    /// `g_d(F_n a) = g_{nd}(a)`.
    pub fn frobenius(&self, n: u64, a: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        if !self.index().contains(n) {
            return Err(Error::IndexMismatch(format!("{n} is not in {}", self.index())));
        }
        if n == 1 {
            return Ok(a.clone());
        }
        let target = self.quotient_ring(n)?;
        if self.ghost_path() {
            let g = self.ghost(a);
            let shifted: Vec<Elem> = target
                .index()
                .elements()
                .iter()
                .map(|&d| g[self.index().position(n * d).unwrap()].clone())
                .collect();
            return target.unghost(&shifted);
        }
        let coords = self.eval(WittOp::Frobenius(n), &[a])?;
        Ok(WittVector { index: target.index().clone(), coords })
    }

    /// `F_n` computed with the universal polynomials only.
    pub fn frobenius_by_polynomials(&self, n: u64, a: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        if n == 1 {
            return Ok(a.clone());
        }
        let coords = self.eval(WittOp::Frobenius(n), &[a])?;
        Ok(WittVector { index: self.index().quotient(n), coords })
    }

    /// `V_n : W_{E|n}(R) -> W_E(R)`, the index shift
    /// `(V_n a)_m = a_{m/n}` if `n | m`, else `0`.
    pub fn verschiebung(&self, n: u64, a: &WittVector) -> Result<WittVector> {
        if !self.index().contains(n) {
            return Err(Error::IndexMismatch(format!("{n} is not in {}", self.index())));
        }
        let source = self.index().quotient(n);
        if a.index != source {
            return Err(Error::IndexMismatch(format!("V_{n} expects a vector over {source}, got {}", a.index)));
        }
        let coords = self
            .index()
            .elements()
            .iter()
            .map(|&m| if m % n == 0 { a.coords[source.position(m / n).unwrap()].clone() } else { Elem::zero() })
            .collect();
        Ok(WittVector { index: self.index().clone(), coords })
    }

    /// Restriction to a sub-index-set (a ring map `W_E -> W_{E'}`).
    pub fn restrict(&self, a: &WittVector, sub: &IndexSet) -> Result<WittVector> {
        self.check(a)?;
        if !sub.is_subset(self.index()) {
            return Err(Error::IndexMismatch(format!("{sub} is not contained in {}", self.index())));
        }
        let coords = sub.elements().iter().map(|&m| a.coord(m).unwrap().clone()).collect();
        Ok(WittVector { index: sub.clone(), coords })
    }

    /// Coordinatewise image under the canonical map from `src`'s base ring.
    pub fn map_from(&self, src: &WittRing, a: &WittVector) -> Result<WittVector> {
        src.check(a)?;
        if src.index() != self.index() {
            return Err(Error::IndexMismatch(format!("{} vs {}", src.index(), self.index())));
        }
        let coords = a.coords.iter().map(|c| self.ring.map_from(&src.ring, c)).collect::<Result<Vec<_>>>()?;
        Ok(WittVector { index: self.index().clone(), coords })
    }

    /// Pseudo-random vector with small coordinates.
    pub fn sample(&self, next: &mut dyn FnMut() -> u64) -> WittVector {
        let coords = (0..self.index().len()).map(|_| self.ring.sample(next)).collect();
        WittVector { index: self.index().clone(), coords }
    }

    pub fn cardinality(&self) -> Option<BigUint> {
        let n = self.ring.cardinality()?;
        Some(num_traits::pow(n, self.index().len()))
    }
}

impl CommRing for WittRing {
    type Elem = WittVector;

    fn zero(&self) -> WittVector {
        WittVector { index: self.index().clone(), coords: vec![Elem::zero(); self.index().len()] }
    }

    fn one(&self) -> WittVector {
        self.teichmuller(&self.ring.one())
    }

    fn add(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.try_add(a, b).expect("Witt addition of vectors in this ring")
    }

    fn neg(&self, a: &WittVector) -> WittVector {
        self.try_neg(a).expect("Witt negation of a vector in this ring")
    }

    fn mul(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.try_mul(a, b).expect("Witt multiplication of vectors in this ring")
    }

    /// The image of `n` under `Z = W_E(Z)`-structure: unghost `(n, n, ...)`
    /// over the integers, then map coordinates.
    fn from_int(&self, n: &BigInt) -> WittVector {
        let z = Ring::integers();
        let wz = WittRing { ring: z.clone(), polys: self.polys.clone() };
        let g = vec![z.from_int(n); self.index().len()];
        let a = wz.unghost(&g).expect("constants are integral Witt vectors");
        let coords = a.coords.iter().map(|c| self.ring.map_from(&z, c).unwrap()).collect();
        WittVector { index: self.index().clone(), coords }
    }

    fn elements(&self, limit: usize) -> Result<Vec<WittVector>> {
        let card = self
            .cardinality()
            .ok_or_else(|| Error::Infeasible(format!("W over {} is infinite", self.ring.descriptor())))?;
        if card > BigUint::from(limit) {
            return Err(Error::Infeasible(format!("W_E has {card} elements (limit {limit})")));
        }
        let base = self.ring.elements(limit)?;
        let k = self.index().len();
        let total = card.to_usize().unwrap();
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; k];
        for _ in 0..total {
            let coords = digits.iter().map(|&d| base[d].clone()).collect();
            out.push(WittVector { index: self.index().clone(), coords });
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < base.len() {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    fn describe(&self, a: &WittVector) -> String {
        format!("({})", self.format(a).join(", "))
    }
}

/// Dwork integrality test for integer ghost vectors: for every prime `p`
/// and `m` with `mp ∈ E`, `w_{mp} ≡ w_m (mod p^(1 + v_p(m)))`.
pub fn dwork_check(w: &[BigInt], index: &IndexSet) -> bool {
    dwork_violation(w, index).is_none()
}

/// First violated congruence as `(n, m, p)` with `n = mp`.
pub fn dwork_violation(w: &[BigInt], index: &IndexSet) -> Option<(u64, u64, u64)> {
    let e = index.elements();
    for (pos, &n) in e.iter().enumerate() {
        for p in divisors(n).into_iter().filter(|&p| is_prime(p)) {
            let m = n / p;
            let modulus = num_traits::pow(BigInt::from(p), 1 + valuation(m, p) as usize);
            let diff = &w[pos] - &w[index.position(m).unwrap()];
            if !(diff % &modulus).is_zero() {
                return Some((n, m, p));
            }
        }
    }
    None
}

/// Ghost components of an integer Witt vector.
pub fn integer_ghost(coords: &[BigInt], index: &IndexSet) -> Vec<BigInt> {
    let e = index.elements();
    e.iter()
        .map(|&n| {
            index
                .divisor_positions(n)
                .into_iter()
                .map(|i| BigInt::from(e[i]) * num_traits::pow(coords[i].clone(), (n / e[i]) as usize))
                .sum()
        })
        .collect()
}


#[cfg(test)]
mod tests;
