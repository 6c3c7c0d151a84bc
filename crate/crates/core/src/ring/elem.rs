use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

/// Exponent vector of a (Laurent) monomial.
///
/// Ordered by total degree, then with larger exponents of earlier
/// variables first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<i32>);

impl Mono {
    pub fn new(exps: Vec<i32>) -> Self {
        Mono(exps)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring element in canonical form: nonzero terms sorted by monomial.
///
/// Elements do not carry their ring; every operation goes through a
/// [`Ring`](super::Ring).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem {
    terms: Vec<(Mono, BigRational)>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem { terms: Vec::new() }
    }

    pub(crate) fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            Elem::zero()
        } else {
            Elem { terms: vec![(Mono(vec![0; nvars]), c)] }
        }
    }

    pub(crate) fn from_sorted(terms: Vec<(Mono, BigRational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Elem { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn as_constant(&self) -> Option<&BigRational> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_constant() => Some(c),
            _ => None,
        }
    }

    pub(crate) fn map_coeffs(&self, f: impl Fn(&BigRational) -> BigRational) -> Elem {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c = f(c);
                (!c.is_zero()).then(|| (m.clone(), c))
            })
            .collect();
        Elem { terms }
    }
}

/// Merges two sorted term lists, combining equal monomials with `f`.
pub(crate) fn merge(a: &Elem, b: &Elem, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Elem {
    let (x, y) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let zero = BigRational::zero();
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(s), Some(t)) => s.0.cmp(&t.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        let (m, c) = match ord {
            Ordering::Less => {
                i += 1;
                (&x[i - 1].0, f(&x[i - 1].1, &zero))
            }
            Ordering::Greater => {
                j += 1;
                (&y[j - 1].0, f(&zero, &y[j - 1].1))
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (&x[i - 1].0, f(&x[i - 1].1, &y[j - 1].1))
            }
        };
        if !c.is_zero() {
            out.push((m.clone(), c));
        }
    }
    Elem { terms: out }
}
