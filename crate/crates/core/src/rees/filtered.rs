use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};

/// Behaviour of the filtration above the stored window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Top {
    /// `Fil^i = 0` for `i > hi`.
    Zero,
    /// `Fil^i = Fil^hi` for `i > hi`.
    Constant,
}

/// A decreasing filtration on `M = Q^dim`.
///
/// Kept normalized: `lo` is the largest index with `Fil^lo = M`, and the
/// window ends at the first index from which the filtration is stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilteredModule {
    dim: usize,
    lo: i64,
    pieces: Vec<Subspace>,
    top: Top,
}

impl FilteredModule {
    /// `pieces[k]` is `Fil^{lo+k}`. The first piece must be all of `M`.
    pub fn new(dim: usize, lo: i64, pieces: Vec<Subspace>, top: Top) -> Result<FilteredModule> {
        let Some(first) = pieces.first() else {
            return Err(Error::InvalidModule("a filtration needs at least one piece".into()));
        };
        if !first.is_full() || first.ambient() != dim {
            return Err(Error::InvalidModule(format!("Fil^{lo} must be the whole module")));
        }
        for (k, w) in pieces.windows(2).enumerate() {
            if w[1].ambient() != dim || !w[0].contains_subspace(&w[1]) {
                return Err(Error::InvalidModule(format!("Fil^{} is not contained in Fil^{}", lo + k as i64 + 1, lo + k as i64)));
            }
        }
        let mut m = FilteredModule { dim, lo, pieces, top };
        m.normalize();
        Ok(m)
    }

    /// `Fil^i = Q^dim` for `i <= 0`, zero above.
    pub fn trivial(dim: usize) -> FilteredModule {
        FilteredModule { dim, lo: 0, pieces: vec![Subspace::full(dim)], top: Top::Zero }
    }

    /// The unit object `Q` with the trivial filtration.
    pub fn unit() -> FilteredModule {
        FilteredModule::trivial(1)
    }

    /// `Q{n}`: `Fil^i = Q` for `i <= n`.
    pub fn twist(n: i64) -> FilteredModule {
        FilteredModule::unit().shift(n)
    }

    /// `Fil^i = Q^dim` for every `i`.
    pub fn constant(dim: usize) -> FilteredModule {
        let mut m = FilteredModule { dim, lo: 0, pieces: vec![Subspace::full(dim)], top: Top::Constant };
        m.normalize();
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.pieces.len() as i64 - 1
    }

    pub fn top(&self) -> Top {
        self.top
    }

    pub fn piece(&self, i: i64) -> Subspace {
        if i <= self.lo {
            return Subspace::full(self.dim);
        }
        let k = (i - self.lo) as usize;
        match self.pieces.get(k) {
            Some(s) => s.clone(),
            None => match self.top {
                Top::Zero => Subspace::zero(self.dim),
                Top::Constant => self.pieces.last().unwrap().clone(),
            },
        }
    }

    fn normalize(&mut self) {
        if self.top == Top::Zero && self.pieces.last().is_some_and(|s| s.dim() == 0) && self.dim > 0 {
            while self.pieces.len() > 1 && self.pieces.last().unwrap().dim() == 0 {
                self.pieces.pop();
            }
        }
        if self.top == Top::Constant {
            while self.pieces.len() > 1 && self.pieces[self.pieces.len() - 1] == self.pieces[self.pieces.len() - 2] {
                self.pieces.pop();
            }
            if self.pieces.last().unwrap().dim() == 0 {
                self.top = Top::Zero;
                if self.pieces.len() > 1 {
                    self.pieces.pop();
                }
            }
        }
        while self.pieces.len() > 1 && self.pieces[1].is_full() {
            self.pieces.remove(0);
            self.lo += 1;
        }
        if self.dim == 0 {
            self.lo = 0;
            self.top = Top::Zero;
        }
        if self.top == Top::Constant && self.pieces.len() == 1 {
            self.lo = 0;
        }
    }

    /// `M{n}` with `M{n}(i) = M(i - n)`, so that `Q{0}{n} = Q{n}`.
    pub fn shift(&self, n: i64) -> FilteredModule {
        let mut m = self.clone();
        m.lo += n;
        m.normalize();
        m
    }

    pub fn direct_sum(&self, other: &FilteredModule) -> FilteredModule {
        let dim = self.dim + other.dim;
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let pieces = (lo..=hi)
            .map(|i| {
                let (a, b) = (self.piece(i), other.piece(i));
                let mut vs = Vec::new();
                for v in a.basis() {
                    let mut w = v.clone();
                    w.resize(dim, num_traits::Zero::zero());
                    vs.push(w);
                }
                for v in b.basis() {
                    let mut w = vec![num_traits::Zero::zero(); self.dim];
                    w.extend(v.iter().cloned());
                    vs.push(w);
                }
                Subspace::span(dim, &vs)
            })
            .collect();
        let top = if self.top == Top::Constant || other.top == Top::Constant { Top::Constant } else { Top::Zero };
        FilteredModule::new(dim, lo, pieces, top).expect("direct sum of filtrations")
    }

    /// Day convolution: `Fil^i(M ⊗ N) = Σ_{j+k=i} Fil^j M ⊗ Fil^k N`.
    pub fn day_tensor(&self, other: &FilteredModule) -> FilteredModule {
        let dim = self.dim * other.dim;
        let top = if self.top == Top::Constant || other.top == Top::Constant { Top::Constant } else { Top::Zero };
        if dim == 0 {
            return FilteredModule::trivial(0);
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let mut pieces = Vec::new();
        for i in lo..=hi + 1 {
            let jmin = self.lo.min(i - other.hi()) - 1;
            let jmax = self.hi().max(i - other.lo) + 1;
            let mut acc = Subspace::zero(dim);
            for j in jmin..=jmax {
                let (a, b) = (self.piece(j), other.piece(i - j));
                if a.dim() == 0 || b.dim() == 0 {
                    continue;
                }
                let am = Matrix::from_rows(self.dim, a.basis());
                let bm = Matrix::from_rows(other.dim, b.basis());
                acc = acc.sum(&Subspace::span(dim, &am.kron(&bm).row_vectors()));
            }
            pieces.push(acc);
        }
        FilteredModule::new(dim, lo, pieces, top).expect("Day convolution of filtrations")
    }

    /// `∩_i Fil^i = 0`, which at this scale is the completeness condition.
    pub fn is_complete(&self) -> bool {
        self.top == Top::Zero || self.pieces.last().unwrap().dim() == 0
    }

    /// `lim M/Fil^i`: the quotient by the stable top piece, with the
    /// induced filtration. Returns the completion and whether `M` was
    /// already complete.
    pub fn complete(&self) -> (FilteredModule, bool) {
        if self.is_complete() {
            return (self.clone(), true);
        }
        let stable = self.pieces.last().unwrap();
        let q = stable.quotient_map();
        let dim = q.rows();
        let pieces = self.pieces.iter().map(|s| s.image(&q)).collect();
        (FilteredModule::new(dim, self.lo, pieces, Top::Zero).expect("quotient filtration"), false)
    }

    /// `dim Fil^i` for `i` in `range`.
    pub fn dims(&self, range: core::ops::RangeInclusive<i64>) -> Vec<(i64, usize)> {
        range.map(|i| (i, self.piece(i).dim())).collect()
    }
}
