use alloc::format;
use alloc::vec::Vec;

use super::{FilteredModule, Top};
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};

/// A graded `Q[t]`-module with `t` of degree `+1`, finite-dimensional in
/// each degree and stored on `[lo_deg, hi_deg]`.
///
/// Above `hi_deg` every piece equals the top one with `t` the identity.
/// Below `lo_deg` the pieces are zero (`Top::Zero`) or equal to the bottom
/// one with `t` the identity (`Top::Constant`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesModule {
    lo_deg: i64,
    dims: Vec<usize>,
    t_maps: Vec<Matrix>,
    low: Top,
}

impl ReesModule {
    /// `t_maps[k]` goes from degree `lo_deg + k` to `lo_deg + k + 1`.
    pub fn new(lo_deg: i64, dims: Vec<usize>, t_maps: Vec<Matrix>, low: Top) -> Result<ReesModule> {
        if dims.is_empty() || t_maps.len() + 1 != dims.len() {
            return Err(Error::InvalidModule("need one t map between consecutive degrees".into()));
        }
        for (k, m) in t_maps.iter().enumerate() {
            if m.cols() != dims[k] || m.rows() != dims[k + 1] {
                return Err(Error::InvalidModule(format!("t map out of degree {} has the wrong shape", lo_deg + k as i64)));
            }
        }
        Ok(ReesModule { lo_deg, dims, t_maps, low })
    }

    /// `⊕_i Fil^i M` with `Fil^i` in degree `-i`.
    pub fn of_filtered(m: &FilteredModule) -> ReesModule {
        let lo_deg = -m.hi();
        let pieces: Vec<Subspace> = (m.lo()..=m.hi()).rev().map(|i| m.piece(i)).collect();
        let dims = pieces.iter().map(|s| s.dim()).collect();
        let t_maps = pieces
            .windows(2)
            .map(|w| {
                let mut t = Matrix::zeros(w[1].dim(), w[0].dim());
                for (c, v) in w[0].basis().iter().enumerate() {
                    let coords = w[1].coordinates(v).expect("filtration is decreasing");
                    for (r, x) in coords.into_iter().enumerate() {
                        t.set(r, c, x);
                    }
                }
                t
            })
            .collect();
        ReesModule { lo_deg, dims, t_maps, low: m.top() }
    }

    /// Inverse of [`ReesModule::of_filtered`] on `t`-torsion-free modules.
    pub fn to_filtered(&self) -> Result<FilteredModule> {
        for (k, t) in self.t_maps.iter().enumerate() {
            if t.rank() != self.dims[k] {
                return Err(Error::InvalidModule(format!("t-torsion in degree {}", self.lo_deg + k as i64)));
            }
        }
        let n = self.dims.len();
        let dim = self.dims[n - 1];
        let mut pieces = Vec::with_capacity(n);
        let mut to_top = Matrix::identity(dim);
        pieces.push(Subspace::full(dim));
        for k in (0..n - 1).rev() {
            to_top = to_top.mul(&self.t_maps[k]);
            pieces.push(Subspace::span(dim, &to_top.transpose().row_vectors()));
        }
        FilteredModule::new(dim, -self.hi_deg(), pieces, self.low)
    }

    pub fn lo_deg(&self) -> i64 {
        self.lo_deg
    }

    pub fn hi_deg(&self) -> i64 {
        self.lo_deg + self.dims.len() as i64 - 1
    }

    pub fn low(&self) -> Top {
        self.low
    }

    pub fn dim_at(&self, d: i64) -> usize {
        if d < self.lo_deg {
            return match self.low {
                Top::Zero => 0,
                Top::Constant => self.dims[0],
            };
        }
        self.dims[((d - self.lo_deg) as usize).min(self.dims.len() - 1)]
    }

    /// The `t` map out of degree `d`.
    pub fn t_map(&self, d: i64) -> Matrix {
        if d < self.lo_deg - 1 || d >= self.hi_deg() {
            return Matrix::identity(self.dim_at(d));
        }
        if d == self.lo_deg - 1 {
            return match self.low {
                Top::Zero => Matrix::zeros(self.dims[0], 0),
                Top::Constant => Matrix::identity(self.dims[0]),
            };
        }
        self.t_maps[(d - self.lo_deg) as usize].clone()
    }

    pub fn t_maps(&self) -> &[Matrix] {
        &self.t_maps
    }

    /// Multiplies the grading: the piece in degree `d` moves to `d + k`.
    pub fn shift_degrees(&self, k: i64) -> ReesModule {
        let mut r = self.clone();
        r.lo_deg += k;
        r
    }

    /// Number of new generators in each degree, `dim M_d - rank(t: M_{d-1} -> M_d)`.
    pub fn generator_degrees(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for (k, &d) in self.dims.iter().enumerate() {
            let incoming = if k == 0 {
                match self.low {
                    Top::Zero => 0,
                    Top::Constant => d,
                }
            } else {
                self.t_maps[k - 1].rank()
            };
            if d > incoming {
                out.push((self.lo_deg + k as i64, d - incoming));
            }
        }
        out
    }

    pub fn is_torsion_free(&self) -> bool {
        self.t_maps.iter().zip(&self.dims).all(|(t, &d)| t.rank() == d)
    }

    /// For torsion-free modules the graded pieces and stabilization
    /// determine the module up to isomorphism: a chain of subspaces is
    /// classified by its dimensions.
    pub fn isomorphic(&self, other: &ReesModule) -> Result<bool> {
        if !self.is_torsion_free() || !other.is_torsion_free() {
            return Err(Error::Unsupported("isomorphism test for modules with t-torsion".into()));
        }
        if self.low != other.low {
            return Ok(false);
        }
        let lo = self.lo_deg.min(other.lo_deg) - 1;
        let hi = self.hi_deg().max(other.hi_deg()) + 1;
        Ok((lo..=hi).all(|d| self.dim_at(d) == other.dim_at(d)))
    }
}
