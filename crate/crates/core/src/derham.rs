//! Hodge-filtered de Rham cohomology of `A = Q[x_1^±, ..., x_a^±, y_1, ..., y_b]`.
//!
//! The de Rham complex splits by character `χ ∈ Z^a × N^b`. In character
//! `χ`, `Ω^i` has basis `z^χ dlog z_S` with `|S| = i`, where `S` may use
//! every torus variable and those affine variables with `χ_j ≥ 1`, and `d`
//! is wedging with `θ_χ = Σ χ_k dlog z_k`. When `θ_χ ≠ 0` the slice is
//! exact (contraction with a dual vector is a homotopy), so only `χ = 0`
//! contributes; the box of characters computed is still configurable and
//! is used to confirm this.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::cone::QuasiIdeal;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::rees::{FilteredModule, ReesModule, Top};
use crate::ring::{Elem, Ring};

/// `Q[x_1^±, ..., x_a^±, y_1, ..., y_b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialAlgebra {
    pub a: usize,
    pub b: usize,
}

impl MonomialAlgebra {
    pub fn new(a: usize, b: usize) -> MonomialAlgebra {
        MonomialAlgebra { a, b }
    }

    pub fn nvars(&self) -> usize {
        self.a + self.b
    }

    /// Characters in `[-bound, bound]^a × [0, bound]^b`, in lexicographic order.
    pub fn characters(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for k in 0..self.nvars() {
            let range = if k < self.a { -bound..=bound } else { 0..=bound };
            out = out
                .into_iter()
                .flat_map(|c| {
                    range.clone().map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        out
    }
}

/// The character-`χ` part of the de Rham complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSlice {
    pub character: Vec<i64>,
    /// `basis[i]` lists the sets `S` (sorted variable indices) spanning `Ω^i`.
    pub basis: Vec<Vec<Vec<usize>>>,
    /// `differentials[i]: Ω^i -> Ω^{i+1}`.
    pub differentials: Vec<Matrix>,
}

impl ComplexSlice {
    pub fn new(alg: &MonomialAlgebra, character: Vec<i64>) -> ComplexSlice {
        let n = alg.nvars();
        let allowed: Vec<usize> = (0..n).filter(|&k| k < alg.a || character[k] >= 1).collect();
        let basis: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(&allowed, i)).collect();
        let differentials = (0..n)
            .map(|i| {
                let (src, dst) = (&basis[i], &basis[i + 1]);
                let mut m = Matrix::zeros(dst.len(), src.len());
                for (c, s) in src.iter().enumerate() {
                    for &k in &allowed {
                        if character[k] == 0 || s.contains(&k) {
                            continue;
                        }
                        let before = s.iter().filter(|&&x| x < k).count();
                        let mut t = s.clone();
                        t.insert(before, k);
                        let r = dst.iter().position(|x| *x == t).unwrap();
                        let sign = if before % 2 == 0 { 1 } else { -1 };
                        m.set(r, c, BigRational::from_integer((sign * character[k]).into()));
                    }
                }
                m
            })
            .collect();
        ComplexSlice { character, basis, differentials }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.basis.get(i).map_or(0, |b| b.len())
    }

    /// Boundaries `B^j ⊆ Ω^j`.
    pub fn boundaries(&self, j: usize) -> Subspace {
        let n = self.dim(j);
        if j == 0 {
            return Subspace::zero(n);
        }
        let d = &self.differentials[j - 1];
        Subspace::span(n, &d.transpose().row_vectors())
    }

    /// Cocycles `Z^j ⊆ Ω^j`.
    pub fn cocycles(&self, j: usize) -> Subspace {
        let n = self.dim(j);
        match self.differentials.get(j) {
            Some(d) => Subspace::span(n, &d.kernel()),
            None => Subspace::full(n),
        }
    }

    /// `H^j` with its Hodge filtration `Fil^i = image(H^j(Ω^{≥i}) -> H^j)`
    /// for `i` in `0..=top`, as a filtered vector space.
    pub fn filtered_cohomology(&self, j: usize, top: usize) -> FilteredModule {
        let z = self.cocycles(j);
        let b = self.boundaries(j);
        let q = b.quotient_map();
        let h = z.image(&q);
        let dim = h.dim();
        let recoordinate = |s: &Subspace| -> Subspace {
            let vs: Vec<Vector> = s.basis().iter().map(|v| h.coordinates(v).expect("inside H")).collect();
            Subspace::span(dim, &vs)
        };
        let pieces = (0..=top)
            .map(|i| {
                // H^j(Ω^{≥i}) is Z^j for j ≥ i and zero below.
                let truncated = if j >= i { z.clone() } else { Subspace::zero(self.dim(j)) };
                recoordinate(&truncated.image(&q))
            })
            .collect();
        FilteredModule::new(dim, 0, pieces, Top::Zero).expect("Hodge filtration is decreasing")
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// All slices with characters in the box of radius `bound`.
pub fn build_complex(alg: &MonomialAlgebra, bound: i64) -> Vec<ComplexSlice> {
    alg.characters(bound).into_iter().map(|c| ComplexSlice::new(alg, c)).collect()
}

/// `H^*_dR(A/Q)` with its Hodge filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeCohomology {
    pub algebra: MonomialAlgebra,
    /// `filtered[j]` is `H^j` with `Fil^i`.
    pub filtered: Vec<FilteredModule>,
}

impl HodgeCohomology {
    pub fn h_dims(&self) -> Vec<usize> {
        self.filtered.iter().map(|m| m.dim()).collect()
    }

    pub fn fil_dim(&self, i: i64, j: usize) -> usize {
        self.filtered.get(j).map_or(0, |m| m.piece(i).dim())
    }

    /// Per degree `j`, the Rees module of `Fil^• H^j`.
    pub fn rees_package(&self) -> Vec<ReesModule> {
        self.filtered.iter().map(ReesModule::of_filtered).collect()
    }
}

/// Sums the filtered cohomology of every slice in the character box.
pub fn hodge_cohomology(alg: &MonomialAlgebra, bound: i64) -> HodgeCohomology {
    let n = alg.nvars();
    let mut filtered: Vec<FilteredModule> = (0..=n).map(|_| FilteredModule::trivial(0)).collect();
    for slice in build_complex(alg, bound) {
        for (j, acc) in filtered.iter_mut().enumerate() {
            let h = slice.filtered_cohomology(j, n + 1);
            if h.dim() > 0 {
                *acc = acc.direct_sum(&h);
            }
        }
    }
    HodgeCohomology { algebra: *alg, filtered }
}

/// `G_a^dR` at `R`-points for the trivialized line: the quasi-ideal
/// `R·e -> R`, `e ↦ η`.
pub fn gadr_points(ring: &Ring, eta: &Elem) -> QuasiIdeal<Ring> {
    QuasiIdeal::free(ring.clone(), vec![eta.clone()])
}

/// Slices with `χ ≠ 0` are exact: `θ_χ ≠ 0`, and wedging with `θ_χ` is
/// contracted by a dual vector.
pub fn is_acyclic_character(character: &[i64]) -> bool {
    character.iter().any(|&c| c != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Pi0;
    use crate::ring::CommRing;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn gm_slices() {
        let gm = MonomialAlgebra::new(1, 0);
        let zero = ComplexSlice::new(&gm, vec![0]);
        assert!(zero.differentials[0].is_zero());
        let h = zero.filtered_cohomology(1, 2);
        assert_eq!(h.dim(), 1);
        let two = ComplexSlice::new(&gm, vec![2]);
        assert_eq!(two.differentials[0].rank(), 1);
        assert_eq!(two.filtered_cohomology(0, 2).dim() + two.filtered_cohomology(1, 2).dim(), 0);
        let a1 = MonomialAlgebra::new(0, 1);
        let s = ComplexSlice::new(&a1, vec![3]);
        assert_eq!(s.differentials[0].rank(), 1);
    }

    #[test]
    fn differential_squares_to_zero() {
        for (a, b) in [(2, 1), (1, 2), (3, 1), (0, 3)] {
            let alg = MonomialAlgebra::new(a, b);
            for slice in build_complex(&alg, 1) {
                for w in slice.differentials.windows(2) {
                    assert!(w[1].mul(&w[0]).is_zero(), "{:?}", slice.character);
                }
                let support = (0..alg.nvars()).filter(|&k| k < a || slice.character[k] >= 1).count();
                for i in 0..=alg.nvars() {
                    assert_eq!(slice.dim(i), binom(support, i));
                }
            }
        }
    }

    /// `d(z^χ dlog z_S)` recomputed from partial derivatives in the `dz`
    /// basis: `z^χ dlog z_S = z^{χ-1_S} dz_S`.
    #[test]
    fn differential_matches_leibniz_rule() {
        let alg = MonomialAlgebra::new(2, 1);
        for slice in build_complex(&alg, 2) {
            for i in 0..alg.nvars() {
                for (c, s) in slice.basis[i].iter().enumerate() {
                    let beta: Vec<i64> =
                        (0..alg.nvars()).map(|k| slice.character[k] - i64::from(s.contains(&k))).collect();
                    for (r, t) in slice.basis[i + 1].iter().enumerate() {
                        let extra: Vec<usize> = t.iter().copied().filter(|k| !s.contains(k)).collect();
                        let expected = if extra.len() == 1 && s.iter().all(|k| t.contains(k)) {
                            let k = extra[0];
                            // ∂/∂z_k z^β = β_k z^{β-e_k}; moving dz_k past the
                            // smaller members of S gives the sign.
                            let sign = if s.iter().filter(|&&x| x < k).count() % 2 == 0 { 1 } else { -1 };
                            sign * beta[k]
                        } else {
                            0
                        };
                        assert_eq!(
                            *slice.differentials[i].get(r, c),
                            BigRational::from_integer(expected.into()),
                            "{:?} {s:?} -> {t:?}",
                            slice.character
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn examples() {
        let gm = hodge_cohomology(&MonomialAlgebra::new(1, 0), 2);
        assert_eq!(gm.h_dims(), vec![1, 1]);
        assert_eq!(gm.fil_dim(1, 1), 1);
        assert_eq!(gm.fil_dim(2, 1), 0);
        assert_eq!(hodge_cohomology(&MonomialAlgebra::new(0, 1), 2).h_dims(), vec![1, 0]);
        assert_eq!(hodge_cohomology(&MonomialAlgebra::new(2, 0), 1).h_dims(), vec![1, 2, 1]);
        let rees = gm.rees_package();
        assert_eq!(rees[1].generator_degrees(), vec![(-1, 1)]);
        assert_eq!(rees[0].generator_degrees(), vec![(0, 1)]);
        let a1 = hodge_cohomology(&MonomialAlgebra::new(0, 1), 1).rees_package();
        assert!(a1[1].generator_degrees().is_empty());
        let gm2 = hodge_cohomology(&MonomialAlgebra::new(2, 0), 1).rees_package();
        assert_eq!(gm2[1].generator_degrees(), vec![(-1, 2)]);
    }

    #[test]
    fn kunneth_filtration_and_bounds() {
        for a in 0..=3usize {
            for b in 0..=2usize {
                let h = hodge_cohomology(&MonomialAlgebra::new(a, b), 1);
                let dims = h.h_dims();
                let expected: Vec<usize> = (0..=a + b).map(|j| binom(a, j)).collect();
                assert_eq!(dims, expected, "a={a} b={b}");
                let euler: i64 = dims.iter().enumerate().map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
                assert_eq!(euler, i64::from(a == 0));
                if a + b <= 4 {
                    for j in 0..=a + b {
                        for i in -1..=(a + b + 1) as i64 {
                            let want = if i <= j as i64 { dims[j] } else { 0 };
                            assert_eq!(h.fil_dim(i, j), want);
                        }
                    }
                }
            }
        }
        for slice in build_complex(&MonomialAlgebra::new(2, 2), 2) {
            let total: usize = (0..=4).map(|j| slice.filtered_cohomology(j, 5).dim()).sum();
            assert_eq!(total == 0, is_acyclic_character(&slice.character));
        }
        let small = hodge_cohomology(&MonomialAlgebra::new(2, 1), 1).h_dims();
        let large = hodge_cohomology(&MonomialAlgebra::new(2, 1), 2).h_dims();
        assert_eq!(small, large);
    }

    #[test]
    fn gadr_examples() {
        let r = Ring::parse("quot(poly(rationals; t); t^3)").unwrap();
        let t = r.var("t").unwrap();
        match gadr_points(&r, &t).pi0().unwrap() {
            Pi0::Quotient { ring, .. } => assert_eq!(ring.relation_degree(0), Some(1)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(gadr_points(&r, &r.one()).pi0().unwrap(), Pi0::Zero { .. }));
        match gadr_points(&r, &r.zero()).pi0().unwrap() {
            Pi0::Quotient { ring, .. } => assert_eq!(ring, r),
            other => panic!("{other:?}"),
        }
    }
}
