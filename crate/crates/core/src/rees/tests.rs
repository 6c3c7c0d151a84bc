use super::*;
use crate::linalg::{Subspace, Vector};
use crate::ring::{CommRing, Ring};
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A random decreasing filtration on `Q^dim` built from nested spans of
/// random vectors.
fn random_filtration(seed: u64, dim: usize, steps: usize, lo: i64) -> FilteredModule {
    let mut s = seed | 1;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        s
    };
    let mut vectors: Vec<Vector> = (0..dim).map(|_| (0..dim).map(|_| q((next() % 7) as i64 - 3)).collect()).collect();
    let mut pieces = vec![Subspace::full(dim)];
    for _ in 0..steps {
        let keep = (next() as usize) % (vectors.len() + 1);
        vectors.truncate(keep);
        let next_piece = Subspace::span(dim, &vectors).sum(&Subspace::zero(dim));
        let prev = pieces.last().unwrap();
        let piece = if prev.contains_subspace(&next_piece) { next_piece } else { prev.clone() };
        pieces.push(piece);
    }
    FilteredModule::new(dim, lo, pieces, Top::Zero).unwrap()
}

#[test]
fn unit_and_twist() {
    let unit = ReesModule::of_filtered(&FilteredModule::unit());
    assert_eq!(unit.generator_degrees(), vec![(0, 1)]);
    let q1 = FilteredModule::twist(1);
    assert_eq!(q1.piece(1).dim(), 1);
    assert_eq!(q1.piece(2).dim(), 0);
    assert_eq!(ReesModule::of_filtered(&q1).generator_degrees(), vec![(-1, 1)]);
    assert_eq!(q1.shift(-1), FilteredModule::unit());
    assert_eq!(FilteredModule::unit().shift(0), FilteredModule::unit());
}

#[test]
fn torsion_is_rejected() {
    let t = crate::linalg::Matrix::zeros(1, 1);
    let g = ReesModule::new(0, vec![1, 1], vec![t], Top::Zero).unwrap();
    assert!(g.to_filtered().is_err());
    let free = ReesModule::new(0, vec![1], vec![], Top::Zero).unwrap();
    assert_eq!(free.to_filtered().unwrap(), FilteredModule::unit());
}

#[test]
fn day_convolution_examples() {
    let q1 = FilteredModule::twist(1);
    assert_eq!(q1.day_tensor(&q1), FilteredModule::twist(2));
    let m = random_filtration(99, 3, 3, -1);
    assert_eq!(FilteredModule::unit().day_tensor(&m), m);
    assert_eq!(m.day_tensor(&FilteredModule::unit()), m);
}

#[test]
fn completeness() {
    let m = random_filtration(5, 2, 2, 0);
    assert!(m.is_complete());
    let c = FilteredModule::constant(1);
    assert!(!c.is_complete());
    let (completed, was) = c.complete();
    assert!(!was);
    assert_eq!(completed.dim(), 0);
    let mixed = FilteredModule::new(2, 0, vec![Subspace::full(2), Subspace::span(2, &[vec![q(1), q(1)]])], Top::Constant).unwrap();
    let (completed, was) = mixed.complete();
    assert!(!was);
    assert_eq!(completed.dim(), 1);
    assert!(completed.is_complete());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn rees_round_trips(seed in any::<u64>(), dim in 0usize..4, steps in 0usize..4, lo in -3i64..3) {
        let m = random_filtration(seed, dim, steps, lo);
        let g = ReesModule::of_filtered(&m);
        prop_assert!(g.is_torsion_free());
        prop_assert_eq!(g.to_filtered().unwrap(), m.clone());
        let back = ReesModule::of_filtered(&g.to_filtered().unwrap());
        prop_assert!(back.isomorphic(&g).unwrap());
    }

    #[test]
    fn shift_is_degree_shift(seed in any::<u64>(), n in -3i64..=3) {
        let m = random_filtration(seed, 2, 3, 0);
        let shifted = ReesModule::of_filtered(&m.shift(n));
        prop_assert!(shifted.isomorphic(&ReesModule::of_filtered(&m).shift_degrees(-n)).unwrap());
        prop_assert_eq!(m.shift(n), m.day_tensor(&FilteredModule::twist(n)));
    }

    #[test]
    fn day_convolution_is_symmetric_monoidal(seed in any::<u64>()) {
        let a = random_filtration(seed, 2, 2, 0);
        let b = random_filtration(seed.rotate_left(17), 2, 2, -1);
        let c = random_filtration(seed.rotate_left(33), 1, 1, 1);
        let ab = a.day_tensor(&b);
        let ba = b.day_tensor(&a);
        // The swap of tensor factors is an isomorphism of filtered modules.
        prop_assert!(ReesModule::of_filtered(&ab).isomorphic(&ReesModule::of_filtered(&ba)).unwrap());
        let left = ab.day_tensor(&c);
        let right = a.day_tensor(&b.day_tensor(&c));
        prop_assert_eq!(left, right);
    }
}

/// `dim_Q (J)_D` for `J` spanned by `{m · g : m a monomial, g in gens}`
/// inside degree-`D` polynomials of `s` (no inverted variables).
fn degree_slice_dim(s: &Ring, gens: &[crate::ring::Elem], d: u32) -> usize {
    let n = s.nvars();
    let monos = all_monomials(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.terms()[0].0.degree() as u32;
        if gd > d {
            continue;
        }
        for m in all_monomials(n, d - gd) {
            let mono = s.elem_from_terms([(m.iter().map(|&e| e as i32).collect::<Vec<_>>(), q(1))]).unwrap();
            let prod = s.mul(&mono, g);
            let mut row = vec![q(0); monos.len()];
            for (mm, c) in prod.terms() {
                let key: Vec<u32> = mm.exps().iter().map(|&e| e as u32).collect();
                row[monos.iter().position(|x| *x == key).unwrap()] = c.clone();
            }
            rows.push(row);
        }
    }
    crate::linalg::rref(&rows, monos.len()).1.len()
}

fn all_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=d)
        .flat_map(|first| {
            all_monomials(n - 1, d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn powers(s: &Ring, gens: &[crate::ring::Elem], i: u32) -> Vec<crate::ring::Elem> {
    let mut out = vec![s.one()];
    for _ in 0..i {
        let mut next = Vec::new();
        for a in &out {
            for g in gens {
                next.push(s.mul(a, g));
            }
        }
        out = next;
    }
    out
}

#[test]
fn iadic_examples() {
    let qx = Ring::parse("poly(rationals; x)").unwrap();
    let (s, gens) = diagonal_ideal(&qx, 2).unwrap();
    let gr = iadic_gr(&s, &gens, 4).unwrap();
    assert!(gr.iter().all(|p| p.rank == 1));
    assert_eq!(gr[2].generators, vec!["(1*x_1+-1*x_2)^2"]);

    let qxz = Ring::parse("poly(rationals; x, z)").unwrap();
    let (s2, gens2) = diagonal_ideal(&qxz, 2).unwrap();
    let ranks: Vec<usize> = iadic_gr(&s2, &gens2, 3).unwrap().iter().map(|p| p.rank).collect();
    assert_eq!(ranks, vec![1, 2, 3, 4]);
    assert_eq!(quotient_tower_ranks(&iadic_gr(&s2, &gens2, 3).unwrap()), vec![1, 3, 6, 10]);

    let zero = iadic_gr(&s2, &[], 2).unwrap();
    assert_eq!(zero.iter().map(|p| p.rank).collect::<Vec<_>>(), vec![1, 0, 0]);

    let laurent = Ring::parse("poly(rationals; x, y; inv x)").unwrap();
    let (s3, gens3) = diagonal_ideal(&laurent, 3).unwrap();
    assert_eq!(s3.nvars(), 6);
    let ranks: Vec<usize> = iadic_gr(&s3, &gens3, 2).unwrap().iter().map(|p| p.rank).collect();
    assert_eq!(ranks, vec![1, 4, 10]);
    assert!(iadic_gr(&s3, &[s3.parse_elem("x_1^2").unwrap()], 1).is_err());
}

#[test]
fn iadic_ranks_match_hilbert_function() {
    // dim (I^i / I^{i+1})_D = rank(gr^i) · dim (S/I)_{D-i}, checked by
    // spanning I^i in each degree.
    for (vars, n) in [(&["x"][..], 2usize), (&["x", "z"][..], 2), (&["x"][..], 3)] {
        let a = Ring::parse(&alloc::format!("poly(rationals; {})", vars.join(","))).unwrap();
        let (s, gens) = diagonal_ideal(&a, n).unwrap();
        let gr = iadic_gr(&s, &gens, 3).unwrap();
        let r = gens.len();
        let quotient_vars = s.nvars() - r;
        for i in 0..3u32 {
            let pi = powers(&s, &gens, i);
            let pi1 = powers(&s, &gens, i + 1);
            for d in i..=i + 2 {
                let got = degree_slice_dim(&s, &pi, d) - degree_slice_dim(&s, &pi1, d);
                let base = binom(quotient_vars + (d - i) as usize - 1, (d - i) as usize);
                assert_eq!(got, gr[i as usize].rank * base, "{vars:?} n={n} i={i} D={d}");
            }
        }
    }
}
