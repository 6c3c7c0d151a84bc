use num_rational::BigRational;
use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wittforge_core::cone::{ConeElem, Pi0, QuasiIdeal};
use wittforge_core::derham::{build_complex, hodge_cohomology, is_acyclic_character, MonomialAlgebra};
use wittforge_core::linalg::{rref, Subspace, Vector};
use wittforge_core::rees::{diagonal_ideal, iadic_gr as gr, FilteredModule, ReesModule, Top};
use wittforge_core::ring::CommRing;
use wittforge_core::{Elem, Ring};

use super::{stream, Budget, Runner};

fn test_ideals() -> wittforge_core::Result<Vec<QuasiIdeal<Ring>>> {
    let z = Ring::integers();
    let ab = Ring::parse("poly(integers; a, b)")?;
    let z6 = Ring::zmod(6);
    Ok(vec![
        QuasiIdeal::free(z.clone(), vec![z.from_i64(2)]),
        QuasiIdeal::from_ideal(ab.clone(), vec![ab.var("a")?, ab.var("b")?], 10)?,
        QuasiIdeal::new(z6.clone(), vec![z6.from_i64(2), z6.from_i64(3)], vec![vec![z6.from_i64(3), z6.from_i64(2)]], 1000)?,
    ])
}

fn small(ring: &Ring, next: &mut dyn FnMut() -> u64) -> Elem {
    if ring.nvars() == 0 {
        ring.from_i64((next() % 7) as i64 - 3)
    } else {
        ring.sample(next)
    }
}

/// Equality in `R × I^{n-1}` with `I` taken modulo its relations.
fn cone_eq(q: &QuasiIdeal<Ring>, a: &ConeElem<Elem>, b: &ConeElem<Elem>) -> wittforge_core::Result<bool> {
    if a.r != b.r {
        return Ok(false);
    }
    for (x, y) in a.xs.iter().zip(&b.xs) {
        let diff = q.module_add(x, &q.module_neg(y));
        if !q.module_is_zero(&diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cone_laws(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    // Positive and negative control for the quasi-ideal law.
    let ab = Ring::parse("poly(integers; a, b)")?;
    let (a, b) = (ab.var("a")?, ab.var("b")?);
    for (name, q) in [
        ("free on (a, b)", QuasiIdeal::free(ab.clone(), vec![a.clone(), b.clone()])),
        ("ideal (a, b)", QuasiIdeal::from_ideal(ab.clone(), vec![a, b], 10)?),
    ] {
        let law = q.check()?.is_none();
        let level = q.level(2)?;
        let mut commutes = true;
        for i in 0..q.rank() {
            for j in 0..q.rank() {
                let ei = level.element(ab.zero(), vec![q.generator(i)])?;
                let ej = level.element(ab.zero(), vec![q.generator(j)])?;
                commutes &= cone_eq(&q, &level.mul(&ei, &ej), &level.mul(&ej, &ei))?;
            }
        }
        r.check("R_2 commutative iff quasi-ideal law", law == commutes, || json!({ "quasi_ideal": name, "law": law }));
    }
    let mut rng = r.rng("cone");
    let mut next = stream(&mut rng);
    for q in test_ideals()? {
        let ring = q.ring().clone();
        for n in [2usize, 3] {
            let level = q.level(n)?;
            for _ in 0..budget.scaled(200) {
                let mut draw = || -> wittforge_core::Result<_> {
                    let x = small(&ring, &mut next);
                    let xs = (1..n).map(|_| (0..q.rank()).map(|_| small(&ring, &mut next)).collect()).collect();
                    level.element(x, xs)
                };
                let (x, y, z) = (draw()?, draw()?, draw()?);
                let ok = cone_eq(&q, &level.mul(&level.mul(&x, &y), &z), &level.mul(&x, &level.mul(&y, &z)))?
                    && cone_eq(&q, &level.mul(&x, &level.add(&y, &z)), &level.add(&level.mul(&x, &y), &level.mul(&x, &z)))?
                    && cone_eq(&q, &level.mul(&x, &level.one()), &x)?;
                r.check("cone level associative and distributive", ok, || {
                    json!({ "ring": ring.descriptor().to_string(), "level": n, "x": format!("{x:?}") })
                });
            }
        }
    }
    for (n, c) in [(4u64, 2i64), (6, 2), (6, 3), (8, 4), (9, 3), (5, 0)] {
        let ring = Ring::zmod(n);
        let q = QuasiIdeal::free(ring.clone(), vec![ring.from_i64(c)]);
        let elems = ring.elements(budget.enumeration)?;
        let mut closed = true;
        for r1 in &elems {
            for r2 in &elems {
                for f in q.hom_set(r1, r2, budget.enumeration)? {
                    for r3 in &elems {
                        for g in q.hom_set(r2, r3, budget.enumeration)? {
                            closed &= q.apply_d(&q.module_add(&f, &g)) == ring.sub(r3, r1);
                        }
                    }
                }
            }
        }
        r.check("Hom(r1,r2) + Hom(r2,r3) ⊆ Hom(r1,r3)", closed, || json!({ "n": n, "d": c }));
        let classes = q.pi0_classes(budget.enumeration)?;
        let kernel = q.kernel(budget.enumeration)?;
        let image = q.module_elements(budget.enumeration)?.len() / kernel.len();
        let expected = match q.pi0()? {
            Pi0::Quotient { ring, .. } => ring.cardinality().map(|c| c.to_string()),
            Pi0::Zero { .. } => Some("1".into()),
        };
        let ok = classes.len() * image == elems.len() && expected == Some(classes.len().to_string());
        r.check("|π₀| matches coker(d)", ok, || json!({ "n": n, "d": c, "classes": classes.len() }));
    }
    // Injective d: Z·e -> Z, e ↦ 2, and Z/2·e -> Z/8, e ↦ 4.
    let z = Ring::integers();
    let two = QuasiIdeal::free(z.clone(), vec![z.from_i64(2)]);
    let isotropy_z = (-3..=3).all(|k| two.hom_set(&z.from_i64(k), &z.from_i64(k), 0).map(|h| h.len() == 1).unwrap_or(false));
    r.check("trivial isotropy for injective d over Z", isotropy_z, || json!("2Z"));
    r.check("π₀ = Z/2", matches!(two.pi0()?, Pi0::Quotient { ref ring, .. } if *ring == Ring::zmod(2)), || json!("2Z"));
    let z8 = Ring::zmod(8);
    let four = QuasiIdeal::new(z8.clone(), vec![z8.from_i64(4)], vec![vec![z8.from_i64(2)]], budget.enumeration)?;
    let isotropy = z8
        .elements(budget.enumeration)?
        .iter()
        .all(|x| four.hom_set(x, x, budget.enumeration).map(|h| h.len() == 1).unwrap_or(false));
    r.check("trivial isotropy for injective d over Z/8", isotropy && four.kernel(budget.enumeration)?.len() == 1, || json!("Z/2 -> Z/8"));
    r.check("π₀ = Z/4", four.pi0_classes(budget.enumeration)?.len() == 4, || json!("Z/2 -> Z/8"));
    Ok(())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Nested spans of random vectors.
fn random_filtration(rng: &mut ChaCha8Rng, dim: usize, steps: usize, lo: i64) -> wittforge_core::Result<FilteredModule> {
    let mut vectors: Vec<Vector> =
        (0..dim).map(|_| (0..dim).map(|_| q((rng.next_u64() % 7) as i64 - 3)).collect()).collect();
    let mut pieces = vec![Subspace::full(dim)];
    for _ in 0..steps {
        let keep = (rng.next_u64() as usize) % (vectors.len() + 1);
        vectors.truncate(keep);
        let next = Subspace::span(dim, &vectors);
        let prev = pieces.last().unwrap();
        pieces.push(if prev.contains_subspace(&next) { next } else { prev.clone() });
    }
    FilteredModule::new(dim, lo, pieces, Top::Zero)
}

pub fn rees_dictionary(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let mut rng = r.rng("rees");
    for k in 0..budget.scaled(64) {
        let dim = k % 4;
        let lo = (rng.next_u64() % 6) as i64 - 3;
        let m = random_filtration(&mut rng, dim, k % 4, lo)?;
        let g = ReesModule::of_filtered(&m);
        let ce = || json!({ "filtered": crate::json::filtered_json(&m) });
        let back = g.to_filtered();
        r.check("Rees module is t-torsion-free", g.is_torsion_free(), ce);
        r.check("filtered ∘ Rees = id", back.as_ref().ok() == Some(&m), ce);
        r.check("Rees ∘ filtered ≅ id", ReesModule::of_filtered(&back?).isomorphic(&g)?, ce);
        for n in -3..=3 {
            let shifted = ReesModule::of_filtered(&m.shift(n));
            r.check("twist {n} is a degree shift by -n", shifted.isomorphic(&g.shift_degrees(-n))?, || json!({ "n": n, "input": ce() }));
            r.check("twist {n} is Day convolution with Q{n}", m.shift(n) == m.day_tensor(&FilteredModule::twist(n)), ce);
        }
    }
    for _ in 0..budget.scaled(32) {
        let a = random_filtration(&mut rng, 2, 2, 0)?;
        let b = random_filtration(&mut rng, 2, 2, -1)?;
        let c = random_filtration(&mut rng, 1, 1, 1)?;
        let ce = || json!({ "a": crate::json::filtered_json(&a), "b": crate::json::filtered_json(&b) });
        let unit = FilteredModule::unit();
        r.check("Day unit", unit.day_tensor(&a) == a && a.day_tensor(&unit) == a, ce);
        let (ab, ba) = (a.day_tensor(&b), b.day_tensor(&a));
        r.check("Day symmetric", ReesModule::of_filtered(&ab).isomorphic(&ReesModule::of_filtered(&ba))?, ce);
        r.check("Day associative", ab.day_tensor(&c) == a.day_tensor(&b.day_tensor(&c)), ce);
    }
    let q1 = FilteredModule::twist(1);
    r.check("Q{1} ⊗ Q{1} = Q{2}", q1.day_tensor(&q1) == FilteredModule::twist(2), || json!(null));
    r.check("Q{1}{-1} = Q", q1.shift(-1) == FilteredModule::unit(), || json!(null));
    r.check("Q{1} has Fil^1 = Q and Fil^2 = 0", q1.piece(1).dim() == 1 && q1.piece(2).dim() == 0, || json!(null));
    r.check("Rees(Q{1}) is generated in degree -1", ReesModule::of_filtered(&q1).generator_degrees() == vec![(-1, 1)], || json!(null));
    let (completed, was) = FilteredModule::constant(1).complete();
    r.check("constant filtration completes to zero", !was && completed.dim() == 0, || json!(null));
    Ok(())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
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

/// `dim_Q` of the degree-`d` part of the ideal generated by `gens`.
fn degree_slice_dim(s: &Ring, gens: &[Elem], d: u32) -> wittforge_core::Result<usize> {
    let monos = all_monomials(s.nvars(), d);
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.terms().first().map_or(0, |t| t.0.degree() as u32);
        if g.is_zero() || gd > d {
            continue;
        }
        for m in all_monomials(s.nvars(), d - gd) {
            let mono = s.elem_from_terms([(m.iter().map(|&e| e as i32).collect::<Vec<_>>(), q(1))])?;
            let prod = s.mul(&mono, g);
            let mut row = vec![q(0); monos.len()];
            for (mm, c) in prod.terms() {
                let key: Vec<u32> = mm.exps().iter().map(|&e| e as u32).collect();
                row[monos.iter().position(|x| *x == key).unwrap()] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rref(&rows, monos.len()).1.len())
}

fn ideal_power(s: &Ring, gens: &[Elem], i: u32) -> Vec<Elem> {
    let mut out = vec![s.one()];
    for _ in 0..i {
        out = out.iter().flat_map(|a| gens.iter().map(move |g| s.mul(a, g))).collect();
    }
    out
}

pub fn iadic_gr(r: &mut Runner, _budget: &Budget) -> wittforge_core::Result<()> {
    for (vars, n) in [(&["x"][..], 2usize), (&["x", "z"][..], 2), (&["x"][..], 3), (&["x", "z"][..], 3)] {
        let a = Ring::parse(&format!("poly(rationals; {})", vars.join(",")))?;
        let (s, gens) = diagonal_ideal(&a, n)?;
        let pieces = gr(&s, &gens, 4)?;
        // Ω_{A^{⊗n}/A} is free of rank (n-1)·dim; gr^i is its i-th symmetric power.
        let rank = (n - 1) * vars.len();
        for p in &pieces {
            let want = binom(rank + p.degree as usize - 1, p.degree as usize);
            r.check("gr^i rank = Sym^i rank", p.rank == want || (p.degree == 0 && p.rank == 1), || {
                json!({ "A": vars, "n": n, "i": p.degree, "rank": p.rank, "expected": want })
            });
        }
        if n == 2 {
            // Hilbert function oracle: dim (I^i/I^{i+1})_D = rank(gr^i) · dim (S/I)_{D-i}.
            let quotient_vars = s.nvars() - gens.len();
            for i in 0..3u32 {
                let (pi, pi1) = (ideal_power(&s, &gens, i), ideal_power(&s, &gens, i + 1));
                for d in i..=i + 2 {
                    let got = degree_slice_dim(&s, &pi, d)? - degree_slice_dim(&s, &pi1, d)?;
                    let base = binom(quotient_vars + (d - i) as usize - 1, (d - i) as usize);
                    r.check("gr ranks match the Hilbert function", got == pieces[i as usize].rank * base, || {
                        json!({ "A": vars, "i": i, "D": d, "got": got })
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn derham(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let bound = budget.char_box.max(1);
    let gm = hodge_cohomology(&MonomialAlgebra::new(1, 0), bound);
    r.check("G_m: H^0 = H^1 = Q", gm.h_dims() == vec![1, 1], || json!(gm.h_dims()));
    r.check("G_m: Fil^1 H^1 = H^1, Fil^2 H^1 = 0", gm.fil_dim(1, 1) == 1 && gm.fil_dim(2, 1) == 0, || json!(null));
    let a1 = hodge_cohomology(&MonomialAlgebra::new(0, 1), bound);
    r.check("A^1: H^0 = Q, H^1 = 0", a1.h_dims() == vec![1, 0], || json!(a1.h_dims()));
    let factor = |a: usize, b: usize| hodge_cohomology(&MonomialAlgebra::new(a, b), bound).h_dims();
    let convolve = |x: &[usize], y: &[usize]| {
        let mut out = vec![0; x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    for a in 0..=3usize {
        for b in 0..=2usize {
            let h = hodge_cohomology(&MonomialAlgebra::new(a, b), bound);
            let dims = h.h_dims();
            let mut expected = vec![1];
            for _ in 0..a {
                expected = convolve(&expected, &gm.h_dims());
            }
            for _ in 0..b {
                expected = convolve(&expected, &a1.h_dims());
            }
            r.check("Künneth", dims == expected, || json!({ "a": a, "b": b, "dims": dims, "expected": expected }));
            if a >= 1 && b >= 1 {
                let split = convolve(&factor(a - 1, b), &factor(1, 0));
                r.check("Künneth against a split factor", dims == split, || json!({ "a": a, "b": b }));
            }
            let euler: i64 = dims.iter().enumerate().map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
            r.check("Euler characteristic", euler == i64::from(a == 0), || json!({ "a": a, "b": b, "euler": euler }));
            r.check("H^0 = Q in filtration degree 0", h.fil_dim(0, 0) == 1 && h.fil_dim(1, 0) == 0, || json!({ "a": a, "b": b }));
            if a + b <= 4 {
                let mut pattern = true;
                for j in 0..=a + b {
                    for i in -1..=(a + b + 1) as i64 {
                        pattern &= h.fil_dim(i, j) == if i <= j as i64 { dims[j] } else { 0 };
                    }
                }
                r.check("Fil^i H^j full for i ≤ j, zero above", pattern, || json!({ "a": a, "b": b }));
            }
            if a + b <= 3 {
                let larger = hodge_cohomology(&MonomialAlgebra::new(a, b), bound + 1).h_dims();
                r.check("character box invariance", larger == dims, || json!({ "a": a, "b": b }));
            }
            if a + b <= 3 {
                let alg = MonomialAlgebra::new(a, b);
                for slice in build_complex(&alg, bound) {
                    let squares = slice.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero());
                    let support = (0..alg.nvars()).filter(|&k| k < a || slice.character[k] >= 1).count();
                    let dims_ok = (0..=alg.nvars()).all(|i| slice.dim(i) == binom(support, i));
                    r.check("d∘d = 0 with binomial slice dimensions", squares && dims_ok, || json!({ "character": slice.character }));
                    let total: usize = (0..=alg.nvars()).map(|j| slice.filtered_cohomology(j, alg.nvars() + 1).dim()).sum();
                    r.check("nonzero characters are acyclic", (total == 0) == is_acyclic_character(&slice.character), || {
                        json!({ "character": slice.character })
                    });
                }
            }
        }
    }
    Ok(())
}
