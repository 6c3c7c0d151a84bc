use super::*;
use crate::ring::Ring;
use crate::witt::IndexSet;
use alloc::vec;
use proptest::prelude::*;

fn w(ring: &str, e: IndexSet) -> WittRing {
    WittRing::new(Ring::parse(ring).unwrap(), e).unwrap()
}

fn div(n: u64) -> IndexSet {
    IndexSet::divisors_of(n).unwrap()
}

fn ptyp(p: u64, len: u32) -> IndexSet {
    IndexSet::p_typical(p, len).unwrap()
}

const LIMIT: usize = ENUMERATION_LIMIT;

#[test]
fn frobenius_kernel_examples() {
    let w2 = w("zmod:2", ptyp(2, 2));
    for c in 0..2 {
        assert!(is_in_wf(&w2, &w2.from_i64s(&[0, c]).unwrap()).unwrap());
    }
    assert!(!is_in_wf(&w2, &w2.one()).unwrap());
    assert!(is_in_wf(&w2, &w2.zero()).unwrap());
}

#[test]
fn annihilator_sides_agree_with_frobenius_kernel() {
    for (ring, e) in [("zmod:2", ptyp(2, 2)), ("zmod:4", ptyp(2, 2)), ("zmod:3", ptyp(3, 2)), ("zmod:2", div(6))] {
        let witt = w(ring, e);
        for a in witt.elements(LIMIT).unwrap() {
            let wf = is_in_wf(&witt, &a).unwrap();
            assert_eq!(wf_annihilator_check(&witt, &a, Annihilator::KillsVW, LIMIT).unwrap(), wf, "{ring} {a:?}");
        }
    }
    let witt = w("zmod:2", ptyp(2, 2));
    assert!(!wf_annihilator_check(&witt, &witt.one(), Annihilator::KillsVW, LIMIT).unwrap());
    assert!(wf_annihilator_check(&witt, &witt.zero(), Annihilator::KilledByWF, LIMIT).unwrap());
}

#[test]
fn unit_examples() {
    let witt = w("zmod:4", div(2));
    let a = witt.from_i64s(&[3, 0]).unwrap();
    assert_eq!(witt_is_unit(&witt, &a).unwrap(), Some(a));
    assert_eq!(witt_is_unit(&witt, &witt.from_i64s(&[2, 1]).unwrap()).unwrap(), None);
    let u = witt.teichmuller(&witt.ring().from_i64(3));
    assert!(witt_is_unit(&witt, &u).unwrap().is_some());
}

#[test]
fn unit_test_matches_brute_force() {
    for (ring, e) in [("zmod:4", ptyp(2, 2)), ("zmod:9", ptyp(3, 2)), ("zmod:9", div(2)), ("zmod:6", div(2))] {
        let witt = w(ring, e);
        let units = brute_force_units(&witt, LIMIT).unwrap();
        for a in witt.elements(LIMIT).unwrap() {
            let inv = witt_is_unit(&witt, &a).unwrap();
            assert_eq!(inv.is_some(), units.contains(&a), "{ring} {a:?}");
            if let Some(b) = inv {
                assert_eq!(witt.mul(&a, &b), witt.one());
            }
        }
    }
}

#[test]
fn first_coordinate_is_not_the_unit_criterion() {
    // Over Z/9 with E = div(6), a_1 = 1 but g_2 = 1 + 2 a_2 can vanish.
    let witt = w("zmod:9", div(6));
    let a = witt.from_i64s(&[1, 4, 0, 0]).unwrap();
    assert!(witt_is_unit(&witt, &a).unwrap().is_none());
    let wz = w("integers", div(2));
    assert!(witt_is_unit(&wz, &wz.from_i64s(&[1, 1]).unwrap()).unwrap().is_none());
}

#[test]
fn decomposition_of_teichmuller() {
    let witt = w("zmod:9", div(6));
    let ctx = LocalContext::new(&witt, 3).unwrap();
    let r = witt.ring().from_i64(4);
    let d = ctx.decompose(&witt.teichmuller(&r)).unwrap();
    let local = ctx.local_ring();
    assert_eq!(d.factor(1).unwrap(), &local.teichmuller(&r));
    assert_eq!(d.factor(2).unwrap(), &local.teichmuller(&witt.ring().mul(&r, &r)));
    assert_eq!(ctx.decompose(&witt.zero()).unwrap(), ctx.zero());
    assert_eq!(ctx.recompose(&ctx.zero()).unwrap(), witt.zero());
}

#[test]
fn missing_inverse_is_reported() {
    let witt = w("zmod:4", div(6));
    assert!(matches!(LocalContext::new(&witt, 3), Err(Error::MissingCertificate(_))));
    let bad = vec![(3, witt.ring().from_i64(1))];
    let witt9 = w("zmod:9", div(6));
    assert!(LocalContext::with_inverses(&witt9, 3, vec![(2, witt9.ring().from_i64(2))]).is_err());
    assert!(LocalContext::with_inverses(&witt, 2, bad).is_err());
}

fn seeded(seed: u64) -> impl FnMut() -> u64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        s >> 17
    }
}

#[test]
fn decomposition_round_trips() {
    for (ring, e, p) in [("zmod:9", div(6), 3), ("rationals", div(6), 2), ("rationals", div(12), 3), ("zmod:25", div(10), 5)] {
        let witt = w(ring, e);
        let ctx = LocalContext::new(&witt, p).unwrap();
        let mut next = seeded(p * 7 + 1);
        for _ in 0..200 {
            let a = witt.sample(&mut next);
            let d = ctx.decompose(&a).unwrap();
            assert_eq!(ctx.recompose(&d).unwrap(), a, "{ring}");
            assert_eq!(ctx.decompose(&ctx.recompose(&d).unwrap()).unwrap(), d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn decomposition_is_a_ring_map(seed in any::<u64>()) {
        let witt = w("zmod:9", div(6));
        let ctx = LocalContext::new(&witt, 3).unwrap();
        let mut next = seeded(seed);
        let a = witt.sample(&mut next);
        let b = witt.sample(&mut next);
        let (da, db) = (ctx.decompose(&a).unwrap(), ctx.decompose(&b).unwrap());
        prop_assert_eq!(ctx.decompose(&witt.add(&a, &b)).unwrap(), ctx.add(&da, &db).unwrap());
        prop_assert_eq!(ctx.decompose(&witt.mul(&a, &b)).unwrap(), ctx.mul(&da, &db).unwrap());
        prop_assert_eq!(ctx.decompose(&witt.one()).unwrap(), ctx.generator());
    }

    #[test]
    fn v_one_image_has_zero_first_ghost(seed in any::<u64>()) {
        let witt = w("zmod:9", div(6));
        let ctx = LocalContext::new(&witt, 3).unwrap();
        let mut next = seeded(seed);
        let a = witt.sample(&mut next);
        let u = witt.sample(&mut next);
        let (da, du) = (ctx.decompose(&a).unwrap(), ctx.decompose(&u).unwrap());
        let image = ctx.v_one_apply(&da).unwrap();
        prop_assert!(witt.ghost(&image)[0].is_zero());
        let scaled = ctx.v_one_apply(&ctx.mul(&du, &da).unwrap()).unwrap();
        prop_assert_eq!(scaled, witt.mul(&u, &image));
    }
}

#[test]
fn v_one_examples() {
    let witt = w("zmod:9", ptyp(3, 2));
    let ctx = LocalContext::new(&witt, 3).unwrap();
    assert_eq!(ctx.v_one_apply(&ctx.generator()).unwrap(), witt.from_i64s(&[0, 1]).unwrap());
    assert_eq!(ctx.v_one_apply(&ctx.zero()).unwrap(), witt.zero());
    let pc = PredicateContext::Local(alloc::boxed::Box::new(ctx.clone()));
    let big = w("zmod:9", div(6));
    let bctx = LocalContext::new(&big, 3).unwrap();
    let v = bctx.v_one_apply(&bctx.generator()).unwrap();
    assert!(is_hodge_tate(&PredicateContext::local(&big, 3).unwrap(), &v).unwrap());
    assert!(is_hodge_tate(&pc, &witt.from_i64s(&[0, 1]).unwrap()).unwrap());
}

#[test]
fn v_one_kernel_matches_description() {
    let witt = w("zmod:9", div(6));
    let ctx = LocalContext::new(&witt, 3).unwrap();
    let local = ctx.local_ring();
    for a in witt.elements(LIMIT).unwrap() {
        let d = ctx.decompose(&a).unwrap();
        let killed = witt.is_zero(&ctx.v_one_apply(&d).unwrap());
        let described = d.factors[1..].iter().all(|(_, f)| local.is_zero(f)) && is_in_wf(local, &d.factors[0].1).unwrap();
        assert_eq!(killed, described, "{a:?}");
    }
}

#[test]
fn hodge_tate_examples() {
    let witt = w("zmod:4", ptyp(2, 2));
    let ctx = PredicateContext::auto(&witt).unwrap();
    assert!(matches!(ctx, PredicateContext::Local(_)));
    let ht = |c: &[i64]| is_hodge_tate(&ctx, &witt.from_i64s(c).unwrap()).unwrap();
    assert!(ht(&[0, 3]));
    assert!(!ht(&[0, 2]));
    assert!(!ht(&[2, 3]));
    assert!(!ht(&[0, 0]));

    let q = w("rationals", div(2));
    let rctx = PredicateContext::auto(&q).unwrap();
    assert!(matches!(rctx, PredicateContext::Rational(_)));
    let from_ghost = |g: &[i64]| q.unghost(&g.iter().map(|&x| q.ring().from_i64(x)).collect::<Vec<_>>()).unwrap();
    assert!(is_hodge_tate(&rctx, &from_ghost(&[0, 5])).unwrap());
    assert!(!is_hodge_tate(&rctx, &from_ghost(&[0, 0])).unwrap());

    assert!(PredicateContext::auto(&w("zmod:6", div(6))).is_err());
    assert!(PredicateContext::rational(&w("zmod:4", div(2))).is_err());
}

fn equivalence_check(ring: &str, p: u64, len: u32) {
    let witt = w(ring, ptyp(p, len));
    let ctx = PredicateContext::auto(&witt).unwrap();
    let units = brute_force_units(&witt.quotient_ring(p).unwrap(), LIMIT).unwrap();
    for v in witt.elements(LIMIT).unwrap() {
        let ht = is_hodge_tate(&ctx, &v).unwrap();
        assert_eq!(ht, exists_v_unit_preimage(&witt, p, &v, &units).unwrap(), "{ring} {v:?}");
        assert_eq!(ht, kernel_equals_wf(&witt, &v, LIMIT).unwrap(), "{ring} {v:?}");
    }
}

#[test]
fn hodge_tate_equivalences_small() {
    equivalence_check("zmod:4", 2, 2);
    equivalence_check("zmod:9", 3, 2);
}

#[test]
fn pointwise_kernel_is_too_coarse() {
    let witt = w("zmod:4", ptyp(2, 2));
    let v = witt.from_i64s(&[2, 1]).unwrap();
    assert!(kernel_equals_wf_pointwise(&witt, &v, LIMIT).unwrap());
    assert!(!kernel_equals_wf(&witt, &v, LIMIT).unwrap());
}

#[test]
fn distinguished_examples_and_search() {
    let witt = w("zmod:4", ptyp(2, 2));
    let ctx = PredicateContext::auto(&witt).unwrap();
    let xi = witt.from_i64s(&[2, 3]).unwrap();
    let wit = is_distinguished(&ctx, &xi).unwrap().unwrap();
    assert_eq!(wit.x, witt.ring().from_i64(2));
    assert_eq!(wit.v, witt.from_i64s(&[0, 3]).unwrap());
    let two = witt.from_int(&2.into());
    assert_eq!(two, witt.from_i64s(&[2, -1]).unwrap());
    assert!(is_distinguished(&ctx, &two).unwrap().is_some());
    assert!(is_distinguished(&ctx, &witt.from_i64s(&[1, 1]).unwrap()).unwrap().is_none());

    let units = brute_force_units(&witt.quotient_ring(2).unwrap(), LIMIT).unwrap();
    let nil = brute_force_nilpotents(witt.ring(), LIMIT).unwrap();
    for xi in witt.elements(LIMIT).unwrap() {
        let fast = is_distinguished(&ctx, &xi).unwrap().is_some();
        assert_eq!(fast, exists_teichmuller_plus_v_unit(&witt, 2, &xi, &nil, &units).unwrap(), "{xi:?}");
    }
}

#[test]
fn nonfree_obstruction() {
    assert_eq!(
        v_nonfree_obstruction(&div(10), 1 << 10).unwrap(),
        Certificate::Unsat { n: 10, m: 2, p: 5, uniform: true }
    );
    assert!(matches!(v_nonfree_obstruction(&div(2), 1 << 10), Err(Error::Precondition(_))));
    assert!(matches!(v_nonfree_obstruction(&div(9), 1 << 10), Err(Error::Precondition(_))));
    match ghost_profile_search(&div(2), 16).unwrap() {
        Certificate::Sat { ghost, coords } => {
            assert_eq!(ghost[0], 0.into());
            assert_eq!(ghost[1], 2.into());
            assert_eq!(coords, vec![0.into(), 1.into()]);
        }
        other => panic!("{other:?}"),
    }
    assert!(ghost_profile_search(&div(10), 4).is_err());
}

#[test]
fn overlapping_charts_differ_by_a_unit() {
    let witt = w("rationals", div(6));
    let c2 = LocalContext::new(&witt, 2).unwrap();
    let c3 = LocalContext::new(&witt, 3).unwrap();
    let u = overlap_unit(&c2, &c3).unwrap();
    assert!(witt_is_unit(&witt, &u).unwrap().is_some());
    let v2 = c2.v_one_apply(&c2.generator()).unwrap();
    let v3 = c3.v_one_apply(&c3.generator()).unwrap();
    assert_eq!(witt.mul(&u, &v3), v2);
}

#[test]
fn wtilde_chart_forgets_the_frobenius_kernel() {
    let witt = w("zmod:9", div(6));
    let ctx = LocalContext::new(&witt, 3).unwrap();
    for a in witt.elements(LIMIT).unwrap().into_iter().step_by(7) {
        let chart = ctx.wtilde_chart(&a).unwrap();
        let zero = chart.factors.iter().all(|(_, f)| f.coords().iter().all(|c| c.is_zero()));
        assert_eq!(zero, is_in_wf(&witt, &a).unwrap(), "{a:?}");
    }
}
