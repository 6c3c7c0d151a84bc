use super::*;
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

fn splitmix(seed: u64) -> impl FnMut() -> u64 {
    let mut state = seed;
    move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[test]
fn addition_examples() {
    let wz = w("integers", div(2));
    let a = wz.from_i64s(&[1, 0]).unwrap();
    assert_eq!(wz.add(&a, &a), wz.from_i64s(&[2, -1]).unwrap());
    assert_eq!(wz.add(&a, &wz.zero()), a);
    assert_eq!(wz.add_by_polynomials(&a, &a).unwrap(), wz.from_i64s(&[2, -1]).unwrap());
}

#[test]
fn multiplication_examples() {
    let wz = w("integers", div(2));
    let prod = wz.mul(&wz.from_i64s(&[2, 0]).unwrap(), &wz.from_i64s(&[3, 0]).unwrap());
    assert_eq!(prod, wz.from_i64s(&[6, 0]).unwrap());
    let v = wz.from_i64s(&[0, 1]).unwrap();
    assert_eq!(wz.mul(&v, &v), wz.from_i64s(&[0, 2]).unwrap());
    assert_eq!(wz.mul(&v, &wz.one()), v);
}

#[test]
fn ghost_examples() {
    let wz = w("integers", div(6));
    let r = wz.ring().from_i64(3);
    let g = wz.ghost(&wz.teichmuller(&r));
    let expected: Vec<Elem> = [3i64, 9, 27, 729].iter().map(|&x| wz.ring().from_i64(x)).collect();
    assert_eq!(g, expected);
    assert!(wz.ghost(&wz.zero()).iter().all(|x| x.is_zero()));
    let w2 = w("integers", div(2));
    let g = w2.ghost(&w2.from_i64s(&[0, 1]).unwrap());
    assert_eq!(g, vec![Elem::zero(), w2.ring().from_i64(2)]);
}

#[test]
fn unghost_examples() {
    let wz = w("integers", div(2));
    let z = wz.ring().clone();
    assert_eq!(wz.unghost(&[z.from_i64(2), z.from_i64(2)]).unwrap(), wz.from_i64s(&[2, -1]).unwrap());
    assert!(wz.unghost(&[z.zero(), z.from_i64(1)]).is_err());
    assert!(!dwork_check(&[BigInt::from(0), BigInt::from(1)], &div(2)));
    assert!(dwork_check(&[BigInt::from(0), BigInt::from(0)], &div(2)));
}

#[test]
fn frobenius_examples() {
    let wz = w("integers", ptyp(2, 2));
    let a = wz.from_i64s(&[3, 5]).unwrap();
    // F(x0, x1) = x0^2 + 2 x1
    let f = wz.frobenius(2, &a).unwrap();
    assert_eq!(f.coords(), &[wz.ring().from_i64(19)]);
    assert_eq!(wz.frobenius(1, &a).unwrap(), a);
    let w6 = w("zmod:12", div(6));
    let r = w6.ring().from_i64(5);
    let t = w6.teichmuller(&r);
    for n in [2u64, 3] {
        let fq = w6.quotient_ring(n).unwrap();
        let rp = w6.ring().pow(&r, n);
        assert_eq!(w6.frobenius(n, &t).unwrap(), fq.teichmuller(&rp));
    }
}

#[test]
fn verschiebung_examples() {
    let w2 = w("integers", div(2));
    let c = w2.ring().from_i64(7);
    let src = w2.quotient_ring(2).unwrap();
    let v = w2.verschiebung(2, &src.vector(vec![c.clone()]).unwrap()).unwrap();
    assert_eq!(v, w2.vector(vec![Elem::zero(), c.clone()]).unwrap());
    let one = src.one();
    let v1 = w2.verschiebung(2, &one).unwrap();
    assert_eq!(w2.ghost(&v1), vec![Elem::zero(), w2.ring().from_i64(2)]);
    // F_2 V_2 = 2 on p-typical vectors
    let fv = w2.frobenius(2, &v).unwrap();
    assert_eq!(fv.coords(), &[w2.ring().from_i64(14)]);
    assert!(w2.verschiebung(3, &one).is_err());
}

#[test]
fn teichmuller_is_multiplicative() {
    let wz = w("integers", div(2));
    let z = wz.ring();
    let p = wz.mul(&wz.teichmuller(&z.from_i64(2)), &wz.teichmuller(&z.from_i64(3)));
    assert_eq!(p, wz.teichmuller(&z.from_i64(6)));
}

#[test]
fn from_int_matches_repeated_addition() {
    for ring in ["integers", "zmod:4", "zmod:12", "rationals"] {
        let wr = w(ring, div(6));
        let mut acc = wr.zero();
        for n in 0..7i64 {
            assert_eq!(wr.from_int(&BigInt::from(n)), acc, "{ring} n={n}");
            acc = wr.add(&acc, &wr.one());
        }
    }
}

#[test]
fn mismatched_index_sets_are_rejected() {
    let a = w("integers", div(2));
    let b = w("integers", div(3));
    assert!(a.try_add(&a.one(), &b.one()).is_err());
    assert!(a.vector(vec![Elem::zero()]).is_err());
}

#[test]
fn enumeration_of_small_witt_rings() {
    let wr = w("zmod:4", ptyp(2, 2));
    let all = wr.elements(100).unwrap();
    assert_eq!(all.len(), 16);
    assert!(wr.elements(10).is_err());
}

const RINGS: &[&str] = &["integers", "zmod:12", "zmod:4", "rationals", "poly(integers; t)", "quot(poly(zmod:4; e); e^2)"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms_and_ghost_homomorphism(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        for ring in RINGS {
            for e in [div(6), ptyp(2, 3)] {
                let wr = w(ring, e);
                let (a, b, c) = (wr.sample(&mut next), wr.sample(&mut next), wr.sample(&mut next));
                prop_assert_eq!(wr.add(&wr.add(&a, &b), &c), wr.add(&a, &wr.add(&b, &c)));
                prop_assert_eq!(wr.mul(&wr.mul(&a, &b), &c), wr.mul(&a, &wr.mul(&b, &c)));
                prop_assert_eq!(wr.mul(&a, &b), wr.mul(&b, &a));
                prop_assert_eq!(wr.mul(&a, &wr.add(&b, &c)), wr.add(&wr.mul(&a, &b), &wr.mul(&a, &c)));
                prop_assert_eq!(wr.mul(&a, &wr.one()), a.clone());
                prop_assert!(wr.is_zero(&wr.add(&a, &wr.neg(&a))));
                let r = wr.ring();
                let (ga, gb) = (wr.ghost(&a), wr.ghost(&b));
                let gs = wr.ghost(&wr.add(&a, &b));
                let gp = wr.ghost(&wr.mul(&a, &b));
                for i in 0..ga.len() {
                    prop_assert_eq!(&gs[i], &r.add(&ga[i], &gb[i]));
                    prop_assert_eq!(&gp[i], &r.mul(&ga[i], &gb[i]));
                }
            }
        }
    }

    #[test]
    fn ghost_path_agrees_with_polynomials(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        for ring in ["integers", "rationals", "poly(integers; t)"] {
            let wr = w(ring, div(6));
            let (a, b) = (wr.sample(&mut next), wr.sample(&mut next));
            prop_assert_eq!(wr.add(&a, &b), wr.add_by_polynomials(&a, &b).unwrap());
            prop_assert_eq!(wr.mul(&a, &b), wr.mul_by_polynomials(&a, &b).unwrap());
            for n in [2u64, 3, 6] {
                prop_assert_eq!(wr.frobenius(n, &a).unwrap(), wr.frobenius_by_polynomials(n, &a).unwrap());
            }
        }
    }

    #[test]
    fn functoriality_of_reduction(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        let wz = w("integers", div(6));
        let w12 = wz.over(Ring::zmod(12));
        let w4 = wz.over(Ring::zmod(4));
        let (a, b) = (wz.sample(&mut next), wz.sample(&mut next));
        let (a12, b12) = (w12.map_from(&wz, &a).unwrap(), w12.map_from(&wz, &b).unwrap());
        prop_assert_eq!(w12.map_from(&wz, &wz.add(&a, &b)).unwrap(), w12.add(&a12, &b12));
        prop_assert_eq!(w12.map_from(&wz, &wz.mul(&a, &b)).unwrap(), w12.mul(&a12, &b12));
        let a4 = w4.map_from(&w12, &a12).unwrap();
        prop_assert_eq!(w4.map_from(&w12, &w12.neg(&a12)).unwrap(), w4.neg(&a4));
        for n in [2u64, 3] {
            let fz = wz.frobenius(n, &a).unwrap();
            let q12 = w12.quotient_ring(n).unwrap();
            let qz = wz.quotient_ring(n).unwrap();
            prop_assert_eq!(q12.map_from(&qz, &fz).unwrap(), w12.frobenius(n, &a12).unwrap());
        }
    }

    #[test]
    fn unghost_round_trips(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        let wq = w("rationals", div(12));
        let a = wq.sample(&mut next);
        prop_assert_eq!(wq.unghost(&wq.ghost(&a)).unwrap(), a);
        let wz = w("integers", div(12));
        let b = wz.sample(&mut next);
        let g: Vec<BigInt> = wz.ghost(&b).iter().map(|x| wz.ring().constant_value(x).unwrap().to_integer()).collect();
        prop_assert!(dwork_check(&g, wz.index()));
        prop_assert_eq!(integer_ghost(&b.coords().iter().map(|c| wz.ring().constant_value(c).unwrap().to_integer()).collect::<Vec<_>>(), wz.index()), g);
        prop_assert_eq!(wz.unghost(&wz.ghost(&b)).unwrap(), b);
    }
}
