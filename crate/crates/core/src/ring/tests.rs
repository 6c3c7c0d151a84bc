use super::*;
use alloc::string::ToString;
use proptest::prelude::*;

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

const TEST_RINGS: &[&str] = &[
    "integers",
    "rationals",
    "zmod:12",
    "zmod:4",
    "poly(integers; x)",
    "poly(rationals; x; inv x)",
    "poly(zmod:6; x, y; inv x)",
    "quot(poly(zmod:4; t); t^2-2)",
    "quot(poly(rationals; t); t^3)",
    "quot(poly(integers; t, s); t^2+1, s^3-2)",
];

fn rings() -> Vec<Ring> {
    TEST_RINGS.iter().map(|d| Ring::parse(d).unwrap()).collect()
}

#[test]
fn spec_examples() {
    let z4 = Ring::zmod(4);
    assert_eq!(z4.add(&z4.from_i64(2), &z4.from_i64(3)), z4.from_i64(1));
    let laurent = Ring::parse("poly(rationals; x; inv x)").unwrap();
    let x = laurent.var("x").unwrap();
    let xinv = laurent.parse_elem("x^-1").unwrap();
    assert_eq!(laurent.mul(&x, &xinv), laurent.one());
    let zx = Ring::parse("poly(integers; x)").unwrap();
    let a = zx.parse_elem("6*x+3").unwrap();
    assert_eq!(zx.exact_div_int(&a, &3.into()).unwrap(), zx.parse_elem("2*x+1").unwrap());
    assert!(matches!(zx.exact_div_int(&a, &2.into()), Err(Error::InexactDivision(_))));
    assert!(Ring::parse("zmod:1").is_err());
}

#[test]
fn unit_examples() {
    let z4 = Ring::zmod(4);
    assert_eq!(z4.is_unit(&z4.from_i64(3)).unwrap(), Some(z4.from_i64(3)));
    assert_eq!(z4.is_unit(&z4.from_i64(2)).unwrap(), None);
    let laurent = Ring::parse("poly(rationals; x; inv x)").unwrap();
    let x = laurent.var("x").unwrap();
    assert_eq!(laurent.is_unit(&x).unwrap(), Some(laurent.parse_elem("x^-1").unwrap()));
    assert_eq!(laurent.is_unit(&laurent.parse_elem("x+1").unwrap()).unwrap(), None);
    let zy = Ring::parse("poly(zmod:12; y)").unwrap();
    let a = zy.parse_elem("5+6*y").unwrap();
    let inv = zy.is_unit(&a).unwrap().unwrap();
    assert_eq!(zy.mul(&a, &inv), zy.one());
    assert_eq!(zy.is_unit(&zy.parse_elem("5+2*y").unwrap()).unwrap(), None);
    let q = Ring::parse("quot(poly(rationals; t); t^3)").unwrap();
    let b = q.parse_elem("1+t").unwrap();
    assert_eq!(q.mul(&b, &q.is_unit(&b).unwrap().unwrap()), q.one());
    assert_eq!(q.is_unit(&q.parse_elem("t").unwrap()).unwrap(), None);
    let zt = Ring::parse("quot(poly(integers; t); t^2)").unwrap();
    assert!(zt.is_unit(&zt.parse_elem("1+t").unwrap()).is_err());
}

#[test]
fn nilpotent_examples() {
    let z4 = Ring::zmod(4);
    assert_eq!(z4.is_nilpotent(&z4.from_i64(2)).unwrap(), Some(2));
    let z6 = Ring::zmod(6);
    assert_eq!(z6.is_nilpotent(&z6.from_i64(2)).unwrap(), None);
    let z = Ring::integers();
    assert_eq!(z.is_nilpotent(&z.zero()).unwrap(), Some(1));
    assert_eq!(z.is_nilpotent(&z.from_i64(5)).unwrap(), None);
    let zt = Ring::parse("quot(poly(integers; t); t^3)").unwrap();
    assert_eq!(zt.is_nilpotent(&zt.parse_elem("t").unwrap()).unwrap(), Some(3));
    let d = Ring::parse("quot(poly(zmod:4; t); t^2-2)").unwrap();
    assert_eq!(d.is_nilpotent(&d.parse_elem("t").unwrap()).unwrap(), Some(4));
}

#[test]
fn formatting_round_trips() {
    let r = Ring::parse("poly(integers; x, y)").unwrap();
    let a = r.parse_elem("3 - y + x^2*y - 2*x").unwrap();
    let s = r.format_elem(&a);
    assert_eq!(s, "3+-2*x+-1*y+1*x^2*y");
    assert_eq!(r.parse_elem(&s).unwrap(), a);
    assert_eq!(r.format_elem(&r.zero()), "0");
    let q = Ring::rationals();
    assert_eq!(q.format_elem(&q.parse_elem("-3/6").unwrap()), "-1/2");
}

#[test]
fn quotient_reduction() {
    let r = Ring::parse("quot(poly(zmod:4; t); t^2-2)").unwrap();
    let t = r.var("t").unwrap();
    assert_eq!(r.mul(&t, &t), r.from_i64(2));
    assert_eq!(r.pow(&t, 4), r.zero());
    assert_eq!(r.cardinality().unwrap(), 16u32.into());
    assert_eq!(r.elements(100).unwrap().len(), 16);
    assert!(r.elements(10).is_err());
}

#[test]
fn canonical_maps() {
    let z = Ring::integers();
    let z12 = Ring::zmod(12);
    let z4 = Ring::zmod(4);
    let q = Ring::rationals();
    assert_eq!(z12.map_from(&z, &z.from_i64(-1)).unwrap(), z12.from_i64(11));
    assert_eq!(z4.map_from(&z12, &z12.from_i64(7)).unwrap(), z4.from_i64(3));
    assert!(z12.map_from(&z4, &z4.one()).is_err());
    assert_eq!(q.map_from(&z, &z.from_i64(3)).unwrap(), q.from_i64(3));
    assert!(z.map_from(&q, &q.one()).is_err());
    assert_eq!(Ring::parse("poly(rationals; x; inv x)").unwrap().descriptor().to_string(), "poly(rationals; x; inv x)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        for r in rings() {
            for _ in 0..10 {
                let a = r.sample(&mut next);
                prop_assert_eq!(r.normalize(&a).unwrap(), a.clone());
                prop_assert_eq!(r.parse_elem(&r.format_elem(&a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        for r in rings() {
            for _ in 0..5 {
                let a = r.sample(&mut next);
                let b = r.sample(&mut next);
                let c = r.sample(&mut next);
                prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
                prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
                prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
                prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
                prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
                prop_assert_eq!(r.add(&a, &r.zero()), a.clone());
                prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
                prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
            }
        }
    }

    #[test]
    fn unit_and_nilpotent_witnesses(seed in any::<u64>()) {
        let mut next = splitmix(seed);
        for r in rings() {
            for _ in 0..5 {
                let a = r.sample(&mut next);
                match r.is_unit(&a) {
                    Ok(Some(inv)) => prop_assert_eq!(r.mul(&a, &inv), r.one()),
                    Ok(None) | Err(Error::Unsupported(_)) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
                if let Ok(Some(k)) = r.is_nilpotent(&a) {
                    prop_assert!(r.pow(&a, k as u64).is_zero());
                    if k > 1 {
                        prop_assert!(!r.pow(&a, k as u64 - 1).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn unit_test_agrees_with_brute_force_on_finite_rings() {
    for desc in ["zmod:12", "quot(poly(zmod:4; t); t^2-2)", "quot(poly(zmod:6; e); e^2)"] {
        let r = Ring::parse(desc).unwrap();
        let all = r.elements(1000).unwrap();
        for a in &all {
            let brute = all.iter().any(|b| r.mul(a, b) == r.one());
            assert_eq!(r.is_unit(a).unwrap().is_some(), brute, "{desc}: {}", r.format_elem(a));
            let nil = (1..=20).any(|k| r.pow(a, k).is_zero());
            assert_eq!(r.is_nilpotent(a).unwrap().is_some(), nil, "{desc}: {}", r.format_elem(a));
        }
    }
}
