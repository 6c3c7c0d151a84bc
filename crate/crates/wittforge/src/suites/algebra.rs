use num_bigint::BigInt;
use serde_json::json;
use wittforge_core::poly::MPoly;
use wittforge_core::ring::CommRing;
use wittforge_core::witt::{dwork_check, integer_ghost, WittOp, WittPolynomials};
use wittforge_core::{Elem, IndexSet, Ring, WittRing, WittVector};

use super::{stream, Budget, Runner};
use crate::cache;
use crate::json::coords_json;

const RINGS: &[&str] = &[
    "integers",
    "rationals",
    "zmod:12",
    "zmod:4",
    "zmod:7",
    "poly(integers; x, y)",
    "poly(rationals; x; inv x)",
    "poly(zmod:4; x)",
    "quot(poly(rationals; t); t^3)",
];

/// The first ring law that fails on `(a, b, c)`.
fn broken_law<R: CommRing>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Option<&'static str> {
    let laws: [(&str, bool); 8] = [
        ("additive commutativity", r.add(a, b) == r.add(b, a)),
        ("multiplicative commutativity", r.mul(a, b) == r.mul(b, a)),
        ("additive associativity", r.add(&r.add(a, b), c) == r.add(a, &r.add(b, c))),
        ("multiplicative associativity", r.mul(&r.mul(a, b), c) == r.mul(a, &r.mul(b, c))),
        ("distributivity", r.mul(a, &r.add(b, c)) == r.add(&r.mul(a, b), &r.mul(a, c))),
        ("additive identity", r.add(a, &r.zero()) == *a),
        ("multiplicative identity", r.mul(a, &r.one()) == *a),
        ("additive inverse", r.is_zero(&r.add(a, &r.neg(a)))),
    ];
    laws.into_iter().find(|(_, ok)| !ok).map(|(name, _)| name)
}

pub fn ring_axioms(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for desc in RINGS {
        let ring = Ring::parse(desc)?;
        let mut rng = r.rng(desc);
        let mut next = stream(&mut rng);
        let show = |x: &Elem| ring.format_elem(x);
        for _ in 0..budget.scaled(1000) {
            let a = ring.sample(&mut next);
            let once = ring.normalize(&a);
            let twice = once.as_ref().ok().map(|n| ring.normalize(n));
            let ok = matches!((&once, &twice), (Ok(x), Some(Ok(y))) if x == y && *x == a);
            r.check("normalization idempotent", ok, || json!({ "ring": desc, "a": show(&a) }));
        }
        for _ in 0..budget.scaled(500) {
            let (a, b, c) = (ring.sample(&mut next), ring.sample(&mut next), ring.sample(&mut next));
            let law = broken_law(&ring, &a, &b, &c);
            r.check("ring axioms", law.is_none(), || {
                json!({ "ring": desc, "law": law, "a": show(&a), "b": show(&b), "c": show(&c) })
            });
        }
        for _ in 0..budget.scaled(200) {
            let a = ring.sample(&mut next);
            if let Ok(Some(inv)) = ring.is_unit(&a) {
                r.check("unit witness", ring.mul(&a, &inv) == ring.one(), || {
                    json!({ "ring": desc, "a": show(&a), "inverse": show(&inv) })
                });
            }
            if let Ok(Some(k)) = ring.is_nilpotent(&a) {
                let ok = k >= 1 && ring.is_zero(&ring.pow(&a, u64::from(k))) && !ring.is_zero(&ring.pow(&a, u64::from(k) - 1));
                r.check("nilpotency witness", ok, || json!({ "ring": desc, "a": show(&a), "k": k }));
            }
        }
    }
    for n in [4u64, 12, 9] {
        let ring = Ring::zmod(n);
        let elems = ring.elements(budget.enumeration)?;
        for a in &elems {
            let brute = elems.iter().any(|b| ring.mul(a, b) == ring.one());
            let fast = ring.is_unit(a)?.is_some();
            r.check("unit test matches brute force", brute == fast, || json!({ "n": n, "a": ring.format_elem(a) }));
            let brute_nil = (1..=8).any(|k| ring.is_zero(&ring.pow(a, k)));
            r.check("nilpotency test matches brute force", brute_nil == ring.is_nilpotent(a)?.is_some(), || {
                json!({ "n": n, "a": ring.format_elem(a) })
            });
        }
    }
    Ok(())
}

fn index_sets() -> wittforge_core::Result<Vec<IndexSet>> {
    Ok(vec![IndexSet::divisors_of(6)?, IndexSet::p_typical(2, 3)?])
}

fn witt(ring: &str, e: &IndexSet) -> wittforge_core::Result<WittRing> {
    cache::witt_ring(Ring::parse(ring)?, e).map_err(|e| wittforge_core::Error::Precondition(e.to_string()))
}

pub fn witt_ring_axioms(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for e in index_sets()? {
        for desc in ["integers", "zmod:12", "zmod:4", "rationals"] {
            let w = witt(desc, &e)?;
            let ring = w.ring().clone();
            let mut rng = r.rng(&format!("{desc}{e}"));
            let mut next = stream(&mut rng);
            for _ in 0..budget.scaled(200) {
                let (a, b, c) = (w.sample(&mut next), w.sample(&mut next), w.sample(&mut next));
                let ce = || json!({ "ring": desc, "E": e.to_string(), "a": coords_json(&w, &a), "b": coords_json(&w, &b), "c": coords_json(&w, &c) });
                let law = broken_law(&w, &a, &b, &c);
                r.check("Witt ring axioms", law.is_none(), || json!({ "law": law, "input": ce() }));
                let (ga, gb) = (w.ghost(&a), w.ghost(&b));
                let sum_ok = w.ghost(&w.add(&a, &b)).iter().zip(ga.iter().zip(&gb)).all(|(s, (x, y))| *s == ring.add(x, y));
                let mul_ok = w.ghost(&w.mul(&a, &b)).iter().zip(ga.iter().zip(&gb)).all(|(s, (x, y))| *s == ring.mul(x, y));
                r.check("ghost additive", sum_ok, ce);
                r.check("ghost multiplicative", mul_ok, ce);
            }
        }
        functoriality(r, budget, &e)?;
        ghost_inverses(r, budget, &e)?;
    }
    Ok(())
}

/// `W(Z) -> W(Z/12) -> W(Z/4)` commutes with the operations.
fn functoriality(r: &mut Runner, budget: &Budget, e: &IndexSet) -> wittforge_core::Result<()> {
    let chain = [witt("integers", e)?, witt("zmod:12", e)?, witt("zmod:4", e)?];
    let mut rng = r.rng(&format!("functoriality{e}"));
    let mut next = stream(&mut rng);
    for _ in 0..budget.scaled(50) {
        let (a, b) = (chain[0].sample(&mut next), chain[0].sample(&mut next));
        let rr = chain[0].ring().sample(&mut next);
        for pair in [(0usize, 1usize), (1, 2), (0, 2)] {
            let (src, dst) = (&chain[pair.0], &chain[pair.1]);
            let (a, b) = if pair.0 == 0 { (a.clone(), b.clone()) } else { (src.map_from(&chain[0], &a)?, src.map_from(&chain[0], &b)?) };
            let push = |x: &WittVector| dst.map_from(src, x);
            let ce = || json!({ "from": src.ring().descriptor().to_string(), "to": dst.ring().descriptor().to_string(), "a": coords_json(src, &a), "b": coords_json(src, &b) });
            r.check("pushforward commutes with +", push(&src.add(&a, &b))? == dst.add(&push(&a)?, &push(&b)?), ce);
            r.check("pushforward commutes with ·", push(&src.mul(&a, &b))? == dst.mul(&push(&a)?, &push(&b)?), ce);
            let rs = src.ring().map_from(chain[0].ring(), &rr)?;
            let t = dst.map_from(src, &src.teichmuller(&rs))?;
            r.check("pushforward commutes with Teichmüller", t == dst.teichmuller(&dst.ring().map_from(src.ring(), &rs)?), ce);
            for &n in e.elements().iter().filter(|&&n| n > 1) {
                let (sq, dq) = (src.quotient_ring(n)?, dst.quotient_ring(n)?);
                let lhs = dq.map_from(&sq, &src.frobenius(n, &a)?)?;
                r.check("pushforward commutes with F_n", lhs == dst.frobenius(n, &push(&a)?)?, ce);
                let x = sq.sample(&mut next);
                let lhs = push(&src.verschiebung(n, &x)?)?;
                r.check("pushforward commutes with V_n", lhs == dst.verschiebung(n, &dq.map_from(&sq, &x)?)?, ce);
            }
        }
    }
    Ok(())
}

fn as_int(ring: &Ring, x: &Elem) -> Option<BigInt> {
    ring.constant_value(x).filter(|q| q.is_integer()).map(|q| q.to_integer())
}

fn ghost_inverses(r: &mut Runner, budget: &Budget, e: &IndexSet) -> wittforge_core::Result<()> {
    let wq = witt("rationals", e)?;
    let wz = witt("integers", e)?;
    let mut rng = r.rng(&format!("unghost{e}"));
    let mut next = stream(&mut rng);
    for _ in 0..budget.scaled(100) {
        let a = wq.sample(&mut next);
        r.check("unghost ∘ ghost = id over Q", wq.unghost(&wq.ghost(&a))? == a, || json!({ "a": coords_json(&wq, &a) }));
        let c = wz.sample(&mut next);
        let coords: Vec<BigInt> = c.coords().iter().map(|x| as_int(wz.ring(), x).unwrap()).collect();
        let g = integer_ghost(&coords, e);
        let ok = dwork_check(&g, e) && wz.unghost(&g.iter().map(|x| wz.ring().from_rational(&x.clone().into())).collect::<Result<Vec<_>, _>>()?)? == c;
        r.check("ghost ∘ unghost = id on Dwork vectors", ok, || json!({ "coords": coords_json(&wz, &c) }));
        let g: Vec<BigInt> = (0..e.len()).map(|_| BigInt::from((next() % 9) as i64 - 4)).collect();
        let elems: Vec<Elem> = g.iter().map(|x| wz.ring().from_rational(&x.clone().into())).collect::<Result<_, _>>()?;
        let back = wz.unghost(&elems);
        let ok = match (&back, dwork_check(&g, e)) {
            (Ok(v), true) => wz.ghost(v) == elems,
            (Err(_), false) => true,
            _ => false,
        };
        r.check("Dwork criterion decides integrality", ok, || json!({ "ghost": g.iter().map(|x| x.to_string()).collect::<Vec<_>>() }));
    }
    Ok(())
}

pub fn witt_operators(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for e in index_sets()? {
        for desc in ["integers", "zmod:12", "zmod:4"] {
            let w = witt(desc, &e)?;
            let mut rng = r.rng(&format!("ops{desc}{e}"));
            let mut next = stream(&mut rng);
            let others: Vec<u64> = e.elements().iter().copied().filter(|&n| n > 1).collect();
            for k in 0..budget.scaled(100) {
                let (a, b) = (w.sample(&mut next), w.sample(&mut next));
                let ce = || json!({ "ring": desc, "E": e.to_string(), "a": coords_json(&w, &a), "b": coords_json(&w, &b) });
                let n = others[k % others.len()];
                let q = w.quotient_ring(n)?;
                let f = |x: &WittVector| w.frobenius(n, x);
                r.check("F_n additive", f(&w.add(&a, &b))? == q.add(&f(&a)?, &f(&b)?), ce);
                r.check("F_n multiplicative", f(&w.mul(&a, &b))? == q.mul(&f(&a)?, &f(&b)?), ce);
                r.check("F_n unital", f(&w.one())? == q.one(), ce);
                for &m in &others {
                    if e.contains(m * n) {
                        let qm = w.quotient_ring(m)?;
                        let mn = w.frobenius(m * n, &a)?;
                        r.check("F_m F_n = F_mn", q.frobenius(m, &f(&a)?)? == mn, ce);
                        r.check("F_n F_m = F_mn", qm.frobenius(n, &w.frobenius(m, &a)?)? == mn, ce);
                    }
                }
                let x = q.sample(&mut next);
                let vx = w.verschiebung(n, &x)?;
                r.check("V_n(x)·y = V_n(x·F_n(y))", w.mul(&vx, &b) == w.verschiebung(n, &q.mul(&x, &f(&b)?))?, ce);
                let x2 = q.sample(&mut next);
                r.check("V_n additive", w.verschiebung(n, &q.add(&x, &x2))? == w.add(&vx, &w.verschiebung(n, &x2)?), ce);
                if e.primes().contains(&n) {
                    let p = q.from_int(&BigInt::from(n));
                    r.check("F_p V_p = p", w.frobenius(n, &vx)? == q.mul(&p, &x), ce);
                }
                let (s, t) = (w.ring().sample(&mut next), w.ring().sample(&mut next));
                let lhs = w.mul(&w.teichmuller(&s), &w.teichmuller(&t));
                r.check("Teichmüller multiplicative", lhs == w.teichmuller(&w.ring().mul(&s, &t)), ce);
            }
        }
    }
    Ok(())
}

/// Exact `s_2` and `m_2` over `{1, 2}`.
fn small_formulas(r: &mut Runner) -> wittforge_core::Result<()> {
    let polys = WittPolynomials::new(&IndexSet::divisors_of(2)?)?;
    let l = polys.layout().clone();
    let v = |i| MPoly::<BigInt>::var(&l, i);
    let (x1, x2, y1, y2) = (v(0), v(1), v(2), v(3));
    let s2 = x2.add(&y2).sub(&x1.mul(&y1));
    let two = MPoly::constant(&l, BigInt::from(2));
    let m2 = x1.pow(2).mul(&y2).add(&x2.mul(&y1.pow(2))).add(&two.mul(&x2).mul(&y2));
    r.check("s_2 = x_2 + y_2 - x_1 y_1", polys.get(WittOp::Sum)?[1] == s2, || json!("s_2"));
    r.check("s_1 = x_1 + y_1", polys.get(WittOp::Sum)?[0] == x1.add(&y1), || json!("s_1"));
    r.check("m_2 = x_1^2 y_2 + x_2 y_1^2 + 2 x_2 y_2", polys.get(WittOp::Product)?[1] == m2, || json!("m_2"));
    r.check("m_1 = x_1 y_1", polys.get(WittOp::Product)?[0] == x1.mul(&y1), || json!("m_1"));
    Ok(())
}

/// Ghost-side identities of the generated families, checked symbolically.
fn ghost_compatible(r: &mut Runner, polys: &WittPolynomials) -> wittforge_core::Result<()> {
    let l = polys.layout().clone();
    let k = polys.index().len();
    let vars: Vec<MPoly<BigInt>> = (0..2 * k).map(|i| MPoly::var(&l, i)).collect();
    let e = polys.index().to_string();
    let sum = polys.get(WittOp::Sum)?.to_vec();
    let prod = polys.get(WittOp::Product)?.to_vec();
    let neg = polys.get(WittOp::Negation)?.to_vec();
    let with_y = |xs: &[MPoly<BigInt>]| -> Vec<MPoly<BigInt>> { xs.iter().cloned().chain(vars[k..].iter().cloned()).collect() };
    for &n in polys.index().elements() {
        let (gx, gy) = (polys.ghost_poly(n, 0), polys.ghost_poly(n, k));
        r.check("ghost of sum polynomials", gx.compose(&l, &with_y(&sum)) == gx.add(&gy), || json!({ "E": e, "n": n }));
        r.check("ghost of product polynomials", gx.compose(&l, &with_y(&prod)) == gx.mul(&gy), || json!({ "E": e, "n": n }));
    }
    let mut sub: Vec<MPoly<BigInt>> = vars[..k].to_vec();
    sub.extend(neg.iter().cloned());
    r.check("s(x, neg(x)) = 0", sum.iter().all(|s| s.compose(&l, &sub).is_zero()), || json!({ "E": e }));
    for &m in polys.index().elements().iter().filter(|&&m| m > 1) {
        let q = polys.quotient(m)?;
        let f = polys.get(WittOp::Frobenius(m))?.to_vec();
        let zero = MPoly::zero(&l);
        let mut values = f.clone();
        values.resize(2 * q.index().len(), zero);
        for &d in q.index().elements() {
            let lhs = q.ghost_poly(d, 0).compose(&l, &values);
            r.check("ghost of Frobenius polynomials", lhs == polys.ghost_poly(m * d, 0), || json!({ "E": e, "m": m, "d": d }));
        }
    }
    Ok(())
}

pub fn universal_integrality(r: &mut Runner, _budget: &Budget) -> wittforge_core::Result<()> {
    let mut sets: Vec<IndexSet> = (1..=30).map(IndexSet::divisors_of).collect::<Result<_, _>>()?;
    for p in [2, 3, 5] {
        sets.push(IndexSet::p_typical(p, 4)?);
    }
    for e in &sets {
        let polys = WittPolynomials::new(e)?;
        for op in cache::default_ops(e) {
            let ok = polys.get(op).is_ok_and(|list| op == WittOp::Negation || list.iter().all(|p| !p.is_zero()));
            r.check("generation with exact divisions", ok, || json!({ "E": e.to_string(), "op": op.to_string() }));
        }
        if e.max() <= 12 {
            ghost_compatible(r, &polys)?;
        }
    }
    small_formulas(r)?;
    let mut zero_ok = true;
    for e in &sets {
        let w = witt("integers", e)?;
        zero_ok &= w.is_zero(&w.add(&w.one(), &w.neg(&w.one())));
    }
    r.check("1 + (-1) = 0 over Z for every set", zero_ok, || json!(null));
    Ok(())
}
