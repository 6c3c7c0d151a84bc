use std::time::Instant;

use serde_json::json;
use wittforge_core::ring::CommRing;
use wittforge_core::structure::{
    brute_force_nilpotents, brute_force_units, exists_teichmuller_plus_v_unit, exists_v_unit_preimage,
    ghost_profile_search, is_distinguished, is_hodge_tate, is_in_wf, kernel_equals_wf, v_nonfree_obstruction,
    wf_annihilator_check, witt_is_unit, Annihilator, Certificate, DecomposedWitt, LocalContext, PredicateContext,
};
use wittforge_core::witt::{dwork_check, integer_ghost};
use wittforge_core::{IndexSet, Ring, WittRing};

use super::{stream, Budget, Runner};
use crate::cache;
use crate::json::coords_json;

fn witt(ring: &str, e: &IndexSet) -> wittforge_core::Result<WittRing> {
    cache::witt_ring(Ring::parse(ring)?, e).map_err(|e| wittforge_core::Error::Precondition(e.to_string()))
}

pub fn annihilator_equivalence(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for ring in ["zmod:2", "zmod:4"] {
        let w = witt(ring, &IndexSet::p_typical(2, 2)?)?;
        for a in w.elements(budget.enumeration)? {
            let wf = is_in_wf(&w, &a)?;
            let kills = wf_annihilator_check(&w, &a, Annihilator::KillsVW, budget.enumeration)?;
            r.check("W[F] iff a·VW = 0", kills == wf, || json!({ "ring": ring, "a": coords_json(&w, &a), "in_wf": wf }));
            // The converse needs all R-algebras, so only this direction holds on R-points.
            let in_vw = w.ring().is_zero(&a.coords()[0]);
            let killed = wf_annihilator_check(&w, &a, Annihilator::KilledByWF, budget.enumeration)?;
            r.check("VW kills W[F]", !in_vw || killed, || json!({ "ring": ring, "a": coords_json(&w, &a) }));
        }
    }
    Ok(())
}

pub fn witt_units(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for (ring, e) in [("zmod:4", IndexSet::p_typical(2, 2)?), ("zmod:9", IndexSet::p_typical(3, 2)?), ("zmod:2", IndexSet::divisors_of(6)?)] {
        let w = witt(ring, &e)?;
        let units = brute_force_units(&w, budget.enumeration)?;
        for a in w.elements(budget.enumeration)? {
            let inv = witt_is_unit(&w, &a)?;
            r.check("unit test matches brute force", inv.is_some() == units.contains(&a), || {
                json!({ "ring": ring, "E": e.to_string(), "a": coords_json(&w, &a) })
            });
            if let Some(b) = inv {
                r.check("unit witness inverts", w.mul(&a, &b) == w.one(), || json!({ "ring": ring, "a": coords_json(&w, &a) }));
            }
        }
    }
    Ok(())
}

fn map_decomposed(dst: &LocalContext, src: &LocalContext, d: &DecomposedWitt) -> wittforge_core::Result<DecomposedWitt> {
    let factors = d
        .factors
        .iter()
        .map(|(n, f)| Ok((*n, dst.local_ring().map_from(src.local_ring(), f)?)))
        .collect::<wittforge_core::Result<Vec<_>>>()?;
    Ok(DecomposedWitt { p: d.p, factors })
}

pub fn local_decomposition(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let six = IndexSet::divisors_of(6)?;
    for (ring, p) in [("zmod:9", 3u64), ("rationals", 2), ("rationals", 3)] {
        let w = witt(ring, &six)?;
        let ctx = LocalContext::new(&w, p)?;
        let mut rng = r.rng(&format!("local{ring}{p}"));
        let mut next = stream(&mut rng);
        r.check("1 decomposes to the generator", ctx.decompose(&w.one())? == ctx.generator(), || json!({ "ring": ring }));
        for _ in 0..budget.scaled(200) {
            let (a, b) = (w.sample(&mut next), w.sample(&mut next));
            let ce = || json!({ "ring": ring, "p": p, "a": coords_json(&w, &a), "b": coords_json(&w, &b) });
            let (da, db) = (ctx.decompose(&a)?, ctx.decompose(&b)?);
            r.check("recompose ∘ decompose = id", ctx.recompose(&da)? == a, ce);
            r.check("decompose ∘ recompose = id", ctx.decompose(&ctx.recompose(&da)?)? == da, ce);
            r.check("decomposition additive", ctx.decompose(&w.add(&a, &b))? == ctx.add(&da, &db)?, ce);
            r.check("decomposition multiplicative", ctx.decompose(&w.mul(&a, &b))? == ctx.mul(&da, &db)?, ce);
        }
    }
    let (w9, w3) = (witt("zmod:9", &six)?, witt("zmod:3", &six)?);
    let (c9, c3) = (LocalContext::new(&w9, 3)?, LocalContext::new(&w3, 3)?);
    let mut rng = r.rng("naturality");
    let mut next = stream(&mut rng);
    for _ in 0..budget.scaled(100) {
        let a = w9.sample(&mut next);
        let lhs = c3.decompose(&w3.map_from(&w9, &a)?)?;
        let rhs = map_decomposed(&c3, &c9, &c9.decompose(&a)?)?;
        r.check("decomposition natural in Z/9 -> Z/3", lhs == rhs, || json!({ "a": coords_json(&w9, &a) }));
    }
    Ok(())
}

fn equivalences(r: &mut Runner, budget: &Budget, ring: &str, p: u64, len: u32) -> wittforge_core::Result<()> {
    let w = witt(ring, &IndexSet::p_typical(p, len)?)?;
    let ctx = PredicateContext::auto(&w)?;
    let units = brute_force_units(&w.quotient_ring(p)?, budget.enumeration)?;
    for v in w.elements(budget.enumeration)? {
        let ht = is_hodge_tate(&ctx, &v)?;
        let by_units = exists_v_unit_preimage(&w, p, &v, &units)?;
        let by_kernel = kernel_equals_wf(&w, &v, budget.enumeration)?;
        r.check("Hodge-Tate equivalences", ht == by_units && ht == by_kernel, || {
            json!({ "ring": ring, "v": coords_json(&w, &v), "predicate": ht, "v_unit": by_units, "kernel": by_kernel })
        });
    }
    Ok(())
}

pub fn hodge_tate_equivalences(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    equivalences(r, budget, "zmod:4", 2, 2)?;
    equivalences(r, budget, "zmod:9", 3, 2)?;
    equivalences(r, budget, "zmod:4", 2, 3)?;
    for (ring, p) in [("zmod:4", 2u64), ("zmod:9", 3)] {
        let w = witt(ring, &IndexSet::p_typical(p, 2)?)?;
        let ctx = PredicateContext::auto(&w)?;
        let units = brute_force_units(&w.quotient_ring(p)?, budget.enumeration)?;
        let nil = brute_force_nilpotents(w.ring(), budget.enumeration)?;
        for xi in w.elements(budget.enumeration)? {
            let fast = is_distinguished(&ctx, &xi)?;
            let slow = exists_teichmuller_plus_v_unit(&w, p, &xi, &nil, &units)?;
            r.check("distinguished iff [x] + V(unit)", fast.is_some() == slow, || json!({ "ring": ring, "xi": coords_json(&w, &xi) }));
            if let Some(wit) = fast {
                let back = w.add(&w.teichmuller(&wit.x), &wit.v);
                r.check("distinguished witness recomposes", back == xi, || json!({ "ring": ring, "xi": coords_json(&w, &xi) }));
            }
        }
    }
    Ok(())
}

pub fn v_one(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let w = witt("zmod:9", &IndexSet::divisors_of(6)?)?;
    let ctx = LocalContext::new(&w, 3)?;
    let mut rng = r.rng("v-one");
    let mut next = stream(&mut rng);
    for _ in 0..budget.scaled(100) {
        let (a, u) = (w.sample(&mut next), w.sample(&mut next));
        let (da, du) = (ctx.decompose(&a)?, ctx.decompose(&u)?);
        let image = ctx.v_one_apply(&da)?;
        let ce = || json!({ "a": coords_json(&w, &a), "u": coords_json(&w, &u) });
        r.check("V_E(1) lands in VW", w.ghost(&image)[0].is_zero(), ce);
        r.check("V_E(1) is linear", ctx.v_one_apply(&ctx.mul(&du, &da)?)? == w.mul(&u, &image), ce);
    }
    let local = ctx.local_ring();
    for a in w.elements(budget.enumeration)? {
        let d = ctx.decompose(&a)?;
        let killed = w.is_zero(&ctx.v_one_apply(&d)?);
        let described = d.factors[1..].iter().all(|(_, f)| local.is_zero(f)) && is_in_wf(local, &d.factors[0].1)?;
        r.check("kernel of V_E(1)", killed == described, || json!({ "a": coords_json(&w, &a) }));
    }
    let small = witt("zmod:9", &IndexSet::p_typical(3, 2)?)?;
    let sctx = LocalContext::new(&small, 3)?;
    r.check("V_E(1) of the generator is V(1)", sctx.v_one_apply(&sctx.generator())? == small.from_i64s(&[0, 1])?, || json!(null));
    Ok(())
}

pub fn nonfree_obstruction(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let ten = IndexSet::divisors_of(10)?;
    let start = Instant::now();
    let cert = v_nonfree_obstruction(&ten, budget.search)?;
    let fast = start.elapsed().as_secs_f64() < 1.0;
    r.check("div(10) is unsatisfiable via v_10 ≡ v_2 mod 5", cert == Certificate::Unsat { n: 10, m: 2, p: 5, uniform: true }, || {
        json!(format!("{cert:?}"))
    });
    r.check("div(10) search under 1 s", fast, || json!(null));
    for n in [15u64, 6, 14] {
        let e = IndexSet::divisors_of(n)?;
        match v_nonfree_obstruction(&e, budget.search)? {
            Certificate::Unsat { n: big, m, p, .. } => {
                let ok = big == m * p && e.contains(big) && e.contains(m) && e.primes().contains(&p);
                r.check("unsat certificate is well formed", ok, || json!({ "E": e.to_string(), "n": big, "m": m, "p": p }));
            }
            Certificate::Sat { ghost, coords } => {
                let ok = integer_ghost(&coords, &e) == ghost && dwork_check(&ghost, &e);
                r.check("sat certificate is integral", ok, || json!({ "E": e.to_string() }));
            }
        }
    }
    r.check("prime powers are rejected", v_nonfree_obstruction(&IndexSet::divisors_of(9)?, budget.search).is_err(), || json!("div(9)"));
    match ghost_profile_search(&IndexSet::divisors_of(2)?, budget.search)? {
        Certificate::Sat { ghost, coords } => {
            let e = IndexSet::divisors_of(2)?;
            r.check("div(2) profile realized by V(1)", integer_ghost(&coords, &e) == ghost && coords == vec![0.into(), 1.into()], || {
                json!({ "coords": coords.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
            });
        }
        other => r.check("div(2) profile is satisfiable", false, || json!(format!("{other:?}"))),
    }
    Ok(())
}
