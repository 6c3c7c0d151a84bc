use serde_json::json;
use wittforge_core::prismatic::{
    check_groupoid_axioms, prismatic_points_affine, restriction_compatible, scale_context, wbar_ring, witt_points,
    AffinePresentation, PointGroupoid, PrismaticContext,
};
use wittforge_core::ring::CommRing;
use wittforge_core::structure::brute_force_units;
use wittforge_core::{IndexSet, Ring, WittRing, WittVector};

use super::{Budget, Runner};
use crate::cache;

fn witt(ring: &str, e: &IndexSet) -> wittforge_core::Result<WittRing> {
    cache::witt_ring(Ring::parse(ring)?, e).map_err(|e| wittforge_core::Error::Precondition(e.to_string()))
}

fn context(ring: &str, e: &IndexSet, xi: &[i64]) -> wittforge_core::Result<(WittRing, PrismaticContext)> {
    let w = witt(ring, e)?;
    let ctx = PrismaticContext::new(&w, w.from_i64s(xi)?)?;
    Ok((w, ctx))
}

fn axioms(r: &mut Runner, b: &AffinePresentation, ctx: &PrismaticContext, g: &PointGroupoid, name: &str) -> wittforge_core::Result<()> {
    let broken = check_groupoid_axioms(b, ctx, g)?;
    r.check("groupoid axioms", broken.is_none(), || json!({ "case": name, "violation": broken }));
    Ok(())
}

pub fn prismatic_points(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    let limit = budget.enumeration;
    let (w1, c1) = context("zmod:4", &IndexSet::p_typical(2, 1)?, &[2])?;
    let (w2, c2) = context("zmod:4", &IndexSet::p_typical(2, 2)?, &[2, 3])?;

    let bar = wbar_ring(&c2, limit)?;
    let ok = bar.witt_map.well_defined
        && bar.witt_map.surjective
        && bar.ring_map.surjective
        && bar.witt_map.nilpotency.is_some()
        && bar.ring_map.nilpotency.is_some()
        && bar.kernel_square_zero;
    r.check("W/ξ -> R/ξ_1 is a surjection with nilpotent kernel", ok, || crate::json::wbar_json(&w2, &bar));
    let bar1 = wbar_ring(&c1, limit)?;
    r.check("π₀ of W_1(Z/4) modulo 2 has two classes", bar1.pi0.len() == 2, || json!(bar1.pi0.len()));

    let dual = AffinePresentation::new(&["x"], &["x^2"])?;
    let g = prismatic_points_affine(&dual, &c1, limit)?;
    r.check("Z[x]/(x^2) has four objects over W_1(Z/4)", g.objects.len() == 4, || json!(g.objects.len()));
    axioms(r, &dual, &c1, &g, "dual numbers, W_1")?;

    let base = prismatic_points_affine(&dual, &c2, limit)?;
    axioms(r, &dual, &c2, &base, "dual numbers, W_2")?;
    let restricted = restriction_compatible(&dual, &c2, &base, &IndexSet::p_typical(2, 1)?)?;
    r.check("restriction to W_1 preserves objects", restricted, || json!("dual numbers"));
    let base_pi0 = bar.pi0.len();
    for u in brute_force_units(&w2, limit)? {
        let scaled = scale_context(&c2, &u)?;
        let g = prismatic_points_affine(&dual, &scaled, limit)?;
        let same = g.objects.len() == base.objects.len()
            && g.morphism_count() == base.morphism_count()
            && g.components().len() == base.components().len()
            && wbar_ring(&scaled, limit)?.pi0.len() == base_pi0;
        r.check("points invariant under ξ ↦ uξ", same, || json!({ "u": crate::json::coords_json(&w2, &u) }));
    }

    let free = AffinePresentation::new(&["x"], &[])?;
    for (w, ctx, name) in [(&w1, &c1, "W_1"), (&w2, &c2, "W_2")] {
        let g = prismatic_points_affine(&free, ctx, limit)?;
        axioms(r, &free, ctx, &g, name)?;
        let mut comps: Vec<Vec<WittVector>> =
            g.components().iter().map(|c| c.iter().map(|&i| g.objects[i].w[0].clone()).collect()).collect();
        comps.sort();
        let mut classes = ctx.quasi_ideal().pi0_classes(limit)?;
        classes.sort();
        r.check("free points have objects W", g.objects.len() == w.elements(limit)?.len(), || json!(name));
        r.check("components of the free groupoid are W/ξ classes", comps == classes, || json!(name));
        let comps = g.components();
        let mut constant = true;
        for (ci, comp) in comps.iter().enumerate() {
            let sizes: Vec<usize> = comp.iter().flat_map(|&s| comp.iter().map(move |&t| (s, t))).map(|(s, t)| g.hom(s, t).len()).collect();
            constant &= sizes.windows(2).all(|p| p[0] == p[1]);
            for other in comps.iter().skip(ci + 1) {
                constant &= g.hom(comp[0], other[0]).is_empty();
            }
        }
        r.check("Hom sets are torsors inside components and empty across", constant, || json!(name));
    }

    let idem = AffinePresentation::new(&["x"], &["x^2-x"])?;
    for (ring, e) in [("zmod:2", IndexSet::divisors_of(2)?), ("zmod:4", IndexSet::p_typical(2, 2)?)] {
        let w = witt(ring, &e)?;
        let pts = witt_points(&idem, &w, limit)?;
        let brute: Vec<WittVector> = w.elements(limit)?.into_iter().filter(|a| w.mul(a, a) == *a).collect();
        let ok = pts.len() == brute.len() && pts.iter().all(|p| brute.contains(&p[0]));
        r.check("W-points of x^2 - x are the idempotents", ok, || json!({ "ring": ring, "E": e.to_string() }));
    }
    let unit = AffinePresentation::new(&["x"], &["1"])?;
    r.check("the zero ring has no points", witt_points(&unit, &w1, limit)?.is_empty(), || json!(null));
    Ok(())
}
