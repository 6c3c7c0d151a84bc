//! Points of prismatizations over finite rings.
//!
//! A distinguished `ξ ∈ W_E(R)` defines the rank-one quasi-ideal
//! `W_E(R)·e -> W_E(R)`, `e ↦ ξ`, whose cone is `W̄_E(R)`. For an affine
//! `X = Spec Z[x_j]/(f_k)`, a point of `X(W̄(R))` is a tuple `w` of Witt
//! vectors with `g_k` satisfying `ξ g_k = f_k(w)`; a morphism is a tuple
//! `a` moving `w` to `w + ξa` and `g` to `g + h(w, a)`, where `h` is the
//! module part of `f_k` evaluated in the level-2 cone ring.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::{ConeElem, QuasiIdeal};
use crate::ring::{CommRing, Elem, Ring, RingDescriptor};
use crate::structure::{is_distinguished, DistinguishedWitness, PredicateContext};
use crate::witt::{IndexSet, WittRing, WittVector};
use crate::{Error, Result};

/// Evaluates an integer polynomial of `src` at `values` in `target`.
pub fn evaluate<R: CommRing>(src: &Ring, f: &Elem, target: &R, values: &[R::Elem]) -> Result<R::Elem> {
    let mut acc = target.zero();
    for (m, c) in f.terms() {
        if !c.is_integer() {
            return Err(Error::Unsupported(format!("non-integral coefficient in {}", src.format_elem(f))));
        }
        let mut term = target.from_int(&c.to_integer());
        for (v, &e) in values.iter().zip(m.exps()) {
            if e < 0 {
                return Err(Error::Unsupported(String::from("negative exponents")));
            }
            if e > 0 {
                term = target.mul(&term, &target.pow(v, e as u64));
            }
        }
        acc = target.add(&acc, &term);
    }
    Ok(acc)
}

/// `ξ` with a certificate that it is distinguished, and its quasi-ideal.
#[derive(Debug, Clone)]
pub struct PrismaticContext {
    witt: WittRing,
    xi: WittVector,
    witness: DistinguishedWitness,
    quasi: QuasiIdeal<WittRing>,
}

impl PrismaticContext {
    pub fn new(witt: &WittRing, xi: WittVector) -> Result<PrismaticContext> {
        let ctx = PredicateContext::auto(witt)?;
        let witness = is_distinguished(&ctx, &xi)?
            .ok_or_else(|| Error::Precondition(format!("{} is not distinguished", witt.describe(&xi))))?;
        let quasi = QuasiIdeal::free(witt.clone(), vec![xi.clone()]);
        Ok(PrismaticContext { witt: witt.clone(), xi, witness, quasi })
    }

    pub fn witt(&self) -> &WittRing {
        &self.witt
    }

    pub fn xi(&self) -> &WittVector {
        &self.xi
    }

    pub fn witness(&self) -> &DistinguishedWitness {
        &self.witness
    }

    pub fn quasi_ideal(&self) -> &QuasiIdeal<WittRing> {
        &self.quasi
    }

    /// The same data at a smaller index set.
    pub fn restrict(&self, sub: &IndexSet) -> Result<PrismaticContext> {
        let small = WittRing::new(self.witt.ring().clone(), sub.clone())?;
        PrismaticContext::new(&small, self.witt.restrict(&self.xi, sub)?)
    }
}

/// `π₀` of `W̄(R)` and its comparison with `R̄ = R/(ξ_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbarReport {
    /// Least representatives of the classes of `W(R)/(ξ)`.
    pub pi0: Vec<WittVector>,
    pub rbar_size: usize,
    /// `π₀ W̄(R) -> R̄`, induced by the first coordinate.
    pub witt_map: MapCheck,
    /// `R -> R̄`.
    pub ring_map: MapCheck,
    /// Every kernel class of the Witt-side map squares into `(ξ)`.
    pub kernel_square_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub well_defined: bool,
    pub surjective: bool,
    pub kernel_size: usize,
    /// Largest nilpotency index among kernel classes, `None` if some class is
    /// not nilpotent.
    pub nilpotency: Option<u32>,
}

/// `π₀` of the cone ring and the two maps to `R̄`, by enumeration.
pub fn wbar_ring(ctx: &PrismaticContext, limit: usize) -> Result<WbarReport> {
    let witt = &ctx.witt;
    let ring = witt.ring();
    let xi1 = ctx.xi.coords()[0].clone();
    let witt_classes = ctx.quasi.pi0_classes(limit)?;
    let rbar = QuasiIdeal::free(ring.clone(), vec![xi1]);
    let rbar_classes = rbar.pi0_classes(limit)?;
    let rbar_of = |r: &Elem| rbar_classes.iter().position(|c| c.binary_search(r).is_ok()).unwrap();

    let witt_map = check_map(&witt_classes, &rbar_classes, |w: &WittVector| rbar_of(&w.coords()[0]), |a, b| witt.mul(a, b), &witt.zero())?;
    let ring_classes: Vec<Vec<Elem>> = ring.elements(limit)?.into_iter().map(|r| vec![r]).collect();
    let ring_map = check_map(&ring_classes, &rbar_classes, rbar_of, |a, b| ring.mul(a, b), &ring.zero())?;

    let in_ideal = |w: &WittVector| witt_classes[0].binary_search(w).is_ok();
    let zero_class = rbar_of(&ring.zero());
    let kernel_square_zero = witt_classes
        .iter()
        .filter(|c| rbar_of(&c[0].coords()[0]) == zero_class)
        .all(|c| in_ideal(&witt.mul(&c[0], &c[0])));
    Ok(WbarReport {
        pi0: witt_classes.iter().map(|c| c[0].clone()).collect(),
        rbar_size: rbar_classes.len(),
        witt_map,
        ring_map,
        kernel_square_zero,
    })
}

/// `classes` partition the source ring, the first one being the class of 0.
fn check_map<E: Ord + Clone>(
    classes: &[Vec<E>],
    targets: &[Vec<Elem>],
    image: impl Fn(&E) -> usize,
    mul: impl Fn(&E, &E) -> E,
    zero: &E,
) -> Result<MapCheck> {
    let zero_class = classes.iter().position(|c| c.binary_search(zero).is_ok()).unwrap();
    let class_of = |e: &E| classes.iter().position(|c| c.binary_search(e).is_ok()).unwrap();
    let well_defined = classes.iter().all(|c| c.iter().all(|e| image(e) == image(&c[0])));
    let mut hit = vec![false; targets.len()];
    for c in classes {
        hit[image(&c[0])] = true;
    }
    let target_zero = image(zero);
    let kernel: Vec<&Vec<E>> = classes.iter().filter(|c| image(&c[0]) == target_zero).collect();
    let mut nilpotency = Some(1u32);
    for c in &kernel {
        let mut power = c[0].clone();
        let mut k = 1u32;
        while class_of(&power) != zero_class {
            power = mul(&power, &c[0]);
            k += 1;
            if k as usize > classes.len() + 1 {
                nilpotency = None;
                break;
            }
        }
        if let Some(n) = nilpotency {
            nilpotency = Some(n.max(k));
        } else {
            break;
        }
    }
    Ok(MapCheck { well_defined, surjective: hit.iter().all(|&h| h), kernel_size: kernel.len(), nilpotency })
}

/// `B = Z[x_j]/(f_1, ..., f_m)`.
#[derive(Debug, Clone)]
pub struct AffinePresentation {
    ring: Ring,
    relations: Vec<Elem>,
}

impl AffinePresentation {
    pub fn new(vars: &[&str], relations: &[&str]) -> Result<AffinePresentation> {
        let ring = Ring::new(RingDescriptor::Poly {
            base: alloc::boxed::Box::new(RingDescriptor::Integers),
            vars: vars.iter().map(|v| String::from(*v)).collect(),
            inverted: Vec::new(),
        })?;
        let relations = relations.iter().map(|r| ring.parse_elem(r)).collect::<Result<Vec<_>>>()?;
        if relations.iter().any(|r| r.is_zero()) {
            return Err(Error::Precondition(String::from("relations must be nonzero")));
        }
        Ok(AffinePresentation { ring, relations })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &[Elem] {
        &self.relations
    }

    pub fn ngens(&self) -> usize {
        self.ring.nvars()
    }

    /// A single nonzero relation in the domain `Z[x_j]` is regular; several
    /// relations are taken as asserted.
    pub fn regularity(&self) -> Regularity {
        if self.relations.len() <= 1 {
            Regularity::Verified
        } else {
            Regularity::Asserted
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Verified,
    Asserted,
}

fn tuples<T: Clone>(items: &[T], k: usize, limit: usize) -> Result<Vec<Vec<T>>> {
    let total = (items.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::Infeasible(format!("{total} candidate tuples exceed the budget {limit}")));
    }
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Ring maps `B -> W_E(R)`, as generator images.
pub fn witt_points(b: &AffinePresentation, witt: &WittRing, limit: usize) -> Result<Vec<Vec<WittVector>>> {
    let elems = witt.elements(limit)?;
    let mut out = Vec::new();
    for w in tuples(&elems, b.ngens(), limit)? {
        let mut ok = true;
        for f in &b.relations {
            if !witt.is_zero(&evaluate(&b.ring, f, witt, &w)?) {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(w);
        }
    }
    Ok(out)
}

/// An object `(w, g)` with `ξ g_k = f_k(w)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointObject {
    pub w: Vec<WittVector>,
    pub g: Vec<WittVector>,
}

/// Finite groupoid of points, with morphisms labelled by `a`.
#[derive(Debug, Clone)]
pub struct PointGroupoid {
    pub objects: Vec<PointObject>,
    /// `(source, target) -> labels a`.
    pub morphisms: BTreeMap<(usize, usize), Vec<Vec<WittVector>>>,
    pub regularity: Regularity,
}

impl PointGroupoid {
    pub fn hom(&self, s: usize, t: usize) -> &[Vec<WittVector>] {
        self.morphisms.get(&(s, t)).map_or(&[], |v| v.as_slice())
    }

    /// Connected components, each a sorted list of object indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(s, t) in self.morphisms.keys() {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.values().map(|v| v.len()).sum()
    }

    /// `|Hom(s, t)|` for every pair.
    pub fn count_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        (0..n).map(|s| (0..n).map(|t| self.hom(s, t).len()).collect()).collect()
    }
}

/// Groupoid of points of `X(W̄(R))` for `X = Spec B`.
pub fn prismatic_points_affine(b: &AffinePresentation, ctx: &PrismaticContext, limit: usize) -> Result<PointGroupoid> {
    let witt = &ctx.witt;
    let xi = &ctx.xi;
    let elems = witt.elements(limit)?;
    let m = b.relations.len();
    let mut objects = Vec::new();
    for w in tuples(&elems, b.ngens(), limit)? {
        let targets: Vec<WittVector> = b.relations.iter().map(|f| evaluate(&b.ring, f, witt, &w)).collect::<Result<_>>()?;
        let choices: Vec<Vec<WittVector>> = targets
            .iter()
            .map(|t| elems.iter().filter(|g| witt.mul(xi, g) == *t).cloned().collect())
            .collect();
        let mut gs: Vec<Vec<WittVector>> = vec![Vec::new()];
        for c in &choices {
            gs = gs
                .into_iter()
                .flat_map(|g| {
                    c.iter().map(move |x| {
                        let mut g = g.clone();
                        g.push(x.clone());
                        g
                    })
                })
                .collect();
        }
        for g in gs {
            debug_assert_eq!(g.len(), m);
            objects.push(PointObject { w: w.clone(), g });
        }
        if objects.len() > limit {
            return Err(Error::Infeasible(format!("more than {limit} objects")));
        }
    }
    objects.sort();
    let index: BTreeMap<&PointObject, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let labels = tuples(&elems, b.ngens(), limit)?;
    if objects.len().saturating_mul(labels.len()) > limit {
        return Err(Error::Infeasible(format!("{} morphisms exceed the budget {limit}", objects.len() * labels.len())));
    }
    let level = ctx.quasi.level(2)?;
    let mut morphisms: BTreeMap<(usize, usize), Vec<Vec<WittVector>>> = BTreeMap::new();
    for (s, obj) in objects.iter().enumerate() {
        for a in &labels {
            let target = act(b, ctx, &level, obj, a)?;
            let t = *index
                .get(&target)
                .ok_or_else(|| Error::Precondition(String::from("morphism target is not an object")))?;
            morphisms.entry((s, t)).or_default().push(a.clone());
        }
    }
    Ok(PointGroupoid { objects, morphisms, regularity: b.regularity() })
}

/// Target of the morphism labelled `a` out of `obj`.
fn act(
    b: &AffinePresentation,
    ctx: &PrismaticContext,
    level: &crate::cone::ConeRing<'_, WittRing>,
    obj: &PointObject,
    a: &[WittVector],
) -> Result<PointObject> {
    let witt = &ctx.witt;
    let lifted: Vec<ConeElem<WittVector>> =
        obj.w.iter().zip(a).map(|(w, x)| ConeElem { r: w.clone(), xs: vec![vec![x.clone()]] }).collect();
    let w = obj.w.iter().zip(a).map(|(w, x)| witt.add(w, &witt.mul(&ctx.xi, x))).collect();
    let mut g = Vec::with_capacity(obj.g.len());
    for (f, gk) in b.relations.iter().zip(&obj.g) {
        let value = evaluate(&b.ring, f, level, &lifted)?;
        g.push(witt.add(gk, &value.xs[0][0]));
    }
    Ok(PointObject { w, g })
}

/// Checks identities, inverses and closure under composition on every
/// composable pair. Returns a description of the first failure.
pub fn check_groupoid_axioms(b: &AffinePresentation, ctx: &PrismaticContext, g: &PointGroupoid) -> Result<Option<String>> {
    let witt = &ctx.witt;
    let zero: Vec<WittVector> = (0..b.ngens()).map(|_| witt.zero()).collect();
    for s in 0..g.objects.len() {
        if !g.hom(s, s).contains(&zero) {
            return Ok(Some(format!("object {s} has no identity")));
        }
    }
    for (&(s, t), labels) in &g.morphisms {
        for a in labels {
            let inv: Vec<WittVector> = a.iter().map(|x| witt.neg(x)).collect();
            if !g.hom(t, s).contains(&inv) {
                return Ok(Some(format!("morphism {s} -> {t} has no inverse")));
            }
            for u in 0..g.objects.len() {
                for c in g.hom(t, u) {
                    let composite: Vec<WittVector> = a.iter().zip(c).map(|(x, y)| witt.add(x, y)).collect();
                    if !g.hom(s, u).contains(&composite) {
                        return Ok(Some(format!("composite {s} -> {t} -> {u} is missing")));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Restriction to `sub ⊆ E` sends objects to objects.
pub fn restriction_compatible(
    b: &AffinePresentation,
    ctx: &PrismaticContext,
    g: &PointGroupoid,
    sub: &IndexSet,
) -> Result<bool> {
    let small = ctx.restrict(sub)?;
    let sw = &small.witt;
    for obj in &g.objects {
        let w: Vec<WittVector> = obj.w.iter().map(|x| ctx.witt.restrict(x, sub)).collect::<Result<_>>()?;
        for (f, gk) in b.relations.iter().zip(&obj.g) {
            let lhs = sw.mul(&small.xi, &ctx.witt.restrict(gk, sub)?);
            if lhs != evaluate(&b.ring, f, sw, &w)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `u·ξ` for a unit `u`, as a new context.
pub fn scale_context(ctx: &PrismaticContext, u: &WittVector) -> Result<PrismaticContext> {
    if crate::structure::witt_is_unit(&ctx.witt, u)?.is_none() {
        return Err(Error::NotInvertible(ctx.witt.describe(u)));
    }
    PrismaticContext::new(&ctx.witt, ctx.witt.mul(u, &ctx.xi))
}
