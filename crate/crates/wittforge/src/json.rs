//! JSON encodings of the core data types.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use wittforge_core::cone::{Pi0, QuasiIdeal};
use wittforge_core::derham::HodgeCohomology;
use wittforge_core::linalg::{Matrix, Subspace, Vector};
use wittforge_core::poly::MPoly;
use wittforge_core::prismatic::{PointGroupoid, WbarReport};
use wittforge_core::rees::{FilteredModule, ReesModule, Top};
use wittforge_core::ring::CommRing;
use wittforge_core::structure::{Certificate, DecomposedWitt};
use wittforge_core::witt::{WittOp, WittPolynomials};
use wittforge_core::{IndexSet, Ring, WittRing, WittVector};

use crate::{Error, Result};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub fn index_json(e: &IndexSet) -> Value {
    json!(e.elements())
}

/// `{"1": "<x_1>", "2": "<x_2>", ...}`.
pub fn coords_json(witt: &WittRing, a: &WittVector) -> Value {
    let mut m = Map::new();
    for (n, c) in a.index().elements().iter().zip(witt.format(a)) {
        m.insert(n.to_string(), Value::String(c));
    }
    Value::Object(m)
}

pub fn witt_vector_json(witt: &WittRing, a: &WittVector) -> Value {
    json!({
        "ring": witt.ring().descriptor().to_string(),
        "index_set": index_json(a.index()),
        "coords": coords_json(witt, a),
    })
}

/// Comma-separated coordinates, in increasing index order.
pub fn parse_vector(witt: &WittRing, text: &str) -> Result<WittVector> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    Ok(witt.parse_coords(&parts)?)
}

fn parse_op(text: &str) -> Result<WittOp> {
    Ok(match text {
        "sum" => WittOp::Sum,
        "product" => WittOp::Product,
        "negation" => WittOp::Negation,
        _ => {
            let n = text
                .strip_prefix("frobenius")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| usage(format!("unknown operation {text:?}")))?;
            WittOp::Frobenius(n)
        }
    })
}

/// `{"index_set", "op", "polynomials": [[[{"x1": 1, "y1": 1}, "-1"], ...], ...]}`.
pub fn polynomials_to_json(polys: &WittPolynomials, op: WittOp, list: &[MPoly<BigInt>]) -> Value {
    let layout = polys.layout();
    let encoded: Vec<Value> = list
        .iter()
        .map(|p| {
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .map(|(key, c)| {
                    let mut mono = Map::new();
                    for (v, e) in layout.decode(*key).into_iter().enumerate() {
                        if e > 0 {
                            mono.insert(polys.var_name(v), json!(e));
                        }
                    }
                    json!([mono, c.to_string()])
                })
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({ "index_set": index_json(polys.index()), "op": op.to_string(), "polynomials": encoded })
}

pub fn polynomials_from_json(polys: &WittPolynomials, value: &Value) -> Result<(IndexSet, WittOp, Vec<MPoly<BigInt>>)> {
    let bad = |what: &str| usage(format!("malformed polynomial file: {what}"));
    let elems: Vec<u64> = value["index_set"]
        .as_array()
        .ok_or_else(|| bad("index_set"))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| bad("index_set entry")))
        .collect::<Result<_>>()?;
    let index = IndexSet::explicit(&elems)?;
    let op = parse_op(value["op"].as_str().ok_or_else(|| bad("op"))?)?;
    let layout = polys.layout();
    let names: Vec<String> = (0..layout.nvars()).map(|v| polys.var_name(v)).collect();
    let mut list = Vec::new();
    for p in value["polynomials"].as_array().ok_or_else(|| bad("polynomials"))? {
        let mut terms = Vec::new();
        for t in p.as_array().ok_or_else(|| bad("term list"))? {
            let mono = t[0].as_object().ok_or_else(|| bad("monomial"))?;
            let mut exps = vec![0u32; layout.nvars()];
            for (name, e) in mono {
                let v = names.iter().position(|n| n == name).ok_or_else(|| bad("variable"))?;
                exps[v] = e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("exponent"))?;
            }
            let c: BigInt = t[1].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coefficient"))?;
            terms.push((layout.encode(&exps)?, c));
        }
        list.push(MPoly::from_terms(layout, terms));
    }
    Ok((index, op, list))
}

pub fn decomposed_json(d: &DecomposedWitt, local: &WittRing) -> Value {
    let mut factors = Map::new();
    for (n, f) in &d.factors {
        factors.insert(n.to_string(), coords_json(local, f));
    }
    json!({ "p": d.p, "factors": factors })
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Unsat { n, m, p, uniform } => {
            json!({ "result": "unsat", "congruence": { "n": n, "m": m, "p": p }, "uniform": uniform })
        }
        Certificate::Sat { ghost, coords } => json!({
            "result": "sat",
            "ghost": ghost.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "coords": coords.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
    }
}

pub fn pi0_json(pi0: &Pi0, base: &Ring) -> Value {
    match pi0 {
        Pi0::Quotient { ring, ideal } => json!({
            "kind": "quotient",
            "ring": ring.descriptor().to_string(),
            "ideal": ideal.iter().map(|g| base.format_elem(g)).collect::<Vec<_>>(),
        }),
        Pi0::Zero { ideal } => json!({
            "kind": "zero",
            "ideal": ideal.iter().map(|g| base.format_elem(g)).collect::<Vec<_>>(),
        }),
    }
}

pub fn quasi_ideal_json(q: &QuasiIdeal<Ring>) -> Value {
    let ring = q.ring();
    let fmt = |xs: &[wittforge_core::Elem]| xs.iter().map(|x| ring.format_elem(x)).collect::<Vec<_>>();
    json!({
        "ring": ring.descriptor().to_string(),
        "generators": q.rank(),
        "relations": q.relations().iter().map(|r| fmt(r)).collect::<Vec<_>>(),
        "d": fmt(q.d_values()),
    })
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.row_vectors().iter().map(vector_strings).collect::<Vec<_>>())
}

fn vector_strings(v: &Vector) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn top_name(t: Top) -> &'static str {
    match t {
        Top::Zero => "zero",
        Top::Constant => "constant",
    }
}

/// `{"pieces": {"<deg>": {"rank", "relations"}}, "t_maps": {"<deg>": rows}}`,
/// with `t_maps[d]` going from degree `d` to `d + 1`.
pub fn rees_json(g: &ReesModule) -> Value {
    let mut pieces = Map::new();
    let mut t_maps = Map::new();
    for d in g.lo_deg()..=g.hi_deg() {
        pieces.insert(d.to_string(), json!({ "rank": g.dim_at(d), "relations": [] }));
        if d < g.hi_deg() {
            t_maps.insert(d.to_string(), matrix_json(&g.t_map(d)));
        }
    }
    let generators: Map<String, Value> = g.generator_degrees().into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
    json!({ "pieces": pieces, "t_maps": t_maps, "below": top_name(g.low()), "generators": generators })
}

pub fn filtered_json(m: &FilteredModule) -> Value {
    let pieces: Vec<Value> =
        (m.lo()..=m.hi()).map(|i| json!(m.piece(i).basis().iter().map(vector_strings).collect::<Vec<_>>())).collect();
    json!({ "dim": m.dim(), "lo": m.lo(), "pieces": pieces, "top": top_name(m.top()) })
}

fn rational(v: &Value) -> Result<num_rational::BigRational> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| usage(format!("entries must be integers or strings, got {n}")))?;
            Ok(num_rational::BigRational::from_integer(i.into()))
        }
        Value::String(s) => s.trim().parse().map_err(|_| usage(format!("bad rational {s:?}"))),
        other => Err(usage(format!("bad vector entry {other}"))),
    }
}

/// Inverse of [`filtered_json`]; each piece is given by spanning vectors.
pub fn filtered_from_json(v: &Value) -> Result<FilteredModule> {
    let dim = v["dim"].as_u64().ok_or_else(|| usage("filtered module needs \"dim\""))? as usize;
    let lo = v["lo"].as_i64().unwrap_or(0);
    let top = match v["top"].as_str().unwrap_or("zero") {
        "zero" => Top::Zero,
        "constant" => Top::Constant,
        other => return Err(usage(format!("top must be zero or constant, got {other:?}"))),
    };
    let mut pieces = Vec::new();
    for p in v["pieces"].as_array().ok_or_else(|| usage("filtered module needs \"pieces\""))? {
        let vectors: Vec<Vector> = p
            .as_array()
            .ok_or_else(|| usage("a piece is a list of vectors"))?
            .iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| usage("a vector is a list"))?;
                if row.len() != dim {
                    return Err(usage(format!("vector of length {} in a module of dim {dim}", row.len())));
                }
                row.iter().map(rational).collect()
            })
            .collect::<Result<_>>()?;
        pieces.push(Subspace::span(dim, &vectors));
    }
    Ok(FilteredModule::new(dim, lo, pieces, top)?)
}

/// `{"a","b","H":{"j":dim},"Fil":{"j":{"i":dim}},"rees":{"j":...}}`.
pub fn derham_json(h: &HodgeCohomology) -> Value {
    let n = h.algebra.nvars();
    let dims = h.h_dims();
    let mut hj = Map::new();
    for (j, d) in dims.iter().enumerate() {
        hj.insert(j.to_string(), json!(d));
    }
    let mut fil = Map::new();
    for j in 1..=n {
        let row: Map<String, Value> = (1..=n + 1).map(|i| (i.to_string(), json!(h.fil_dim(i as i64, j)))).collect();
        fil.insert(j.to_string(), Value::Object(row));
    }
    let mut rees = Map::new();
    for (j, g) in h.rees_package().iter().enumerate() {
        rees.insert(j.to_string(), rees_json(g));
    }
    json!({ "a": h.algebra.a, "b": h.algebra.b, "H": hj, "Fil": fil, "rees": rees })
}

pub fn wbar_json(witt: &WittRing, r: &WbarReport) -> Value {
    let check = |m: &wittforge_core::prismatic::MapCheck| {
        json!({
            "well_defined": m.well_defined,
            "surjective": m.surjective,
            "kernel_size": m.kernel_size,
            "nilpotency": m.nilpotency,
        })
    };
    json!({
        "pi0": r.pi0.iter().map(|a| coords_json(witt, a)).collect::<Vec<_>>(),
        "rbar_size": r.rbar_size,
        "witt_map": check(&r.witt_map),
        "ring_map": check(&r.ring_map),
        "kernel_square_zero": r.kernel_square_zero,
    })
}

pub fn groupoid_json(witt: &WittRing, g: &PointGroupoid) -> Value {
    let objects: Vec<Value> = g
        .objects
        .iter()
        .map(|o| {
            json!({
                "w": o.w.iter().map(|a| coords_json(witt, a)).collect::<Vec<_>>(),
                "g": o.g.iter().map(|a| coords_json(witt, a)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "objects": objects,
        "morphism_counts": g.count_matrix(),
        "pi0": g.components(),
        "regularity": format!("{:?}", g.regularity).to_lowercase(),
    })
}

pub fn elem_strings<R: CommRing>(ring: &R, xs: &[R::Elem]) -> Vec<String> {
    xs.iter().map(|x| ring.describe(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtered_round_trip() {
        let text = r#"{"dim":2,"lo":-1,"pieces":[[[1,0],[0,1]],[["1","1"]]],"top":"zero"}"#;
        let m = filtered_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(m.piece(0).dim(), 1);
        assert_eq!(filtered_from_json(&filtered_json(&m)).unwrap(), m);
        let bad = r#"{"dim":2,"pieces":[[[1,0]]]}"#;
        assert!(filtered_from_json(&serde_json::from_str(bad).unwrap()).is_err());
    }

    #[test]
    fn rees_json_of_twist() {
        let g = ReesModule::of_filtered(&FilteredModule::twist(1));
        let v = rees_json(&g);
        assert_eq!(v["pieces"]["-1"]["rank"], 1);
        assert_eq!(v["generators"]["-1"], 1);
    }

    #[test]
    fn vector_coordinates() {
        let witt = WittRing::new(Ring::integers(), IndexSet::divisors_of(2).unwrap()).unwrap();
        let a = parse_vector(&witt, "2, -1").unwrap();
        assert_eq!(serde_json::to_string(&coords_json(&witt, &a)).unwrap(), r#"{"1":"2","2":"-1"}"#);
        assert!(parse_vector(&witt, "1").is_err());
    }
}
