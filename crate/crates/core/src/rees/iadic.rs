//! Associated graded pieces `I^i / I^{i+1}` for ideals generated by linear
//! forms in a polynomial or Laurent ring over `Q`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::rref;
use crate::ring::{CommRing, Elem, Ring, RingDescriptor, Scalar};
use crate::{Error, Result};

/// `gr^i`, free over `S/I` on the listed monomials in the independent
/// generators of `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    pub rank: usize,
    pub generators: Vec<String>,
}

/// `A^{⊗n}` for `A` a polynomial or Laurent ring over `Q`, with variable
/// `v` of the `k`-th factor named `v_k`.
pub fn tensor_power(a: &Ring, n: usize) -> Result<Ring> {
    let RingDescriptor::Poly { base, vars, inverted } = a.descriptor() else {
        return Err(Error::Unsupported(format!("tensor powers of {}", a.descriptor())));
    };
    if **base != RingDescriptor::Rationals || n == 0 {
        return Err(Error::Unsupported(format!("tensor powers of {}", a.descriptor())));
    }
    let rename = |names: &[String]| -> Vec<String> {
        (1..=n).flat_map(|k| names.iter().map(move |v| format!("{v}_{k}"))).collect()
    };
    Ring::new(RingDescriptor::Poly { base: base.clone(), vars: rename(vars), inverted: rename(inverted) })
}

/// Generators `v_1 - v_k` of the kernel of multiplication `A^{⊗n} -> A`.
pub fn diagonal_ideal(a: &Ring, n: usize) -> Result<(Ring, Vec<Elem>)> {
    let s = tensor_power(a, n)?;
    let mut gens = Vec::new();
    for v in a.var_names() {
        for k in 2..=n {
            gens.push(s.sub(&s.var(&format!("{v}_1"))?, &s.var(&format!("{v}_{k}"))?));
        }
    }
    Ok((s, gens))
}

/// `gr^0, ..., gr^k` of the `I`-adic filtration, `I` generated by linear
/// forms. If `r` of the forms are independent they form a regular
/// sequence, and `gr^i` is free over `S/I` on the `C(r+i-1, i)` monomials
/// of degree `i` in them.
pub fn iadic_gr(s: &Ring, gens: &[Elem], k: u32) -> Result<Vec<GradedPiece>> {
    if *s.scalar() != Scalar::Rationals || s.has_relations() {
        return Err(Error::Unsupported(format!("I-adic filtration over {}", s.descriptor())));
    }
    let n = s.nvars();
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        let mut row = vec![BigRational::zero(); n];
        for (m, c) in g.terms() {
            let e = m.exps();
            let Some(v) = e.iter().position(|&x| x == 1).filter(|_| m.degree() == 1 && e.iter().all(|&x| x >= 0)) else {
                return Err(Error::Unsupported(format!("generator {} is not a linear form", s.format_elem(g))));
            };
            row[v] = c.clone();
        }
        rows.push(row);
    }
    // Greedy choice of independent generators.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<_> = chosen.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rref(&trial, n).1.len() == trial.len() {
            chosen.push(i);
        }
    }
    let names: Vec<String> = chosen.iter().map(|&i| format!("({})", s.format_elem(&gens[i]))).collect();
    let mut out = Vec::new();
    for i in 0..=k {
        let monos = monomials(chosen.len(), i);
        let generators = monos
            .iter()
            .map(|exps| {
                let parts: Vec<String> = exps
                    .iter()
                    .zip(&names)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, name)| if *e == 1 { name.clone() } else { format!("{name}^{e}") })
                    .collect();
                if parts.is_empty() {
                    String::from("1")
                } else {
                    parts.join("*")
                }
            })
            .collect();
        out.push(GradedPiece { degree: i, rank: monos.len(), generators });
    }
    Ok(out)
}

/// Ranks of `S/I^{i+1}` over `S/I` read off the graded pieces.
pub fn quotient_tower_ranks(pieces: &[GradedPiece]) -> Vec<usize> {
    pieces
        .iter()
        .scan(0usize, |acc, p| {
            *acc += p.rank;
            Some(*acc)
        })
        .collect()
}

/// Exponent vectors of total degree `d` in `r` variables, in lexicographic order.
fn monomials(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(r - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

