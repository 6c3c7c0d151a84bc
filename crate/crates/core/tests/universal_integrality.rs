use wittforge_core::witt::{WittOp, WittPolynomials};
use wittforge_core::IndexSet;

fn generate_all(e: &IndexSet) {
    let w = WittPolynomials::new(e).unwrap();
    let mut ops = vec![WittOp::Sum, WittOp::Product, WittOp::Negation];
    ops.extend(e.elements().iter().filter(|&&n| n > 1).map(|&n| WittOp::Frobenius(n)));
    for op in ops {
        let polys = w.get(op).unwrap_or_else(|err| panic!("{e} {op}: {err}"));
        assert!(polys.iter().all(|p| !p.is_zero() || op == WittOp::Negation));
    }
}

#[test]
fn p_typical_length_four() {
    for p in [2, 3, 5] {
        generate_all(&IndexSet::p_typical(p, 4).unwrap());
    }
}

#[test]
fn all_divisor_sets_up_to_thirty() {
    for n in 1..=30 {
        generate_all(&IndexSet::divisors_of(n).unwrap());
    }
}
