use std::collections::BTreeMap;

use ainfty::ainf::presets;
use ainfty::barcobar::koszul_dual;
use ainfty::bigraded::Bidegree;
use ainfty::classical::{is_koszul, QuadraticPresentation};
use ainfty::dgmod::homology_algebra;
use ainfty::exactla::{Field, PrimeField, Rationals};
use ainfty::ringprops::{is_frobenius, Outcome};

fn by_weight(dims: &BTreeMap<Bidegree, usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for (d, n) in dims {
        let w = d.adams.unsigned_abs() as usize;
        if out.len() <= w {
            out.resize(w + 1, 0);
        }
        out[w] += n;
    }
    out
}

/// Koszul numerology: `H_A(t) · H_{A^!}(-t) = 1` up to the window.
fn numerology_holds(a: &[usize], dual: &[usize], upto: usize) -> bool {
    (1..=upto).all(|n| {
        let s: i64 = (0..=n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0) as i64 * *dual.get(n - i).unwrap_or(&0) as i64;
                if (n - i) % 2 == 0 { x } else { -x }
            })
            .sum();
        s == 0
    })
}

#[test]
fn quantum_planes_are_koszul_with_exterior_like_duals() {
    let k = PrimeField::new(7).unwrap();
    let names = vec!["x".to_string(), "y".to_string()];
    for q in 1..7 {
        // y x - q x y
        let rel = vec![((1, 0), k.one()), ((0, 1), k.from_i64(-q))];
        let p = QuadraticPresentation::from_terms(k.clone(), names.clone(), Bidegree::new(0, 1), &[rel]).unwrap();
        let a = p.realize(5).unwrap();
        assert_eq!(by_weight(&a.dims()), vec![1, 2, 3, 4, 5, 6], "q = {q}");
        let r = is_koszul(&a, 5).unwrap();
        assert!(r.passed(), "q = {q}: {:?}", r.verdict);
        let he = by_weight(&homology_algebra(&koszul_dual(&a, 5).unwrap()).unwrap().dims());
        assert_eq!(he, vec![1, 2, 1], "q = {q}");
        assert_eq!(by_weight(&p.dual().realize(5).unwrap().dims()), he);
        assert!(numerology_holds(&by_weight(&a.dims()), &he, 5));
    }
}

#[test]
fn truncated_polynomials_are_frobenius_with_top_socle() {
    let k = Rationals;
    for p in 2..=5usize {
        let a = presets::truncated_polynomial(k.clone(), Bidegree::new(0, 1), p, 6).unwrap();
        let f = is_frobenius(&a).unwrap();
        assert_eq!(f.verdict.outcome, Outcome::Yes, "p = {p}");
        assert_eq!(f.verdict.class_degree, Some(Bidegree::new(0, p as i64 - 1)));
    }
}

#[test]
fn exterior_is_frobenius_and_square_zero_is_not() {
    let k = Rationals;
    let g = Bidegree::new(0, 1);
    for n in 1..=3 {
        let a = presets::exterior(k.clone(), &vec![g; n], 4).unwrap();
        let f = is_frobenius(&a).unwrap();
        assert_eq!(f.verdict.outcome, Outcome::Yes, "n = {n}");
        assert_eq!(f.verdict.shift, Some((-(n as i64), 0)));
    }
    let f = is_frobenius(&presets::square_zero_two(k, g, 4).unwrap()).unwrap();
    assert_eq!(f.verdict.outcome, Outcome::No);
    assert_eq!(f.left_labels.len(), 2);
}
