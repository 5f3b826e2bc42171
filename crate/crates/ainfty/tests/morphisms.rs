mod common;

use std::sync::Arc;

use ainfty::ainf::gauge::{slots, transport};
use ainfty::ainf::{check_morphism, compose, AInfMorphism, OpTable};
use ainfty::barcobar::{bar, bar_morphism};
use ainfty::exactla::{Field, PrimeField, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_higher<F: Field>(k: &F, a: &ainfty::ainf::TruncAInfAlgebra<F>, rng: &mut ChaCha8Rng) -> Vec<OpTable<F::Elem>> {
    let mut out = Vec::new();
    for n in 2..=(a.adams_bound() as usize).clamp(2, 4) {
        let mut t = OpTable::default();
        for (x, targets) in slots(a, n) {
            let mut terms = Vec::new();
            for &j in &targets {
                if rng.gen_bool(0.5) {
                    terms.push((j as usize, k.from_i64(rng.gen_range(-2..=2))));
                }
            }
            let v = SparseVec::from_terms(k, terms);
            if !v.is_zero() {
                t.insert(x, v);
            }
        }
        out.push(t);
    }
    out
}

#[test]
fn transported_morphisms_satisfy_mi_and_commute_with_bar() {
    let k = PrimeField::new(32003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..20 {
        let a = Arc::new(common::random_table(k.clone(), seed));
        let (b, f) = transport(a.clone(), random_higher(&k, &a, &mut rng)).unwrap();
        let r = check_morphism(&f, 5);
        assert!(r.passed(), "seed {seed}: {:?}", r.witnesses);
        let n = a.adams_bound();
        let (ba, bb) = (bar(&a, n).unwrap(), bar(&b, n).unwrap());
        let bf = bar_morphism(&f, &ba, &bb).unwrap();
        for i in 0..ba.dim() {
            let lhs = bf.apply(&k, ba.differential(i));
            let rhs = bb.apply(&bf.cols[i]);
            assert_eq!(lhs, rhs, "seed {seed}, word {}", ba.label(i));
        }
    }
}

#[test]
fn composite_matches_bar_composite() {
    let k = PrimeField::new(32003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..15 {
        let a = Arc::new(common::random_table(k.clone(), 100 + seed));
        let (b, f) = transport(a.clone(), random_higher(&k, &a, &mut rng)).unwrap();
        let (c, g) = transport(b.clone(), random_higher(&k, &b, &mut rng)).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert!(check_morphism(&gf, 5).passed(), "seed {seed}");
        let n = a.adams_bound();
        let (ba, bb, bc) = (bar(&a, n).unwrap(), bar(&b, n).unwrap(), bar(&c, n).unwrap());
        let lhs = bar_morphism(&gf, &ba, &bc).unwrap();
        let rhs = bar_morphism(&g, &bb, &bc).unwrap().compose(&k, &bar_morphism(&f, &ba, &bb).unwrap());
        assert_eq!(lhs, rhs, "seed {seed}");
        let id = AInfMorphism::identity(a.clone());
        assert_eq!(compose(&f, &id).unwrap(), f.with_arity_bound(f.arity_bound().min(id.arity_bound())).unwrap());
    }
}

#[test]
fn broken_component_is_caught_by_both_checks() {
    let k = PrimeField::new(32003).unwrap();
    let a = Arc::new(common::koszul_complex(k.clone(), 3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (b, f) = transport(a.clone(), random_higher(&k, &a, &mut rng)).unwrap();
    let mut tables = f.tables().to_vec();
    let (x, targets) = slots(&a, 2).into_iter().next().unwrap();
    let bump = SparseVec::unit(&k, targets[0] as usize);
    let cur = tables[1].get(&x).cloned().unwrap_or_default();
    tables[1].insert(x, cur.add(&k, &bump));
    let bad = AInfMorphism::new(a.clone(), b.clone(), tables, f.arity_bound()).unwrap();
    assert!(!check_morphism(&bad, 4).passed());
    let n = a.adams_bound();
    let (ba, bb) = (bar(&a, n).unwrap(), bar(&b, n).unwrap());
    let bf = bar_morphism(&bad, &ba, &bb).unwrap();
    assert!((0..ba.dim()).any(|i| bf.apply(&k, ba.differential(i)) != bb.apply(&bf.cols[i])));
}
