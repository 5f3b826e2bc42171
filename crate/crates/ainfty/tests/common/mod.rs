#![allow(dead_code)]

use std::sync::Arc;

use ainfty::ainf::gauge::{slots, transport};
use ainfty::ainf::{presets, AlgebraBuilder, OpTable, Orientation, TruncAInfAlgebra};
use ainfty::bigraded::Bidegree;
use ainfty::exactla::{Field, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// a (0,1), g (0,2), e (-1,3), f (0,3) with m2(a,a)=g, m2(g,a)=-f, m3(a,a,a)=e, m1(e)=f.
/// Small enough to read by hand; its bar differential squares to zero only with the
/// right relative sign between m1, m2 and m3.
pub fn discriminating<F: Field>(k: F) -> TruncAInfAlgebra<F> {
    let mut b = AlgebraBuilder::new(k.clone(), Orientation::Positive, 3).finite(true);
    let a = b.element("a", Bidegree::new(0, 1)).unwrap();
    let g = b.element("g", Bidegree::new(0, 2)).unwrap();
    let e = b.element("e", Bidegree::new(-1, 3)).unwrap();
    let f = b.element("f", Bidegree::new(0, 3)).unwrap();
    let unit = |i: u32| SparseVec::unit(&k, i as usize);
    b.set_op(2, vec![a, a], unit(g)).unwrap();
    b.set_op(2, vec![g, a], unit(f).neg(&k)).unwrap();
    b.set_op(3, vec![a, a, a], unit(e)).unwrap();
    b.set_op(1, vec![e], unit(f)).unwrap();
    b.build().unwrap()
}

/// `Λ(s) ⊗ k[t]/(t^n)` with `s` in (-1,1), `t` in (0,1) and `d s = t`.
pub fn koszul_complex<F: Field>(k: F, n: usize) -> TruncAInfAlgebra<F> {
    let mut b = AlgebraBuilder::new(k.clone(), Orientation::Positive, n as i64).finite(true);
    let mut t = vec![0u32];
    let mut st = Vec::new();
    for j in 1..n {
        let l = if j == 1 { "t".to_string() } else { format!("t^{j}") };
        t.push(b.element(&l, Bidegree::new(0, j as i64)).unwrap());
    }
    for j in 0..n {
        let l = match j {
            0 => "s".to_string(),
            1 => "st".to_string(),
            _ => format!("st^{j}"),
        };
        st.push(b.element(&l, Bidegree::new(-1, 1 + j as i64)).unwrap());
    }
    let unit = |i: u32| SparseVec::unit(&k, i as usize);
    for i in 0..n {
        for j in 0..n {
            if i + j < n && i > 0 && j > 0 {
                b.set_op(2, vec![t[i], t[j]], unit(t[i + j])).unwrap();
            }
            if i + j < n && i > 0 {
                b.set_op(2, vec![t[i], st[j]], unit(st[i + j])).unwrap();
                b.set_op(2, vec![st[j], t[i]], unit(st[i + j])).unwrap();
            }
        }
        if i + 1 < n {
            b.set_op(1, vec![st[i]], unit(t[i + 1])).unwrap();
        }
    }
    b.build().unwrap()
}

/// Base algebras for random transport, all finite with dimension at most 6.
pub fn bases<F: Field>(k: F) -> Vec<TruncAInfAlgebra<F>> {
    vec![
        discriminating(k.clone()),
        koszul_complex(k.clone(), 2),
        koszul_complex(k.clone(), 3),
        presets::exterior(k.clone(), &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 3).unwrap(),
        presets::exterior(k.clone(), &[Bidegree::new(0, 1), Bidegree::new(-1, 1)], 2).unwrap(),
        presets::truncated_polynomial(k.clone(), Bidegree::new(0, 1), 6, 5).unwrap(),
        presets::truncated_polynomial(k.clone(), Bidegree::new(1, -1), 5, 4).unwrap(),
        presets::b_p(k.clone(), 3, 4).unwrap(),
        presets::square_zero_two(k.clone(), Bidegree::new(-1, 1), 2).unwrap(),
    ]
}

/// Random valid A∞-table: a base algebra transported along random higher components.
pub fn random_table<F: Field>(k: F, seed: u64) -> TruncAInfAlgebra<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = bases(k.clone());
    let base = Arc::new(bases[rng.gen_range(0..bases.len())].clone());
    let top = (base.adams_bound() as usize).min(5);
    let mut higher: Vec<OpTable<F::Elem>> = Vec::new();
    for n in 2..top.max(2) {
        let mut t = OpTable::default();
        for (x, targets) in slots(&base, n) {
            let mut terms: Vec<(usize, F::Elem)> = Vec::new();
            for &j in &targets {
                if rng.gen_bool(0.6) {
                    terms.push((j as usize, k.from_i64(rng.gen_range(-3..=3))));
                }
            }
            let v = SparseVec::from_terms(&k, terms);
            if !v.is_zero() {
                t.insert(x, v);
            }
        }
        higher.push(t);
    }
    let (a, _) = transport(base, higher).unwrap();
    (*a).clone()
}
