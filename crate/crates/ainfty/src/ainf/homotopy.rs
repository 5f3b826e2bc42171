//! Homotopies between coalgebra maps of bar constructions: `H` of degree −1 with
//! `ΔH = (F⊗H + H⊗G)Δ` and `F − G = b'H + Hb`.

use std::collections::HashMap;

use crate::barcobar::{BarCoalgebra, WordMap};
use crate::exactla::{Field, SparseVec};

#[derive(Clone, Debug)]
pub struct CoalgebraHomotopy<F: Field> {
    pub source: BarCoalgebra<F>,
    pub target: BarCoalgebra<F>,
    pub f: WordMap<F::Elem>,
    pub g: WordMap<F::Elem>,
    pub h: WordMap<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub words: usize,
    pub chain_ok: bool,
    pub coproduct_ok: bool,
    pub witness: Option<String>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.chain_ok && self.coproduct_ok
    }
}

/// Elements of `B' ⊗ B'` keyed by pairs of word indices.
type Tensor<E> = HashMap<(usize, usize), E>;

fn add_to<F: Field>(k: &F, t: &mut Tensor<F::Elem>, key: (usize, usize), c: F::Elem) {
    let e = t.entry(key).or_insert_with(|| k.zero());
    *e = k.add(e, &c);
    if k.is_zero(e) {
        t.remove(&key);
    }
}

/// `Δ'(v)` for a vector of target words.
fn coproduct_of<F: Field>(b: &BarCoalgebra<F>, v: &SparseVec<F::Elem>) -> Tensor<F::Elem> {
    let k = b.field();
    let mut t = Tensor::new();
    for (i, c) in v.iter() {
        for (l, r) in b.coproduct(*i) {
            add_to(k, &mut t, (l, r), c.clone());
        }
    }
    t
}

pub fn verify_homotopy<F: Field>(h: &CoalgebraHomotopy<F>) -> HomotopyReport {
    let (src, tgt) = (&h.source, &h.target);
    let k = src.field();
    let mut witness = None;
    let mut chain_ok = true;
    let mut coproduct_ok = true;
    for s in 0..src.dim() {
        let lhs = h.f.cols[s].sub(k, &h.g.cols[s]);
        let rhs = tgt.apply(&h.h.cols[s]).add(k, &h.h.apply(k, src.differential(s)));
        if lhs != rhs {
            chain_ok = false;
            witness.get_or_insert_with(|| format!("F − G ≠ b'H + Hb on {}", src.label(s)));
        }
        let left = coproduct_of(tgt, &h.h.cols[s]);
        let mut right = Tensor::new();
        for (u, v) in src.coproduct(s) {
            let odd = src.deg(u).is_odd();
            for (l, a) in h.f.cols[u].iter() {
                for (r, b) in h.h.cols[v].iter() {
                    add_to(k, &mut right, (*l, *r), k.signed(!odd, &k.mul(a, b)));
                }
            }
            for (l, a) in h.h.cols[u].iter() {
                for (r, b) in h.g.cols[v].iter() {
                    add_to(k, &mut right, (*l, *r), k.mul(a, b));
                }
            }
        }
        if left != right {
            coproduct_ok = false;
            witness.get_or_insert_with(|| format!("ΔH ≠ (F⊗H + H⊗G)Δ on {}", src.label(s)));
        }
    }
    HomotopyReport { words: src.dim(), chain_ok, coproduct_ok, witness }
}
