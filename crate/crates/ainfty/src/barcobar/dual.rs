//! The Koszul dual `E(A) = B(A)^♯`.

use super::bar::{bar, BarCoalgebra};
use crate::ainf::{AlgebraBuilder, Ix, TruncAInfAlgebra};
use crate::bigraded::dual_label;
use crate::error::Result;
use crate::exactla::{Field, SparseVec};

/// `E(A)` through Adams radius `adams_bound`, as a DG algebra on dual words.
///
/// Product `w₁*·w₂* = (-1)^{|w₁||w₂|}(w₁w₂)*`; differential `d(w*) = -(-1)^{|w*|} w*∘b`.
/// Cutting the bar construction at an Adams radius is dual to a quotient of `E`, and the
/// differential preserves Adams degree, so the result is exact through `adams_bound`.
pub fn koszul_dual<F: Field>(a: &TruncAInfAlgebra<F>, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let b = bar(a, adams_bound)?;
    dual_of_bar(&b)
}

pub fn dual_of_bar<F: Field>(b: &BarCoalgebra<F>) -> Result<TruncAInfAlgebra<F>> {
    let k = b.field().clone();
    let orientation = b.algebra().orientation().flip();
    let mut builder = AlgebraBuilder::new(k.clone(), orientation, b.adams_bound()).arity_bound(2);
    // word i ↦ basis index i (word 0 is the empty word, i.e. the unit)
    for i in 1..b.dim() {
        builder.element(&dual_label(b.label(i)), -b.deg(i))?;
    }
    for v in 1..b.dim() {
        for (w, c) in b.differential(v).iter() {
            // coefficient of v* in d(w*) is -(-1)^{|w*|}·b[v→w]
            let odd = b.deg(*w).coh.rem_euclid(2) == 0;
            let term = SparseVec::from_terms(&k, [(v, k.signed(!odd, c))]);
            builder.add_op(1, vec![*w as Ix], &term)?;
        }
    }
    for u in 1..b.dim() {
        let w = b.word(u);
        for j in 1..w.len() {
            let (l, r) = (b.index(&w[..j]).expect("prefix"), b.index(&w[j..]).expect("suffix"));
            let odd = (b.deg(l).coh * b.deg(r).coh).rem_euclid(2) == 1;
            let term = SparseVec::from_terms(&k, [(u, k.signed(!odd, &k.one()))]);
            builder.set_op(2, vec![l as Ix, r as Ix], term)?;
        }
    }
    builder.build()
}
