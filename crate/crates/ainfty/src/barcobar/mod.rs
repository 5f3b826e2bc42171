//! Bar and cobar constructions, the Koszul dual, the enveloping algebra, the bar
//! construction of modules, and the comparison `B(A^op) ≅ B(A)^op`.

pub mod bar;
pub mod cobar;
pub mod dual;
pub mod module;
pub mod opposite;

pub use bar::{bar, bar_morphism, bar_with, BarCoalgebra, BarSign, WordMap};
pub use cobar::{cobar, enveloping, cobar_dual_iso_check, unit_quasi_iso_check, Coalgebra, CobarDualIsoReport, QuasiIsoReport};
pub use dual::{dual_of_bar, koszul_dual};
pub use module::{bar_homology_support, bar_module, rhom_k_A_bar, rhom_via_bar, AInfModule, BarModuleComplex};
pub use opposite::{phi_op_iso, PhiReport};

use std::collections::BTreeMap;

use crate::bigraded::{Bidegree, BigradedSpace, GradedMap};
use crate::exactla::{Field, SparseMatrix, SparseVec};

/// Space with the given labels and degrees (labels must be unique per bidegree).
pub fn space_of(degs: &[Bidegree], labels: &[String]) -> BigradedSpace {
    let mut s = BigradedSpace::new();
    for (d, l) in degs.iter().zip(labels) {
        s.push(*d, l.clone()).expect("labels unique");
    }
    s
}

/// Position of each basis vector inside its bidegree block.
pub fn block_positions(degs: &[Bidegree]) -> Vec<usize> {
    let mut seen: BTreeMap<Bidegree, usize> = BTreeMap::new();
    degs.iter()
        .map(|d| {
            let c = seen.entry(*d).or_insert(0);
            *c += 1;
            *c - 1
        })
        .collect()
}

/// Homogeneous endomorphism of degree `degree` given by its columns.
pub fn map_from_columns<F: Field>(
    field: &F,
    degs: &[Bidegree],
    labels: &[String],
    cols: &[SparseVec<F::Elem>],
    degree: Bidegree,
) -> GradedMap<F> {
    let space = space_of(degs, labels);
    let pos = block_positions(degs);
    let mut trip: BTreeMap<Bidegree, Vec<(usize, usize, F::Elem)>> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter() {
            debug_assert_eq!(degs[*i], degs[j] + degree);
            trip.entry(degs[j]).or_default().push((pos[*i], pos[j], c.clone()));
        }
    }
    let mut m = GradedMap::zero(space.clone(), space, degree);
    for (d, t) in trip {
        let (r, c) = (m.target.dim(d + degree), m.source.dim(d));
        m.set_block(d, SparseMatrix::from_triplets(field, r, c, t).expect("valid triplets")).expect("shape");
    }
    m
}

/// Apply a column-stored linear map to a vector.
pub fn apply_columns<F: Field>(field: &F, cols: &[SparseVec<F::Elem>], v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut acc = Vec::new();
    for (j, c) in v.iter() {
        for (i, x) in cols[*j].iter() {
            acc.push((*i, field.mul(c, x)));
        }
    }
    SparseVec::from_terms(field, acc)
}

/// Parity of the sign produced by `(s^{-1})^{⊗n}` on `s a_1 ⊗ … ⊗ s a_n`: `Σ_t (n-t)(|a_t|-1)`.
pub fn desuspension_odd(cohs: impl IntoIterator<Item = i64>) -> bool {
    let cohs: Vec<i64> = cohs.into_iter().collect();
    let n = cohs.len() as i64;
    let mut e = 0i64;
    for (t, c) in cohs.iter().enumerate() {
        e += (n - 1 - t as i64) * (c - 1);
    }
    e.rem_euclid(2) == 1
}
