//! Transport of an A∞-structure along an invertible morphism with `f_1 = id`.
//!
//! Given `A` and higher components `f_2, f_3, …`, there is exactly one structure `A'`
//! on the same space making `f: A → A'` a morphism; MI(n) is solved for `m'_n`.
//! This produces valid tables with nonzero higher operations from any valid input.

use std::sync::Arc;

use super::algebra::{Ix, OpTable, Orientation, TruncAInfAlgebra};
use super::eval::{block_sum, mi_lhs};
use super::morphism::AInfMorphism;
use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::exactla::Field;

/// For each ideal tuple of length `n` in the window, the ideal elements a degree-`(1-n,0)`
/// component may send it to.
pub fn slots<F: Field>(a: &TruncAInfAlgebra<F>, n: usize) -> Vec<(Vec<Ix>, Vec<Ix>)> {
    a.tuples(n, a.adams_bound(), false)
        .into_iter()
        .filter_map(|x| {
            let d = x.iter().fold(Bidegree::new(1 - n as i64, 0), |acc, &i| acc + a.deg(i));
            let t = a.elements_in(d);
            (!t.is_empty()).then_some((x, t))
        })
        .collect()
}

/// Returns `A'` and the morphism `f: A → A'` with `f_1 = id` and the given higher components
/// (`higher[0]` is `f_2`).
pub fn transport<F: Field>(
    a: Arc<TruncAInfAlgebra<F>>,
    higher: Vec<OpTable<F::Elem>>,
) -> Result<(Arc<TruncAInfAlgebra<F>>, AInfMorphism<F>)> {
    if a.orientation() == Orientation::Unconnected {
        return Err(Error::NotAdamsConnected("transport needs a bounded arity".into()));
    }
    let k = a.field().clone();
    let n_max = (a.adams_bound().max(1) as usize).max(a.max_arity());
    let bound = n_max.max(a.arity_bound()).max(higher.len() + 1);
    let id = AInfMorphism::identity(a.clone());
    let mut comps = vec![id.table(1)];
    comps.extend(higher);
    let mut ops: Vec<OpTable<F::Elem>> = vec![a.op_table(1).clone()];
    for n in 2..=n_max {
        let partial = Arc::new(a.with_ops(ops.clone())?.with_arity_bound(bound)?);
        let f = AInfMorphism::new(a.clone(), partial.clone(), comps.clone(), bound)?;
        let mut t = OpTable::default();
        for x in a.tuples(n, a.adams_bound(), false) {
            let lhs = mi_lhs(&f, &x);
            let rest = block_sum(&f, &x, |p| p.len() == n, |vs| partial.op_multi(vs));
            let v = lhs.sub(&k, &rest);
            if !v.is_zero() {
                t.insert(x, v);
            }
        }
        ops.push(t);
    }
    let b = Arc::new(a.with_ops(ops)?.with_arity_bound(bound)?);
    let f = AInfMorphism::new(a, b.clone(), comps, bound)?;
    Ok((b, f))
}
