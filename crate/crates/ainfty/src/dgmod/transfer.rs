//! Homotopy transfer of a DG algebra structure to its homology.

use std::sync::Arc;

use super::homology::{homology_algebra, HomologyAlgebra};
use crate::ainf::{mi_residual, AInfMorphism, Ix, OpTable, TruncAInfAlgebra};
use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

/// Transferred structure on `H(E)` with the quasi-isomorphism `H(E) → E`.
#[derive(Clone, Debug)]
pub struct Transfer<F: Field> {
    pub homology: HomologyAlgebra<F>,
    pub algebra: Arc<TruncAInfAlgebra<F>>,
    pub morphism: AInfMorphism<F>,
}

/// Solve MI(n) arity by arity. With `R_n = -(MI residual with m_n = f_n = 0)`, which is a cycle,
/// put `m_n = p(R_n)` and `f_n = -h(R_n)`; then `f_1 m_n - m_1 f_n = ip R_n + dh R_n = R_n`.
pub fn transfer_ainf<F: Field>(e: &TruncAInfAlgebra<F>, arity_bound: usize) -> Result<Transfer<F>> {
    let hom = homology_algebra(e)?;
    let k = e.field().clone();
    let target = hom.dg.clone();
    let h0 = hom.as_algebra()?.with_arity_bound(arity_bound.max(2))?;
    let bound = h0.arity_bound();
    let f1: OpTable<F::Elem> = h0.ideal().map(|i| (vec![i], hom.classes[i as usize].rep.clone())).collect();
    let mut ops: Vec<OpTable<F::Elem>> = vec![OpTable::default()];
    let mut comps: Vec<OpTable<F::Elem>> = vec![f1];
    for n in 2..=bound {
        let h = Arc::new(h0.with_ops(ops.clone())?);
        comps.push(OpTable::default());
        let f = AInfMorphism::new(h.clone(), target.clone(), comps.clone(), bound)?;
        let mut mn = OpTable::default();
        let mut fn_ = OpTable::default();
        for x in h.tuples(n, h.adams_bound(), false) {
            let r = mi_residual(&f, &x).neg(&k);
            if r.is_zero() {
                continue;
            }
            if !target.differential(&r).is_zero() {
                return Err(Error::Invariant(format!("transfer obstruction at arity {n} is not a cycle")));
            }
            let d = x.iter().fold(Bidegree::new(2 - n as i64, 0), |acc, &i| acc + h.deg(i));
            let p = hom.classify(d, &r);
            if !p.is_zero() {
                mn.insert(x.clone(), p);
            }
            let hr = hom.chain.homotopy(d, &r).neg(&k);
            if !hr.is_zero() {
                fn_.insert(x, hr);
            }
        }
        ops.push(mn);
        *comps.last_mut().expect("pushed") = fn_;
    }
    let algebra = Arc::new(h0.with_ops(ops)?);
    let morphism = AInfMorphism::new(algebra.clone(), target, comps, bound)?;
    Ok(Transfer { homology: hom, algebra, morphism })
}

impl<F: Field> Transfer<F> {
    /// Nonzero values of the transferred `m_n`, as readable strings.
    pub fn describe_op(&self, n: usize) -> Vec<String> {
        let a = &self.algebra;
        let mut keys: Vec<&Vec<Ix>> = a.op_table(n).keys().collect();
        keys.sort();
        keys.into_iter()
            .map(|x| format!("m{n}({}) = {}", a.describe_tuple(x), a.describe_vec(&a.op_table(n)[x])))
            .collect()
    }

    pub fn op_is_zero(&self, n: usize) -> bool {
        self.algebra.op_table(n).values().all(SparseVec::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{check_morphism, check_stasheff, presets};
    use crate::barcobar::koszul_dual;
    use crate::exactla::Rationals;

    #[test]
    fn exterior_dual_has_no_higher_products() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1)], 5).unwrap();
        let e = koszul_dual(&a, 5).unwrap();
        let t = transfer_ainf(&e, 5).unwrap();
        assert!(t.algebra.op_table(1).is_empty());
        assert!((3..=5).all(|n| t.op_is_zero(n)));
        assert!(check_morphism(&t.morphism, 5).passed());
    }

    #[test]
    fn truncated_cube_dual_has_m3() {
        let a = presets::truncated_polynomial(Rationals, Bidegree::new(0, 1), 3, 6).unwrap();
        let e = koszul_dual(&a, 6).unwrap();
        let t = transfer_ainf(&e, 5).unwrap();
        assert!(!t.op_is_zero(3), "{:?}", t.describe_op(3));
        let si = check_stasheff(&t.algebra, 5);
        assert!(si.passed(), "{si:?}");
        let mi = check_morphism(&t.morphism, 5);
        assert!(mi.passed(), "{mi:?}");
    }
}
