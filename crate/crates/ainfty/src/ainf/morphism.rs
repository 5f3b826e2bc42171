//! Strictly unital augmented A∞-morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{Ix, OpTable, TruncAInfAlgebra, UNIT};
use super::eval::{block_sum, tuple_budget};
use super::expand_tensor;
use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

/// Components `f_n` on ideal tuples; `f_1(1) = 1` and `f_n` kills the unit for `n ≥ 2`.
#[derive(Clone, Debug)]
pub struct AInfMorphism<F: Field> {
    source: Arc<TruncAInfAlgebra<F>>,
    target: Arc<TruncAInfAlgebra<F>>,
    comps: Vec<OpTable<F::Elem>>,
    arity_bound: usize,
}

impl<F: Field> PartialEq for AInfMorphism<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.arity_bound == other.arity_bound
            && (1..=self.comps.len().max(other.comps.len())).all(|n| self.table(n) == other.table(n))
    }
}

impl<F: Field> AInfMorphism<F> {
    /// Components beyond `comps.len()` are zero up to `arity_bound`.
    pub fn new(
        source: Arc<TruncAInfAlgebra<F>>,
        target: Arc<TruncAInfAlgebra<F>>,
        mut comps: Vec<OpTable<F::Elem>>,
        arity_bound: usize,
    ) -> Result<Self> {
        for t in comps.iter_mut() {
            t.retain(|_, v| !v.is_zero());
        }
        while comps.last().is_some_and(|t| t.is_empty()) {
            comps.pop();
        }
        if comps.len() > arity_bound {
            return Err(Error::WindowOverflow(format!("component f{} beyond arity bound {arity_bound}", comps.len())));
        }
        for (k, t) in comps.iter().enumerate() {
            let n = k + 1;
            for (x, v) in t {
                if x.len() != n || x.iter().any(|&i| i == UNIT || i as usize >= source.dim()) {
                    return Err(Error::Malformed(format!("f{n} given a bad input tuple {x:?}")));
                }
                let d = x.iter().fold(Bidegree::new(1 - n as i64, 0), |acc, &i| acc + source.deg(i));
                for (j, _) in v.iter() {
                    if *j == UNIT as usize || *j >= target.dim() {
                        return Err(Error::Malformed(format!("f{n}({}) leaves the augmentation ideal", source.describe_tuple(x))));
                    }
                    if target.deg(*j as Ix) != d {
                        return Err(Error::Malformed(format!(
                            "f{n}({}) has a term of degree {}, expected {d}",
                            source.describe_tuple(x),
                            target.deg(*j as Ix)
                        )));
                    }
                }
            }
        }
        Ok(AInfMorphism { source, target, comps, arity_bound })
    }

    pub fn identity(a: Arc<TruncAInfAlgebra<F>>) -> Self {
        let f = a.field().clone();
        let f1: OpTable<F::Elem> = a.ideal().map(|i| (vec![i], SparseVec::unit(&f, i as usize))).collect();
        let n = a.arity_bound();
        AInfMorphism::new(a.clone(), a, vec![f1], n).expect("identity is well formed")
    }

    /// Strict morphism from the images of the ideal basis elements.
    pub fn strict(
        source: Arc<TruncAInfAlgebra<F>>,
        target: Arc<TruncAInfAlgebra<F>>,
        images: HashMap<Ix, SparseVec<F::Elem>>,
    ) -> Result<Self> {
        let f1: OpTable<F::Elem> = images.into_iter().map(|(i, v)| (vec![i], v)).collect();
        let n = source.arity_bound().min(target.arity_bound());
        AInfMorphism::new(source, target, vec![f1], n)
    }

    pub fn source(&self) -> &TruncAInfAlgebra<F> {
        &self.source
    }

    pub fn target(&self) -> &TruncAInfAlgebra<F> {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<TruncAInfAlgebra<F>> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<TruncAInfAlgebra<F>> {
        &self.target
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn max_arity(&self) -> usize {
        self.comps.len()
    }

    pub fn is_strict(&self) -> bool {
        self.comps.len() <= 1
    }

    pub fn table(&self, n: usize) -> OpTable<F::Elem> {
        self.comps.get(n.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    pub fn tables(&self) -> &[OpTable<F::Elem>] {
        &self.comps
    }

    /// `f_n` on a basis tuple, unit rules included.
    pub fn component(&self, n: usize, x: &[Ix]) -> SparseVec<F::Elem> {
        if x.contains(&UNIT) {
            return if n == 1 { SparseVec::unit(self.target.field(), UNIT as usize) } else { SparseVec::new() };
        }
        self.comps.get(n.wrapping_sub(1)).and_then(|t| t.get(x)).cloned().unwrap_or_default()
    }

    /// `f_n` extended multilinearly.
    pub fn component_multi(&self, factors: &[SparseVec<F::Elem>]) -> SparseVec<F::Elem> {
        let k = self.target.field();
        let n = factors.len();
        let mut acc = Vec::new();
        expand_tensor(k, factors, |x, c| {
            for (j, z) in self.component(n, x).iter() {
                acc.push((*j, k.mul(c, z)));
            }
        });
        SparseVec::from_terms(k, acc)
    }

    /// Same components with another arity bound (must cover the nonzero ones).
    pub fn with_arity_bound(&self, n: usize) -> Result<Self> {
        AInfMorphism::new(self.source.clone(), self.target.clone(), self.comps.clone(), n)
    }
}

/// Composite `f ∘ g`: `(f∘g)_n = Σ (-1)^w f_q(g_{i_1} ⊗ … ⊗ g_{i_q})` with Koszul signs.
/// Known up to the smaller of the two arity bounds.
pub fn compose<F: Field>(f: &AInfMorphism<F>, g: &AInfMorphism<F>) -> Result<AInfMorphism<F>> {
    if *f.source != *g.target {
        return Err(Error::Malformed("composite of morphisms whose ends do not match".into()));
    }
    let n_max = f.arity_bound.min(g.arity_bound);
    let a = g.source();
    let budget = tuple_budget(a);
    let mut comps = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut t: OpTable<F::Elem> = OpTable::default();
        for x in a.tuples(n, budget, false) {
            let v = block_sum(g, &x, |_| false, |vs| f.component_multi(vs));
            if !v.is_zero() {
                t.insert(x, v);
            }
        }
        comps.push(t);
    }
    AInfMorphism::new(g.source.clone(), f.target.clone(), comps, n_max)
}
