//! Regrading `Ā^i_j = A^{i+j}_{-j}`, defined only when the differential vanishes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ainf::{AlgebraBuilder, TruncAInfAlgebra};
use crate::bigraded::Bidegree;
use crate::dgmod::DGModule;
use crate::error::{Error, Result};
use crate::exactla::Field;

/// `(p, q) ↦ (p + q, -q)`. Applying it twice is the identity.
pub fn twist_degree(d: Bidegree) -> Bidegree {
    Bidegree::new(d.coh + d.adams, -d.adams)
}

/// Same basis and structure constants, degrees moved by [`twist_degree`].
pub fn grading_twist<F: Field>(a: &TruncAInfAlgebra<F>) -> Result<TruncAInfAlgebra<F>> {
    if !a.has_zero_differential() {
        return Err(Error::NonzeroDifferential);
    }
    if !a.is_dg() {
        return Err(Error::HypothesisViolation("higher products do not survive the regrading".into()));
    }
    let mut b = AlgebraBuilder::new(a.field().clone(), a.orientation().flip(), a.adams_bound())
        .arity_bound(a.arity_bound())
        .finite(a.is_finite())
        .validity(a.validity());
    for e in a.basis().iter().skip(1) {
        b.element(&e.label, twist_degree(e.deg))?;
    }
    for (x, v) in a.op_table(2) {
        b.set_op(2, x.clone(), v.clone())?;
    }
    b.build()
}

/// Regrades a module with zero differential over `twisted`, the twist of its algebra.
pub fn twist_module<F: Field>(m: &DGModule<F>, twisted: Arc<TruncAInfAlgebra<F>>) -> Result<DGModule<F>> {
    if m.differential_columns().iter().any(|c| !c.is_zero()) {
        return Err(Error::NonzeroDifferential);
    }
    if twisted.dim() != m.algebra().dim() {
        return Err(Error::Malformed("algebra is not the twist of the module's algebra".into()));
    }
    let degs = m.degs().iter().map(|d| twist_degree(*d)).collect();
    let mut action = HashMap::new();
    for i in 0..m.dim() {
        for a in m.algebra().ideal() {
            let v = m.act_basis(i, a);
            if !v.is_zero() {
                action.insert((i, a), v);
            }
        }
    }
    let diff = vec![Default::default(); m.dim()];
    Ok(DGModule::new(twisted, degs, m.labels().to_vec(), diff, action)?.with_truncated(m.is_truncated()))
}
