//! Truncated augmented A∞-algebras, their morphisms, identity checks, opposites.

pub mod algebra;
pub mod eval;
pub mod finiteness;
pub mod gauge;
pub mod homotopy;
pub mod morphism;
pub mod opposite;
pub mod presets;

pub use algebra::{AlgebraBuilder, BasisElement, Ix, OpTable, Orientation, TruncAInfAlgebra, UNIT};
pub use eval::{check_morphism, check_stasheff, mi_residual, si_residual, IdentityReport, Witness};
pub use homotopy::{verify_homotopy, CoalgebraHomotopy, HomotopyReport};
pub use finiteness::{finiteness_classify, FinitenessFlags};
pub use morphism::{compose, AInfMorphism};
pub use opposite::{epsilon, epsilon_additivity_selftest, opposite, opposite_morphism};

use crate::exactla::{Field, SparseVec};

/// Calls `visit(tuple, coefficient)` for every term of `v_1 ⊗ … ⊗ v_n`.
pub fn expand_tensor<F: Field>(field: &F, factors: &[SparseVec<F::Elem>], mut visit: impl FnMut(&[Ix], &F::Elem)) {
    fn rec<F: Field>(
        field: &F,
        factors: &[SparseVec<F::Elem>],
        cur: &mut Vec<Ix>,
        c: F::Elem,
        visit: &mut dyn FnMut(&[Ix], &F::Elem),
    ) {
        if cur.len() == factors.len() {
            visit(cur, &c);
            return;
        }
        for (i, x) in factors[cur.len()].iter() {
            cur.push(*i as Ix);
            rec(field, factors, cur, field.mul(&c, x), visit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(factors.len());
    rec(field, factors, &mut cur, field.one(), &mut visit);
}

/// Ordered decompositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Parity of `w = Σ_k (q-k)(i_k - 1)`, the sign attached to `m_q(f_{i_1} ⊗ … ⊗ f_{i_q})`.
pub fn block_sign_odd(parts: &[usize]) -> bool {
    let q = parts.len();
    parts.iter().enumerate().map(|(k, &i)| (q - k - 1) * (i - 1)).sum::<usize>() % 2 == 1
}
