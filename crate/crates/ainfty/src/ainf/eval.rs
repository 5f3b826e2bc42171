//! Brute-force evaluation of the Stasheff identities SI(n) and the morphism identities MI(n).

use rayon::prelude::*;

use super::algebra::{Ix, Orientation, TruncAInfAlgebra};
use super::morphism::AInfMorphism;
use super::{block_sign_odd, compositions};
use crate::exactla::{Field, SparseVec};

/// A basis tuple on which an identity fails, with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub arity: usize,
    pub tuple: Vec<Ix>,
    pub inputs: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: &'static str,
    /// Highest arity that was evaluated.
    pub n_max: usize,
    /// Adams radius of the tuples that were evaluated.
    pub window: i64,
    pub checked: usize,
    pub failed: usize,
    /// First few failures, in tuple order.
    pub witnesses: Vec<Witness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

const MAX_WITNESSES: usize = 16;

/// Adams budget for enumerating input tuples: everything beyond it has no room for a nonzero output.
pub(crate) fn tuple_budget<F: Field>(a: &TruncAInfAlgebra<F>) -> i64 {
    match a.orientation() {
        Orientation::Unconnected => i64::MAX,
        _ => a.adams_bound(),
    }
}

fn parity(x: usize) -> bool {
    x % 2 == 1
}

fn coh_sum<F: Field>(a: &TruncAInfAlgebra<F>, x: &[Ix]) -> i64 {
    x.iter().map(|&i| a.coh(i)).sum()
}

/// `Σ (-1)^{r+st} m_u(1^r ⊗ m_s ⊗ 1^t)` applied to a basis tuple, with Koszul signs.
pub fn si_residual<F: Field>(a: &TruncAInfAlgebra<F>, x: &[Ix]) -> SparseVec<F::Elem> {
    let f = a.field();
    let n = x.len();
    let mut acc: Vec<(usize, F::Elem)> = Vec::new();
    for s in 1..=n {
        for r in 0..=n - s {
            let t = n - r - s;
            let inner = a.op(s, &x[r..r + s]);
            if inner.is_zero() {
                continue;
            }
            // m_s has coh degree 2-s, so it passes x_1..x_r with sign (-1)^{s·Σ|x_l|}
            let odd = parity(r + s * t) ^ (s % 2 == 1 && coh_sum(a, &x[..r]).rem_euclid(2) == 1);
            let mut y: Vec<Ix> = Vec::with_capacity(r + 1 + t);
            for (k, c) in inner.iter() {
                y.clear();
                y.extend_from_slice(&x[..r]);
                y.push(*k as Ix);
                y.extend_from_slice(&x[r + s..]);
                let c = f.signed(!odd, c);
                for (j, z) in a.op(r + 1 + t, &y).iter() {
                    acc.push((*j, f.mul(&c, z)));
                }
            }
        }
    }
    SparseVec::from_terms(f, acc)
}

/// `Σ (-1)^{r+st} f_u(1^r ⊗ m_s ⊗ 1^t)` on a source tuple.
pub(crate) fn mi_lhs<F: Field>(f: &AInfMorphism<F>, x: &[Ix]) -> SparseVec<F::Elem> {
    let a = f.source();
    let k = a.field();
    let n = x.len();
    let mut acc: Vec<(usize, F::Elem)> = Vec::new();
    for s in 1..=n {
        for r in 0..=n - s {
            let t = n - r - s;
            let inner = a.op(s, &x[r..r + s]);
            if inner.is_zero() {
                continue;
            }
            let odd = parity(r + s * t) ^ (s % 2 == 1 && coh_sum(a, &x[..r]).rem_euclid(2) == 1);
            let mut y: Vec<Ix> = Vec::with_capacity(r + 1 + t);
            for (j, c) in inner.iter() {
                y.clear();
                y.extend_from_slice(&x[..r]);
                y.push(*j as Ix);
                y.extend_from_slice(&x[r + s..]);
                let c = k.signed(!odd, c);
                for (l, z) in f.component(r + 1 + t, &y).iter() {
                    acc.push((*l, k.mul(&c, z)));
                }
            }
        }
    }
    SparseVec::from_terms(k, acc)
}

/// `Σ (-1)^w μ_q(f_{i_1} ⊗ … ⊗ f_{i_q})` on a source tuple, where `μ_q(v_1,…,v_q)` is
/// supplied by the caller (the target operations for MI, or a second morphism for composites).
/// Parts of size `> max_part` are skipped.
pub(crate) fn block_sum<F: Field>(
    f: &AInfMorphism<F>,
    x: &[Ix],
    skip: impl Fn(&[usize]) -> bool,
    outer: impl Fn(&[SparseVec<F::Elem>]) -> SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let a = f.source();
    let k = a.field();
    let mut acc = SparseVec::new();
    for parts in compositions(x.len()) {
        if skip(&parts) {
            continue;
        }
        let mut factors = Vec::with_capacity(parts.len());
        let mut odd = block_sign_odd(&parts);
        let mut start = 0;
        let mut zero = false;
        for &i in &parts {
            // f_i has coh degree 1-i
            if (i - 1) % 2 == 1 && coh_sum(a, &x[..start]).rem_euclid(2) == 1 {
                odd = !odd;
            }
            let v = f.component(i, &x[start..start + i]);
            if v.is_zero() {
                zero = true;
                break;
            }
            factors.push(v);
            start += i;
        }
        if zero {
            continue;
        }
        let v = outer(&factors);
        acc = acc.add_scaled(k, &k.signed(!odd, &k.one()), &v);
    }
    acc
}

/// LHS minus RHS of MI(n) on a source tuple, in the target basis.
pub fn mi_residual<F: Field>(f: &AInfMorphism<F>, x: &[Ix]) -> SparseVec<F::Elem> {
    let b = f.target();
    let lhs = mi_lhs(f, x);
    let rhs = block_sum(f, x, |_| false, |vs| b.op_multi(vs));
    lhs.sub(b.field(), &rhs)
}

fn run_checks<F: Field>(
    identity: &'static str,
    a: &TruncAInfAlgebra<F>,
    n_max: usize,
    residual: impl Fn(&[Ix]) -> SparseVec<F::Elem> + Sync,
    describe: impl Fn(&SparseVec<F::Elem>) -> String,
) -> IdentityReport {
    let budget = tuple_budget(a);
    let mut checked = 0;
    let mut failures: Vec<(usize, Vec<Ix>, SparseVec<F::Elem>)> = Vec::new();
    for n in 1..=n_max {
        let tuples = a.tuples(n, budget, true);
        checked += tuples.len();
        let bad: Vec<(usize, Vec<Ix>, SparseVec<F::Elem>)> = tuples
            .into_par_iter()
            .filter_map(|x| {
                let r = residual(&x);
                (!r.is_zero()).then_some((n, x, r))
            })
            .collect();
        failures.extend(bad);
    }
    let failed = failures.len();
    let witnesses = failures
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|(arity, tuple, r)| Witness { arity, inputs: a.describe_tuple(&tuple), tuple, residual: describe(&r) })
        .collect();
    IdentityReport { identity, n_max, window: a.adams_bound(), checked, failed, witnesses }
}

/// Evaluate SI(n) for `n ≤ n_max` (clipped to the arity bound) on every tuple in the window.
pub fn check_stasheff<F: Field>(a: &TruncAInfAlgebra<F>, n_max: usize) -> IdentityReport {
    let n_max = n_max.min(a.arity_bound());
    run_checks("SI", a, n_max, |x| si_residual(a, x), |r| a.describe_vec(r))
}

/// Evaluate MI(n) for `n ≤ n_max` (clipped to the morphism's arity bound).
pub fn check_morphism<F: Field>(f: &AInfMorphism<F>, n_max: usize) -> IdentityReport {
    let n_max = n_max.min(f.arity_bound());
    run_checks("MI", f.source(), n_max, |x| mi_residual(f, x), |r| f.target().describe_vec(r))
}
