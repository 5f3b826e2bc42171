//! The opposite of an A∞-algebra or morphism.

use std::sync::Arc;

use super::algebra::{Ix, OpTable, TruncAInfAlgebra};
use super::morphism::AInfMorphism;
use crate::error::Result;
use crate::exactla::Field;

/// 1 when `n ≡ 0, 1 (mod 4)`, else 0.
pub fn epsilon(n: usize) -> usize {
    usize::from(matches!(n % 4, 0 | 1))
}

/// The additivity law for `epsilon` on one decomposition `i_1 + … + i_q`.
pub fn epsilon_additivity_selftest(q: usize, arities: &[usize]) -> bool {
    assert!(q >= 1 && arities.len() == q && arities.iter().all(|&i| i >= 1));
    let total: usize = arities.iter().sum();
    let mut lhs: usize = arities.iter().map(|&i| epsilon(i)).sum::<usize>() + epsilon(total + 1 - q);
    for s in 0..q {
        for t in s + 1..q {
            lhs += (arities[s] - 1) * (arities[t] - 1);
        }
    }
    lhs % 2 == (q + 1) % 2
}

/// Parity of the Koszul sign for reversing a tuple.
fn reversal_odd<F: Field>(a: &TruncAInfAlgebra<F>, x: &[Ix]) -> bool {
    let odd = x.iter().filter(|&&i| a.coh(i).rem_euclid(2) == 1).count();
    (odd * odd.saturating_sub(1) / 2) % 2 == 1
}

fn reversed_table<F: Field>(a: &TruncAInfAlgebra<F>, t: &OpTable<F::Elem>, n: usize, extra_odd: bool) -> OpTable<F::Elem> {
    let k = a.field();
    t.iter()
        .map(|(x, v)| {
            let y: Vec<Ix> = x.iter().rev().copied().collect();
            let odd = extra_odd ^ (epsilon(n) == 1) ^ reversal_odd(a, x);
            (y, v.scale(k, &k.signed(!odd, &k.one())))
        })
        .collect()
}

/// `m_n^op(a_1,…,a_n) = (-1)^{ε(n) + Σ_{i<j}|a_i||a_j|} m_n(a_n,…,a_1)`.
pub fn opposite<F: Field>(a: &TruncAInfAlgebra<F>) -> TruncAInfAlgebra<F> {
    let ops = (1..=a.max_arity()).map(|n| reversed_table(a, a.op_table(n), n, false)).collect();
    a.with_ops(ops).expect("opposite keeps degrees")
}

/// `f_n^op = (-1)^{1+ε(n)} f_n ∘ (reversal with Koszul sign)`, between the opposite algebras.
pub fn opposite_morphism<F: Field>(f: &AInfMorphism<F>) -> Result<AInfMorphism<F>> {
    let src = Arc::new(opposite(f.source()));
    let tgt = Arc::new(opposite(f.target()));
    let comps = (1..=f.max_arity()).map(|n| reversed_table(f.source(), &f.table(n), n, true)).collect();
    AInfMorphism::new(src, tgt, comps, f.arity_bound())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom2(n: usize) -> usize {
        (n + 2) * (n + 1) / 2
    }

    #[test]
    fn epsilon_matches_binomial_form() {
        for n in 1..=16 {
            assert_eq!(epsilon(n), binom2(n) % 2, "n = {n}");
        }
    }

    #[test]
    fn additivity_small_cases() {
        for i in 1..=8 {
            assert!(epsilon_additivity_selftest(1, &[i]));
            for j in 1..=8 {
                assert!(epsilon_additivity_selftest(2, &[i, j]));
            }
        }
    }
}
