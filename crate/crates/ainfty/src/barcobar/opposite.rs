//! The isomorphism `Φ: B(A^op) → B(A)^op`, `[a_1|…|a_m] ↦ ±[a_m|…|a_1]`.

use super::bar::{bar, BarCoalgebra};
use crate::ainf::{opposite, TruncAInfAlgebra};
use crate::error::Result;
use crate::exactla::{Field, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub words: usize,
    pub bijective: bool,
    /// `Φ∘b_{A^op} = -b_A∘Φ`: the opposite coalgebra carries `-b`, as `m_1^op = -m_1`.
    pub chain_map: bool,
    /// `Δ^op∘Φ = (Φ⊗Φ)∘Δ` with `Δ^op = τ∘Δ`.
    pub comultiplicative: bool,
    pub witness: Option<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.chain_map && self.comultiplicative
    }
}

/// `(-1)^{Σ_{i<j}(|a_i|-1)(|a_j|-1)}`: negative when an odd number of pairs of odd shifted degrees.
fn reversal_negative<F: Field>(a: &TruncAInfAlgebra<F>, w: &[u32]) -> bool {
    let odd = w.iter().filter(|&&i| (a.coh(i) - 1).rem_euclid(2) == 1).count();
    (odd * odd.saturating_sub(1) / 2) % 2 == 1
}

/// Columns of `Φ` from the words of `B(A^op)` to the words of `B(A)`.
pub fn phi_columns<F: Field>(op_bar: &BarCoalgebra<F>, bar_a: &BarCoalgebra<F>) -> Option<Vec<SparseVec<F::Elem>>> {
    let k = op_bar.field();
    (0..op_bar.dim())
        .map(|i| {
            let w = op_bar.word(i);
            let rev: Vec<u32> = w.iter().rev().copied().collect();
            let j = bar_a.index(&rev)?;
            let neg = reversal_negative(op_bar.algebra(), w);
            Some(SparseVec::from_terms(k, [(j, k.signed(!neg, &k.one()))]))
        })
        .collect()
}

pub fn phi_op_iso<F: Field>(a: &TruncAInfAlgebra<F>, adams_bound: i64) -> Result<PhiReport> {
    let k = a.field().clone();
    let ba = bar(a, adams_bound)?;
    let bop = bar(&opposite(a), adams_bound)?;
    let n = bop.dim();
    let Some(phi) = phi_columns(&bop, &ba) else {
        return Ok(PhiReport { words: n, bijective: false, chain_map: false, comultiplicative: false, witness: Some("a reversed word is missing".into()) });
    };
    let mut hit = vec![false; ba.dim()];
    for c in &phi {
        hit[c.entries()[0].0] = true;
    }
    let bijective = n == ba.dim() && hit.iter().all(|&h| h);
    let mut witness = None;
    let mut chain_map = true;
    for i in 0..n {
        let lhs = super::apply_columns(&k, &phi, bop.differential(i));
        let rhs = ba.apply(&phi[i]).neg(&k);
        if lhs != rhs {
            chain_map = false;
            witness.get_or_insert_with(|| format!("chain condition fails on {}", bop.label(i)));
        }
    }
    let mut comultiplicative = true;
    for i in 0..n {
        // Δ^op(Φ w): Φ w = ±v, Δ(v) = Σ v'⊗v'', twisted to (-1)^{|v'||v''|} v''⊗v'
        let (j, c) = phi[i].entries()[0].clone();
        let mut lhs: Vec<((usize, usize), F::Elem)> = ba
            .coproduct(j)
            .into_iter()
            .map(|(p, q)| {
                let odd = (ba.deg(p).coh * ba.deg(q).coh).rem_euclid(2) == 1;
                ((q, p), k.signed(!odd, &c))
            })
            .collect();
        let mut rhs: Vec<((usize, usize), F::Elem)> = bop
            .coproduct(i)
            .into_iter()
            .map(|(p, q)| {
                let (pp, cp) = phi[p].entries()[0].clone();
                let (qq, cq) = phi[q].entries()[0].clone();
                ((pp, qq), k.mul(&cp, &cq))
            })
            .collect();
        lhs.sort_by_key(|t| t.0);
        rhs.sort_by_key(|t| t.0);
        if lhs != rhs {
            comultiplicative = false;
            witness.get_or_insert_with(|| format!("coproduct condition fails on {}", bop.label(i)));
        }
    }
    Ok(PhiReport { words: n, bijective, chain_map, comultiplicative, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets;
    use crate::bigraded::Bidegree;
    use crate::exactla::Rationals;

    #[test]
    fn phi_signs_on_short_words() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1)], 2).unwrap();
        let ba = bar(&a, 2).unwrap();
        let bop = bar(&opposite(&a), 2).unwrap();
        let phi = phi_columns(&bop, &ba).unwrap();
        let k = Rationals;
        let x = bop.index(&[1]).unwrap();
        let xx = bop.index(&[1, 1]).unwrap();
        assert_eq!(phi[x], SparseVec::unit(&k, ba.index(&[1]).unwrap()));
        assert_eq!(phi[xx], SparseVec::from_terms(&k, [(ba.index(&[1, 1]).unwrap(), k.from_i64(-1))]));
    }

    #[test]
    fn phi_on_exterior_two() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 5).unwrap();
        let r = phi_op_iso(&a, 5).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
