//! `H RHom_A(k,A)` against `H RHom_{E^op}(k,E)` for `E = E(A)`.

use std::collections::BTreeMap;

use super::hom::{rhom_k_A, RHomTable, TrustWindow};
use super::transfer::transfer_ainf;
use crate::ainf::{opposite, TruncAInfAlgebra};
use crate::barcobar::{koszul_dual, rhom_k_A_bar};
use crate::bigraded::Bidegree;
use crate::error::Result;
use crate::exactla::Field;

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub a_side: RHomTable,
    pub e_side: RHomTable,
    /// `HE` looked finite inside the window, so it was treated as the whole of `HE`.
    pub e_homology_finite: bool,
    /// Bidegrees `(i,j)` with `(i,j)` trusted on the `A` side and `(-i,-j)` on the `E` side.
    pub joint: TrustWindow,
    /// `dim H^i_j` on the `A` side equals `dim H^{-i}_{-j}` on the `E` side throughout `joint`.
    pub negated_match: bool,
    /// `dim H^i_j` agrees on both sides wherever both are trusted.
    pub same_degree_match: bool,
    pub mismatches: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.negated_match && !self.joint.is_empty()
    }
}

/// Resolution route for DG algebras, bar route otherwise.
#[allow(non_snake_case)]
pub fn rhom_k_A_any<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<RHomTable> {
    if a.is_dg() {
        rhom_k_A(a, bound)
    } else {
        rhom_k_A_bar(a, bound)
    }
}

/// `E` is replaced by its transferred homology `HE` (quasi-isomorphic, so RHom is unchanged).
/// `HE` counts as finite when its top class sits at most halfway up the window.
pub fn rhom_symmetry<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<SymmetryReport> {
    let a_side = rhom_k_A_any(a, bound)?;
    let e = koszul_dual(a, bound)?;
    let sigma_e = e.orientation().sign();
    let t = transfer_ainf(&e, (bound as usize + 1).max(3))?;
    let he = (*t.algebra).clone();
    let top = he.basis().iter().map(|b| sigma_e * b.deg.adams).max().unwrap_or(0);
    let e_homology_finite = 2 * top < bound;
    let he = he.with_finite(e_homology_finite);
    let e_side = rhom_k_A_any(&opposite(&he), bound)?;

    let neg = TrustWindow::from_weights(e_side.trusted.lo, e_side.trusted.hi, -1);
    let joint = a_side.trusted.intersect(&neg);
    let mut mismatches = Vec::new();
    let dim = |t: &RHomTable, d: Bidegree| t.raw_dims.get(&d).copied().unwrap_or(0);
    let mut keys: Vec<Bidegree> = a_side.raw_dims.keys().copied().collect();
    keys.extend(e_side.raw_dims.keys().map(|d| -*d));
    keys.sort();
    keys.dedup();
    let mut negated_match = true;
    for d in &keys {
        if joint.contains(d.adams) && dim(&a_side, *d) != dim(&e_side, -*d) {
            negated_match = false;
            mismatches.push(format!("A side {d}: {}, E side {}: {}", dim(&a_side, *d), -*d, dim(&e_side, -*d)));
        }
    }
    let both = a_side.trusted.intersect(&e_side.trusted);
    let mut same: BTreeMap<Bidegree, (usize, usize)> = BTreeMap::new();
    for d in a_side.raw_dims.keys().chain(e_side.raw_dims.keys()) {
        if both.contains(d.adams) {
            same.insert(*d, (dim(&a_side, *d), dim(&e_side, *d)));
        }
    }
    let same_degree_match = !both.is_empty() && same.values().all(|(x, y)| x == y);
    Ok(SymmetryReport { a_side, e_side, e_homology_finite, joint, negated_match, same_degree_match, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets;
    use crate::exactla::Rationals;

    #[test]
    fn exterior_sides_agree_in_the_same_degree() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1)], 6).unwrap();
        let r = rhom_symmetry(&a, 6).unwrap();
        assert_eq!(r.a_side.dims, BTreeMap::from([(Bidegree::new(0, 1), 1)]));
        assert_eq!(r.e_side.dims, BTreeMap::from([(Bidegree::new(0, 1), 1)]));
        assert!(r.same_degree_match);
        assert!(!r.negated_match);
    }
}
