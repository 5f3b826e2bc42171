//! `Ext_A(k,k)`: dimensions from the minimal resolution, products from `H(E(A))`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::homology::{homology_algebra, HomologyAlgebra};
use super::resolution::{resolve_trivial, SemifreeResolution};
use crate::ainf::TruncAInfAlgebra;
use crate::barcobar::koszul_dual;
use crate::bigraded::Bidegree;
use crate::error::Result;
use crate::exactla::Field;

#[derive(Clone, Debug)]
pub struct ExtReport<F: Field> {
    /// From the resolution ledger; `None` for A∞ inputs, which have no DG resolution here.
    pub resolution_dims: Option<BTreeMap<Bidegree, usize>>,
    pub bar_dims: BTreeMap<Bidegree, usize>,
    pub window: i64,
    pub algebra: HomologyAlgebra<F>,
    pub resolution: Option<SemifreeResolution<F>>,
}

impl<F: Field> ExtReport<F> {
    /// Both routes agree (vacuously true when only the bar route ran).
    pub fn reconciled(&self) -> bool {
        self.resolution_dims.as_ref().is_none_or(|d| *d == self.bar_dims)
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        self.resolution_dims.as_ref().unwrap_or(&self.bar_dims)
    }
}

pub fn ext_of_trivial_module<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<ExtReport<F>> {
    let e = koszul_dual(a, bound)?;
    let algebra = homology_algebra(&e)?;
    let bar_dims = algebra.dims();
    let resolution = if a.is_dg() { Some(resolve_trivial(Arc::new(a.clone()), bound)?) } else { None };
    let resolution_dims = resolution.as_ref().map(|r| r.ext_dims());
    Ok(ExtReport { resolution_dims, bar_dims, window: bound, algebra, resolution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets;
    use crate::exactla::Rationals;

    #[test]
    fn routes_agree_on_small_fixtures() {
        let k = Rationals;
        let fixtures = vec![
            presets::exterior(k.clone(), &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 5).unwrap(),
            presets::truncated_polynomial(k.clone(), Bidegree::new(0, 1), 3, 5).unwrap(),
            presets::polynomial(k.clone(), &[Bidegree::new(0, 1)], 5).unwrap(),
            presets::square_zero_two(k, Bidegree::new(0, 1), 4).unwrap(),
        ];
        for a in fixtures {
            let r = ext_of_trivial_module(&a, a.adams_bound()).unwrap();
            assert!(r.reconciled(), "{:?} vs {:?}", r.resolution_dims, r.bar_dims);
        }
    }

    #[test]
    fn trivial_algebra_has_trivial_ext() {
        let a = presets::ground(Rationals, 3).unwrap();
        let r = ext_of_trivial_module(&a, 3).unwrap();
        assert_eq!(r.dims(), &BTreeMap::from([(Bidegree::ZERO, 1)]));
    }
}
