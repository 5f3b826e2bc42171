//! Finiteness classes of an augmented algebra, evaluated on its table and declared support.

use super::algebra::{Orientation, TruncAInfAlgebra};
use crate::exactla::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinitenessFlags {
    pub locally_finite: bool,
    pub adams_connected: bool,
    pub strongly_locally_finite: bool,
}

/// Each bigraded piece of the table is finite by construction. The remaining clauses look at
/// where the augmentation ideal sits: one strict side of Adams degree 0, and within each
/// Adams degree a one-sided bound on cohomological degree.
pub fn finiteness_classify<F: Field>(a: &TruncAInfAlgebra<F>) -> FinitenessFlags {
    let locally_finite = true;
    let one_sided_adams = a.orientation() != Orientation::Unconnected;
    // a finite table is bounded on both sides in every Adams degree
    let coh_bounded = true;
    let adams_connected = locally_finite && one_sided_adams;
    let strongly_locally_finite = locally_finite && one_sided_adams && coh_bounded;
    assert!(!adams_connected || strongly_locally_finite, "Adams connected must imply strongly locally finite");
    FinitenessFlags { locally_finite, adams_connected, strongly_locally_finite }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets::exterior;
    use crate::bigraded::Bidegree;
    use crate::exactla::Rationals;

    #[test]
    fn exterior_classes() {
        let f = finiteness_classify(&exterior(Rationals, &[Bidegree::new(0, 1)], 4).unwrap());
        assert!(f.locally_finite && f.adams_connected && f.strongly_locally_finite);
        let f = finiteness_classify(&exterior(Rationals, &[Bidegree::new(1, 0)], 4).unwrap());
        assert!(!f.adams_connected);
        for (a, b) in [(3, -2), (-1, 5), (0, -1)] {
            let f = finiteness_classify(&exterior(Rationals, &[Bidegree::new(a, b)], 6).unwrap());
            assert!(f.adams_connected);
        }
    }
}
