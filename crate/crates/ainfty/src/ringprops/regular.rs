//! Artin-Schelter condition from `H RHom_A(k,A)`, and the regularity test through the
//! Ext-algebra: `R` is AS-regular iff `Ext_R(k,k) = HE` is Frobenius.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::frobenius::{is_frobenius, FrobeniusReport};
use super::verdict::{Outcome, Verdict};
use crate::ainf::{opposite, TruncAInfAlgebra};
use crate::barcobar::koszul_dual;
use crate::bigraded::Bidegree;
use crate::dgmod::{generator_spread, homology_algebra, resolve_trivial, rhom_k_A_any, TrustWindow};
use crate::error::Result;
use crate::exactla::Field;

fn untested(w: &TrustWindow) -> String {
    if w.is_empty() {
        "every Adams degree is untested".into()
    } else {
        format!("Adams degrees outside {} are untested", w.describe())
    }
}

/// Right AS condition: `H RHom_A(k,A)` is one copy of `k`. A single class counts as a yes
/// once the trusted window runs at least the generator spread of `A` past it on each bounded
/// side, so the vanishing around it has been seen to stabilize.
pub fn as_condition<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<Verdict> {
    let t = rhom_k_A_any(a, bound)?;
    let total = t.total();
    let w = t.trusted;
    let whole = w == TrustWindow::ALL;
    let mut notes = Vec::new();
    if !whole {
        notes.push(untested(&w));
    }
    let class_degree = t.dims.keys().next().copied();
    let settled = |c: Bidegree| {
        let margin = generator_spread(a);
        (w.lo == i64::MIN || c.adams - w.lo >= margin) && (w.hi == i64::MAX || w.hi - c.adams >= margin)
    };
    let outcome = if total > 1 {
        notes.push(format!("{total} classes in the trusted window"));
        Outcome::No
    } else if w.is_empty() {
        Outcome::WindowLimited
    } else if total == 1 && settled(class_degree.expect("one class")) {
        Outcome::Yes
    } else if total == 0 && whole {
        notes.push("no classes at all".into());
        Outcome::No
    } else {
        notes.push(format!("{total} classes so far, too close to the window edge to settle"));
        Outcome::WindowLimited
    };
    Ok(Verdict::new(outcome, class_degree, t.dims, w, notes))
}

/// Left AS condition, computed on the opposite algebra.
pub fn as_condition_left<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<Verdict> {
    as_condition(&opposite(a), bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finiteness {
    /// `HE` vanishes in `spread` consecutive weights above its top class.
    Certified,
    /// Taken finite on request, without the vanishing run.
    Accepted,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    AsRegular,
    NotRegular,
    NotRegularInWindow,
}

impl Regularity {
    pub fn name(&self) -> &'static str {
        match self {
            Regularity::AsRegular => "AS-regular",
            Regularity::NotRegular => "not regular",
            Regularity::NotRegularInWindow => "not regular in window",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport<F: Field> {
    pub window: i64,
    pub spread: i64,
    /// `dim HE` by bidegree.
    pub he_dims: BTreeMap<Bidegree, usize>,
    /// `dim HE` by weight `|Adams|`, which shows growth at a glance.
    pub he_by_weight: BTreeMap<i64, usize>,
    pub finiteness: Finiteness,
    pub frobenius: Option<FrobeniusReport<F>>,
    /// The minimal resolution of `k` stopped inside the window (DG inputs only).
    pub resolution_terminates: Option<bool>,
    pub regularity: Regularity,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub bound: i64,
    /// Empty weights needed above the top class of `HE`; defaults to the generator spread of `R`.
    pub spread: Option<i64>,
    /// Treat `HE` as finite when the window shows no vanishing run.
    pub accept_window: bool,
}

impl PipelineOptions {
    pub fn new(bound: i64) -> Self {
        PipelineOptions { bound, spread: None, accept_window: false }
    }
}

pub fn as_regular_pipeline<F: Field>(r: &TruncAInfAlgebra<F>, opts: PipelineOptions) -> Result<PipelineReport<F>> {
    let bound = opts.bound;
    let spread = opts.spread.unwrap_or_else(|| generator_spread(r)).max(1);
    let e = koszul_dual(r, bound)?;
    let he = homology_algebra(&e)?;
    let he_dims = he.dims();
    let mut he_by_weight = BTreeMap::new();
    for (d, n) in &he_dims {
        if *n > 0 {
            *he_by_weight.entry(d.adams.abs()).or_insert(0) += n;
        }
    }
    let top = he_by_weight.keys().last().copied().unwrap_or(0);
    let finiteness = if top + spread <= bound {
        Finiteness::Certified
    } else if opts.accept_window {
        Finiteness::Accepted
    } else {
        Finiteness::Unknown
    };
    let resolution_terminates = if r.is_dg() { Some(resolve_trivial(Arc::new(r.clone()), bound)?.stabilized) } else { None };
    let mut notes = vec!["noetherian condition is not checked".to_string()];
    let (frobenius, regularity) = if finiteness == Finiteness::Unknown {
        notes.push(format!("HE reaches weight {top}; no run of {spread} empty weights inside the window {bound}"));
        (None, Regularity::NotRegularInWindow)
    } else {
        let h = he.as_algebra()?.with_finite(true);
        let f = is_frobenius(&h)?;
        let reg = if f.passed() { Regularity::AsRegular } else { Regularity::NotRegular };
        if finiteness == Finiteness::Accepted {
            notes.push("finiteness of HE accepted at window level".into());
        }
        (Some(f), reg)
    };
    Ok(PipelineReport { window: bound, spread, he_dims, he_by_weight, finiteness, frobenius, resolution_terminates, regularity, notes })
}
