//! Minimal semifree resolutions, built one Adams degree at a time.
//!
//! At weight `u` (weight is `σ·adams` with `σ` the orientation sign) compare `H(L)` with `H(M)`.
//! Classes of `H(M)` missing from the image get new cycle generators mapping to representatives;
//! classes of `H(L)` in the kernel get cone generators `g'` with `d(g') = y` and `ε(g') = θ`,
//! where `d_M θ = ε(y)`. New generators only touch weights `≥ u`, and cycles of `L` in weight
//! `u` are sums `g·a` with `a` in the ideal, so the differential stays inside `L·m`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::module::{DGModule, Realized, SemifreeModule};
use crate::ainf::{Orientation, TruncAInfAlgebra, UNIT};
use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::exactla::{rank_kernel_image, Echelon, Field, Insert, SparseMatrix, SparseVec};

const D: Bidegree = Bidegree::new(1, 0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Hits a class of `H(M)` that was not yet in the image.
    Cycle,
    /// Kills a class of `H(L)` in the kernel.
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: String,
    pub deg: Bidegree,
    pub kind: GeneratorKind,
}

/// Generators adjoined at one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub weight: i64,
    pub generators: Vec<usize>,
}

/// `H(ε)` in one Adams degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCheck {
    pub adams: i64,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
}

impl EpsilonCheck {
    pub fn bijective(&self) -> bool {
        self.rank == self.dim_source && self.rank == self.dim_target
    }
}

#[derive(Clone, Debug)]
pub struct SemifreeResolution<F: Field> {
    pub target: Arc<DGModule<F>>,
    pub free: SemifreeModule<F>,
    /// `ε(g)` in the basis of the target module.
    pub epsilon: Vec<SparseVec<F::Elem>>,
    pub ledger: Vec<LedgerEntry>,
    pub stages: Vec<Stage>,
    /// Largest weight that was resolved.
    pub bound: i64,
    /// Per-stage check of `H(ε_u)` in weight `u`, recorded right after the stage closed.
    pub stage_checks: Vec<EpsilonCheck>,
    /// No generators in the last `spread` weights of the window.
    pub stabilized: bool,
    pub spread: i64,
}

impl<F: Field> SemifreeResolution<F> {
    pub fn algebra(&self) -> &TruncAInfAlgebra<F> {
        &self.free.algebra
    }

    pub fn num_generators(&self) -> usize {
        self.ledger.len()
    }

    /// Generator counts per bidegree.
    pub fn ledger_dims(&self) -> BTreeMap<Bidegree, usize> {
        let mut m = BTreeMap::new();
        for g in &self.ledger {
            *m.entry(g.deg).or_insert(0) += 1;
        }
        m
    }

    /// Largest generator weight, if any.
    pub fn top_weight(&self) -> Option<i64> {
        (0..self.ledger.len()).map(|g| self.free.weight_of(g)).max()
    }

    pub fn realize(&self) -> Result<Realized<F>> {
        self.free.realize(self.bound)
    }

    /// `d(L) ⊆ L·m`: no differential has a component `g'·1`.
    pub fn is_minimal(&self) -> bool {
        self.free.dgen.iter().all(|d| d.values().all(|v| v.get(UNIT as usize).is_none()))
    }

    /// `ε` on the realized basis.
    pub fn epsilon_columns(&self, r: &Realized<F>) -> Vec<SparseVec<F::Elem>> {
        let m = &self.target;
        let k = m.field();
        r.pairs.iter().map(|(g, x)| m.act(&self.epsilon[*g], &SparseVec::unit(k, *x as usize))).collect()
    }

    /// `H(ε)` in every Adams degree of the window.
    pub fn epsilon_checks(&self) -> Result<Vec<EpsilonCheck>> {
        let r = self.realize()?;
        let cols = self.epsilon_columns(&r);
        let sigma = self.algebra().orientation().sign();
        let lo = self.first_weight();
        (lo..=self.bound).map(|u| epsilon_check(&r.module, &self.target, &cols, sigma * u)).collect()
    }

    /// `ε` is a chain map and a module map on the realized basis.
    pub fn epsilon_is_module_map(&self) -> Result<bool> {
        let r = self.realize()?;
        let cols = self.epsilon_columns(&r);
        let l = &r.module;
        let m = &self.target;
        let k = m.field();
        for (i, col) in cols.iter().enumerate() {
            let lhs = crate::barcobar::apply_columns(k, &cols, &l.differential_columns()[i]);
            if lhs != m.differential(col) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn first_weight(&self) -> i64 {
        let sigma = self.algebra().orientation().sign();
        (0..self.target.dim()).map(|i| sigma * self.target.deg(i).adams).min().unwrap_or(0).min(self.bound)
    }

    /// Ext dimensions `Ext_A(M,k)`: by minimality `Hom_A(L,k)` has zero differential, with one
    /// class in degree `-deg(g)` per generator.
    pub fn ext_dims(&self) -> BTreeMap<Bidegree, usize> {
        let mut m = BTreeMap::new();
        for g in &self.ledger {
            *m.entry(-g.deg).or_insert(0) += 1;
        }
        m
    }
}

fn epsilon_check<F: Field>(l: &DGModule<F>, m: &DGModule<F>, eps: &[SparseVec<F::Elem>], adams: i64) -> Result<EpsilonCheck> {
    let ls = l.adams_slice(adams);
    let ms = m.adams_slice(adams);
    let hl = l.slice_homology(&ls)?;
    let hm = m.slice_homology(&ms)?;
    let k = m.field();
    let mpos: HashMap<usize, usize> = ms.iter().enumerate().map(|(p, i)| (*i, p)).collect();
    let mut rank = 0;
    let mut degrees: Vec<Bidegree> = hl.dims().keys().chain(hm.dims().keys()).copied().collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        let cols: Vec<SparseVec<F::Elem>> = hl
            .reps(d)
            .iter()
            .map(|rep| {
                let global = SparseVec::from_terms(k, rep.iter().map(|(p, c)| (ls[*p], c.clone())));
                let img = crate::barcobar::apply_columns(k, eps, &global);
                let local = SparseVec::from_terms(k, img.iter().map(|(i, c)| (mpos[i], c.clone())));
                hm.project(d, &local)
            })
            .collect();
        let mat = SparseMatrix::from_columns(hm.dim(d), cols)?;
        rank += rank_kernel_image(k, &mat).rank;
    }
    let dim_source = hl.dims().values().sum();
    let dim_target = hm.dims().values().sum();
    Ok(EpsilonCheck { adams, dim_source, dim_target, rank })
}

/// Gap after which no further Ext generators are expected: the largest weight of an
/// indecomposable of `A` (a basis of `I/I²`), at least 1. For finite `A` the relations can sit
/// as high as the top weight plus that, so the gap widens accordingly.
pub fn generator_spread<F: Field>(a: &TruncAInfAlgebra<F>) -> i64 {
    let k = a.field();
    let sigma = a.orientation().sign();
    let mut by_deg: BTreeMap<Bidegree, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
    for x in a.ideal() {
        for y in a.ideal() {
            let p = a.op(2, &[x, y]);
            if !p.is_zero() {
                by_deg.entry(a.deg(x) + a.deg(y)).or_default().push(p);
            }
        }
    }
    let mut spread = 1;
    for x in a.ideal() {
        let d = a.deg(x);
        let mut e = Echelon::new(k.clone());
        for (i, v) in by_deg.get(&d).into_iter().flatten().enumerate() {
            e.insert(v, i);
        }
        let rank_dec = e.rank();
        // x is indecomposable when the elements of its degree are not all products
        let total = a.elements_in(d).len();
        if rank_dec < total {
            spread = spread.max(sigma * d.adams);
        }
    }
    if a.is_finite() {
        let top = a.ideal().map(|x| sigma * a.deg(x).adams).max().unwrap_or(0);
        spread += top;
    }
    spread
}

/// Minimal semifree resolution of `M` through weight `bound`.
pub fn minimal_semifree_resolution<F: Field>(m: Arc<DGModule<F>>, bound: i64) -> Result<SemifreeResolution<F>> {
    let a = m.algebra_arc().clone();
    if a.orientation() == Orientation::Unconnected {
        return Err(Error::HypothesisViolation("the algebra is not Adams connected".into()));
    }
    if !a.is_dg() {
        return Err(Error::HypothesisViolation("resolutions are built over DG algebras".into()));
    }
    if !a.is_finite() && bound > a.validity() {
        return Err(Error::WindowOverflow(format!("bound {bound} exceeds the algebra's validity {}", a.validity())));
    }
    let k = a.field().clone();
    let sigma = a.orientation().sign();
    let first = (0..m.dim()).map(|i| sigma * m.deg(i).adams).min().unwrap_or(0);
    let mut free = SemifreeModule::new(a.clone());
    let mut epsilon: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut ledger = Vec::new();
    let mut stages = Vec::new();
    let mut stage_checks = Vec::new();
    for u in first..=bound {
        let adams = sigma * u;
        let r = free.realize(u)?;
        let eps_cols: Vec<SparseVec<F::Elem>> =
            r.pairs.iter().map(|(g, x)| m.act(&epsilon[*g], &SparseVec::unit(&k, *x as usize))).collect();
        let ls = r.module.adams_slice(adams);
        let ms = m.adams_slice(adams);
        let hl = r.module.slice_homology(&ls)?;
        let hm = m.slice_homology(&ms)?;
        let mpos: HashMap<usize, usize> = ms.iter().enumerate().map(|(p, i)| (*i, p)).collect();
        let mut degrees: Vec<Bidegree> = hl.dims().keys().chain(hm.dims().keys()).copied().collect();
        degrees.sort();
        degrees.dedup();
        let mut added = Vec::new();
        for d in degrees {
            let reps_l: Vec<SparseVec<F::Elem>> = hl
                .reps(d)
                .iter()
                .map(|rep| SparseVec::from_terms(&k, rep.iter().map(|(p, c)| (ls[*p], c.clone()))))
                .collect();
            let images: Vec<SparseVec<F::Elem>> = reps_l
                .iter()
                .map(|y| {
                    let img = crate::barcobar::apply_columns(&k, &eps_cols, y);
                    hm.project(d, &SparseVec::from_terms(&k, img.iter().map(|(i, c)| (mpos[i], c.clone()))))
                })
                .collect();
            // cokernel: extend the image by unit class vectors
            let mut ech = Echelon::new(k.clone());
            for (i, v) in images.iter().enumerate() {
                ech.insert(v, i);
            }
            let reps_m = hm.reps(d);
            for (c, rep) in reps_m.iter().enumerate() {
                if let Insert::Independent(_) = ech.insert(&SparseVec::unit(&k, c), usize::MAX) {
                    let label = format!("g{}", ledger.len());
                    let g = free.push(label.clone(), d, BTreeMap::new());
                    epsilon.push(SparseVec::from_terms(&k, rep.iter().map(|(p, c)| (ms[*p], c.clone()))));
                    ledger.push(LedgerEntry { label, deg: d, kind: GeneratorKind::Cycle });
                    added.push(g);
                }
            }
            // kernel: cone off
            let mat = SparseMatrix::from_columns(hm.dim(d), images)?;
            for kv in rank_kernel_image(&k, &mat).kernel {
                let mut y = SparseVec::new();
                for (c, x) in kv.iter() {
                    y = y.add_scaled(&k, x, &reps_l[*c]);
                }
                let img = crate::barcobar::apply_columns(&k, &eps_cols, &y);
                let local = SparseVec::from_terms(&k, img.iter().map(|(i, c)| (mpos[i], c.clone())));
                let theta_local = hm.homotopy(d, &local);
                let theta = SparseVec::from_terms(&k, theta_local.iter().map(|(p, c)| (ms[*p], c.clone())));
                if m.differential(&theta) != img {
                    return Err(Error::Invariant(format!("no null-homotopy for a kernel class in degree {d}")));
                }
                let mut dg: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
                for (i, c) in y.iter() {
                    let (g, x) = r.pairs[*i];
                    dg.entry(g).or_default().push((x as usize, c.clone()));
                }
                let dg: BTreeMap<usize, SparseVec<F::Elem>> =
                    dg.into_iter().map(|(g, t)| (g, SparseVec::from_terms(&k, t))).collect();
                let label = format!("g{}", ledger.len());
                let g = free.push(label.clone(), d - D, dg);
                epsilon.push(theta);
                ledger.push(LedgerEntry { label, deg: d - D, kind: GeneratorKind::Cone });
                added.push(g);
            }
        }
        stages.push(Stage { weight: u, generators: added });
        let r = free.realize(u)?;
        let eps_cols: Vec<SparseVec<F::Elem>> =
            r.pairs.iter().map(|(g, x)| m.act(&epsilon[*g], &SparseVec::unit(&k, *x as usize))).collect();
        stage_checks.push(epsilon_check(&r.module, &m, &eps_cols, adams)?);
    }
    let spread = generator_spread(&a);
    let stabilized = stages.iter().filter(|s| s.weight > bound - spread).all(|s| s.generators.is_empty());
    Ok(SemifreeResolution { target: m, free, epsilon, ledger, stages, bound, stage_checks, stabilized, spread })
}

/// Resolution of the trivial module `k`.
pub fn resolve_trivial<F: Field>(a: Arc<TruncAInfAlgebra<F>>, bound: i64) -> Result<SemifreeResolution<F>> {
    let k = Arc::new(DGModule::trivial(a)?);
    minimal_semifree_resolution(k, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets;
    use crate::exactla::Rationals;

    #[test]
    fn free_module_resolves_itself() {
        let a = Arc::new(presets::exterior(Rationals, &[Bidegree::new(0, 1)], 4).unwrap());
        let r = minimal_semifree_resolution(Arc::new(DGModule::regular(a).unwrap()), 4).unwrap();
        assert_eq!(r.num_generators(), 1);
        assert!(r.epsilon_checks().unwrap().iter().all(EpsilonCheck::bijective));
    }

    #[test]
    fn polynomial_ring_has_koszul_resolution() {
        let a = Arc::new(presets::polynomial(Rationals, &[Bidegree::new(0, 1)], 5).unwrap());
        let r = resolve_trivial(a, 5).unwrap();
        let dims: Vec<(Bidegree, usize)> = r.ledger_dims().into_iter().collect();
        assert_eq!(dims, vec![(Bidegree::ZERO, 1), (Bidegree::new(0, 1) - D, 1)]);
        assert!(r.is_minimal() && r.stabilized);
        assert!(r.epsilon_is_module_map().unwrap());
    }

    #[test]
    fn exterior_has_one_generator_per_weight() {
        let a = Arc::new(presets::exterior(Rationals, &[Bidegree::new(0, 1)], 5).unwrap());
        let r = resolve_trivial(a, 5).unwrap();
        for u in 0..=5 {
            assert_eq!(r.ledger_dims().get(&Bidegree::new(-u, u)), Some(&1));
        }
        assert_eq!(r.num_generators(), 6);
        assert!(r.is_minimal() && !r.stabilized);
        assert!(r.epsilon_checks().unwrap().iter().all(EpsilonCheck::bijective));
    }
}
