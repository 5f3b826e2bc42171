//! Hom complexes `Hom_A(M, N)` with `d(f) = d_N f - (-1)^{|f|} f d_M`, and RHom out of `k`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::homology::ChainHomology;
use super::module::DGModule;
use super::resolution::{resolve_trivial, SemifreeResolution};
use crate::ainf::TruncAInfAlgebra;
use crate::bigraded::Bidegree;
use crate::error::Result;
use crate::exactla::{rank_kernel_image, Echelon, Field, SparseMatrix, SparseVec};

const D: Bidegree = Bidegree::new(1, 0);

/// Inclusive range of Adams degrees in which a table is exact. `lo > hi` means empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrustWindow {
    pub lo: i64,
    pub hi: i64,
}

impl TrustWindow {
    pub const ALL: TrustWindow = TrustWindow { lo: i64::MIN, hi: i64::MAX };
    pub const EMPTY: TrustWindow = TrustWindow { lo: 1, hi: 0 };

    pub fn contains(&self, adams: i64) -> bool {
        self.lo <= adams && adams <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn intersect(&self, o: &TrustWindow) -> TrustWindow {
        TrustWindow { lo: self.lo.max(o.lo), hi: self.hi.min(o.hi) }
    }

    /// Window of weights `[lo, hi]` read in Adams degrees for orientation sign `sigma`.
    pub fn from_weights(lo: i64, hi: i64, sigma: i64) -> TrustWindow {
        if lo > hi {
            return TrustWindow::EMPTY;
        }
        let neg = |v: i64| match v {
            i64::MIN => i64::MAX,
            i64::MAX => i64::MIN,
            v => -v,
        };
        if sigma >= 0 {
            TrustWindow { lo, hi }
        } else {
            TrustWindow { lo: neg(hi), hi: neg(lo) }
        }
    }

    pub fn describe(&self) -> String {
        if self.is_empty() {
            return "empty".into();
        }
        let f = |v: i64| match v {
            i64::MIN => "-inf".to_string(),
            i64::MAX => "inf".to_string(),
            v => v.to_string(),
        };
        format!("[{}, {}]", f(self.lo), f(self.hi))
    }
}

/// A finite cochain complex with its homology.
#[derive(Clone, Debug)]
pub struct HomComplex<F: Field> {
    pub degs: Vec<Bidegree>,
    pub labels: Vec<String>,
    pub diff: Vec<SparseVec<F::Elem>>,
    pub homology: ChainHomology<F>,
    /// Adams degrees in which the complex agrees with the untruncated one.
    pub trusted: TrustWindow,
}

impl<F: Field> HomComplex<F> {
    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.homology.dims()
    }

    pub fn trusted_dims(&self) -> BTreeMap<Bidegree, usize> {
        self.dims().into_iter().filter(|(d, _)| self.trusted.contains(d.adams)).collect()
    }

    pub fn squares_to_zero(&self, field: &F) -> bool {
        self.diff.iter().all(|c| crate::barcobar::apply_columns(field, &self.diff, c).is_zero())
    }
}

/// `Hom_A(L, N)` for a semifree `L`: a map is its list of values on generators.
/// The pair `(g, e)` is the map `g ↦ e`, of degree `deg e - deg g`.
pub fn hom_from_semifree<F: Field>(l: &SemifreeResolution<F>, n: &DGModule<F>) -> Result<HomComplex<F>> {
    let a = l.algebra();
    let k = a.field().clone();
    let gens = &l.free.gens;
    let mut pairs = Vec::new();
    for g in 0..gens.len() {
        for e in 0..n.dim() {
            pairs.push((g, e));
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let degs: Vec<Bidegree> = pairs.iter().map(|(g, e)| n.deg(*e) - gens[*g].1).collect();
    let labels: Vec<String> = pairs.iter().map(|(g, e)| format!("{}↦{}", gens[*g].0, n.label(*e))).collect();
    // which generators have g in their differential: users[g] = [(g'', a)]
    let mut users: Vec<Vec<(usize, &SparseVec<F::Elem>)>> = vec![Vec::new(); gens.len()];
    for (h, dh) in l.free.dgen.iter().enumerate() {
        for (g, v) in dh {
            users[*g].push((h, v));
        }
    }
    let diff: Vec<SparseVec<F::Elem>> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(g, e))| {
            let mut acc = Vec::new();
            for (e2, c) in n.differential_columns()[e].iter() {
                acc.push((index[&(g, *e2)], c.clone()));
            }
            // -(-1)^{|f|} f(d h) for h with d(h) = g·v + …
            let neg = !degs[i].is_odd();
            for (h, v) in &users[g] {
                let img = n.act(&SparseVec::unit(&k, e), v);
                for (e2, c) in img.iter() {
                    acc.push((index[&(*h, *e2)], k.signed(!neg, c)));
                }
            }
            SparseVec::from_terms(&k, acc)
        })
        .collect();
    let homology = ChainHomology::new(&k, &degs, &labels, &diff)?;
    let trusted = semifree_trust(l, n);
    Ok(HomComplex { degs, labels, diff, homology, trusted })
}

/// See the module docs of `resolution`: pairs `(g, e)` are missing when `g` lies beyond the
/// resolved weights or `e` beyond a truncated module's top weight.
fn semifree_trust<F: Field>(l: &SemifreeResolution<F>, n: &DGModule<F>) -> TrustWindow {
    let sigma = l.algebra().orientation().sign();
    let top_gen = l.top_weight().unwrap_or(i64::MIN);
    let top_n = match n.top_weight() {
        Some(t) => t,
        None => return TrustWindow::ALL,
    };
    let (lo, hi) = match (n.is_truncated(), l.stabilized) {
        (false, true) => (i64::MIN, i64::MAX),
        (false, false) => (top_n - l.bound, i64::MAX),
        (true, true) => (i64::MIN, if top_gen == i64::MIN { i64::MAX } else { top_n - top_gen }),
        (true, false) => return TrustWindow::EMPTY,
    };
    TrustWindow::from_weights(lo, hi, sigma)
}

/// `Hom_A(M, N)` for finite modules, by solving the linearity constraints `f(m·a) = f(m)·a`.
pub fn hom_complex<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<HomComplex<F>> {
    let a = m.algebra();
    let k = a.field().clone();
    let mut shifts: Vec<Bidegree> = Vec::new();
    for i in 0..m.dim() {
        for j in 0..n.dim() {
            shifts.push(n.deg(j) - m.deg(i));
        }
    }
    shifts.sort();
    shifts.dedup();
    // unknowns of degree s: pairs (i, j) with deg j = deg i + s
    let unknowns: BTreeMap<Bidegree, Vec<(usize, usize)>> = shifts
        .iter()
        .map(|&s| {
            let mut u = Vec::new();
            for i in 0..m.dim() {
                for j in 0..n.dim() {
                    if n.deg(j) == m.deg(i) + s {
                        u.push((i, j));
                    }
                }
            }
            (s, u)
        })
        .collect();
    // f as a map: column i of f is Σ_{(i,j)} x_{ij} e_j
    let apply = |s: Bidegree, x: &SparseVec<F::Elem>, v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        let u = &unknowns[&s];
        let mut acc = Vec::new();
        for (p, c) in x.iter() {
            let (i, j) = u[*p];
            if let Some(vi) = v.get(i) {
                acc.push((j, k.mul(c, vi)));
            }
        }
        SparseVec::from_terms(&k, acc)
    };
    let mut kernels: BTreeMap<Bidegree, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
    for (&s, u) in &unknowns {
        // one constraint block per (m, a): f(m·a) - f(m)·a, stacked into rows (m, a, target)
        let mut rows: HashMap<(usize, u32, usize), usize> = HashMap::new();
        let mut cols = Vec::with_capacity(u.len());
        for p in 0..u.len() {
            let x = SparseVec::unit(&k, p);
            let mut col = Vec::new();
            for mi in 0..m.dim() {
                for ai in a.ideal() {
                    let ma = m.act_basis(mi, ai);
                    let lhs = apply(s, &x, &ma);
                    let rhs = n.act(&apply(s, &x, &SparseVec::unit(&k, mi)), &SparseVec::unit(&k, ai as usize));
                    for (t, c) in lhs.sub(&k, &rhs).iter() {
                        let r = rows.len();
                        let r = *rows.entry((mi, ai, *t)).or_insert(r);
                        col.push((r, c.clone()));
                    }
                }
            }
            cols.push(col);
        }
        let nrows = rows.len();
        let cols: Vec<SparseVec<F::Elem>> = cols.into_iter().map(|c| SparseVec::from_terms(&k, c)).collect();
        let mat = SparseMatrix::from_columns(nrows, cols)?;
        let ker = rank_kernel_image(&k, &mat).kernel;
        if !ker.is_empty() {
            kernels.insert(s, ker);
        }
    }
    let mut degs = Vec::new();
    let mut labels = Vec::new();
    let mut offset: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (s, ker) in &kernels {
        offset.insert(*s, degs.len());
        for (i, _) in ker.iter().enumerate() {
            degs.push(*s);
            labels.push(format!("f{}[{}]", i, s.key()));
        }
    }
    let mut diff = Vec::with_capacity(degs.len());
    for (s, ker) in &kernels {
        let t = *s + D;
        let sign = k.signed(s.is_odd(), &k.one());
        let target = kernels.get(&t);
        let mut ech = Echelon::new(k.clone());
        if let Some(tk) = target {
            for (i, v) in tk.iter().enumerate() {
                ech.insert(v, i);
            }
        }
        for x in ker {
            // D f = d_N f - (-1)^{|f|} f d_M, written in the unknowns of degree t
            let mut acc = Vec::new();
            if let Some(tu) = unknowns.get(&t) {
                let tpos: HashMap<(usize, usize), usize> = tu.iter().enumerate().map(|(p, q)| (*q, p)).collect();
                for i in 0..m.dim() {
                    let fi = apply(*s, x, &SparseVec::unit(&k, i));
                    let dfi = n.differential(&fi);
                    let fdi = apply(*s, x, &m.differential_columns()[i]);
                    let v = dfi.add_scaled(&k, &k.neg(&sign), &fdi);
                    for (j, c) in v.iter() {
                        acc.push((tpos[&(i, *j)], c.clone()));
                    }
                }
            }
            let v = SparseVec::from_terms(&k, acc);
            let col = if v.is_zero() {
                SparseVec::new()
            } else {
                let coords = ech.solve(&v)?;
                let off = offset[&t];
                SparseVec::from_terms(&k, coords.iter().map(|(i, c)| (off + *i, c.clone())))
            };
            diff.push(col);
        }
    }
    let homology = ChainHomology::new(&k, &degs, &labels, &diff)?;
    Ok(HomComplex { degs, labels, diff, homology, trusted: TrustWindow::ALL })
}

/// `H RHom_A(k, A)` for a DG algebra, via the minimal resolution of `k`.
#[derive(Clone, Debug)]
pub struct RHomTable {
    pub dims: BTreeMap<Bidegree, usize>,
    /// Everything computed, including degrees outside the trusted window.
    pub raw_dims: BTreeMap<Bidegree, usize>,
    pub trusted: TrustWindow,
    pub route: &'static str,
    /// Number of resolution generators, or bar words, used.
    pub generators: usize,
    pub complete: bool,
}

impl RHomTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

pub fn rhom_from_resolution<F: Field>(l: &SemifreeResolution<F>, n: &DGModule<F>) -> Result<RHomTable> {
    let h = hom_from_semifree(l, n)?;
    Ok(RHomTable {
        dims: h.trusted_dims(),
        raw_dims: h.dims(),
        trusted: h.trusted,
        route: "resolution",
        generators: l.num_generators(),
        complete: l.stabilized,
    })
}

/// Resolution route; needs a DG algebra (A∞ inputs go through the bar construction instead).
#[allow(non_snake_case)]
pub fn rhom_k_A<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<RHomTable> {
    let a = Arc::new(a.clone());
    let l = resolve_trivial(a.clone(), bound)?;
    let n = DGModule::regular(a)?;
    rhom_from_resolution(&l, &n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::presets;
    use crate::exactla::Rationals;

    #[test]
    fn hom_from_free_module_is_the_target() {
        let a = Arc::new(presets::truncated_polynomial(Rationals, Bidegree::new(0, 1), 3, 4).unwrap());
        let reg = DGModule::regular(a.clone()).unwrap();
        let h = hom_complex(&reg, &reg).unwrap();
        assert_eq!(h.dims(), reg.dims());
    }

    #[test]
    fn hom_k_k_over_exterior() {
        let a = Arc::new(presets::exterior(Rationals, &[Bidegree::new(0, 1)], 3).unwrap());
        let k = DGModule::trivial(a).unwrap();
        let h = hom_complex(&k, &k).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(Bidegree::ZERO, 1)]));
    }

    #[test]
    fn rhom_exterior_is_one_dimensional() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1)], 5).unwrap();
        let t = rhom_k_A(&a, 5).unwrap();
        assert_eq!(t.dims, BTreeMap::from([(Bidegree::new(0, 1), 1)]));
    }

    #[test]
    fn rhom_polynomial_is_one_class_in_degree_one() {
        let a = presets::polynomial(Rationals, &[Bidegree::new(0, 1)], 5).unwrap();
        let t = rhom_k_A(&a, 5).unwrap();
        assert!(t.complete);
        assert_eq!(t.total(), 1);
        assert_eq!(t.dims.keys().next().unwrap().coh, 1);
    }

    #[test]
    fn hom_into_k_has_zero_differential() {
        let a = Arc::new(presets::exterior(Rationals, &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 4).unwrap());
        let l = resolve_trivial(a.clone(), 4).unwrap();
        let h = hom_from_semifree(&l, &DGModule::trivial(a).unwrap()).unwrap();
        assert!(h.diff.iter().all(SparseVec::is_zero));
        assert_eq!(h.dims(), l.ext_dims());
    }
}
