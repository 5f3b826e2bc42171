//! Right DG modules over truncated DG algebras, and semifree modules given by generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::homology::ChainHomology;
use crate::ainf::{Ix, TruncAInfAlgebra, UNIT};
use crate::barcobar::space_of;
use crate::bigraded::{Bidegree, BigradedSpace};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

const D: Bidegree = Bidegree::new(1, 0);

/// A finite right DG module. The unit acts as the identity; `action` holds `m·a` for ideal `a`.
#[derive(Clone, Debug)]
pub struct DGModule<F: Field> {
    algebra: Arc<TruncAInfAlgebra<F>>,
    degs: Vec<Bidegree>,
    labels: Vec<String>,
    diff: Vec<SparseVec<F::Elem>>,
    action: HashMap<(usize, Ix), SparseVec<F::Elem>>,
    truncated: bool,
}

/// Outcome of the module axiom checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<F: Field> DGModule<F> {
    pub fn new(
        algebra: Arc<TruncAInfAlgebra<F>>,
        degs: Vec<Bidegree>,
        labels: Vec<String>,
        diff: Vec<SparseVec<F::Elem>>,
        action: HashMap<(usize, Ix), SparseVec<F::Elem>>,
    ) -> Result<Self> {
        if !algebra.is_dg() {
            return Err(Error::HypothesisViolation("DG modules need a DG algebra".into()));
        }
        let n = degs.len();
        if labels.len() != n || diff.len() != n {
            return Err(Error::Malformed("module basis, labels and differential disagree in length".into()));
        }
        for (j, col) in diff.iter().enumerate() {
            if col.iter().any(|(i, _)| *i >= n || degs[*i] != degs[j] + D) {
                return Err(Error::Malformed(format!("differential of {} has a term of the wrong degree", labels[j])));
            }
        }
        let mut action = action;
        action.retain(|_, v| !v.is_zero());
        for ((m, a), v) in &action {
            if *m >= n || *a == UNIT || *a as usize >= algebra.dim() {
                return Err(Error::Malformed("action entry out of range".into()));
            }
            let d = degs[*m] + algebra.deg(*a);
            if v.iter().any(|(i, _)| *i >= n || degs[*i] != d) {
                return Err(Error::Malformed(format!("{}·{} has a term of the wrong degree", labels[*m], algebra.label(*a))));
            }
        }
        Ok(DGModule { algebra, degs, labels, diff, action, truncated: false })
    }

    /// The trivial module `k = A/I`, concentrated in `(0,0)`.
    pub fn trivial(algebra: Arc<TruncAInfAlgebra<F>>) -> Result<Self> {
        DGModule::new(algebra, vec![Bidegree::ZERO], vec!["k".into()], vec![SparseVec::new()], HashMap::new())
    }

    /// `A` as a right module over itself.
    pub fn regular(algebra: Arc<TruncAInfAlgebra<F>>) -> Result<Self> {
        let n = algebra.dim();
        let degs = algebra.basis().iter().map(|b| b.deg).collect();
        let labels = algebra.basis().iter().map(|b| b.label.clone()).collect();
        let diff = (0..n).map(|i| algebra.op(1, &[i as Ix])).collect();
        let mut action = HashMap::new();
        for m in 0..n {
            for a in algebra.ideal() {
                let v = algebra.op(2, &[m as Ix, a]);
                if !v.is_zero() {
                    action.insert((m, a), v);
                }
            }
        }
        let truncated = !algebra.is_finite();
        Ok(DGModule::new(algebra, degs, labels, diff, action)?.with_truncated(truncated))
    }

    /// Mark the module as the truncation of a larger one (elements beyond its top weight are missing).
    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Largest weight of a basis element.
    pub fn top_weight(&self) -> Option<i64> {
        (0..self.dim()).map(|i| self.weight(i)).max()
    }

    pub fn algebra(&self) -> &TruncAInfAlgebra<F> {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<TruncAInfAlgebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn deg(&self, i: usize) -> Bidegree {
        self.degs[i]
    }

    pub fn degs(&self) -> &[Bidegree] {
        &self.degs
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn differential_columns(&self) -> &[SparseVec<F::Elem>] {
        &self.diff
    }

    pub fn space(&self) -> BigradedSpace {
        space_of(&self.degs, &self.labels)
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.space().dims()
    }

    /// Weight `σ·adams`, where `σ` is the orientation sign of the algebra.
    pub fn weight(&self, i: usize) -> i64 {
        self.algebra.orientation().sign() * self.degs[i].adams
    }

    pub fn differential(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        crate::barcobar::apply_columns(self.field(), &self.diff, v)
    }

    /// `m·a` for basis elements.
    pub fn act_basis(&self, m: usize, a: Ix) -> SparseVec<F::Elem> {
        if a == UNIT {
            return SparseVec::unit(self.field(), m);
        }
        self.action.get(&(m, a)).cloned().unwrap_or_default()
    }

    pub fn act(&self, m: &SparseVec<F::Elem>, a: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let k = self.field();
        let mut acc = Vec::new();
        for (i, x) in m.iter() {
            for (j, y) in a.iter() {
                let c = k.mul(x, y);
                for (l, z) in self.act_basis(*i, *j as Ix).iter() {
                    acc.push((*l, k.mul(&c, z)));
                }
            }
        }
        SparseVec::from_terms(k, acc)
    }

    /// `d² = 0`, `d(ma) = d(m)a + (-1)^{|m|} m d(a)` and `(ma)b = m(ab)` on basis elements.
    pub fn check(&self) -> ModuleReport {
        let k = self.field();
        let a = &self.algebra;
        let mut rep = ModuleReport::default();
        for m in 0..self.dim() {
            let em = SparseVec::unit(k, m);
            rep.checked += 1;
            if !self.differential(&self.diff[m]).is_zero() {
                rep.failures.push(format!("d² ≠ 0 on {}", self.labels[m]));
            }
            for x in a.ideal() {
                let ex = SparseVec::unit(k, x as usize);
                let lhs = self.differential(&self.act(&em, &ex));
                let rhs = self.act(&self.diff[m], &ex).add_scaled(
                    k,
                    &k.signed(!self.degs[m].is_odd(), &k.one()),
                    &self.act(&em, &a.differential(&ex)),
                );
                rep.checked += 1;
                if lhs != rhs {
                    rep.failures.push(format!("Leibniz fails on {}·{}", self.labels[m], a.label(x)));
                }
                for y in a.ideal() {
                    let ey = SparseVec::unit(k, y as usize);
                    rep.checked += 1;
                    if self.act(&self.act(&em, &ex), &ey) != self.act(&em, &a.mul(&ex, &ey)) {
                        rep.failures.push(format!("({}·{})·{} ≠ {}·({}{})", self.labels[m], a.label(x), a.label(y), self.labels[m], a.label(x), a.label(y)));
                    }
                }
            }
        }
        rep
    }

    /// Basis elements in one Adams degree; the differential preserves it, so they span a summand.
    pub fn adams_slice(&self, adams: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degs[i].adams == adams).collect()
    }

    /// Homology of the Adams-degree `adams` summand, indexed by positions in `slice`.
    pub fn slice_homology(&self, slice: &[usize]) -> Result<ChainHomology<F>> {
        let pos: HashMap<usize, usize> = slice.iter().enumerate().map(|(p, i)| (*i, p)).collect();
        let k = self.field();
        let degs: Vec<Bidegree> = slice.iter().map(|&i| self.degs[i]).collect();
        let labels: Vec<String> = slice.iter().map(|&i| self.labels[i].clone()).collect();
        let diff: Vec<SparseVec<F::Elem>> =
            slice.iter().map(|&i| SparseVec::from_terms(k, self.diff[i].iter().map(|(j, c)| (pos[j], c.clone())))).collect();
        ChainHomology::new(k, &degs, &labels, &diff)
    }

    /// Homology dimensions of the whole module.
    pub fn homology_dims(&self) -> Result<BTreeMap<Bidegree, usize>> {
        let h = ChainHomology::new(self.field(), &self.degs, &self.labels, &self.diff)?;
        Ok(h.dims())
    }
}

/// A semifree module `⊕ g·A` with `d(g) = Σ g'·a_{g'}`, truncated to weights `≤ bound`.
#[derive(Clone, Debug)]
pub struct SemifreeModule<F: Field> {
    pub algebra: Arc<TruncAInfAlgebra<F>>,
    pub gens: Vec<(String, Bidegree)>,
    /// `d(g)` as generator ↦ algebra element.
    pub dgen: Vec<BTreeMap<usize, SparseVec<F::Elem>>>,
}

/// A semifree module realized as a [`DGModule`], with its `(generator, algebra element)` basis.
#[derive(Clone, Debug)]
pub struct Realized<F: Field> {
    pub module: DGModule<F>,
    pub pairs: Vec<(usize, Ix)>,
    pub index: HashMap<(usize, Ix), usize>,
}

impl<F: Field> SemifreeModule<F> {
    pub fn new(algebra: Arc<TruncAInfAlgebra<F>>) -> Self {
        SemifreeModule { algebra, gens: Vec::new(), dgen: Vec::new() }
    }

    pub fn push(&mut self, label: String, deg: Bidegree, d: BTreeMap<usize, SparseVec<F::Elem>>) -> usize {
        self.gens.push((label, deg));
        self.dgen.push(d);
        self.gens.len() - 1
    }

    pub fn weight_of(&self, g: usize) -> i64 {
        self.algebra.orientation().sign() * self.gens[g].1.adams
    }

    /// Realize all `g·a` of weight at most `bound`.
    pub fn realize(&self, bound: i64) -> Result<Realized<F>> {
        let a = &self.algebra;
        let k = a.field();
        let sigma = a.orientation().sign();
        let mut pairs = Vec::new();
        for (g, (_, dg)) in self.gens.iter().enumerate() {
            for x in 0..a.dim() as Ix {
                if sigma * (dg.adams + a.deg(x).adams) <= bound {
                    pairs.push((g, x));
                }
            }
        }
        let index: HashMap<(usize, Ix), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let degs: Vec<Bidegree> = pairs.iter().map(|(g, x)| self.gens[*g].1 + a.deg(*x)).collect();
        let labels: Vec<String> = pairs
            .iter()
            .map(|(g, x)| if *x == UNIT { self.gens[*g].0.clone() } else { format!("{}·{}", self.gens[*g].0, a.label(*x)) })
            .collect();
        // element Σ_g g·v_g as a vector in the pair basis (terms beyond the window vanish)
        let embed = |terms: &[(usize, SparseVec<F::Elem>)]| {
            let mut acc = Vec::new();
            for (g, v) in terms {
                for (x, c) in v.iter() {
                    if let Some(&i) = index.get(&(*g, *x as Ix)) {
                        acc.push((i, c.clone()));
                    }
                }
            }
            SparseVec::from_terms(k, acc)
        };
        let mut diff = Vec::with_capacity(pairs.len());
        for &(g, x) in &pairs {
            let ex = SparseVec::unit(k, x as usize);
            // d(g·x) = d(g)·x + (-1)^{|g|} g·d(x)
            let mut terms: Vec<(usize, SparseVec<F::Elem>)> =
                self.dgen[g].iter().map(|(h, v)| (*h, a.mul(v, &ex))).collect();
            let s = k.signed(!self.gens[g].1.is_odd(), &k.one());
            terms.push((g, a.differential(&ex).scale(k, &s)));
            diff.push(embed(&terms));
        }
        let mut action = HashMap::new();
        for (i, &(g, x)) in pairs.iter().enumerate() {
            for y in a.ideal() {
                let v = embed(&[(g, a.op(2, &[x, y]))]);
                if !v.is_zero() {
                    action.insert((i, y), v);
                }
            }
        }
        let module = DGModule::new(a.clone(), degs, labels, diff, action)?.with_truncated(true);
        Ok(Realized { module, pairs, index })
    }
}
