//! A∞ right modules, their bar construction `B(M;A) = SM ⊗ T(SI)`, and `RHom_A(k, N)` computed
//! as comodule maps `B(k;A) → B(N;A)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::bar::{bar, enumerate_words, require_connected, word_degree, BarSign};
use super::desuspension_odd;
use crate::ainf::{Ix, TruncAInfAlgebra, UNIT};
use crate::bigraded::Bidegree;
use crate::dgmod::{generator_spread, ChainHomology, DGModule, RHomTable, TrustWindow};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

#[derive(Clone, Debug)]
enum Ops<F: Field> {
    Regular,
    Trivial,
    Dg(Arc<DGModule<F>>),
}

/// A strictly unital A∞ right module, with operations `m_n: M ⊗ A^{⊗(n-1)} → M`.
#[derive(Clone, Debug)]
pub struct AInfModule<F: Field> {
    algebra: Arc<TruncAInfAlgebra<F>>,
    degs: Vec<Bidegree>,
    labels: Vec<String>,
    ops: Ops<F>,
    truncated: bool,
}

impl<F: Field> AInfModule<F> {
    /// `A` acting on itself through all of its operations.
    pub fn regular(a: Arc<TruncAInfAlgebra<F>>) -> Self {
        let degs = a.basis().iter().map(|b| b.deg).collect();
        let labels = a.basis().iter().map(|b| b.label.clone()).collect();
        let truncated = !a.is_finite();
        AInfModule { algebra: a, degs, labels, ops: Ops::Regular, truncated }
    }

    /// The ground field through the augmentation.
    pub fn trivial(a: Arc<TruncAInfAlgebra<F>>) -> Self {
        AInfModule { algebra: a, degs: vec![Bidegree::ZERO], labels: vec!["1".into()], ops: Ops::Trivial, truncated: false }
    }

    pub fn from_dg(m: Arc<DGModule<F>>) -> Self {
        AInfModule {
            algebra: m.algebra_arc().clone(),
            degs: m.degs().to_vec(),
            labels: m.labels().to_vec(),
            truncated: m.is_truncated(),
            ops: Ops::Dg(m),
        }
    }

    pub fn algebra(&self) -> &TruncAInfAlgebra<F> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn deg(&self, i: usize) -> Bidegree {
        self.degs[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Adams degree times the orientation sign of the algebra.
    pub fn weight(&self, i: usize) -> i64 {
        self.algebra.orientation().sign() * self.degs[i].adams
    }

    pub fn top_weight(&self) -> i64 {
        (0..self.dim()).map(|i| self.weight(i)).max().unwrap_or(0)
    }

    /// `m_{1+|x|}(m ⊗ x_1 ⊗ … )`, strict unit rules included.
    pub fn op(&self, m: usize, x: &[Ix]) -> SparseVec<F::Elem> {
        let k = self.algebra.field();
        if x.len() == 1 && x[0] == UNIT {
            return SparseVec::unit(k, m);
        }
        if x.contains(&UNIT) {
            return SparseVec::new();
        }
        match &self.ops {
            Ops::Regular => {
                let mut t = Vec::with_capacity(x.len() + 1);
                t.push(m as Ix);
                t.extend_from_slice(x);
                self.algebra.op(t.len(), &t)
            }
            Ops::Trivial => SparseVec::new(),
            Ops::Dg(d) => match x.len() {
                0 => d.differential_columns()[m].clone(),
                1 => d.act_basis(m, x[0]),
                _ => SparseVec::new(),
            },
        }
    }

    /// The block of `B(M;A)`'s differential that eats `s m ⊗ [x_1|…|x_r]` whole.
    pub fn block(&self, m: usize, x: &[Ix]) -> SparseVec<F::Elem> {
        let v = self.op(m, x);
        if v.is_zero() {
            return v;
        }
        let cohs = std::iter::once(self.degs[m].coh).chain(x.iter().map(|&i| self.algebra.coh(i)));
        let odd = BarSign::Graded.op_negative(x.len() + 1) ^ desuspension_odd(cohs);
        if odd {
            v.scale(self.algebra.field(), &self.algebra.field().neg(&self.algebra.field().one()))
        } else {
            v
        }
    }
}

/// `B(M;A)` through total weight `bound`, on basis `s m ⊗ [a_1|…|a_r]`.
#[derive(Clone, Debug)]
pub struct BarModuleComplex<F: Field> {
    pub module: AInfModule<F>,
    pub bound: i64,
    pub words: Vec<(usize, Vec<Ix>)>,
    pub index: HashMap<(usize, Vec<Ix>), usize>,
    pub degs: Vec<Bidegree>,
    pub labels: Vec<String>,
    pub diff: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> BarModuleComplex<F> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        super::apply_columns(self.module.algebra().field(), &self.diff, v)
    }

    /// First basis element on which the differential does not square to zero.
    pub fn square_zero_witness(&self) -> Option<String> {
        (0..self.dim()).find_map(|i| (!self.apply(&self.diff[i]).is_zero()).then(|| self.labels[i].clone()))
    }

    pub fn homology(&self) -> Result<ChainHomology<F>> {
        ChainHomology::new(self.module.algebra().field(), &self.degs, &self.labels, &self.diff)
    }
}

pub fn bar_module<F: Field>(m: &AInfModule<F>, bound: i64) -> Result<BarModuleComplex<F>> {
    let a = m.algebra();
    require_connected(a, "bar construction of a module")?;
    if !a.is_finite() && bound > a.validity() {
        return Err(Error::WindowOverflow(format!("module bar bound {bound} exceeds the algebra's validity {}", a.validity())));
    }
    let k = a.field().clone();
    let base = (0..m.dim()).map(|i| m.weight(i)).min().unwrap_or(0);
    let all_words = enumerate_words(a, bound - base.min(bound));
    let weight = |w: &[Ix]| w.iter().map(|&i| a.deg(i).adams.abs()).sum::<i64>();
    let mut words = Vec::new();
    for x in 0..m.dim() {
        for w in &all_words {
            if m.weight(x) + weight(w) <= bound {
                words.push((x, w.clone()));
            }
        }
    }
    let index: HashMap<(usize, Vec<Ix>), usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let shift = Bidegree::new(1, 0);
    let degs: Vec<Bidegree> = words.iter().map(|(x, w)| m.deg(*x) - shift + word_degree(a, w)).collect();
    let labels: Vec<String> = words
        .iter()
        .map(|(x, w)| format!("{}[{}]", m.label(*x), w.iter().map(|&i| a.label(i)).collect::<Vec<_>>().join("|")))
        .collect();
    let diff = words
        .iter()
        .map(|(x, w)| {
            let mut acc = Vec::new();
            // blocks containing the module letter
            for r in 0..=w.len() {
                for (y, c) in m.block(*x, &w[..r]).iter() {
                    if let Some(&t) = index.get(&(*y, w[r..].to_vec())) {
                        acc.push((t, c.clone()));
                    }
                }
            }
            // blocks inside the bar word
            let mut prefix_odd = (m.deg(*x).coh - 1).rem_euclid(2) == 1;
            for j in 0..w.len() {
                for n in 1..=w.len() - j {
                    let v = a.op(n, &w[j..j + n]);
                    if v.is_zero() {
                        continue;
                    }
                    let odd = prefix_odd ^ BarSign::Graded.op_negative(n) ^ desuspension_odd(w[j..j + n].iter().map(|&i| a.coh(i)));
                    for (e, c) in v.iter() {
                        let mut u = Vec::with_capacity(w.len() - n + 1);
                        u.extend_from_slice(&w[..j]);
                        u.push(*e as Ix);
                        u.extend_from_slice(&w[j + n..]);
                        if let Some(&t) = index.get(&(*x, u)) {
                            acc.push((t, k.signed(!odd, c)));
                        }
                    }
                }
                prefix_odd ^= (a.coh(w[j]) - 1).rem_euclid(2) == 1;
            }
            SparseVec::from_terms(&k, acc)
        })
        .collect();
    Ok(BarModuleComplex { module: m.clone(), bound, words, index, degs, labels, diff })
}

/// Weights in which `H(B(A))` is nonzero, through `bound`, and whether it has visibly stopped.
pub fn bar_homology_support<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<(BTreeMap<Bidegree, usize>, Option<i64>)> {
    let b = bar(a, bound)?;
    let h = ChainHomology::new(a.field(), b.degs(), b.labels(), b.differential_columns())?;
    let dims: BTreeMap<Bidegree, usize> = h.dims().into_iter().filter(|(_, n)| *n > 0).collect();
    let top = dims.keys().map(|d| d.adams.abs()).max().unwrap_or(0);
    let stopped = bound - top >= generator_spread(a);
    Ok((dims, stopped.then_some(top)))
}

/// `RHom_A(k, N)` as the complex of comodule maps `B(k;A) → B(N;A)`, i.e. linear maps
/// `φ: B(k;A) → SN` with `D(φ) = pr∘b_N∘φ̂ - (-1)^{|φ|} φ∘b_k`, where
/// `φ̂(s1⊗[a_1|…|a_n]) = Σ φ(s1⊗[a_1|…|a_j]) ⊗ [a_{j+1}|…|a_n]`.
///
/// Truncating bar words at weight `bound` is a quotient complex. Filtering by word weight, the
/// dropped part has `E_1 = Hom(H(B(A))_p, HN)`, so a Hom Adams degree is exact once the
/// dropped weights carry no bar homology or land outside `N`.
pub fn rhom_via_bar<F: Field>(n: &AInfModule<F>, bound: i64) -> Result<(RHomTable, Vec<SparseVec<F::Elem>>)> {
    let a = n.algebra();
    let k = a.field().clone();
    let kmod = AInfModule::trivial(Arc::new(a.clone()));
    let bk = bar_module(&kmod, bound)?;
    // Hom basis: (bar word index in B(k;A), element of N)
    let mut pairs = Vec::new();
    for i in 0..bk.dim() {
        for x in 0..n.dim() {
            pairs.push((i, x));
        }
    }
    let pidx: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(p, q)| (*q, p)).collect();
    let degs: Vec<Bidegree> = pairs.iter().map(|&(i, x)| n.deg(x) - Bidegree::new(1, 0) - bk.degs[i]).collect();
    let labels: Vec<String> = pairs.iter().map(|&(i, x)| format!("{}↦{}", bk.labels[i], n.label(x))).collect();
    // words of B(k;A) that extend a given word
    let mut extensions: HashMap<usize, Vec<(usize, Vec<Ix>)>> = HashMap::new();
    for (j, (_, w)) in bk.words.iter().enumerate() {
        for r in 0..=w.len() {
            if let Some(&i) = bk.index.get(&(0, w[..r].to_vec())) {
                extensions.entry(i).or_default().push((j, w[r..].to_vec()));
            }
        }
    }
    // transpose of b_k
    let mut preimages: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); bk.dim()];
    for (j, col) in bk.diff.iter().enumerate() {
        for (i, c) in col.iter() {
            preimages[*i].push((j, c.clone()));
        }
    }
    let mut diff = Vec::with_capacity(pairs.len());
    for (p, &(i, x)) in pairs.iter().enumerate() {
        let phi_odd = degs[p].is_odd();
        let mut acc = Vec::new();
        for (j, rest) in extensions.get(&i).into_iter().flatten() {
            for (y, c) in n.block(x, rest).iter() {
                acc.push((pidx[&(*j, *y)], c.clone()));
            }
        }
        for (j, c) in &preimages[i] {
            acc.push((pidx[&(*j, x)], k.signed(phi_odd, c)));
        }
        diff.push(SparseVec::from_terms(&k, acc));
    }
    let h = ChainHomology::new(&k, &degs, &labels, &diff)?;
    let raw: BTreeMap<Bidegree, usize> = h.dims().into_iter().filter(|(_, c)| *c > 0).collect();
    // trust, in Hom weights t = weight(N element) - weight(word)
    let (_, stopped) = bar_homology_support(a, bound)?;
    let sigma = a.orientation().sign();
    let top_n = n.top_weight();
    let trusted = match (n.is_truncated(), stopped) {
        (false, Some(_)) => TrustWindow::ALL,
        (false, None) => TrustWindow::from_weights(top_n - bound, i64::MAX, sigma),
        (true, Some(top)) => TrustWindow::from_weights(i64::MIN, top_n - top, sigma),
        (true, None) => TrustWindow::EMPTY,
    };
    let dims = raw.iter().filter(|(d, _)| trusted.contains(d.adams)).map(|(d, c)| (*d, *c)).collect();
    let table = RHomTable {
        dims,
        raw_dims: raw,
        trusted,
        route: "bar",
        generators: bk.dim(),
        complete: stopped.is_some(),
    };
    Ok((table, diff))
}

/// `RHom_A(k, A)` through the bar construction; works for any Adams-connected A∞-algebra.
#[allow(non_snake_case)]
pub fn rhom_k_A_bar<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<RHomTable> {
    let n = AInfModule::regular(Arc::new(a.clone()));
    Ok(rhom_via_bar(&n, bound)?.0)
}
