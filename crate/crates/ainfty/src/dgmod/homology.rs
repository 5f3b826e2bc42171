//! Homology of complexes given by basis degrees and differential columns, and the
//! homology algebra of a DG algebra with its splitting data.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::ainf::{AlgebraBuilder, Ix, TruncAInfAlgebra, UNIT};
use crate::barcobar::{block_positions, map_from_columns};
use crate::bigraded::{homology, Bidegree, Homology};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

const D: Bidegree = Bidegree::new(1, 0);

/// Homology of a finite complex with a chosen splitting in every bidegree.
#[derive(Clone, Debug)]
pub struct ChainHomology<F: Field> {
    field: F,
    degs: Vec<Bidegree>,
    members: BTreeMap<Bidegree, Vec<usize>>,
    pos: Vec<usize>,
    h: Homology<F>,
}

impl<F: Field> ChainHomology<F> {
    pub fn new(field: &F, degs: &[Bidegree], labels: &[String], diff: &[SparseVec<F::Elem>]) -> Result<Self> {
        let d = map_from_columns(field, degs, labels, diff, D);
        let h = homology(field, &d, &d)?;
        let pos = block_positions(degs);
        let mut members: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, g) in degs.iter().enumerate() {
            members.entry(*g).or_default().push(i);
        }
        Ok(ChainHomology { field: field.clone(), degs: degs.to_vec(), members, pos, h })
    }

    pub fn of_algebra(a: &TruncAInfAlgebra<F>) -> Result<Self> {
        let degs: Vec<Bidegree> = a.basis().iter().map(|b| b.deg).collect();
        let labels: Vec<String> = a.basis().iter().map(|b| b.label.clone()).collect();
        let diff: Vec<SparseVec<F::Elem>> = (0..a.dim()).map(|i| a.op(1, &[i as Ix])).collect();
        ChainHomology::new(a.field(), &degs, &labels, &diff)
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.h.dims().into_iter().filter(|(_, n)| *n > 0).collect()
    }

    pub fn dim(&self, d: Bidegree) -> usize {
        self.h.dim(d)
    }

    pub fn labels(&self, d: Bidegree) -> Vec<String> {
        self.h.space.labels(d).to_vec()
    }

    pub fn degree_of(&self, i: usize) -> Bidegree {
        self.degs[i]
    }

    fn to_block(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        SparseVec::from_terms(&self.field, v.iter().map(|(i, c)| (self.pos[*i], c.clone())))
    }

    fn from_block(&self, d: Bidegree, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let m = &self.members[&d];
        SparseVec::from_terms(&self.field, v.iter().map(|(i, c)| (m[*i], c.clone())))
    }

    /// Cycle representatives of the classes in bidegree `d`, in global coordinates.
    pub fn reps(&self, d: Bidegree) -> Vec<SparseVec<F::Elem>> {
        match self.h.block(d) {
            Some(b) => b.reps.iter().map(|r| self.from_block(d, r)).collect(),
            None => Vec::new(),
        }
    }

    /// Coordinates of the class of a cycle of degree `d` on the chosen representatives.
    pub fn project(&self, d: Bidegree, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        match self.h.block(d) {
            Some(b) if !v.is_zero() => b.project(&self.to_block(v)),
            _ => SparseVec::new(),
        }
    }

    pub fn is_boundary(&self, d: Bidegree, v: &SparseVec<F::Elem>) -> bool {
        match self.h.block(d) {
            Some(b) => b.is_boundary(&self.to_block(v)),
            None => v.is_zero(),
        }
    }

    /// Chain homotopy `h` of the splitting: `v ↦ h(v)` in degree `d - (1,0)`.
    pub fn homotopy(&self, d: Bidegree, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        match self.h.block(d) {
            Some(b) if !v.is_zero() => {
                let w = b.homotopy(&self.to_block(v));
                if w.is_zero() {
                    w
                } else {
                    self.from_block(d - D, &w)
                }
            }
            _ => SparseVec::new(),
        }
    }
}

/// A homology class with its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class<E> {
    pub deg: Bidegree,
    pub label: String,
    pub rep: SparseVec<E>,
}

/// `H(E)` for a DG algebra `E`, with classes, induced product and splitting data.
#[derive(Clone, Debug)]
pub struct HomologyAlgebra<F: Field> {
    pub dg: Arc<TruncAInfAlgebra<F>>,
    pub chain: ChainHomology<F>,
    pub classes: Vec<Class<F::Elem>>,
    /// Class ids per bidegree, in the order of the chosen representatives.
    pub by_degree: BTreeMap<Bidegree, Vec<usize>>,
    /// `class_i · class_j` in class coordinates.
    pub product: HashMap<(usize, usize), SparseVec<F::Elem>>,
}

impl<F: Field> HomologyAlgebra<F> {
    pub fn field(&self) -> &F {
        self.dg.field()
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.chain.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.classes.len()
    }

    /// Class coordinates (global class ids) of a cycle of degree `d`.
    pub fn classify(&self, d: Bidegree, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let ids = match self.by_degree.get(&d) {
            Some(ids) => ids,
            None => return SparseVec::new(),
        };
        SparseVec::from_terms(self.field(), self.chain.project(d, v).iter().map(|(i, c)| (ids[*i], c.clone())))
    }

    /// Representative of a combination of classes.
    pub fn lift(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let k = self.field();
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(k, c, &self.classes[*i].rep);
        }
        acc
    }

    pub fn mul(&self, a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let k = self.field();
        let mut acc = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                if let Some(p) = self.product.get(&(*i, *j)) {
                    let c = k.mul(x, y);
                    for (l, z) in p.iter() {
                        acc.push((*l, k.mul(&c, z)));
                    }
                }
            }
        }
        SparseVec::from_terms(k, acc)
    }

    /// `H(E)` as an algebra table with `m_2` only. Class 0 is the unit.
    pub fn as_algebra(&self) -> Result<TruncAInfAlgebra<F>> {
        let k = self.field().clone();
        let mut b = AlgebraBuilder::new(k.clone(), self.dg.orientation(), self.dg.adams_bound())
            .finite(self.dg.is_finite())
            .validity(self.dg.validity());
        for c in self.classes.iter().skip(1) {
            b.element(&c.label, c.deg)?;
        }
        for ((i, j), v) in &self.product {
            if *i != 0 && *j != 0 {
                b.set_op(2, vec![*i as Ix, *j as Ix], v.clone())?;
            }
        }
        b.build()
    }
}

/// Homology algebra of a DG algebra. The unit class comes first.
pub fn homology_algebra<F: Field>(e: &TruncAInfAlgebra<F>) -> Result<HomologyAlgebra<F>> {
    if !e.is_dg() {
        return Err(Error::HypothesisViolation("homology algebra needs a DG algebra (no m_n for n ≥ 3)".into()));
    }
    let k = e.field().clone();
    let chain = ChainHomology::of_algebra(e)?;
    let mut classes = Vec::new();
    let mut by_degree: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
    let unit_rep = SparseVec::unit(&k, UNIT as usize);
    if e.orientation() != crate::ainf::Orientation::Unconnected && chain.dim(Bidegree::ZERO) != 1 {
        return Err(Error::Invariant("connected algebra whose unit block has the wrong homology".into()));
    }
    let mut order: Vec<Bidegree> = chain.dims().keys().copied().collect();
    order.sort_by_key(|d| (*d != Bidegree::ZERO, d.adams.abs(), *d));
    for d in order {
        let labels = chain.labels(d);
        for (r, l) in chain.reps(d).into_iter().zip(labels) {
            let label = if d == Bidegree::ZERO && r == unit_rep { "1".to_string() } else { l };
            let rep = r;
            by_degree.entry(d).or_default().push(classes.len());
            classes.push(Class { deg: d, label, rep });
        }
    }
    if classes.first().map(|c| c.label.as_str()) != Some("1") {
        return Err(Error::Invariant("unit is not a homology class representative".into()));
    }
    let mut product = HashMap::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            let d = classes[i].deg + classes[j].deg;
            if !by_degree.contains_key(&d) {
                continue;
            }
            let v = e.mul(&classes[i].rep, &classes[j].rep);
            let p = SparseVec::from_terms(&k, chain.project(d, &v).iter().map(|(l, c)| (by_degree[&d][*l], c.clone())));
            if !p.is_zero() {
                product.insert((i, j), p);
            }
        }
    }
    Ok(HomologyAlgebra { dg: Arc::new(e.clone()), chain, classes, by_degree, product })
}
