use std::collections::{BTreeMap, HashSet};

use crate::bigraded::bidegree::{even, Bidegree};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix, SparseVec};

/// Finite labeled basis in each bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedSpace {
    blocks: BTreeMap<Bidegree, Vec<String>>,
}

impl BigradedSpace {
    pub fn new() -> Self {
        BigradedSpace::default()
    }

    /// Empty blocks are dropped; duplicate labels within a block are rejected.
    pub fn from_blocks(blocks: impl IntoIterator<Item = (Bidegree, Vec<String>)>) -> Result<Self> {
        let mut s = BigradedSpace::new();
        for (d, labels) in blocks {
            for l in labels {
                s.push(d, l)?;
            }
        }
        Ok(s)
    }

    /// The ground field in bidegree (0,0).
    pub fn unit() -> Self {
        let mut s = BigradedSpace::new();
        s.blocks.insert(Bidegree::ZERO, vec!["1".to_string()]);
        s
    }

    pub fn push(&mut self, d: Bidegree, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        let block = self.blocks.entry(d).or_default();
        if block.contains(&label) {
            return Err(Error::Malformed(format!("duplicate label {label} in {d}")));
        }
        block.push(label);
        Ok(block.len() - 1)
    }

    pub fn dim(&self, d: Bidegree) -> usize {
        self.blocks.get(&d).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    pub fn labels(&self, d: Bidegree) -> &[String] {
        self.blocks.get(&d).map_or(&[], |b| b.as_slice())
    }

    pub fn index_of(&self, d: Bidegree, label: &str) -> Option<usize> {
        self.blocks.get(&d)?.iter().position(|l| l == label)
    }

    /// Populated bidegrees in report order.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.blocks.keys().copied()
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.blocks.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    pub fn blocks(&self) -> &BTreeMap<Bidegree, Vec<String>> {
        &self.blocks
    }

    fn regrade(&self, f: impl Fn(Bidegree) -> Bidegree, relabel: impl Fn(&str) -> String) -> Self {
        BigradedSpace {
            blocks: self.blocks.iter().map(|(d, b)| (f(*d), b.iter().map(|l| relabel(l)).collect())).collect(),
        }
    }

    /// S^k V: (S^k V)^i_j = V^{i+k}_j.
    pub fn suspend(&self, k: i64) -> Self {
        self.regrade(|d| Bidegree::new(d.coh - k, d.adams), |l| l.to_string())
    }

    /// Σ^k V: (Σ^k V)^i_j = V^i_{j+k}.
    pub fn adams_shift(&self, k: i64) -> Self {
        self.regrade(|d| Bidegree::new(d.coh, d.adams - k), |l| l.to_string())
    }

    /// Graded dual; `(V^♯)^i_j` carries the dual basis of `V^{-i}_{-j}`.
    pub fn dual(&self) -> Self {
        self.regrade(|d| -d, dual_label)
    }

    /// Tensor product with pair labels, blocks ordered by (left bidegree, left index, right index).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut blocks: BTreeMap<Bidegree, Vec<String>> = BTreeMap::new();
        for (d1, b1) in &self.blocks {
            for (d2, b2) in &other.blocks {
                let out = blocks.entry(*d1 + *d2).or_default();
                for a in b1 {
                    for b in b2 {
                        out.push(format!("{a}⊗{b}"));
                    }
                }
            }
        }
        BigradedSpace { blocks }
    }

    /// Position of `(left, right)` inside the tensor block of degree `d1 + d2`.
    pub fn tensor_index(&self, other: &Self, d1: Bidegree, i: usize, d2: Bidegree, j: usize) -> usize {
        let total = d1 + d2;
        let mut offset = 0;
        for (e1, b1) in &self.blocks {
            let e2 = total - *e1;
            if *e1 == d1 {
                return offset + i * other.dim(e2) + j;
            }
            offset += b1.len() * other.dim(e2);
        }
        panic!("bidegree {d1} not in space")
    }
}

/// Involutive relabeling used by duals: toggles a trailing `*`.
pub fn dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{l}*"),
    }
}

/// Homogeneous linear map; `blocks[d]` sends the source block `d` to the target block `d + degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<F: Field> {
    pub source: BigradedSpace,
    pub target: BigradedSpace,
    pub degree: Bidegree,
    blocks: BTreeMap<Bidegree, SparseMatrix<F::Elem>>,
}

impl<F: Field> GradedMap<F> {
    pub fn zero(source: BigradedSpace, target: BigradedSpace, degree: Bidegree) -> Self {
        GradedMap { source, target, degree, blocks: BTreeMap::new() }
    }

    pub fn identity(field: &F, space: &BigradedSpace) -> Self {
        let blocks = space.blocks.iter().map(|(d, b)| (*d, SparseMatrix::identity(field, b.len()))).collect();
        GradedMap { source: space.clone(), target: space.clone(), degree: Bidegree::ZERO, blocks }
    }

    /// Blocks must have the right shape and connect populated bidegrees only.
    pub fn from_blocks(
        source: BigradedSpace,
        target: BigradedSpace,
        degree: Bidegree,
        blocks: impl IntoIterator<Item = (Bidegree, SparseMatrix<F::Elem>)>,
    ) -> Result<Self> {
        let mut m = GradedMap::zero(source, target, degree);
        for (d, b) in blocks {
            m.set_block(d, b)?;
        }
        Ok(m)
    }

    pub fn set_block(&mut self, d: Bidegree, b: SparseMatrix<F::Elem>) -> Result<()> {
        let (c, r) = (self.source.dim(d), self.target.dim(d + self.degree));
        if b.cols() != c || b.rows() != r {
            return Err(Error::Malformed(format!(
                "block at {d} is {}x{}, expected {r}x{c}",
                b.rows(),
                b.cols()
            )));
        }
        if b.is_zero() {
            self.blocks.remove(&d);
        } else {
            self.blocks.insert(d, b);
        }
        Ok(())
    }

    /// Block at source bidegree `d` (a zero matrix when absent).
    pub fn block(&self, d: Bidegree) -> SparseMatrix<F::Elem> {
        self.blocks
            .get(&d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.target.dim(d + self.degree), self.source.dim(d)))
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = (&Bidegree, &SparseMatrix<F::Elem>)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn apply(&self, field: &F, d: Bidegree, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        match self.blocks.get(&d) {
            Some(b) => b.mul_vec(field, x),
            None => SparseVec::new(),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, field: &F, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if other.target != self.source {
            return Err(Error::Malformed("composition of incompatible maps".into()));
        }
        let mut out = GradedMap::zero(other.source.clone(), self.target.clone(), other.degree + self.degree);
        for (d, b) in &other.blocks {
            if let Some(a) = self.blocks.get(&(*d + other.degree)) {
                out.set_block(*d, a.compose(field, b)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, field: &F, other: &GradedMap<F>) -> Result<GradedMap<F>> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Malformed("sum of incompatible maps".into()));
        }
        let mut out = self.clone();
        for (d, b) in &other.blocks {
            let sum = out.block(*d).add(field, b)?;
            out.set_block(*d, sum)?;
        }
        Ok(out)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> GradedMap<F> {
        let mut out = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        for (d, b) in &self.blocks {
            out.set_block(*d, b.map_entries(field, |_, _, v| field.mul(c, v))).expect("same shape");
        }
        out
    }

    /// S f S^{-1} on the suspended spaces, with the sign (-1)^{|f|}
    /// (so a differential d becomes -d).
    pub fn suspend(&self, field: &F, k: i64) -> GradedMap<F> {
        let sign = even(self.degree.coh * k);
        let mut out = GradedMap::zero(self.source.suspend(k), self.target.suspend(k), self.degree);
        for (d, b) in &self.blocks {
            let nb = if sign { b.clone() } else { b.map_entries(field, |_, _, v| field.neg(v)) };
            out.blocks.insert(Bidegree::new(d.coh - k, d.adams), nb);
        }
        out
    }

    /// Adams shift: no sign.
    pub fn adams_shift(&self, k: i64) -> GradedMap<F> {
        let mut out = GradedMap::zero(self.source.adams_shift(k), self.target.adams_shift(k), self.degree);
        for (d, b) in &self.blocks {
            out.blocks.insert(Bidegree::new(d.coh, d.adams - k), b.clone());
        }
        out
    }

    /// Dual map `f^♯(φ) = (-1)^{|f||φ|} φ∘f`.
    pub fn dual(&self, field: &F) -> GradedMap<F> {
        let mut out = GradedMap::zero(self.target.dual(), self.source.dual(), self.degree);
        for (d, b) in &self.blocks {
            // φ ranges over the dual of target block d + degree, sitting in -(d + degree)
            let phi_deg = -(*d + self.degree);
            let positive = even(self.degree.coh * phi_deg.coh);
            let t = b.transpose(field);
            let nb = if positive { t } else { t.map_entries(field, |_, _, v| field.neg(v)) };
            out.blocks.insert(phi_deg, nb);
        }
        out
    }

    /// The canonical evaluation isomorphism V → V^♯♯, `v ↦ (-1)^{|v|} v**`.
    pub fn evaluation(field: &F, space: &BigradedSpace) -> GradedMap<F> {
        let target = space.dual().dual();
        let mut out = GradedMap::zero(space.clone(), target, Bidegree::ZERO);
        for (d, b) in &space.blocks {
            let mut m = SparseMatrix::identity(field, b.len());
            if d.is_odd() {
                m = m.map_entries(field, |_, _, v| field.neg(v));
            }
            out.blocks.insert(*d, m);
        }
        out
    }

    /// f ⊗ g with `(f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)`.
    pub fn tensor(&self, field: &F, other: &GradedMap<F>) -> GradedMap<F> {
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let degree = self.degree + other.degree;
        let mut triplets: BTreeMap<Bidegree, Vec<(usize, usize, F::Elem)>> = BTreeMap::new();
        for (d1, b1) in &self.blocks {
            for (d2, b2) in &other.blocks {
                let sign = even(other.degree.coh * d1.coh);
                let s = *d1 + *d2;
                let entry = triplets.entry(s).or_default();
                for (r1, c1, v1) in b1.triplets() {
                    for (r2, c2, v2) in b2.triplets() {
                        let col = self.source.tensor_index(&other.source, *d1, c1, *d2, c2);
                        let row = self.target.tensor_index(
                            &other.target,
                            *d1 + self.degree,
                            r1,
                            *d2 + other.degree,
                            r2,
                        );
                        entry.push((row, col, field.signed(sign, &field.mul(&v1, &v2))));
                    }
                }
            }
        }
        let mut out = GradedMap::zero(source, target, degree);
        for (d, t) in triplets {
            let (r, c) = (out.target.dim(d + degree), out.source.dim(d));
            let m = SparseMatrix::from_triplets(field, r, c, t).expect("distinct tensor positions");
            out.set_block(d, m).expect("shape");
        }
        out
    }

    /// Entry lookup by labels, for tests and reports.
    pub fn entry(&self, d: Bidegree, source_label: &str, target_label: &str) -> Option<F::Elem> {
        let c = self.source.index_of(d, source_label)?;
        let r = self.target.index_of(d + self.degree, target_label)?;
        self.blocks.get(&d).and_then(|b| b.get(r, c).cloned())
    }
}

/// Check labels are unique in each block (constructors guarantee it; kept for external data).
pub fn labels_unique(space: &BigradedSpace) -> bool {
    space.blocks.values().all(|b| b.iter().collect::<HashSet<_>>().len() == b.len())
}

/// Differential of the tensor product complex, `d⊗1 + 1⊗d`.
pub fn tensor_differential<F: Field>(field: &F, dv: &GradedMap<F>, dw: &GradedMap<F>) -> Result<GradedMap<F>> {
    let a = dv.tensor(field, &GradedMap::identity(field, &dw.source));
    let b = GradedMap::identity(field, &dv.source).tensor(field, dw);
    a.add(field, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    fn space(blocks: &[((i64, i64), &[&str])]) -> BigradedSpace {
        BigradedSpace::from_blocks(
            blocks.iter().map(|((i, j), ls)| (Bidegree::new(*i, *j), ls.iter().map(|s| s.to_string()).collect())),
        )
        .unwrap()
    }

    #[test]
    fn suspension_moves_first_grading_down() {
        let v = space(&[((1, 0), &["a"])]);
        assert_eq!(v.suspend(1).dims(), BTreeMap::from([(Bidegree::new(0, 0), 1)]));
        let w = space(&[((0, 1), &["a"]), ((2, 3), &["b", "c"])]);
        let sw = w.adams_shift(1);
        assert_eq!(sw.dim(Bidegree::new(0, 0)), 1);
        assert_eq!(sw.dim(Bidegree::new(2, 2)), 2);
    }

    #[test]
    fn suspend_and_back_is_identity_on_differentials() {
        let f = PrimeField::new(7).unwrap();
        let v = space(&[((0, 0), &["a"]), ((1, 0), &["b"])]);
        let d = GradedMap::from_blocks(
            v.clone(),
            v.clone(),
            Bidegree::new(1, 0),
            [(Bidegree::new(0, 0), SparseMatrix::from_triplets(&f, 1, 1, [(0, 0, 3)]).unwrap())],
        )
        .unwrap();
        let sd = d.suspend(&f, 1);
        assert_eq!(sd.entry(Bidegree::new(-1, 0), "a", "b"), Some(4));
        assert_eq!(sd.suspend(&f, -1), d);
    }

    #[test]
    fn dual_negates_degrees() {
        let v = space(&[((1, -1), &["a", "b"])]);
        assert_eq!(v.dual().dims(), BTreeMap::from([(Bidegree::new(-1, 1), 2)]));
        assert_eq!(v.dual().dual(), v);
        assert_eq!(BigradedSpace::unit().dual().dims(), BigradedSpace::unit().dims());
    }

    #[test]
    fn tensor_sign_on_odd_left_factor() {
        let f = PrimeField::new(7).unwrap();
        let m = space(&[((1, 0), &["m"])]);
        let n = space(&[((0, 0), &["n0"]), ((1, 0), &["n1"])]);
        let d = GradedMap::from_blocks(
            n.clone(),
            n.clone(),
            Bidegree::new(1, 0),
            [(Bidegree::new(0, 0), SparseMatrix::identity(&f, 1))],
        )
        .unwrap();
        let one_d = GradedMap::identity(&f, &m).tensor(&f, &d);
        assert_eq!(one_d.entry(Bidegree::new(1, 0), "m⊗n0", "m⊗n1"), Some(f.from_i64(-1)));
    }

    #[test]
    fn unit_tensor_is_identity_shaped() {
        let v = space(&[((0, 1), &["a"]), ((2, 3), &["b", "c"])]);
        let kv = BigradedSpace::unit().tensor(&v);
        assert_eq!(kv.dims(), v.dims());
        assert_eq!(kv.labels(Bidegree::new(2, 3)), &["1⊗b".to_string(), "1⊗c".to_string()]);
    }
}
