use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::bigraded::{Bidegree, BigradedSpace, GradedMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix, SparseVec};

/// Which side of zero the augmentation ideal lives on, in Adams degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Positive,
    Negative,
    /// Some ideal element sits in Adams degree 0, or both signs occur.
    Unconnected,
}

impl Orientation {
    /// +1, -1, or 0.
    pub fn sign(&self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
            Orientation::Unconnected => 0,
        }
    }

    pub fn flip(&self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
            Orientation::Unconnected => Orientation::Unconnected,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Orientation::Positive => "positive",
            Orientation::Negative => "negative",
            Orientation::Unconnected => "unconnected",
        }
    }

    /// Orientation forced by a set of ideal degrees.
    pub fn of_support(degs: impl IntoIterator<Item = Bidegree>) -> Orientation {
        let (mut pos, mut neg, mut zero) = (false, false, false);
        for d in degs {
            match d.adams.signum() {
                1 => pos = true,
                -1 => neg = true,
                _ => zero = true,
            }
        }
        match (pos, neg, zero) {
            (_, false, false) => Orientation::Positive,
            (false, true, false) => Orientation::Negative,
            _ => Orientation::Unconnected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub deg: Bidegree,
}

/// Basis index; 0 is always the unit.
pub type Ix = u32;

pub const UNIT: Ix = 0;

/// Structure constants of one operation, keyed by tuples of ideal basis indices.
pub type OpTable<E> = HashMap<Vec<Ix>, SparseVec<E>>;

/// Finite truncation of a strictly unital augmented A∞-algebra.
///
/// The basis is the unit followed by a basis of the augmentation ideal `I`.
/// Operations are stored on ideal tuples only; the unit rules are implicit.
/// When the source algebra is infinite, the table is its quotient by the ideal
/// of elements beyond the Adams bound, which is again an A∞-algebra, so every
/// construction is exact in Adams degrees up to `validity`.
#[derive(Clone, Debug)]
pub struct TruncAInfAlgebra<F: Field> {
    field: F,
    basis: Vec<BasisElement>,
    orientation: Orientation,
    adams_bound: i64,
    arity_bound: usize,
    finite: bool,
    validity: i64,
    ops: Vec<OpTable<F::Elem>>,
    by_label: HashMap<String, Ix>,
    empty: OpTable<F::Elem>,
}

impl<F: Field> PartialEq for TruncAInfAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.orientation == other.orientation
            && self.adams_bound == other.adams_bound
            && self.finite == other.finite
            && self.max_arity() == other.max_arity()
            && (1..=self.max_arity()).all(|n| self.op_table(n) == other.op_table(n))
    }
}

impl<F: Field> TruncAInfAlgebra<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ideal(&self) -> impl Iterator<Item = Ix> + '_ {
        1..self.basis.len() as Ix
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn deg(&self, i: Ix) -> Bidegree {
        self.basis[i as usize].deg
    }

    pub fn coh(&self, i: Ix) -> i64 {
        self.basis[i as usize].deg.coh
    }

    pub fn label(&self, i: Ix) -> &str {
        &self.basis[i as usize].label
    }

    pub fn index(&self, label: &str) -> Option<Ix> {
        self.by_label.get(label).copied()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn adams_bound(&self) -> i64 {
        self.adams_bound
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    /// True when the table is the whole algebra, not a truncation of something larger.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Same tables, declared to be the whole algebra (or a truncation) rather than probed.
    pub fn with_finite(mut self, finite: bool) -> Self {
        self.finite = finite;
        self
    }

    /// Adams radius inside which the table agrees with the algebra it stands for.
    pub fn validity(&self) -> i64 {
        self.validity
    }

    /// Largest arity with a stored (possibly empty) table.
    pub fn max_arity(&self) -> usize {
        self.ops.iter().rposition(|t| !t.is_empty()).map_or(0, |i| i + 1)
    }

    pub fn op_table(&self, n: usize) -> &OpTable<F::Elem> {
        if n >= 1 && n <= self.ops.len() {
            &self.ops[n - 1]
        } else {
            &self.empty
        }
    }

    pub fn is_dg(&self) -> bool {
        self.max_arity() <= 2
    }

    pub fn has_zero_differential(&self) -> bool {
        self.op_table(1).is_empty()
    }

    /// `m_n` on a basis tuple, unit rules included.
    pub fn op(&self, n: usize, x: &[Ix]) -> SparseVec<F::Elem> {
        debug_assert_eq!(x.len(), n);
        if x.contains(&UNIT) {
            if n == 2 {
                return if x[0] == UNIT {
                    SparseVec::unit(&self.field, x[1] as usize)
                } else if x[1] == UNIT {
                    SparseVec::unit(&self.field, x[0] as usize)
                } else {
                    unreachable!()
                };
            }
            return SparseVec::new();
        }
        match self.ops.get(n.wrapping_sub(1)).and_then(|t| t.get(x)) {
            Some(v) => v.clone(),
            None => SparseVec::new(),
        }
    }

    /// `m_n` extended multilinearly to vector inputs.
    pub fn op_multi(&self, factors: &[SparseVec<F::Elem>]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let n = factors.len();
        let mut acc = Vec::new();
        super::expand_tensor(f, factors, |x, c| {
            for (k, z) in self.op(n, x).iter() {
                acc.push((*k, f.mul(c, z)));
            }
        });
        SparseVec::from_terms(f, acc)
    }

    /// Product of two elements given as vectors.
    pub fn mul(&self, a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let c = f.mul(x, y);
                for (k, z) in self.op(2, &[*i as Ix, *j as Ix]).iter() {
                    acc.push((*k, f.mul(&c, z)));
                }
            }
        }
        SparseVec::from_terms(f, acc)
    }

    /// `m_1` applied to a vector.
    pub fn differential(&self, a: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = SparseVec::new();
        for (i, x) in a.iter() {
            acc = acc.add_scaled(f, x, &self.op(1, &[*i as Ix]));
        }
        acc
    }

    pub fn space(&self) -> BigradedSpace {
        let mut s = BigradedSpace::new();
        for b in &self.basis {
            s.push(b.deg, b.label.clone()).expect("labels unique");
        }
        s
    }

    /// Position of each basis element inside its bidegree block of `space()`.
    pub fn block_positions(&self) -> Vec<usize> {
        let mut seen: BTreeMap<Bidegree, usize> = BTreeMap::new();
        self.basis
            .iter()
            .map(|b| {
                let c = seen.entry(b.deg).or_insert(0);
                *c += 1;
                *c - 1
            })
            .collect()
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.space().dims()
    }

    /// Augmentation as a graded map onto the ground field.
    pub fn augmentation(&self) -> GradedMap<F> {
        let mut m = GradedMap::zero(self.space(), BigradedSpace::unit(), Bidegree::ZERO);
        let pos = self.block_positions();
        let cols = self.space().dim(Bidegree::ZERO);
        let block = SparseMatrix::from_triplets(&self.field, 1, cols, [(0, pos[0], self.field.one())]).expect("shape");
        m.set_block(Bidegree::ZERO, block).expect("shape");
        m
    }

    /// Differential `m_1` as a graded map.
    pub fn differential_map(&self) -> GradedMap<F> {
        let space = self.space();
        let pos = self.block_positions();
        let mut trip: BTreeMap<Bidegree, Vec<(usize, usize, F::Elem)>> = BTreeMap::new();
        for (x, v) in self.op_table(1) {
            let d = self.deg(x[0]);
            for (k, c) in v.iter() {
                trip.entry(d).or_default().push((pos[*k], pos[x[0] as usize], c.clone()));
            }
        }
        let mut m = GradedMap::zero(space.clone(), space, Bidegree::new(1, 0));
        for (d, t) in trip {
            let (r, c) = (m.target.dim(d + Bidegree::new(1, 0)), m.source.dim(d));
            m.set_block(d, SparseMatrix::from_triplets(&self.field, r, c, t).expect("valid")).expect("shape");
        }
        m
    }

    /// Basis indices of ideal elements in a bidegree.
    pub fn elements_in(&self, d: Bidegree) -> Vec<Ix> {
        self.ideal().filter(|&i| self.deg(i) == d).collect()
    }

    /// Ideal tuples of length `n` whose total |Adams| is at most `budget`.
    /// With `with_unit`, tuples may also contain the unit.
    pub fn tuples(&self, n: usize, budget: i64, with_unit: bool) -> Vec<Vec<Ix>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let start = if with_unit { 0 } else { 1 };
        let elems: Vec<Ix> = (start..self.basis.len() as Ix).collect();
        fn rec<F: Field>(
            a: &TruncAInfAlgebra<F>,
            elems: &[Ix],
            n: usize,
            budget: i64,
            cur: &mut Vec<Ix>,
            out: &mut Vec<Vec<Ix>>,
        ) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for &e in elems {
                let w = a.deg(e).adams.abs();
                if w <= budget {
                    cur.push(e);
                    rec(a, elems, n, budget - w, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, &elems, n, budget, &mut cur, &mut out);
        out
    }

    /// Same algebra with the ideal basis reordered: new position `k` holds old element `perm[k-1]`.
    pub fn permute_basis(&self, perm: &[Ix]) -> Result<Self> {
        let n = self.basis.len() - 1;
        let mut seen = vec![false; n + 1];
        if perm.len() != n || perm.iter().any(|&p| p == UNIT || p as usize > n || std::mem::replace(&mut seen[p as usize], true)) {
            return Err(Error::Malformed("not a permutation of the ideal basis".into()));
        }
        let mut new_of_old = vec![0 as Ix; n + 1];
        for (k, &p) in perm.iter().enumerate() {
            new_of_old[p as usize] = (k + 1) as Ix;
        }
        let mut b = AlgebraBuilder::new(self.field.clone(), self.orientation, self.adams_bound)
            .arity_bound(self.arity_bound)
            .finite(self.finite)
            .validity(self.validity);
        for &p in perm {
            b.element(self.label(p), self.deg(p))?;
        }
        for n in 1..=self.max_arity() {
            for (x, v) in self.op_table(n) {
                let y: Vec<Ix> = x.iter().map(|&i| new_of_old[i as usize]).collect();
                let w = v.remap(&self.field, |i| Some(new_of_old[i] as usize));
                b.set_op(n, y, w)?;
            }
        }
        b.build()
    }

    /// Copy with a new arity bound (operations above it must vanish).
    pub fn with_arity_bound(&self, n: usize) -> Result<Self> {
        if self.max_arity() > n {
            return Err(Error::WindowOverflow(format!("operations up to arity {} exceed bound {n}", self.max_arity())));
        }
        let mut a = self.clone();
        a.arity_bound = n;
        Ok(a)
    }

    /// Rebuild with the same basis but different operations.
    pub fn with_ops(&self, ops: Vec<OpTable<F::Elem>>) -> Result<Self> {
        let mut b = AlgebraBuilder::new(self.field.clone(), self.orientation, self.adams_bound)
            .arity_bound(self.arity_bound.max(ops.len()))
            .finite(self.finite)
            .validity(self.validity);
        for e in self.basis.iter().skip(1) {
            b.element(&e.label, e.deg)?;
        }
        for (k, t) in ops.into_iter().enumerate() {
            for (x, v) in t {
                b.set_op(k + 1, x, v)?;
            }
        }
        b.build()
    }

    pub fn describe_vec(&self, v: &SparseVec<F::Elem>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("{}·{}", self.field.format(c), self.label(*i as Ix)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn describe_tuple(&self, x: &[Ix]) -> String {
        x.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join("⊗")
    }
}

impl<F: Field> fmt::Display for TruncAInfAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A∞ algebra over {} ({} basis elements, Adams {})", self.field.name(), self.dim(), self.orientation.name())?;
        for n in 1..=self.max_arity() {
            let mut keys: Vec<_> = self.op_table(n).keys().collect();
            keys.sort();
            for x in keys {
                writeln!(f, "  m{n}({}) = {}", self.describe_tuple(x), self.describe_vec(&self.op_table(n)[x]))?;
            }
        }
        Ok(())
    }
}

/// Builder for [`TruncAInfAlgebra`]; validates degrees, unit rules and orientation.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder<F: Field> {
    field: F,
    basis: Vec<BasisElement>,
    orientation: Orientation,
    adams_bound: i64,
    arity_bound: usize,
    finite: bool,
    validity: Option<i64>,
    ops: Vec<OpTable<F::Elem>>,
    by_label: HashMap<String, Ix>,
}

impl<F: Field> AlgebraBuilder<F> {
    pub fn new(field: F, orientation: Orientation, adams_bound: i64) -> Self {
        let unit = BasisElement { label: "1".into(), deg: Bidegree::ZERO };
        AlgebraBuilder {
            field,
            basis: vec![unit],
            orientation,
            adams_bound,
            arity_bound: 6,
            finite: false,
            validity: None,
            ops: Vec::new(),
            by_label: HashMap::from([("1".to_string(), UNIT)]),
        }
    }

    pub fn arity_bound(mut self, n: usize) -> Self {
        self.arity_bound = n;
        self
    }

    pub fn finite(mut self, finite: bool) -> Self {
        self.finite = finite;
        self
    }

    pub fn validity(mut self, v: i64) -> Self {
        self.validity = Some(v);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.len() <= 1
    }

    pub fn deg(&self, i: Ix) -> Bidegree {
        self.basis[i as usize].deg
    }

    pub fn index(&self, label: &str) -> Option<Ix> {
        self.by_label.get(label).copied()
    }

    /// Add an ideal basis element; returns its index.
    pub fn element(&mut self, label: &str, deg: Bidegree) -> Result<Ix> {
        if self.by_label.contains_key(label) {
            return Err(Error::Malformed(format!("duplicate basis label {label}")));
        }
        let i = self.basis.len() as Ix;
        self.basis.push(BasisElement { label: label.to_string(), deg });
        self.by_label.insert(label.to_string(), i);
        Ok(i)
    }

    /// Set `m_n(x) = v` on an ideal tuple (overwrites).
    pub fn set_op(&mut self, n: usize, x: Vec<Ix>, v: SparseVec<F::Elem>) -> Result<()> {
        if n == 0 || x.len() != n {
            return Err(Error::Malformed(format!("m{n} given {} inputs", x.len())));
        }
        if x.iter().any(|&i| i == UNIT || i as usize >= self.basis.len()) {
            return Err(Error::Malformed(format!("m{n} tuple {x:?} must consist of ideal elements")));
        }
        while self.ops.len() < n {
            self.ops.push(HashMap::new());
        }
        if v.is_zero() {
            self.ops[n - 1].remove(&x);
        } else {
            self.ops[n - 1].insert(x, v);
        }
        Ok(())
    }

    /// Add `c·v` to `m_n(x)`.
    pub fn add_op(&mut self, n: usize, x: Vec<Ix>, v: &SparseVec<F::Elem>) -> Result<()> {
        let cur = self.ops.get(n.wrapping_sub(1)).and_then(|t| t.get(&x)).cloned().unwrap_or_default();
        let s = cur.add(&self.field, v);
        self.set_op(n, x, s)
    }

    pub fn get_op(&self, n: usize, x: &[Ix]) -> SparseVec<F::Elem> {
        self.ops.get(n.wrapping_sub(1)).and_then(|t| t.get(x)).cloned().unwrap_or_default()
    }

    pub fn build(self) -> Result<TruncAInfAlgebra<F>> {
        let AlgebraBuilder { field, basis, orientation, adams_bound, arity_bound, finite, validity, mut ops, by_label } =
            self;
        while ops.last().is_some_and(|t| t.is_empty()) {
            ops.pop();
        }
        let ideal_degs = basis.iter().skip(1).map(|b| b.deg);
        let support = Orientation::of_support(ideal_degs.clone());
        match orientation {
            Orientation::Unconnected => {}
            o => {
                if support == Orientation::Unconnected || (basis.len() > 1 && support != o) {
                    return Err(Error::Malformed(format!(
                        "declared {} orientation does not match the ideal support",
                        o.name()
                    )));
                }
                if let Some(b) = basis.iter().skip(1).find(|b| b.deg.adams.abs() > adams_bound) {
                    return Err(Error::WindowOverflow(format!("{} lies beyond Adams bound {adams_bound}", b.label)));
                }
            }
        }
        if ops.len() > arity_bound {
            return Err(Error::WindowOverflow(format!(
                "operation of arity {} exceeds the arity bound {arity_bound}",
                ops.len()
            )));
        }
        for (k, t) in ops.iter().enumerate() {
            let n = k + 1;
            let shift = Bidegree::new(2 - n as i64, 0);
            for (x, v) in t {
                let d = x.iter().fold(shift, |acc, &i| acc + basis[i as usize].deg);
                for (j, _) in v.iter() {
                    if *j == 0 {
                        return Err(Error::Malformed(format!("m{n} has a unit component")));
                    }
                    if *j >= basis.len() {
                        return Err(Error::Malformed(format!("m{n} value out of range")));
                    }
                    if basis[*j].deg != d {
                        return Err(Error::Malformed(format!(
                            "m{n}({}) has a term {} of degree {}, expected {d}",
                            x.iter().map(|&i| basis[i as usize].label.clone()).collect::<Vec<_>>().join(","),
                            basis[*j].label,
                            basis[*j].deg
                        )));
                    }
                }
            }
        }
        let validity = validity.unwrap_or(adams_bound).min(adams_bound);
        Ok(TruncAInfAlgebra {
            field,
            basis,
            orientation,
            adams_bound,
            arity_bound,
            finite,
            validity,
            ops,
            by_label,
            empty: HashMap::new(),
        })
    }
}
