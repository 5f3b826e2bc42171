use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exactla::field::Field;
use crate::exactla::sparse::{SparseMatrix, SparseVec};

/// Outcome of inserting a vector into an echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert<E> {
    /// The vector was independent and became basis vector number `k`.
    Independent(usize),
    /// The vector equals this combination of previously inserted inputs.
    Dependent(SparseVec<E>),
}

/// Incremental sparse echelon form with combination tracking.
///
/// Inputs are tagged with caller ids; every stored vector remembers how it was
/// built from tagged inputs, which is what `solve` and kernel extraction need.
/// Pivot rows are chosen Markowitz-style: among the nonzero rows of the reduced
/// vector take the one already touched by the fewest stored vectors, ties going
/// to the smaller row index.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    vecs: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_of_row: HashMap<usize, usize>,
    combos: Vec<SparseVec<F::Elem>>,
    ids: Vec<usize>,
    row_counts: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            vecs: Vec::new(),
            pivots: Vec::new(),
            pivot_of_row: HashMap::new(),
            combos: Vec::new(),
            ids: Vec::new(),
            row_counts: HashMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// Input ids of the independent inputs, in insertion order.
    pub fn independent_ids(&self) -> &[usize] {
        &self.ids
    }

    /// Returns the residual and the coefficients on stored vectors.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let f = &self.field;
        let mut v = v.clone();
        let mut coeffs = Vec::new();
        let mut todo: BTreeSet<usize> = v.iter().filter_map(|(r, _)| self.pivot_of_row.get(r).copied()).collect();
        while let Some(k) = todo.pop_first() {
            let p = self.pivots[k];
            let Some(a) = v.get(p).cloned() else { continue };
            let lead = self.vecs[k].get(p).expect("pivot entry present");
            let c = f.div(&a, lead).expect("pivot nonzero");
            v = v.add_scaled(f, &f.neg(&c), &self.vecs[k]);
            for (r, _) in self.vecs[k].iter() {
                if let Some(&j) = self.pivot_of_row.get(r) {
                    if j > k {
                        todo.insert(j);
                    }
                }
            }
            coeffs.push((k, c));
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).0.is_zero()
    }

    fn combo_of(&self, coeffs: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = SparseVec::new();
        for (k, c) in coeffs {
            acc = acc.add_scaled(&self.field, c, &self.combos[*k]);
        }
        acc
    }

    pub fn insert(&mut self, v: &SparseVec<F::Elem>, id: usize) -> Insert<F::Elem> {
        let (res, coeffs) = self.reduce(v);
        let combo = self.combo_of(&coeffs);
        if res.is_zero() {
            return Insert::Dependent(combo);
        }
        let pivot = res
            .iter()
            .map(|(r, _)| (*self.row_counts.get(r).unwrap_or(&0), *r))
            .min()
            .map(|(_, r)| r)
            .expect("nonzero residual");
        for (r, _) in res.iter() {
            *self.row_counts.entry(*r).or_insert(0) += 1;
        }
        let k = self.vecs.len();
        let f = &self.field;
        let own = SparseVec::unit(f, id).sub(f, &combo);
        self.vecs.push(res);
        self.pivots.push(pivot);
        self.pivot_of_row.insert(pivot, k);
        self.combos.push(own);
        self.ids.push(id);
        Insert::Independent(k)
    }

    /// Express `b` as a combination of inserted inputs (by id).
    pub fn solve(&self, b: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let (res, coeffs) = self.reduce(b);
        if !res.is_zero() {
            return Err(Error::Inconsistent);
        }
        Ok(self.combo_of(&coeffs))
    }
}

/// Dense counterpart of [`Echelon`], used when matrices are not sparse.
#[derive(Clone, Debug)]
pub struct DenseEchelon<F: Field> {
    field: F,
    dim: usize,
    vecs: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    combos: Vec<SparseVec<F::Elem>>,
    ids: Vec<usize>,
}

impl<F: Field> DenseEchelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        DenseEchelon { field, dim, vecs: Vec::new(), pivots: Vec::new(), combos: Vec::new(), ids: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    fn reduce(&self, v: &SparseVec<F::Elem>) -> (Vec<F::Elem>, Vec<(usize, F::Elem)>) {
        let f = &self.field;
        let mut d = v.to_dense(f, self.dim);
        let mut coeffs = Vec::new();
        for (k, row) in self.vecs.iter().enumerate() {
            let p = self.pivots[k];
            if f.is_zero(&d[p]) {
                continue;
            }
            let c = f.div(&d[p], &row[p]).expect("pivot nonzero");
            for (x, y) in d.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coeffs.push((k, c));
        }
        (d, coeffs)
    }

    fn combo_of(&self, coeffs: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = SparseVec::new();
        for (k, c) in coeffs {
            acc = acc.add_scaled(&self.field, c, &self.combos[*k]);
        }
        acc
    }

    pub fn insert(&mut self, v: &SparseVec<F::Elem>, id: usize) -> Insert<F::Elem> {
        let (res, coeffs) = self.reduce(v);
        let combo = self.combo_of(&coeffs);
        let f = &self.field;
        match res.iter().position(|x| !f.is_zero(x)) {
            None => Insert::Dependent(combo),
            Some(p) => {
                let k = self.vecs.len();
                self.combos.push(SparseVec::unit(f, id).sub(f, &combo));
                self.vecs.push(res);
                self.pivots.push(p);
                self.ids.push(id);
                Insert::Independent(k)
            }
        }
    }

    pub fn solve(&self, b: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let (res, coeffs) = self.reduce(b);
        if res.iter().any(|x| !self.field.is_zero(x)) {
            return Err(Error::Inconsistent);
        }
        Ok(self.combo_of(&coeffs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Auto,
    Sparse,
    Dense,
}

const DENSE_THRESHOLD: f64 = 0.25;

#[derive(Clone, Debug)]
enum Solver<F: Field> {
    Sparse(Echelon<F>),
    Dense(DenseEchelon<F>),
}

/// Rank, kernel and image of a matrix, plus what is needed to solve against it.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub rank: usize,
    /// Kernel basis, vectors of length `cols`.
    pub kernel: Vec<SparseVec<F::Elem>>,
    /// Image basis: the independent columns themselves.
    pub image: Vec<SparseVec<F::Elem>>,
    /// Column indices of the independent columns.
    pub pivot_columns: Vec<usize>,
    solver: Solver<F>,
}

impl<F: Field> Decomposition<F> {
    /// Some `x` with `M x = b`, or `Inconsistent`.
    pub fn solve(&self, b: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        match &self.solver {
            Solver::Sparse(e) => e.solve(b),
            Solver::Dense(e) => e.solve(b),
        }
    }

    pub fn backend(&self) -> Backend {
        match self.solver {
            Solver::Sparse(_) => Backend::Sparse,
            Solver::Dense(_) => Backend::Dense,
        }
    }
}

pub fn rank_kernel_image<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Decomposition<F> {
    rank_kernel_image_with(field, m, Backend::Auto)
}

pub fn rank_kernel_image_with<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, backend: Backend) -> Decomposition<F> {
    let dense = match backend {
        Backend::Auto => m.density() > DENSE_THRESHOLD,
        Backend::Sparse => false,
        Backend::Dense => true,
    };
    let mut kernel = Vec::new();
    let mut image = Vec::new();
    let mut pivot_columns = Vec::new();
    let mut record = |c: usize, ins: Insert<F::Elem>, col: &SparseVec<F::Elem>| match ins {
        Insert::Independent(_) => {
            image.push(col.clone());
            pivot_columns.push(c);
        }
        Insert::Dependent(combo) => kernel.push(SparseVec::unit(field, c).sub(field, &combo)),
    };
    let solver = if dense {
        let mut e = DenseEchelon::new(field.clone(), m.rows());
        for (c, col) in m.columns().iter().enumerate() {
            let ins = e.insert(col, c);
            record(c, ins, col);
        }
        Solver::Dense(e)
    } else {
        let mut e = Echelon::new(field.clone());
        for (c, col) in m.columns().iter().enumerate() {
            let ins = e.insert(col, c);
            record(c, ins, col);
        }
        Solver::Sparse(e)
    };
    Decomposition { rank: image.len(), kernel, image, pivot_columns, solver }
}

pub fn solve<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, b: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
    if b.max_index().is_some_and(|i| i >= m.rows()) {
        return Err(Error::Malformed("right-hand side longer than matrix".into()));
    }
    rank_kernel_image(field, m).solve(b)
}
