use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<E: Clone + PartialEq> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, i: usize) -> Self {
        SparseVec { entries: vec![(i, field.one())] }
    }

    /// Build from arbitrary terms: duplicates are summed, zeros dropped.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, terms: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut t: Vec<(usize, E)> = terms.into_iter().collect();
        t.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(t.len());
        for (i, c) in t {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = field.add(acc, &c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !field.is_zero(c));
        SparseVec { entries }
    }

    /// Trusted constructor: caller guarantees sorted, distinct, nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, E)>) -> Self {
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// self + c * other
    pub fn add_scaled<F: Field<Elem = E>>(&self, field: &F, c: &E, other: &Self) -> Self {
        if field.is_zero(c) {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a == x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, field.mul(c, &y[b].1)));
                b += 1;
            } else {
                let s = field.add(&x[a].1, &field.mul(c, &y[b].1));
                if !field.is_zero(&s) {
                    out.push((x[a].0, s));
                }
                a += 1;
                b += 1;
            }
        }
        out.retain(|(_, v)| !field.is_zero(v));
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.neg(&field.one()), other)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, field.mul(c, v))).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, field.neg(v))).collect() }
    }

    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i == j {
                acc = field.add(&acc, &field.mul(&self.entries[a].1, &other.entries[b].1));
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    /// Reindex entries through `f`; entries mapped to `None` are dropped.
    pub fn remap<F: Field<Elem = E>>(&self, field: &F, f: impl Fn(usize) -> Option<usize>) -> Self {
        SparseVec::from_terms(field, self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut d = vec![field.zero(); len];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, d: &[E]) -> Self {
        SparseVec {
            entries: d
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }
}

/// Column-stored sparse matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| SparseVec::unit(field, i)).collect() }
    }

    /// Triplets (row, col, value). Duplicate positions are rejected, zeros are dropped.
    pub fn from_triplets<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Malformed(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            per_col[c].push((r, v));
        }
        let mut columns = Vec::with_capacity(cols);
        for mut col in per_col {
            col.sort_by_key(|(r, _)| *r);
            if col.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Malformed("duplicate matrix entry".into()));
            }
            col.retain(|(_, v)| !field.is_zero(v));
            columns.push(SparseVec::from_sorted(col));
        }
        Ok(SparseMatrix { rows, cols, columns })
    }

    /// Columns must be vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Result<Self> {
        if columns.iter().any(|c| c.max_index().is_some_and(|m| m >= rows)) {
            return Err(Error::Malformed("column entry out of range".into()));
        }
        Ok(SparseMatrix { rows, cols: columns.len(), columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec<E> {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows * self.cols) as f64
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Triplets sorted by (row, col).
    pub fn triplets(&self) -> Vec<(usize, usize, E)> {
        let mut t: Vec<(usize, usize, E)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        t.sort_by_key(|(r, c, _)| (*r, *c));
        t
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.columns[c].get(r)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, x: &SparseVec<E>) -> SparseVec<E> {
        let mut acc = SparseVec::new();
        for (c, v) in x.iter() {
            acc = acc.add_scaled(field, v, &self.columns[*c]);
        }
        acc
    }

    /// self ∘ other
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if other.rows != self.cols {
            return Err(Error::Malformed("incompatible matrix product".into()));
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.mul_vec(field, c)).collect(),
        })
    }

    pub fn transpose<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let mut cols: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                cols[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols.into_iter().map(|t| SparseVec::from_terms(field, t)).collect(),
        }
    }

    pub fn map_entries<F: Field<Elem = E>>(&self, field: &F, f: impl Fn(usize, usize, &E) -> E) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .enumerate()
                .map(|(c, col)| SparseVec::from_terms(field, col.iter().map(|(r, v)| (*r, f(*r, c, v)))))
                .collect(),
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Malformed("incompatible matrix sum".into()));
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(field, b)).collect(),
        })
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut d = vec![vec![field.zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                d[*r][c] = v.clone();
            }
        }
        d
    }
}
