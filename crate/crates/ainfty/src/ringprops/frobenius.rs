//! Frobenius test for finite connected graded algebras via one-dimensional socles.

use std::collections::BTreeMap;

use super::verdict::{Outcome, Verdict};
use crate::ainf::{Ix, TruncAInfAlgebra};
use crate::bigraded::Bidegree;
use crate::dgmod::TrustWindow;
use crate::error::{Error, Result};
use crate::exactla::{rank_kernel_image, Field, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct FrobeniusReport<F: Field> {
    pub verdict: Verdict,
    /// `{a : m·a = 0 for all m in I}`
    pub left_socle: Vec<SparseVec<F::Elem>>,
    /// `{a : a·m = 0 for all m in I}`
    pub right_socle: Vec<SparseVec<F::Elem>>,
    pub left_labels: Vec<String>,
    pub right_labels: Vec<String>,
}

impl<F: Field> FrobeniusReport<F> {
    pub fn passed(&self) -> bool {
        self.verdict.outcome == Outcome::Yes
    }
}

fn socle<F: Field>(a: &TruncAInfAlgebra<F>, left: bool) -> Vec<(Bidegree, SparseVec<F::Elem>)> {
    let k = a.field();
    let n = a.dim();
    let ideal: Vec<Ix> = a.ideal().collect();
    let mut degs: Vec<Bidegree> = a.basis().iter().map(|b| b.deg).collect();
    degs.sort();
    degs.dedup();
    let mut out = Vec::new();
    for d in degs {
        let elems: Vec<Ix> = (0..n as Ix).filter(|&i| a.deg(i) == d).collect();
        let cols: Vec<SparseVec<F::Elem>> = elems
            .iter()
            .map(|&x| {
                let mut col = Vec::new();
                for (r, &m) in ideal.iter().enumerate() {
                    let p = if left { a.op(2, &[m, x]) } else { a.op(2, &[x, m]) };
                    col.extend(p.iter().map(|(t, c)| (r * n + t, c.clone())));
                }
                SparseVec::from_terms(k, col)
            })
            .collect();
        let m = SparseMatrix::from_columns(ideal.len().max(1) * n, cols).expect("rows cover products");
        for v in rank_kernel_image(k, &m).kernel {
            out.push((d, v.remap(k, |j| Some(elems[j] as usize))));
        }
    }
    out
}

/// Reads only `m_2`: higher products do not enter the Frobenius property of `HA`.
pub fn is_frobenius<F: Field>(a: &TruncAInfAlgebra<F>) -> Result<FrobeniusReport<F>> {
    if !a.is_finite() {
        return Err(Error::NotFiniteDimensional("the algebra is only known through a window".into()));
    }
    if let Some(x) = a.ideal().find(|&x| a.deg(x).adams == 0) {
        return Err(Error::NotConnected(format!("{} has Adams degree 0", a.label(x))));
    }
    if !a.has_zero_differential() {
        return Err(Error::NonzeroDifferential);
    }
    let left = socle(a, true);
    let right = socle(a, false);
    let mut notes = Vec::new();
    let mut evidence = BTreeMap::new();
    for (d, _) in &left {
        *evidence.entry(*d).or_insert(0) += 1;
    }
    if left.len() != right.len() {
        notes.push(format!("left socle has dimension {}, right socle {}", left.len(), right.len()));
    }
    let (outcome, class_degree) = if left.len() == 1 && right.len() == 1 {
        if left[0].0 != right[0].0 {
            notes.push(format!("socles in different bidegrees {} and {}", left[0].0, right[0].0));
        }
        (Outcome::Yes, Some(left[0].0))
    } else {
        notes.push(format!("socle dimensions {} (left) and {} (right)", left.len(), right.len()));
        (Outcome::No, None)
    };
    let verdict = Verdict::new(outcome, class_degree, evidence, TrustWindow::ALL, notes);
    let describe = |s: &[(Bidegree, SparseVec<F::Elem>)]| s.iter().map(|(_, v)| a.describe_vec(v)).collect::<Vec<_>>();
    Ok(FrobeniusReport {
        verdict,
        left_labels: describe(&left),
        right_labels: describe(&right),
        left_socle: left.into_iter().map(|(_, v)| v).collect(),
        right_socle: right.into_iter().map(|(_, v)| v).collect(),
    })
}
