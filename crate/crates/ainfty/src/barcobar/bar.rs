//! The bar construction `B(A) = T(SI)` with its coderivation `b`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{desuspension_odd, map_from_columns, space_of};
use crate::ainf::{compositions, AInfMorphism, Ix, Orientation, TruncAInfAlgebra};
use crate::bigraded::{Bidegree, BigradedSpace, GradedMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

/// Sign attached to `m_n` inside `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BarSign {
    /// `-(-1)^{n(n-1)/2} m_n`: the sign under which `b∘b = 0` is equivalent to SI(n)
    /// in the `(-1)^{r+st}` convention.
    #[default]
    Graded,
    /// `(-1)^n m_n`.
    Literal,
}

impl BarSign {
    pub fn op_negative(self, n: usize) -> bool {
        match self {
            BarSign::Graded => (n * (n - 1) / 2) % 2 == 0,
            BarSign::Literal => n % 2 == 1,
        }
    }
}

/// Sign attached to `f_n` in the induced coalgebra map: `(-1)^{n(n-1)/2}`.
pub fn morphism_hat_negative(n: usize) -> bool {
    (n * (n - 1) / 2) % 2 == 1
}

/// Nonempty words in the ideal basis with total |Adams| at most `budget`, ordered by |Adams|,
/// then length, then lexicographically. The empty word comes first.
pub fn enumerate_words<F: Field>(a: &TruncAInfAlgebra<F>, budget: i64) -> Vec<Vec<Ix>> {
    let elems: Vec<(Ix, i64)> = a.ideal().map(|i| (i, a.deg(i).adams.abs())).filter(|(_, w)| *w > 0).collect();
    let mut out = vec![vec![]];
    let mut cur = Vec::new();
    fn rec(elems: &[(Ix, i64)], budget: i64, cur: &mut Vec<Ix>, out: &mut Vec<Vec<Ix>>) {
        for &(e, w) in elems {
            if w <= budget {
                cur.push(e);
                out.push(cur.clone());
                rec(elems, budget - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(&elems, budget, &mut cur, &mut out);
    let weight = |w: &Vec<Ix>| w.iter().map(|&i| a.deg(i).adams.abs()).sum::<i64>();
    out.sort_by(|x, y| (weight(x), x.len(), x).cmp(&(weight(y), y.len(), y)));
    out
}

/// `[a_1|…|a_m]`, or `[]` for the empty word.
pub fn word_label<F: Field>(a: &TruncAInfAlgebra<F>, w: &[Ix]) -> String {
    format!("[{}]", w.iter().map(|&i| a.label(i)).collect::<Vec<_>>().join("|"))
}

/// Bar degree `(Σ(deg₁ a_i - 1), Σ deg₂ a_i)`.
pub fn word_degree<F: Field>(a: &TruncAInfAlgebra<F>, w: &[Ix]) -> Bidegree {
    w.iter().fold(Bidegree::ZERO, |acc, &i| acc + a.deg(i) - Bidegree::new(1, 0))
}

/// Finite truncation of `B(A)`: all words of total |Adams| at most the bound.
#[derive(Clone, Debug)]
pub struct BarCoalgebra<F: Field> {
    algebra: Arc<TruncAInfAlgebra<F>>,
    adams_bound: i64,
    sign: BarSign,
    words: Vec<Vec<Ix>>,
    index: HashMap<Vec<Ix>, usize>,
    degs: Vec<Bidegree>,
    labels: Vec<String>,
    diff: Vec<SparseVec<F::Elem>>,
}

/// Linear map between word bases, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMap<E> {
    pub cols: Vec<SparseVec<E>>,
}

pub(crate) fn require_connected<F: Field>(a: &TruncAInfAlgebra<F>, what: &str) -> Result<()> {
    if a.orientation() == Orientation::Unconnected {
        return Err(Error::NotAdamsConnected(format!(
            "{what}: the augmentation ideal meets Adams degree 0, so words of every length share a bidegree"
        )));
    }
    Ok(())
}

pub(crate) fn require_window<F: Field>(a: &TruncAInfAlgebra<F>, adams_bound: i64) -> Result<()> {
    if !a.is_finite() && adams_bound > a.validity() {
        return Err(Error::WindowOverflow(format!(
            "requested Adams bound {adams_bound} exceeds the algebra's validity {}",
            a.validity()
        )));
    }
    Ok(())
}

pub fn bar<F: Field>(a: &TruncAInfAlgebra<F>, adams_bound: i64) -> Result<BarCoalgebra<F>> {
    bar_with(a, adams_bound, BarSign::Graded)
}

pub fn bar_with<F: Field>(a: &TruncAInfAlgebra<F>, adams_bound: i64, sign: BarSign) -> Result<BarCoalgebra<F>> {
    require_connected(a, "bar construction")?;
    require_window(a, adams_bound)?;
    let algebra = Arc::new(a.clone());
    let words = enumerate_words(a, adams_bound);
    let index: HashMap<Vec<Ix>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let degs: Vec<Bidegree> = words.iter().map(|w| word_degree(a, w)).collect();
    let labels: Vec<String> = words.iter().map(|w| word_label(a, w)).collect();
    let k = a.field();
    let diff = words
        .iter()
        .map(|w| {
            let m = w.len();
            let mut acc = Vec::new();
            let mut prefix_odd = false;
            for j in 0..m {
                for n in 1..=m - j {
                    let v = a.op(n, &w[j..j + n]);
                    if v.is_zero() {
                        continue;
                    }
                    let odd = prefix_odd ^ sign.op_negative(n) ^ desuspension_odd(w[j..j + n].iter().map(|&i| a.coh(i)));
                    for (e, c) in v.iter() {
                        let mut u = Vec::with_capacity(m - n + 1);
                        u.extend_from_slice(&w[..j]);
                        u.push(*e as Ix);
                        u.extend_from_slice(&w[j + n..]);
                        let t = index[&u];
                        acc.push((t, k.signed(!odd, c)));
                    }
                }
                prefix_odd ^= (a.coh(w[j]) - 1).rem_euclid(2) == 1;
            }
            SparseVec::from_terms(k, acc)
        })
        .collect();
    Ok(BarCoalgebra { algebra, adams_bound, sign, words, index, degs, labels, diff })
}

impl<F: Field> BarCoalgebra<F> {
    pub fn algebra(&self) -> &TruncAInfAlgebra<F> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn adams_bound(&self) -> i64 {
        self.adams_bound
    }

    pub fn sign(&self) -> BarSign {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<Ix>] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &[Ix] {
        &self.words[i]
    }

    pub fn index(&self, w: &[Ix]) -> Option<usize> {
        self.index.get(w).copied()
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

    /// `b` on a basis word.
    pub fn differential(&self, i: usize) -> &SparseVec<F::Elem> {
        &self.diff[i]
    }

    pub fn differential_columns(&self) -> &[SparseVec<F::Elem>] {
        &self.diff
    }

    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        super::apply_columns(self.field(), &self.diff, v)
    }

    pub fn space(&self) -> BigradedSpace {
        space_of(&self.degs, &self.labels)
    }

    pub fn differential_map(&self) -> GradedMap<F> {
        map_from_columns(self.field(), &self.degs, &self.labels, &self.diff, Bidegree::new(1, 0))
    }

    /// Deconcatenations `(prefix, suffix)` of a word, including the trivial ones.
    pub fn coproduct(&self, i: usize) -> Vec<(usize, usize)> {
        let w = &self.words[i];
        (0..=w.len()).map(|j| (self.index[&w[..j]], self.index[&w[j..]])).collect()
    }

    /// First word on which `b∘b` is nonzero.
    pub fn square_zero_witness(&self) -> Option<(String, String)> {
        (0..self.dim()).find_map(|i| {
            let bb = self.apply(&self.diff[i]);
            (!bb.is_zero()).then(|| (self.labels[i].clone(), self.describe(&bb)))
        })
    }

    pub fn describe(&self, v: &SparseVec<F::Elem>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter().map(|(i, c)| format!("{}·{}", self.field().format(c), self.labels[*i])).collect::<Vec<_>>().join(" + ")
    }
}

/// The coalgebra map `B(f)`: `[a_1|…|a_m] ↦ Σ ± [f_{i_1}(…)|…|f_{i_q}(…)]`.
pub fn bar_morphism<F: Field>(f: &AInfMorphism<F>, source: &BarCoalgebra<F>, target: &BarCoalgebra<F>) -> Result<WordMap<F::Elem>> {
    if *source.algebra != *f.source() || *target.algebra != *f.target() {
        return Err(Error::Malformed("bar coalgebras do not match the morphism".into()));
    }
    let k = source.field();
    let a = f.source();
    let mut cols = Vec::with_capacity(source.dim());
    for w in source.words() {
        let mut acc: Vec<(usize, F::Elem)> = Vec::new();
        for parts in compositions(w.len()) {
            if parts.iter().any(|&i| i > f.arity_bound()) {
                return Err(Error::WindowOverflow(format!("word of length {} needs f beyond its arity bound", w.len())));
            }
            let mut factors = Vec::with_capacity(parts.len());
            let mut odd = false;
            let mut start = 0;
            for &i in &parts {
                let block = &w[start..start + i];
                odd ^= morphism_hat_negative(i) ^ desuspension_odd(block.iter().map(|&x| a.coh(x)));
                factors.push(f.component(i, block));
                start += i;
            }
            if factors.iter().any(|v| v.is_zero()) {
                continue;
            }
            crate::ainf::expand_tensor(k, &factors, |u, c| {
                let t = target.index(u).expect("morphisms preserve Adams degree");
                acc.push((t, k.signed(!odd, c)));
            });
        }
        cols.push(SparseVec::from_terms(k, acc));
    }
    Ok(WordMap { cols })
}

impl<E: Clone + PartialEq> WordMap<E> {
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        super::apply_columns(field, &self.cols, v)
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &WordMap<E>) -> WordMap<E> {
        WordMap { cols: other.cols.iter().map(|c| self.apply(field, c)).collect() }
    }
}
