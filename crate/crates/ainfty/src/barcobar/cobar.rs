//! Cobar construction `Ω(C) = T(S⁻¹J)`, the enveloping algebra `U(A) = Ω(B(A))`, and the
//! comparisons `Ω(R^♯) ≅ B(R)^♯` and `U(A) ≃ A`.

use std::collections::{BTreeMap, HashMap};

use super::bar::{bar, require_connected, BarCoalgebra};
use super::dual::dual_of_bar;
use crate::ainf::{AlgebraBuilder, Ix, Orientation, TruncAInfAlgebra, UNIT};
use crate::bigraded::{dual_label, Bidegree};
use crate::dgmod::ChainHomology;
use crate::error::{Error, Result};
use crate::exactla::{rank_kernel_image, Field, SparseMatrix, SparseVec};

/// A finite coaugmented DG coalgebra. Element 0 is the coaugmentation `1`; the rest span `J`.
#[derive(Clone, Debug)]
pub struct Coalgebra<F: Field> {
    pub field: F,
    pub degs: Vec<Bidegree>,
    pub labels: Vec<String>,
    /// `b_C` on `J`, with values in `J`.
    pub diff: Vec<SparseVec<F::Elem>>,
    /// `Δ̄(x) = Σ c·a⊗b` with `a, b ∈ J`.
    pub reduced: Vec<Vec<(usize, usize, F::Elem)>>,
    pub orientation: Orientation,
    /// Adams radius inside which this is the whole coalgebra.
    pub bound: i64,
}

impl<F: Field> Coalgebra<F> {
    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    /// `B(A)` as a coalgebra: reduced coproduct is the sum of the proper deconcatenations.
    pub fn from_bar(b: &BarCoalgebra<F>) -> Self {
        let k = b.field().clone();
        let reduced = (0..b.dim())
            .map(|i| {
                let c = b.coproduct(i);
                if c.len() < 3 {
                    return Vec::new();
                }
                c[1..c.len() - 1].iter().map(|(l, r)| (*l, *r, k.one())).collect()
            })
            .collect();
        Coalgebra {
            field: k,
            degs: b.degs().to_vec(),
            labels: b.labels().to_vec(),
            diff: b.differential_columns().to_vec(),
            reduced,
            orientation: b.algebra().orientation(),
            bound: b.adams_bound(),
        }
    }

    /// The graded dual `R^♯` of a finite DG algebra: `d(a*) = -(-1)^{|a*|} a*∘m_1` and
    /// `Δ̄(c*) = Σ (-1)^{|x||y|} μ^c_{xy} x*⊗y*`.
    pub fn dual_of_algebra(r: &TruncAInfAlgebra<F>) -> Result<Self> {
        if !r.is_dg() {
            return Err(Error::HypothesisViolation("the dual coalgebra needs a DG algebra".into()));
        }
        if !r.is_finite() {
            return Err(Error::NotFiniteDimensional("the dual coalgebra needs a finite algebra".into()));
        }
        let k = r.field().clone();
        let n = r.dim();
        let degs: Vec<Bidegree> = r.basis().iter().map(|b| -b.deg).collect();
        let labels: Vec<String> = r.basis().iter().map(|b| if b.label == "1" { "1".into() } else { dual_label(&b.label) }).collect();
        let mut diff = vec![Vec::new(); n];
        for b in r.ideal() {
            for (a, c) in r.op(1, &[b]).iter() {
                let neg = !degs[*a].is_odd();
                diff[*a].push((b as usize, k.signed(!neg, c)));
            }
        }
        let mut reduced = vec![Vec::new(); n];
        for x in r.ideal() {
            for y in r.ideal() {
                let odd = (r.coh(x) * r.coh(y)).rem_euclid(2) == 1;
                for (c, mu) in r.op(2, &[x, y]).iter() {
                    reduced[*c].push((x as usize, y as usize, k.signed(!odd, mu)));
                }
            }
        }
        let bound = r.basis().iter().map(|b| b.deg.adams.abs()).max().unwrap_or(0);
        Ok(Coalgebra {
            field: k.clone(),
            degs,
            labels,
            diff: diff.into_iter().map(|t| SparseVec::from_terms(&k, t)).collect(),
            reduced,
            orientation: r.orientation().flip(),
            bound,
        })
    }
}

/// Cobar words over `J` with total |Adams| at most `budget`, shortest weights first.
fn cobar_words<F: Field>(c: &Coalgebra<F>, budget: i64) -> Vec<Vec<usize>> {
    let elems: Vec<(usize, i64)> = (1..c.dim()).map(|i| (i, c.degs[i].adams.abs())).collect();
    let mut out = vec![vec![]];
    let mut cur = Vec::new();
    fn rec(elems: &[(usize, i64)], budget: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
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
    let weight = |w: &Vec<usize>| w.iter().map(|&i| c.degs[i].adams.abs()).sum::<i64>();
    out.sort_by(|x, y| (weight(x), x.len(), x).cmp(&(weight(y), y.len(), y)));
    out
}

/// `Ω(C)` through Adams radius `bound`, as a DG algebra on cobar words `⟨x_1|…|x_m⟩`.
pub fn cobar<F: Field>(c: &Coalgebra<F>, bound: i64) -> Result<TruncAInfAlgebra<F>> {
    if c.orientation == Orientation::Unconnected || (1..c.dim()).any(|i| c.degs[i].adams == 0) {
        return Err(Error::NotAdamsConnected("cobar words would be unbounded".into()));
    }
    if bound > c.bound {
        return Err(Error::WindowOverflow(format!("cobar bound {bound} exceeds the coalgebra's radius {}", c.bound)));
    }
    let k = c.field.clone();
    let words = cobar_words(c, bound);
    let index: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let shift = Bidegree::new(1, 0);
    let mut builder = AlgebraBuilder::new(k.clone(), c.orientation, bound).arity_bound(2);
    for w in words.iter().skip(1) {
        let deg = w.iter().fold(Bidegree::ZERO, |acc, &x| acc + c.degs[x] + shift);
        let label = format!("⟨{}⟩", w.iter().map(|&x| c.labels[x].as_str()).collect::<Vec<_>>().join("|"));
        builder.element(&label, deg)?;
    }
    for (wi, w) in words.iter().enumerate().skip(1) {
        let mut acc: Vec<(usize, F::Elem)> = Vec::new();
        let mut n_odd = false;
        for (i, &x) in w.iter().enumerate() {
            // d0: -(-1)^{n_i}[…|b(x_i)|…]
            for (y, cf) in c.diff[x].iter() {
                let mut u = w.clone();
                u[i] = *y;
                if let Some(&t) = index.get(&u) {
                    acc.push((t, k.signed(n_odd, cf)));
                }
            }
            // d1: (-1)^{n_i + deg₁ a}[…|a|b|…]
            for (a, b, cf) in &c.reduced[x] {
                let mut u = Vec::with_capacity(w.len() + 1);
                u.extend_from_slice(&w[..i]);
                u.push(*a);
                u.push(*b);
                u.extend_from_slice(&w[i + 1..]);
                if let Some(&t) = index.get(&u) {
                    let odd = n_odd ^ c.degs[*a].is_odd();
                    acc.push((t, k.signed(!odd, cf)));
                }
            }
            n_odd ^= !c.degs[x].is_odd();
        }
        let v = SparseVec::from_terms(&k, acc);
        builder.set_op(1, vec![wi as Ix], v)?;
    }
    for (i, u) in words.iter().enumerate().skip(1) {
        for (j, v) in words.iter().enumerate().skip(1) {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            if let Some(&t) = index.get(&uv) {
                builder.set_op(2, vec![i as Ix, j as Ix], SparseVec::unit(&k, t))?;
            }
        }
    }
    builder.build()
}

/// `U(A) = Ω(B(A))` through Adams radius `bound`.
pub fn enveloping<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<TruncAInfAlgebra<F>> {
    require_connected(a, "enveloping algebra")?;
    let b = bar(a, bound)?;
    cobar(&Coalgebra::from_bar(&b), bound)
}

/// Outcome of comparing `Ω(R^♯)` with `B(R)^♯` under `Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarDualIsoReport {
    pub words: usize,
    pub bijective: bool,
    pub chain_map: bool,
    pub multiplicative: bool,
    pub witness: Option<String>,
}

impl CobarDualIsoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.chain_map && self.multiplicative
    }
}

/// `Ψ⟨a_1*|…|a_m*⟩ = (-1)^{Σ|a_i| + Σ_{i<j}(|a_i|-1)(|a_j|-1)} [a_1|…|a_m]*`, checked on every word.
pub fn cobar_dual_iso_check<F: Field>(r: &TruncAInfAlgebra<F>) -> Result<CobarDualIsoReport> {
    let c = Coalgebra::dual_of_algebra(r)?;
    let bound = c.bound;
    let omega = cobar(&c, bound)?;
    let e = dual_of_bar(&bar(r, bound)?)?;
    let k = r.field().clone();
    let bw = bar(r, bound)?;
    let cw = cobar_words(&c, bound);
    // cobar letters are dual basis elements of R, with the same indices
    let mut cols = Vec::with_capacity(cw.len());
    let mut bijective = cw.len() == e.dim();
    for w in &cw {
        let letters: Vec<Ix> = w.iter().map(|&x| x as Ix).collect();
        match bw.index(&letters) {
            Some(t) => {
                let degs: Vec<i64> = letters.iter().map(|&x| r.coh(x)).collect();
                let mut odd = degs.iter().sum::<i64>().rem_euclid(2) == 1;
                for i in 0..degs.len() {
                    for j in i + 1..degs.len() {
                        odd ^= ((degs[i] - 1) * (degs[j] - 1)).rem_euclid(2) == 1;
                    }
                }
                cols.push(SparseVec::from_terms(&k, [(t, k.signed(!odd, &k.one()))]));
            }
            None => {
                bijective = false;
                cols.push(SparseVec::new());
            }
        }
    }
    let psi = |v: &SparseVec<F::Elem>| super::apply_columns(&k, &cols, v);
    let mut witness = None;
    let mut chain_map = true;
    for i in 0..omega.dim() {
        let ei = SparseVec::unit(&k, i);
        if psi(&omega.differential(&ei)) != e.differential(&psi(&ei)) {
            chain_map = false;
            witness.get_or_insert_with(|| format!("Ψ∘d ≠ d∘Ψ on {}", omega.label(i as Ix)));
        }
    }
    let mut multiplicative = true;
    for i in 1..omega.dim() {
        for j in 1..omega.dim() {
            let (ei, ej) = (SparseVec::unit(&k, i), SparseVec::unit(&k, j));
            if psi(&omega.mul(&ei, &ej)) != e.mul(&psi(&ei), &psi(&ej)) {
                multiplicative = false;
                witness.get_or_insert_with(|| format!("Ψ not multiplicative on {}·{}", omega.label(i as Ix), omega.label(j as Ix)));
            }
        }
    }
    Ok(CobarDualIsoReport { words: cw.len(), bijective, chain_map, multiplicative, witness })
}

/// Comparison of `U(A)` with `A` inside the validity window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub window: i64,
    pub dims_u: BTreeMap<Bidegree, usize>,
    pub dims_a: BTreeMap<Bidegree, usize>,
    /// `π: U(A) → A` commutes with the differentials (DG inputs only).
    pub projection_is_dg_map: Option<bool>,
    /// `a ↦ ⟨[a]⟩` commutes with the differentials.
    pub inclusion_is_chain_map: bool,
    /// The induced map on homology is bijective in every bidegree of the window.
    pub homology_iso: bool,
    /// The induced map on homology respects products.
    pub products_match: bool,
    pub witness: Option<String>,
}

impl QuasiIsoReport {
    pub fn dims_match(&self) -> bool {
        self.dims_u == self.dims_a
    }

    pub fn passed(&self) -> bool {
        self.dims_match() && self.homology_iso && self.products_match && self.projection_is_dg_map != Some(false)
    }
}

fn window_dims(dims: BTreeMap<Bidegree, usize>, window: i64) -> BTreeMap<Bidegree, usize> {
    dims.into_iter().filter(|(d, n)| *n > 0 && d.adams.abs() <= window).collect()
}

/// `U(A) ≃ A` in the truncation. For DG inputs the map checked is `π: U(A) → A`, `π⟨[a]⟩ = a`,
/// longer bar words to zero, extended multiplicatively. With `m_1 = 0` the cycle map
/// `ι(a) = ⟨[a]⟩` is used as well: `ι(a)ι(b) - ι(ab)` is the boundary of `⟨[a|b]⟩`.
pub fn unit_quasi_iso_check<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<QuasiIsoReport> {
    require_connected(a, "enveloping algebra")?;
    let k = a.field().clone();
    let b = bar(a, bound)?;
    let u = cobar(&Coalgebra::from_bar(&b), bound)?;
    let window = bound;
    let hu = ChainHomology::of_algebra(&u)?;
    let ha = ChainHomology::of_algebra(a)?;
    let dims_u = window_dims(hu.dims(), window);
    let dims_a = window_dims(ha.dims(), window);
    let mut witness = None;
    // letter ⟨[a]⟩ of U for each ideal element a
    let letter = |x: Ix| -> Option<usize> {
        let bw = b.index(&[x])?;
        u.index(&format!("⟨{}⟩", b.label(bw))).map(|i| i as usize)
    };
    let iota: Vec<Option<usize>> = (0..a.dim() as Ix).map(|x| if x == UNIT { Some(0) } else { letter(x) }).collect();
    let iota_vec = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        SparseVec::from_terms(&k, v.iter().filter_map(|(i, c)| iota[*i].map(|j| (j, c.clone()))))
    };
    let inclusion_is_chain_map = a.ideal().all(|x| {
        let ex = SparseVec::unit(&k, x as usize);
        u.differential(&iota_vec(&ex)) == iota_vec(&a.differential(&ex))
    });
    let mut pi_cols: Option<Vec<SparseVec<F::Elem>>> = None;
    let projection_is_dg_map = if a.is_dg() {
        // π on a cobar word: product of π on its letters; a letter is ⟨w⟩ for a bar word w
        let pi_letter: Vec<SparseVec<F::Elem>> = (0..b.dim())
            .map(|i| if b.word(i).len() == 1 { SparseVec::unit(&k, b.word(i)[0] as usize) } else { SparseVec::new() })
            .collect();
        let c = Coalgebra::from_bar(&b);
        let words = cobar_words(&c, bound);
        let pi: Vec<SparseVec<F::Elem>> = words
            .iter()
            .map(|w| w.iter().fold(SparseVec::unit(&k, UNIT as usize), |acc, &l| a.mul(&acc, &pi_letter[l])))
            .collect();
        let pi_vec = |v: &SparseVec<F::Elem>| super::apply_columns(&k, &pi, v);
        let ok = (0..u.dim()).all(|i| {
            let ei = SparseVec::unit(&k, i);
            let good = pi_vec(&u.differential(&ei)) == a.differential(&pi_vec(&ei));
            if !good && witness.is_none() {
                witness = Some(format!("π∘d ≠ d∘π on {}", u.label(i as Ix)));
            }
            good
        });
        pi_cols = Some(pi);
        Some(ok)
    } else {
        None
    };
    // homology map and products
    let (homology_iso, products_match) = if a.has_zero_differential() {
        let mut iso = true;
        for (d, n) in &dims_a {
            let cols: Vec<SparseVec<F::Elem>> =
                a.basis().iter().enumerate().filter(|(_, e)| e.deg == *d).map(|(i, _)| hu.project(*d, &iota_vec(&SparseVec::unit(&k, i)))).collect();
            let rank = rank_kernel_image(&k, &SparseMatrix::from_columns(hu.dim(*d), cols)?).rank;
            if rank != *n || hu.dim(*d) != *n {
                iso = false;
                witness.get_or_insert_with(|| format!("H(ι) is not bijective in degree {d}"));
            }
        }
        let mut prod = true;
        for x in a.ideal() {
            for y in a.ideal() {
                let d = a.deg(x) + a.deg(y);
                if d.adams.abs() > window {
                    continue;
                }
                let lhs = u.mul(&iota_vec(&SparseVec::unit(&k, x as usize)), &iota_vec(&SparseVec::unit(&k, y as usize)));
                let rhs = iota_vec(&a.op(2, &[x, y]));
                if !hu.is_boundary(d, &lhs.sub(&k, &rhs)) {
                    prod = false;
                    witness.get_or_insert_with(|| format!("ι({})ι({}) and ι({0}{1}) differ in homology", a.label(x), a.label(y)));
                }
            }
        }
        (iso, prod)
    } else {
        // π is a DG algebra map, so H(π) is multiplicative once it is a bijection
        let pi = pi_cols.as_ref().expect("DG input");
        let mut iso = true;
        for (d, n) in dims_u.iter().chain(dims_a.iter()) {
            let cols: Vec<SparseVec<F::Elem>> =
                hu.reps(*d).iter().map(|r| ha.project(*d, &super::apply_columns(&k, pi, r))).collect();
            let rank = rank_kernel_image(&k, &SparseMatrix::from_columns(ha.dim(*d), cols)?).rank;
            if rank != *n || hu.dim(*d) != ha.dim(*d) {
                iso = false;
                witness.get_or_insert_with(|| format!("H(π) is not bijective in degree {d}"));
            }
        }
        (iso, iso && projection_is_dg_map == Some(true))
    };
    Ok(QuasiIsoReport {
        window,
        dims_u,
        dims_a,
        projection_is_dg_map,
        inclusion_is_chain_map,
        homology_iso,
        products_match,
        witness,
    })
}
