//! Fixture algebras: exterior, polynomial, truncated polynomial, quotients of free
//! algebras, and the family `B(p)` with a single higher product `m_p`.

use std::collections::{BTreeMap, HashMap};

use super::algebra::{AlgebraBuilder, Ix, Orientation, TruncAInfAlgebra};
use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Field, Insert, SparseVec};

/// Default generator names: `x` for one generator, `x1, x2, …` otherwise.
pub fn generator_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// Label of a word in generators, with runs compressed to powers.
pub fn word_label(names: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        out.push_str(&names[w[i]]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

fn orientation_of(gens: &[Bidegree]) -> Orientation {
    Orientation::of_support(gens.iter().copied())
}

fn check_gens(gens: &[Bidegree]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::Malformed("at least one generator is required".into()));
    }
    Ok(())
}

/// `Λ(x_1,…,x_n)` with `x_i x_j = -x_j x_i` and `x_i^2 = 0`, cut at Adams radius `adams_bound`.
/// The ground field `k` as an algebra (empty augmentation ideal).
pub fn ground<F: Field>(field: F, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    AlgebraBuilder::new(field, Orientation::Positive, adams_bound).finite(true).build()
}

pub fn exterior<F: Field>(field: F, gens: &[Bidegree], adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let names = generator_names("x", gens.len());
    exterior_named(field, &names, gens, adams_bound)
}

pub fn exterior_named<F: Field>(field: F, names: &[String], gens: &[Bidegree], adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    check_gens(gens)?;
    let n = gens.len();
    if n > 16 {
        return Err(Error::Malformed("too many exterior generators".into()));
    }
    let orientation = orientation_of(gens);
    let deg = |mask: u32| (0..n).filter(|i| mask >> i & 1 == 1).fold(Bidegree::ZERO, |acc, i| acc + gens[i]);
    let in_window = |d: Bidegree| orientation == Orientation::Unconnected || d.adams.abs() <= adams_bound;
    let mut masks: Vec<u32> = (1..1u32 << n).filter(|&m| in_window(deg(m))).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
    let finite = masks.len() + 1 == 1 << n;
    let mut b = AlgebraBuilder::new(field.clone(), orientation, adams_bound).finite(finite);
    let mut idx: HashMap<u32, Ix> = HashMap::from([(0, 0)]);
    for &m in &masks {
        let w: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        let label = w.iter().map(|&i| names[i].as_str()).collect::<String>();
        idx.insert(m, b.element(&label, deg(m))?);
    }
    for &s in &masks {
        for &t in &masks {
            if s & t != 0 {
                continue;
            }
            let Some(&k) = idx.get(&(s | t)) else { continue };
            // sign of sorting the concatenation: count pairs (i in s, j in t) with i > j
            let inv: u32 = (0..n).filter(|i| s >> i & 1 == 1).map(|i| (t & ((1u32 << i) - 1)).count_ones()).sum();
            let c = field.signed(inv % 2 == 0, &field.one());
            b.set_op(2, vec![idx[&s], idx[&t]], SparseVec::from_terms(&field, [(k as usize, c)]))?;
        }
    }
    b.build()
}

/// Commutative polynomial ring `k[y_1,…,y_n]` up to Adams radius `adams_bound`.
pub fn polynomial<F: Field>(field: F, gens: &[Bidegree], adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let names = generator_names("y", gens.len());
    polynomial_named(field, &names, gens, adams_bound)
}

pub fn polynomial_named<F: Field>(field: F, names: &[String], gens: &[Bidegree], adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    check_gens(gens)?;
    let orientation = orientation_of(gens);
    if orientation == Orientation::Unconnected {
        return Err(Error::NotAdamsConnected("a polynomial generator sits in Adams degree 0; use a truncated polynomial".into()));
    }
    let n = gens.len();
    // exponent vectors with Σ e_i |adams(y_i)| ≤ bound
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for g in gens {
        let w = g.adams.unsigned_abs() as i64;
        let mut next = Vec::new();
        for e in &exps {
            let used: i64 = e.iter().zip(gens).map(|(&k, d)| k as i64 * d.adams.abs()).sum();
            let mut k = 0;
            while used + k * w <= adams_bound {
                let mut f = e.clone();
                f.push(k as u32);
                next.push(f);
                k += 1;
            }
        }
        exps = next;
    }
    exps.retain(|e| e.iter().any(|&k| k > 0));
    exps.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    let deg = |e: &[u32]| e.iter().zip(gens).fold(Bidegree::ZERO, |acc, (&k, d)| acc + Bidegree::new(d.coh * k as i64, d.adams * k as i64));
    let label = |e: &[u32]| {
        let w: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        word_label(names, &w)
    };
    let mut b = AlgebraBuilder::new(field.clone(), orientation, adams_bound);
    let mut idx: HashMap<Vec<u32>, Ix> = HashMap::new();
    for e in &exps {
        idx.insert(e.clone(), b.element(&label(e), deg(e))?);
    }
    for s in &exps {
        for t in &exps {
            let u: Vec<u32> = s.iter().zip(t).map(|(a, b)| a + b).collect();
            if let Some(&k) = idx.get(&u) {
                b.set_op(2, vec![idx[s], idx[t]], SparseVec::unit(&field, k as usize))?;
            }
        }
    }
    b.build()
}

/// `k[x]/(x^p)`, cut at Adams radius `adams_bound` (no cut when `x` has Adams degree 0).
pub fn truncated_polynomial<F: Field>(field: F, deg: Bidegree, p: usize, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    truncated_polynomial_named(field, "x", deg, p, adams_bound)
}

pub fn truncated_polynomial_named<F: Field>(field: F, name: &str, deg: Bidegree, p: usize, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    if p < 2 {
        return Err(Error::Malformed("k[x]/(x^p) needs p ≥ 2".into()));
    }
    let orientation = orientation_of(&[deg]);
    let names = vec![name.to_string()];
    let pow = |k: usize| Bidegree::new(deg.coh * k as i64, deg.adams * k as i64);
    let top = (1..p).take_while(|&k| orientation == Orientation::Unconnected || pow(k).adams.abs() <= adams_bound).last().unwrap_or(0);
    let mut b = AlgebraBuilder::new(field.clone(), orientation, adams_bound).finite(top == p - 1);
    let mut idx = vec![0 as Ix];
    for k in 1..=top {
        idx.push(b.element(&word_label(&names, &vec![0; k]), pow(k))?);
    }
    for i in 1..=top {
        for j in 1..=top {
            if i + j <= top {
                b.set_op(2, vec![idx[i], idx[j]], SparseVec::unit(&field, idx[i + j] as usize))?;
            }
        }
    }
    b.build()
}

/// Quotient of the free algebra `k⟨gens⟩` by the two-sided ideal generated by homogeneous
/// relations, each a list of (word, coefficient). Cut at Adams radius `adams_bound`.
///
/// Basis words are chosen greedily in degree-lexicographic order among words that are
/// independent modulo the ideal.
pub fn quotient<F: Field>(
    field: F,
    names: &[String],
    gens: &[Bidegree],
    relations: &[Vec<(Vec<usize>, F::Elem)>],
    adams_bound: i64,
) -> Result<TruncAInfAlgebra<F>> {
    check_gens(gens)?;
    let orientation = orientation_of(gens);
    if orientation == Orientation::Unconnected {
        return Err(Error::NotAdamsConnected("free algebra with a generator in Adams degree 0 is not locally finite".into()));
    }
    let wdeg = |w: &[usize]| w.iter().fold(Bidegree::ZERO, |acc, &i| acc + gens[i]);
    for r in relations {
        let mut ds = r.iter().map(|(w, _)| wdeg(w));
        if let Some(d0) = ds.next() {
            if ds.any(|d| d != d0) {
                return Err(Error::Malformed("relation is not homogeneous".into()));
            }
        }
        if r.iter().any(|(w, _)| w.is_empty() || w.iter().any(|&i| i >= gens.len())) {
            return Err(Error::Malformed("relation mentions an unknown generator or the unit".into()));
        }
    }
    // all nonempty words in the window, deglex
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..gens.len() {
                let mut v = w.clone();
                v.push(g);
                if wdeg(&v).adams.abs() <= adams_bound {
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut by_deg: BTreeMap<Bidegree, Vec<Vec<usize>>> = BTreeMap::new();
    for w in &words {
        by_deg.entry(wdeg(w)).or_default().push(w.clone());
    }
    // per bidegree: ideal span, then greedy basis
    let word_ix: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut ideal: BTreeMap<Bidegree, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
    for r in relations {
        let Some((w0, _)) = r.first() else { continue };
        let rd = wdeg(w0);
        for u in std::iter::once(vec![]).chain(words.iter().cloned()) {
            for v in std::iter::once(vec![]).chain(words.iter().cloned()) {
                let d = wdeg(&u) + rd + wdeg(&v);
                if d.adams.abs() > adams_bound {
                    continue;
                }
                let terms = r.iter().map(|(w, c)| {
                    let full: Vec<usize> = u.iter().chain(w).chain(&v).copied().collect();
                    (word_ix[&full], c.clone())
                });
                let vec = SparseVec::from_terms(&field, terms);
                if !vec.is_zero() {
                    ideal.entry(d).or_default().push(vec);
                }
            }
        }
    }
    let mut basis_words: Vec<Vec<usize>> = Vec::new();
    let mut normal: HashMap<usize, SparseVec<F::Elem>> = HashMap::new(); // word index -> combination of basis positions
    const TAG: usize = 1 << 40;
    for (d, ws) in &by_deg {
        let mut ech = Echelon::new(field.clone());
        for (k, v) in ideal.get(d).into_iter().flatten().enumerate() {
            ech.insert(v, k);
        }
        let mut chosen: Vec<usize> = Vec::new();
        for w in ws {
            let i = word_ix[w];
            if let Insert::Independent(_) = ech.insert(&SparseVec::unit(&field, i), TAG + basis_words.len()) {
                chosen.push(basis_words.len());
                basis_words.push(w.clone());
            }
        }
        for w in ws {
            let i = word_ix[w];
            let combo = ech.solve(&SparseVec::unit(&field, i)).map_err(|_| Error::Invariant("word outside its own span".into()))?;
            let nf = SparseVec::from_terms(&field, combo.iter().filter(|(id, _)| *id >= TAG).map(|(id, c)| (id - TAG, c.clone())));
            normal.insert(i, nf);
        }
    }
    let mut b = AlgebraBuilder::new(field.clone(), orientation, adams_bound);
    let mut pos_ix: Vec<Ix> = Vec::new();
    for w in &basis_words {
        pos_ix.push(b.element(&word_label(names, w), wdeg(w))?);
    }
    // A_j is spanned by A_{j-w}·x for generator weights w, so a run of empty Adams degrees
    // as long as the largest weight means nothing survives above it
    let wmax = gens.iter().map(|g| g.adams.abs()).max().unwrap_or(1);
    let occupied: Vec<i64> = basis_words.iter().map(|w| wdeg(w).adams.abs()).collect();
    let top = occupied.iter().copied().max().unwrap_or(0);
    b = b.finite(top + wmax <= adams_bound);
    for (s, u) in basis_words.iter().enumerate() {
        for (t, v) in basis_words.iter().enumerate() {
            let full: Vec<usize> = u.iter().chain(v).copied().collect();
            let Some(&i) = word_ix.get(&full) else { continue };
            let nf = normal[&i].remap(&field, |p| Some(pos_ix[p] as usize));
            b.set_op(2, vec![pos_ix[s], pos_ix[t]], nf)?;
        }
    }
    b.build()
}

/// `k⟨x_1,…,x_n⟩` modulo the given words.
pub fn monomial_quotient<F: Field>(field: F, names: &[String], gens: &[Bidegree], monomials: &[Vec<usize>], adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let rels: Vec<Vec<(Vec<usize>, F::Elem)>> = monomials.iter().map(|w| vec![(w.clone(), field.one())]).collect();
    quotient(field, names, gens, &rels, adams_bound)
}

/// `k⟨x,y⟩/(x,y)^2` with both generators in `deg`.
pub fn square_zero_two<F: Field>(field: F, deg: Bidegree, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let names = vec!["x".to_string(), "y".to_string()];
    let all = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    monomial_quotient(field, &names, &[deg, deg], &all, adams_bound)
}

/// `Λ(y) ⊗ k[z]` with `y` in (1,-1), `z` in (2,-p), and, when `with_higher`, the single higher
/// product `m_p(yz^{j_1} ⊗ … ⊗ yz^{j_p}) = z^{1+Σj}`.
fn b_family<F: Field>(field: F, p: usize, adams_bound: i64, with_higher: bool) -> Result<TruncAInfAlgebra<F>> {
    if p < 3 {
        return Err(Error::Malformed("the B(p) family needs p ≥ 3".into()));
    }
    let pi = p as i64;
    let y = Bidegree::new(1, -1);
    let zpow = |j: i64| Bidegree::new(2 * j, -pi * j);
    let zlabel = |j: i64| match j {
        0 => String::new(),
        1 => "z".into(),
        _ => format!("z^{j}"),
    };
    let mut b = AlgebraBuilder::new(field.clone(), Orientation::Negative, adams_bound).arity_bound(p.max(6));
    // ez[j] = z^j, oz[j] = y z^j
    let mut ez: Vec<Option<Ix>> = vec![Some(0)];
    let mut oz: Vec<Option<Ix>> = Vec::new();
    let mut j = 0i64;
    loop {
        let odd = y + zpow(j);
        let even = zpow(j + 1);
        let mut any = false;
        if odd.adams.abs() <= adams_bound {
            oz.push(Some(b.element(&format!("y{}", zlabel(j)), odd)?));
            any = true;
        } else {
            oz.push(None);
        }
        if even.adams.abs() <= adams_bound {
            ez.push(Some(b.element(&zlabel(j + 1), even)?));
            any = true;
        } else {
            ez.push(None);
        }
        if !any {
            break;
        }
        j += 1;
    }
    let get = |v: &Vec<Option<Ix>>, k: usize| v.get(k).copied().flatten();
    let unit = |i: Ix| SparseVec::unit(&field, i as usize);
    for a in 0..ez.len() {
        for c in 0..ez.len() {
            if a == 0 && c == 0 {
                continue;
            }
            if let (Some(x), Some(w), Some(t)) = (get(&ez, a), get(&ez, c), get(&ez, a + c)) {
                if x != 0 && w != 0 {
                    b.set_op(2, vec![x, w], unit(t))?;
                }
            }
            if let (Some(x), Some(w), Some(t)) = (get(&ez, a), get(&oz, c), get(&oz, a + c)) {
                if x != 0 {
                    b.set_op(2, vec![x, w], unit(t))?;
                    b.set_op(2, vec![w, x], unit(t))?;
                }
            }
        }
    }
    if with_higher {
        let odd: Vec<(usize, Ix)> = oz.iter().enumerate().filter_map(|(j, i)| i.map(|i| (j, i))).collect();
        let mut cur: Vec<(usize, Ix)> = Vec::new();
        fn rec<F: Field>(
            b: &mut AlgebraBuilder<F>,
            odd: &[(usize, Ix)],
            ez: &[Option<Ix>],
            p: usize,
            cur: &mut Vec<(usize, Ix)>,
        ) -> Result<()> {
            if cur.len() == p {
                let s: usize = cur.iter().map(|c| c.0).sum();
                if let Some(Some(t)) = ez.get(1 + s) {
                    let x = cur.iter().map(|c| c.1).collect();
                    let v = SparseVec::unit(b.field(), *t as usize);
                    b.set_op(p, x, v)?;
                }
                return Ok(());
            }
            for &o in odd {
                cur.push(o);
                rec(b, odd, ez, p, cur)?;
                cur.pop();
            }
            Ok(())
        }
        rec(&mut b, &odd, &ez, p, &mut cur)?;
    }
    b.build()
}

/// `B(p)`: the A∞-algebra with `m_1 = 0`, graded-commutative `m_2`, and one higher product `m_p`.
pub fn b_p<F: Field>(field: F, p: usize, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    b_family(field, p, adams_bound, true)
}

/// `B(0)` in the same grading as `B(p)`: the plain algebra `Λ(y) ⊗ k[z]`.
pub fn b_zero<F: Field>(field: F, p: usize, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
    b_family(field, p, adams_bound, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::check_stasheff;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn exterior_two_generators() {
        let a = exterior(Rationals, &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 5).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_finite());
        let (x1, x2, x12) = (a.index("x1").unwrap(), a.index("x2").unwrap(), a.index("x1x2").unwrap());
        let k = Rationals;
        assert_eq!(a.op(2, &[x1, x2]), SparseVec::unit(&k, x12 as usize));
        assert_eq!(a.op(2, &[x2, x1]), SparseVec::from_terms(&k, [(x12 as usize, k.from_i64(-1))]));
        assert!(a.op(2, &[x1, x1]).is_zero());
        assert!(check_stasheff(&a, 4).passed());
    }

    #[test]
    fn polynomial_window() {
        let a = polynomial(Rationals, &[Bidegree::new(1, -1), Bidegree::new(1, -1)], 3).unwrap();
        // 2 + 3 + 4 monomials of degree 1..3
        assert_eq!(a.dim(), 1 + 2 + 3 + 4);
        assert!(check_stasheff(&a, 4).passed());
    }

    #[test]
    fn quotient_commutator_gives_polynomial_dims() {
        let k = Rationals;
        let names = generator_names("x", 2);
        let d = Bidegree::new(0, 1);
        let rel = vec![(vec![0, 1], k.one()), (vec![1, 0], k.from_i64(-1))];
        let a = quotient(k, &names, &[d, d], &[rel], 4).unwrap();
        let dims = a.dims();
        for j in 1..=4 {
            assert_eq!(dims[&Bidegree::new(0, j)], j as usize + 1);
        }
        assert!(check_stasheff(&a, 4).passed());
    }

    #[test]
    fn square_zero_is_three_dimensional() {
        let a = square_zero_two(PrimeField::new(7).unwrap(), Bidegree::new(0, 1), 4).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.is_finite());
    }

    #[test]
    fn b3_passes_stasheff_and_corruption_is_caught() {
        let k = Rationals;
        let a = b_p(k, 3, 13).unwrap();
        let r = check_stasheff(&a, 5);
        assert!(r.passed(), "{:?}", r.witnesses);
        let y = a.index("y").unwrap();
        let mut ops: Vec<_> = (1..=a.max_arity()).map(|n| a.op_table(n).clone()).collect();
        let v = ops[2][&vec![y, y, y]].neg(&k);
        ops[2].insert(vec![y, y, y], v);
        // corrupt one more tuple so the sign change is not a symmetry
        let yz = a.index("yz").unwrap();
        let w = ops[2][&vec![y, y, yz]].clone();
        ops[2].insert(vec![y, y, yz], w.scale(&k, &k.from_i64(2)));
        let bad = a.with_ops(ops).unwrap();
        let r = check_stasheff(&bad, 5);
        assert!(!r.passed());
        assert!(r.witnesses[0].arity >= 4);
    }

    #[test]
    fn b4_passes_stasheff() {
        let a = b_p(Rationals, 4, 13).unwrap();
        assert!(check_stasheff(&a, 7).passed());
    }
}
