//! Quadratic presentations `T(V)/(R)` with `V` in one bidegree, their quadratic duals,
//! and the windowed `(a,b)`-generated Koszul test.

use std::collections::BTreeMap;
use std::fmt;

use crate::ainf::{presets, Ix, TruncAInfAlgebra};
use crate::bigraded::Bidegree;
use crate::dgmod::ext_of_trivial_module;
use crate::error::{Error, Result};
use crate::exactla::{rank_kernel_image, Echelon, Field, Insert, SparseMatrix, SparseVec};

/// Generators `x_0..x_{n-1}` of a common bidegree and a relation space `R ⊆ V⊗V`.
/// Coordinate `i*n + j` of a relation vector is the coefficient of `x_i x_j`.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation<F: Field> {
    field: F,
    names: Vec<String>,
    deg: Bidegree,
    relations: Vec<SparseVec<F::Elem>>,
}

/// Reduced row echelon basis of the span of `rows`.
fn row_reduce<F: Field>(k: &F, rows: &[SparseVec<F::Elem>], len: usize) -> Vec<SparseVec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.to_dense(k, len)).collect();
    let mut rank = 0;
    for c in 0..len {
        let Some(p) = (rank..m.len()).find(|&r| !k.is_zero(&m[r][c])) else { continue };
        m.swap(rank, p);
        let inv = k.inv(&m[rank][c]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !k.is_zero(&row[c]) {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.iter().map(|r| SparseVec::from_dense(k, r)).collect()
}

impl<F: Field> QuadraticPresentation<F> {
    pub fn new(field: F, names: Vec<String>, deg: Bidegree, relations: &[SparseVec<F::Elem>]) -> Result<Self> {
        if deg.adams == 0 {
            return Err(Error::HypothesisViolation("generators must have nonzero Adams degree".into()));
        }
        if names.is_empty() {
            return Err(Error::Malformed("at least one generator is required".into()));
        }
        let n2 = names.len() * names.len();
        if relations.iter().any(|r| r.max_index().is_some_and(|i| i >= n2)) {
            return Err(Error::Malformed("relation coordinate outside V⊗V".into()));
        }
        let relations = row_reduce(&field, relations, n2);
        Ok(QuadraticPresentation { field, names, deg, relations })
    }

    /// `k⟨x_1,…,x_n⟩` with no relations.
    pub fn free(field: F, names: Vec<String>, deg: Bidegree) -> Result<Self> {
        QuadraticPresentation::new(field, names, deg, &[])
    }

    /// Relations given as lists of `((i, j), coefficient)`.
    pub fn from_terms(field: F, names: Vec<String>, deg: Bidegree, relations: &[Vec<((usize, usize), F::Elem)>]) -> Result<Self> {
        let n = names.len();
        if relations.iter().flatten().any(|((i, j), _)| *i >= n || *j >= n) {
            return Err(Error::Malformed("relation mentions an unknown generator".into()));
        }
        let rels: Vec<_> = relations.iter().map(|r| SparseVec::from_terms(&field, r.iter().map(|((i, j), c)| (i * n + j, c.clone())))).collect();
        QuadraticPresentation::new(field, names, deg, &rels)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_degree(&self) -> Bidegree {
        self.deg
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Row-reduced basis of `R`.
    pub fn relations(&self) -> &[SparseVec<F::Elem>] {
        &self.relations
    }

    /// Same generator count, degree and relation space (names are ignored).
    pub fn same_as(&self, other: &Self) -> bool {
        self.names.len() == other.names.len() && self.deg == other.deg && self.relations == other.relations
    }

    fn relation_words(&self) -> Vec<Vec<(Vec<usize>, F::Elem)>> {
        let n = self.names.len();
        self.relations.iter().map(|r| r.iter().map(|(c, v)| (vec![c / n, c % n], v.clone())).collect()).collect()
    }

    /// The algebra `T(V)/(R)` cut at Adams radius `adams_bound`.
    pub fn realize(&self, adams_bound: i64) -> Result<TruncAInfAlgebra<F>> {
        let gens = vec![self.deg; self.names.len()];
        presets::quotient(self.field.clone(), &self.names, &gens, &self.relation_words(), adams_bound)
    }

    /// `A^! = T(V^♯)/(R^⊥)` with generators in `(1-a, -b)`. All generators share a degree, so any
    /// Koszul sign in the pairing `V^♯⊗V^♯ × V⊗V → k` is a global scalar and `R^⊥` does not see it.
    pub fn dual(&self) -> Self {
        let k = &self.field;
        let n = self.names.len();
        let r = self.relations.len();
        let cols: Vec<SparseVec<F::Elem>> = (0..n * n)
            .map(|c| SparseVec::from_terms(k, self.relations.iter().enumerate().filter_map(|(i, rel)| rel.get(c).map(|v| (i, v.clone())))))
            .collect();
        let m = SparseMatrix::from_columns(r, cols).expect("columns fit");
        let perp = rank_kernel_image(k, &m).kernel;
        let prefix = if self.names.first().is_some_and(|s| s.starts_with('y')) { "x" } else { "y" };
        let names = presets::generator_names(prefix, n);
        let deg = Bidegree::new(1 - self.deg.coh, -self.deg.adams);
        QuadraticPresentation::new(k.clone(), names, deg, &perp).expect("dual of a valid presentation is valid")
    }
}

impl<F: Field> fmt::Display for QuadraticPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.names.len();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| format!("{}·{}{}", self.field.format(v), self.names[c / n], self.names[c % n]))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "k⟨{}⟩/({}), generators in {}", self.names.join(","), rels.join(", "), self.deg)
    }
}

/// The quadratic dual `A^!` of a presentation.
pub fn quadratic_dual<F: Field>(q: &QuadraticPresentation<F>) -> QuadraticPresentation<F> {
    q.dual()
}

/// Basis elements of `A` that span a complement of `I²` in `I`.
pub fn indecomposables<F: Field>(a: &TruncAInfAlgebra<F>) -> Vec<Ix> {
    let k = a.field();
    let mut products: BTreeMap<Bidegree, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
    for x in a.ideal() {
        for y in a.ideal() {
            let p = a.op(2, &[x, y]);
            if !p.is_zero() {
                products.entry(a.deg(x) + a.deg(y)).or_default().push(p);
            }
        }
    }
    let mut degrees: Vec<Bidegree> = a.ideal().map(|x| a.deg(x)).collect();
    degrees.sort();
    degrees.dedup();
    let mut out = Vec::new();
    for d in degrees {
        let mut e = Echelon::new(k.clone());
        for (i, v) in products.get(&d).into_iter().flatten().enumerate() {
            e.insert(v, i);
        }
        for x in a.elements_in(d) {
            if let Insert::Independent(_) = e.insert(&SparseVec::unit(k, x as usize), usize::MAX) {
                out.push(x);
            }
        }
    }
    out
}

/// Generators of `A` and the quadratic relations among them, when `A` is generated in a
/// single bidegree. Errors if the generators sit in several bidegrees.
pub fn quadratic_part<F: Field>(a: &TruncAInfAlgebra<F>) -> Result<QuadraticPresentation<F>> {
    check_associative(a)?;
    let gens = indecomposables(a);
    let Some(&g0) = gens.first() else {
        return Err(Error::HypothesisViolation("algebra has no generators".into()));
    };
    if gens.iter().any(|&g| a.deg(g) != a.deg(g0)) {
        return Err(Error::HypothesisViolation("generators in several bidegrees".into()));
    }
    let k = a.field();
    let cols: Vec<SparseVec<F::Elem>> = gens.iter().flat_map(|&x| gens.iter().map(move |&y| a.op(2, &[x, y]))).collect();
    let m = SparseMatrix::from_columns(a.dim(), cols)?;
    let rels = rank_kernel_image(k, &m).kernel;
    let names = gens.iter().map(|&g| a.label(g).to_string()).collect();
    QuadraticPresentation::new(k.clone(), names, a.deg(g0), &rels)
}

fn check_associative<F: Field>(a: &TruncAInfAlgebra<F>) -> Result<()> {
    if !a.is_dg() {
        return Err(Error::HypothesisViolation("Koszulness is defined for associative algebras".into()));
    }
    if !a.has_zero_differential() {
        return Err(Error::NonzeroDifferential);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulVerdict {
    /// All checks pass through this Adams radius.
    YesThrough(i64),
    No(String),
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub window: i64,
    /// Bidegrees of indecomposables with multiplicities.
    pub generator_degrees: BTreeMap<Bidegree, usize>,
    /// `A_{0,0} = k`.
    pub connected: bool,
    pub single_degree: bool,
    /// `A` equals its quadratic part in the window; `None` when generators are spread out.
    pub quadratic: Option<bool>,
    pub ext_dims: BTreeMap<Bidegree, usize>,
    /// Ext bidegrees off the diagonal `(i(1-a), -ib)`.
    pub off_diagonal: Vec<Bidegree>,
    pub verdict: KoszulVerdict,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, KoszulVerdict::YesThrough(_))
    }
}

/// Whether `d` is `(i(1-a), -ib)` for some `i ≥ 0`.
pub fn on_koszul_diagonal(gen: Bidegree, d: Bidegree) -> bool {
    let b = gen.adams;
    if b == 0 || d.adams % b != 0 {
        return false;
    }
    let i = -d.adams / b;
    i >= 0 && d.coh == i * (1 - gen.coh)
}

/// Checks the Koszul conditions for an associative algebra through Adams radius `bound`.
/// Local finiteness holds for every truncation, so it is not reported separately.
pub fn is_koszul<F: Field>(a: &TruncAInfAlgebra<F>, bound: i64) -> Result<KoszulReport> {
    check_associative(a)?;
    let connected = a.elements_in(Bidegree::ZERO).is_empty();
    let gens = indecomposables(a);
    let mut generator_degrees = BTreeMap::new();
    for &g in &gens {
        *generator_degrees.entry(a.deg(g)).or_insert(0) += 1;
    }
    let single_degree = generator_degrees.len() <= 1;
    let quadratic = if single_degree && !gens.is_empty() {
        let q = quadratic_part(a)?;
        let closure = q.realize(a.adams_bound())?;
        Some(closure.dims() == a.dims())
    } else if gens.is_empty() {
        Some(true)
    } else {
        None
    };
    let ext_dims = ext_of_trivial_module(a, bound)?.dims().clone();
    let gen = generator_degrees.keys().next().copied();
    let off_diagonal: Vec<Bidegree> = match gen {
        Some(g) if single_degree => ext_dims.iter().filter(|(d, &n)| n > 0 && !on_koszul_diagonal(g, **d)).map(|(d, _)| *d).collect(),
        _ => Vec::new(),
    };
    let verdict = if !connected {
        KoszulVerdict::No("A_{0,0} is larger than k".into())
    } else if !single_degree {
        let ds: Vec<String> = generator_degrees.keys().map(|d| d.to_string()).collect();
        KoszulVerdict::No(format!("generators in several bidegrees: {}", ds.join(", ")))
    } else if quadratic == Some(false) {
        KoszulVerdict::No("relations beyond the quadratic ones".into())
    } else if let Some(d) = off_diagonal.first() {
        KoszulVerdict::No(format!("Ext class off the diagonal in {d}"))
    } else {
        KoszulVerdict::YesThrough(bound)
    };
    Ok(KoszulReport { window: bound, generator_degrees, connected, single_degree, quadratic, ext_dims, off_diagonal, verdict })
}

/// [`is_koszul`] on the algebra a presentation defines.
pub fn is_koszul_presentation<F: Field>(q: &QuadraticPresentation<F>, bound: i64) -> Result<KoszulReport> {
    is_koszul(&q.realize(bound)?, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcobar::koszul_dual;
    use crate::dgmod::homology_algebra;
    use crate::exactla::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(p: &str, n: usize) -> Vec<String> {
        presets::generator_names(p, n)
    }

    fn exterior_presentation(n: usize, deg: Bidegree) -> QuadraticPresentation<Rationals> {
        let k = Rationals;
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == j {
                    rels.push(vec![((i, i), k.one())]);
                } else {
                    rels.push(vec![((i, j), k.one()), ((j, i), k.one())]);
                }
            }
        }
        QuadraticPresentation::from_terms(k, names("x", n), deg, &rels).unwrap()
    }

    #[test]
    fn dual_of_exterior_is_polynomial() {
        let k = Rationals;
        let d = exterior_presentation(2, Bidegree::new(0, 1)).dual();
        let poly = QuadraticPresentation::from_terms(k.clone(), names("y", 2), Bidegree::new(1, -1), &[vec![((0, 1), k.one()), ((1, 0), k.from_i64(-1))]]).unwrap();
        assert!(d.same_as(&poly), "{d}");
    }

    #[test]
    fn dual_of_free_kills_all_quadratics() {
        let q = QuadraticPresentation::free(Rationals, names("x", 2), Bidegree::new(0, 1)).unwrap();
        let d = q.dual();
        assert_eq!(d.relations().len(), 4);
        let a = d.realize(4).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn double_dual_returns_the_presentation() {
        let q = exterior_presentation(2, Bidegree::new(0, 1));
        assert!(q.dual().dual().same_as(&q));
    }

    #[test]
    fn dual_is_an_involution_on_random_presentations() {
        let k = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(0..=n * n);
            let rels: Vec<SparseVec<u64>> = (0..r).map(|_| SparseVec::from_dense(&k, &(0..n * n).map(|_| rng.gen_range(0..7u64)).collect::<Vec<_>>())).collect();
            let q = QuadraticPresentation::new(k, names("x", n), Bidegree::new(rng.gen_range(-2..3), rng.gen_range(1..3)), &rels).unwrap();
            let d = q.dual();
            assert_eq!(q.relations().len() + d.relations().len(), n * n);
            assert!(d.dual().same_as(&q));
        }
    }

    #[test]
    fn quadratic_part_recovers_exterior() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1); 2], 4).unwrap();
        let q = quadratic_part(&a).unwrap();
        assert!(q.same_as(&exterior_presentation(2, Bidegree::new(0, 1))));
    }

    #[test]
    fn polynomial_in_degree_one_minus_one_is_koszul() {
        let a = presets::polynomial(Rationals, &[Bidegree::new(1, -1)], 6).unwrap();
        let r = is_koszul(&a, 6).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::YesThrough(6));
        assert_eq!(r.ext_dims, BTreeMap::from([(Bidegree::ZERO, 1), (Bidegree::new(0, 1), 1)]));
    }

    #[test]
    fn exterior_with_spread_generators_is_not_koszul() {
        let a = presets::exterior(Rationals, &[Bidegree::new(0, 1), Bidegree::new(0, 2)], 6).unwrap();
        let r = is_koszul(&a, 6).unwrap();
        assert!(!r.single_degree);
        assert!(matches!(r.verdict, KoszulVerdict::No(_)));
    }

    #[test]
    fn exterior_on_one_generator_is_koszul_in_any_degree() {
        for (a, b) in [(0, 1), (1, 1), (2, -3), (-1, 2), (3, 2)] {
            let g = Bidegree::new(a, b);
            let alg = presets::exterior(Rationals, &[g], 8).unwrap();
            let r = is_koszul(&alg, 8).unwrap();
            assert!(r.passed(), "({a},{b}): {:?}", r.verdict);
            assert!(r.ext_dims.keys().all(|d| on_koszul_diagonal(g, *d)));
        }
    }

    #[test]
    fn cubic_relation_is_not_koszul() {
        let a = presets::truncated_polynomial(Rationals, Bidegree::new(0, 1), 3, 6).unwrap();
        let r = is_koszul(&a, 6).unwrap();
        assert_eq!(r.quadratic, Some(false));
        assert!(!r.off_diagonal.is_empty());
        assert!(!r.passed());
    }

    #[test]
    fn koszul_dual_homology_matches_quadratic_dual() {
        // Ext_A(k,k) = H(E(A)) should be the quadratic dual for Koszul A
        let k = Rationals;
        let square_zero = QuadraticPresentation::free(k.clone(), names("x", 2), Bidegree::new(0, 1)).unwrap().dual();
        for q in [exterior_presentation(2, Bidegree::new(0, 1)), square_zero] {
            let bound = 4;
            let a = q.realize(bound).unwrap();
            assert!(is_koszul(&a, bound).unwrap().passed());
            let h = homology_algebra(&koszul_dual(&a, bound).unwrap()).unwrap();
            let shriek = q.dual().realize(bound).unwrap();
            assert_eq!(h.dims(), shriek.dims(), "{q}");
        }
    }
}
