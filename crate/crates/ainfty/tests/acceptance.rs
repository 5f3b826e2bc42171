//! Acceptance run: one PASS/FAIL line per criterion, each computed over Q and over F_32003.
//!
//! All comparisons are exact. Criteria listed in `KNOWN_FAILURES` are checked as stated and are
//! expected to fail; the target exits nonzero if any other criterion fails or if one of those
//! starts passing.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use ainfty::ainf::gauge::{slots, transport};
use ainfty::ainf::{
    check_morphism, check_stasheff, epsilon_additivity_selftest, opposite, opposite_morphism, presets, Ix, OpTable,
    TruncAInfAlgebra,
};
use ainfty::barcobar::{bar, koszul_dual, phi_op_iso, unit_quasi_iso_check};
use ainfty::bigraded::Bidegree;
use ainfty::dgmod::{ext_of_trivial_module, homology_algebra, resolve_trivial, rhom_symmetry, transfer_ainf, EpsilonCheck};
use ainfty::exactla::{rank_kernel_image, Field, PrimeField, Rationals, SparseMatrix, SparseVec};
use ainfty::ringprops::{as_condition, as_condition_left, as_regular_pipeline, is_frobenius, Outcome, PipelineOptions, Regularity};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: [usize; 2] = [3, 11];

const RANDOM_TABLES: u64 = 200;
const PERMUTATIONS: usize = 10;
const EXTERIOR_BOUND: i64 = 6;
const BOUND: i64 = 5;
const MI_ARITY: usize = 5;

type Tables = BTreeMap<String, BTreeMap<Bidegree, usize>>;
type Check = Result<String, String>;

fn lib<T>(r: ainfty::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn g(coh: i64, adams: i64) -> Bidegree {
    Bidegree::new(coh, adams)
}

fn nonzero(m: &BTreeMap<Bidegree, usize>) -> BTreeMap<Bidegree, usize> {
    m.iter().filter(|(_, n)| **n > 0).map(|(d, n)| (*d, *n)).collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exterior<F: Field>(k: &F, n: usize, bound: i64) -> TruncAInfAlgebra<F> {
    presets::exterior(k.clone(), &vec![g(0, 1); n], bound).unwrap()
}

fn example_exterior<F: Field>(k: &F, bound: i64) -> TruncAInfAlgebra<F> {
    presets::exterior(k.clone(), &[g(0, 1), g(0, 2)], bound).unwrap()
}

fn cube<F: Field>(k: &F, bound: i64) -> TruncAInfAlgebra<F> {
    presets::truncated_polynomial(k.clone(), g(0, 1), 3, bound).unwrap()
}

fn square_zero<F: Field>(k: &F, bound: i64) -> TruncAInfAlgebra<F> {
    presets::square_zero_two(k.clone(), g(0, 1), bound).unwrap()
}

fn polynomial<F: Field>(k: &F, n: usize, bound: i64) -> TruncAInfAlgebra<F> {
    presets::polynomial(k.clone(), &vec![g(0, 1); n], bound).unwrap()
}

fn presets_list<F: Field>(k: &F) -> Vec<(String, TruncAInfAlgebra<F>)> {
    let mut v = vec![
        ("k".to_string(), presets::ground(k.clone(), 4).unwrap()),
        ("Λ(x)".into(), exterior(k, 1, 6)),
        ("Λ(x1,x2)".into(), exterior(k, 2, 6)),
        ("Λ(x1,x2,x3)".into(), exterior(k, 3, 6)),
        ("Λ(x1,x2) in (0,1),(0,2)".into(), example_exterior(k, 6)),
        ("k[y]".into(), polynomial(k, 1, 6)),
        ("k[y1,y2]".into(), polynomial(k, 2, 5)),
        ("k[x]/x^3".into(), cube(k, 6)),
        ("k<x,y>/(x,y)^2".into(), square_zero(k, 6)),
        ("B(3)".into(), presets::b_p(k.clone(), 3, 6).unwrap()),
        ("B(4)".into(), presets::b_p(k.clone(), 4, 6).unwrap()),
        ("B(0)".into(), presets::b_zero(k.clone(), 3, 6).unwrap()),
    ];
    v.push(("Koszul complex".into(), common::koszul_complex(k.clone(), 3)));
    v.push(("discriminating".into(), common::discriminating(k.clone())));
    v
}

fn sign_calculus<F: Field>(k: &F, _t: &mut Tables) -> Check {
    let mut words = 0;
    for (name, a) in presets_list(k) {
        let b = lib(bar(&a, a.adams_bound()))?;
        ensure!(b.square_zero_witness().is_none(), "b∘b ≠ 0 on {name}: {:?}", b.square_zero_witness());
        words += b.dim();
    }
    for seed in 0..RANDOM_TABLES {
        let a = common::random_table(k.clone(), seed);
        ensure!(a.dim() <= 7 && a.adams_bound() <= 6 && a.max_arity() <= 5, "random table {seed} outside the size limits");
        ensure!(check_stasheff(&a, 5).passed(), "random table {seed} is not A∞");
        let b = lib(bar(&a, a.adams_bound()))?;
        ensure!(b.square_zero_witness().is_none(), "b∘b ≠ 0 on random table {seed}");
        words += b.dim();
    }
    Ok(format!("{} presets and {RANDOM_TABLES} random tables, {words} bar words", presets_list(k).len()))
}

fn exterior_duality<F: Field>(k: &F, t: &mut Tables) -> Check {
    let bound = EXTERIOR_BOUND;
    for n in 1..=3 {
        let e = lib(koszul_dual(&exterior(k, n, bound), bound))?;
        let h = lib(homology_algebra(&e))?;
        let dims = nonzero(&h.dims());
        let want: BTreeMap<Bidegree, usize> = (0..=bound).map(|m| (g(m, -m), binom(m as usize + n - 1, n - 1))).collect();
        ensure!(dims == want, "n = {n}: H(E) = {dims:?}");
        t.insert(format!("H(E(Λ_{n}))"), dims);

        let gens = h.by_degree[&g(1, -1)].clone();
        let unit = |i: usize| SparseVec::unit(k, i);
        for &a in &gens {
            for &b in &gens {
                let ab = h.mul(&unit(a), &unit(b));
                ensure!(ab == h.mul(&unit(b), &unit(a)), "n = {n}: generators {a}, {b} do not commute");
            }
        }
        // sorted monomials of each weight are independent, so k[y1..yn] → H(E) is injective
        let mut monomials: Vec<Vec<usize>> = vec![vec![]];
        for m in 0..=bound as usize {
            let cols: Vec<SparseVec<F::Elem>> =
                monomials.iter().map(|w| w.iter().fold(unit(0), |acc, &i| h.mul(&acc, &unit(gens[i])))).collect();
            let rank = rank_kernel_image(k, &lib(SparseMatrix::from_columns(h.total_dim(), cols))?).rank;
            ensure!(rank == binom(m + n - 1, n - 1), "n = {n}: monomials of weight {m} have rank {rank}");
            monomials = monomials
                .iter()
                .flat_map(|w| {
                    let from = w.last().copied().unwrap_or(0);
                    (from..n).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
    }
    Ok(format!("n = 1..3, Adams bound {bound}: dims C(m+n-1,n-1) on the diagonal, commutative, monomials independent"))
}

fn b_family_duals<F: Field>(k: &F, t: &mut Tables) -> Check {
    let bound = 6;
    let e = lib(koszul_dual(&lib(presets::b_p(k.clone(), 3, bound))?, bound))?;
    let h = lib(homology_algebra(&e))?;
    let dims = nonzero(&h.dims());
    t.insert("H(E(B(3)))".into(), dims.clone());
    let want = BTreeMap::from([(g(0, 0), 1), (g(0, 1), 1), (g(0, 2), 1)]);
    ensure!(dims == want, "B(3): H(E) = {dims:?}");
    let x = SparseVec::unit(k, h.by_degree[&g(0, 1)][0]);
    let xx = h.mul(&x, &x);
    ensure!(!xx.is_zero() && h.mul(&xx, &x).is_zero(), "B(3): x·x = {xx:?}");

    let e0 = lib(koszul_dual(&lib(presets::b_zero(k.clone(), 3, bound))?, bound))?;
    let dims0 = nonzero(&lib(homology_algebra(&e0))?.dims());
    t.insert("H(E(B(0)))".into(), dims0.clone());
    let pattern = |v: Bidegree| -> BTreeMap<Bidegree, usize> {
        let mut m = BTreeMap::new();
        for i in 0..=bound {
            m.insert(g(0, i), 1);
            if i + v.adams <= bound {
                m.insert(g(v.coh, i + v.adams), 1);
            }
        }
        m
    };
    let stated = pattern(g(1, 3));
    if dims0 != stated {
        let mirrored = if dims0 == pattern(g(-1, 3)) { "; it is the pattern with v in (-1,3)" } else { "" };
        return Err(format!("B(3) part holds; B(0): H(E) is not k[u]⊗Λ(v) with u (0,1), v (1,3){mirrored}"));
    }
    Ok(format!("B(3): (0,0),(0,1),(0,2) with x² ≠ 0, x³ = 0; B(0) matches through Adams {bound}"))
}

fn double_dual<F: Field>(k: &F, t: &mut Tables) -> Check {
    let fixtures = [
        ("Λ(x)", exterior(k, 1, BOUND)),
        ("Λ(x1,x2) in (0,1),(0,2)", example_exterior(k, BOUND)),
        ("B(3)", lib(presets::b_p(k.clone(), 3, BOUND))?),
    ];
    for (name, a) in fixtures {
        let r = lib(unit_quasi_iso_check(&a, BOUND))?;
        ensure!(r.passed(), "{name}: {r:?}");
        t.insert(format!("H(ΩB {name})"), nonzero(&r.dims_u));
    }
    Ok(format!("Λ(x), Λ(x1,x2), B(3) through Adams {BOUND}: dims and products agree"))
}

fn dg_fixtures<F: Field>(k: &F, bound: i64) -> Vec<(String, TruncAInfAlgebra<F>)> {
    vec![
        ("Λ(x)".into(), exterior(k, 1, bound)),
        ("Λ(x1,x2)".into(), exterior(k, 2, bound)),
        ("Λ(x1,x2) in (0,1),(0,2)".into(), example_exterior(k, bound)),
        ("k[y]".into(), polynomial(k, 1, bound)),
        ("k[y1,y2]".into(), polynomial(k, 2, bound)),
        ("k[x]/x^3".into(), cube(k, bound)),
        ("k<x,y>/(x,y)^2".into(), square_zero(k, bound)),
        ("B(0)".into(), presets::b_zero(k.clone(), 3, bound).unwrap()),
        ("Koszul complex".into(), common::koszul_complex(k.clone(), 3)),
    ]
}

fn reconciliation<F: Field>(k: &F, t: &mut Tables) -> Check {
    let fixtures = dg_fixtures(k, BOUND);
    for (name, a) in &fixtures {
        let r = lib(ext_of_trivial_module(a, BOUND))?;
        let res = r.resolution_dims.clone().ok_or(format!("{name}: no resolution"))?;
        ensure!(r.reconciled(), "{name}: resolution {res:?} vs bar {:?}", r.bar_dims);
        t.insert(format!("Ext {name}"), nonzero(r.dims()));
    }
    Ok(format!("{} DG fixtures through Adams {BOUND}", fixtures.len()))
}

fn resolution_properties<F: Field>(k: &F, t: &mut Tables) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fixtures = dg_fixtures(k, BOUND);
    for (name, a) in &fixtures {
        let r = lib(resolve_trivial(Arc::new(a.clone()), BOUND))?;
        ensure!(r.is_minimal(), "{name}: not minimal");
        let checks = lib(r.epsilon_checks())?;
        ensure!(checks.iter().all(EpsilonCheck::bijective), "{name}: H(ε) fails: {checks:?}");
        let ledger = r.ledger_dims();
        t.insert(format!("ledger {name}"), ledger.clone());
        let mut perm: Vec<Ix> = a.ideal().collect();
        for _ in 0..PERMUTATIONS {
            perm.shuffle(&mut rng);
            let b = lib(a.permute_basis(&perm))?;
            let again = lib(resolve_trivial(Arc::new(b), BOUND))?.ledger_dims();
            ensure!(again == ledger, "{name}: ledger changes under permutation {perm:?}");
        }
    }
    Ok(format!("{} fixtures: minimal, H(ε_u) bijective, ledger fixed under {PERMUTATIONS} permutations", fixtures.len()))
}

fn opposites<F: Field>(k: &F, _t: &mut Tables) -> Check {
    let mut algebras = presets_list(k);
    for seed in 0..40 {
        algebras.push((format!("random table {seed}"), common::random_table(k.clone(), seed)));
    }
    for (name, a) in &algebras {
        ensure!(opposite(&opposite(a)) == *a, "op∘op ≠ id on {name}");
    }
    for seed in 0..20 {
        let a = Arc::new(common::random_table(k.clone(), 500 + seed));
        let mut higher = Vec::new();
        for n in 2..=3 {
            let mut tab = OpTable::default();
            for (x, targets) in slots(&a, n) {
                tab.insert(x, SparseVec::unit(k, targets[0] as usize));
            }
            higher.push(tab);
        }
        let (_, f) = lib(transport(a, higher))?;
        let op = lib(opposite_morphism(&f))?;
        ensure!(check_morphism(&op, 5).passed(), "opposite morphism {seed} fails MI");
        ensure!(lib(opposite_morphism(&op))? == f, "op∘op ≠ id on morphism {seed}");
    }
    let mut cases = 0;
    for q in 1..=3u32 {
        for code in 0..8usize.pow(q) {
            let arities: Vec<usize> = (0..q).map(|s| code / 8usize.pow(s) % 8 + 1).collect();
            ensure!(epsilon_additivity_selftest(q as usize, &arities), "ε-additivity fails at {arities:?}");
            cases += 1;
        }
    }
    for (name, a, bound) in [
        ("B(3)", lib(presets::b_p(k.clone(), 3, 8))?, 8),
        ("Λ(x1,x2)", exterior(k, 2, 6), 6),
        ("Λ(x1,x2) in (0,1),(0,2)", example_exterior(k, 6), 6),
    ] {
        let r = lib(phi_op_iso(&a, bound))?;
        ensure!(r.passed(), "Φ on {name}: {r:?}");
    }
    Ok(format!("{} algebras, 20 morphisms, {cases} ε cases, Φ on B(3) and Λ(x1,x2)", algebras.len()))
}

fn transfer<F: Field>(k: &F, t: &mut Tables) -> Check {
    let bound = 6;
    let fixtures = vec![
        ("Λ(x)", exterior(k, 1, bound)),
        ("Λ(x1,x2)", exterior(k, 2, 4)),
        ("k[y]", polynomial(k, 1, bound)),
        ("k[x]/x^3", cube(k, bound)),
        ("k<x,y>/(x,y)^2", square_zero(k, 4)),
        ("B(3)", lib(presets::b_p(k.clone(), 3, bound))?),
    ];
    let mut cube_m3 = false;
    for (name, a) in &fixtures {
        let e = lib(koszul_dual(a, a.adams_bound()))?;
        let tr = lib(transfer_ainf(&e, MI_ARITY))?;
        let h = &tr.algebra;
        ensure!(h.op_table(1).values().all(SparseVec::is_zero), "{name}: transferred m1 ≠ 0");
        for i in h.ideal() {
            for j in h.ideal() {
                let induced = tr.homology.product.get(&(i as usize, j as usize)).cloned().unwrap_or_default();
                ensure!(h.op(2, &[i, j]) == induced, "{name}: m2({i},{j}) differs from the induced product");
            }
        }
        let mi = check_morphism(&tr.morphism, MI_ARITY);
        ensure!(mi.passed(), "{name}: MI fails: {:?}", mi.witnesses);
        t.insert(format!("HE {name}"), nonzero(&h.dims()));
        if *name == "k[x]/x^3" {
            cube_m3 = !tr.op_is_zero(3);
        }
    }
    ensure!(cube_m3, "transferred m3 vanishes on H(E(k[x]/x^3))");
    Ok(format!("{} fixtures: m1 = 0, m2 induced, MI(n ≤ {MI_ARITY}); m3 ≠ 0 for k[x]/x^3", fixtures.len()))
}

fn frobenius_triangle<F: Field>(k: &F, t: &mut Tables) -> Check {
    let fixtures = [
        ("Λ(x)", exterior(k, 1, BOUND), Outcome::Yes),
        ("Λ(x1,x2)", exterior(k, 2, BOUND), Outcome::Yes),
        ("k[x]/x^3", cube(k, BOUND), Outcome::Yes),
        ("k<x,y>/(x,y)^2", square_zero(k, BOUND), Outcome::No),
    ];
    let mut seen = Vec::new();
    for (name, a, want) in fixtures {
        let ha = lib(lib(homology_algebra(&a))?.as_algebra())?.with_finite(true);
        let f = lib(is_frobenius(&ha))?.verdict;
        let right = lib(as_condition(&a, BOUND))?;
        let left = lib(as_condition_left(&a, BOUND))?;
        ensure!(
            f.outcome == want && right.outcome == want && left.outcome == want,
            "{name}: Frobenius {}, AS {}, AS^op {}",
            f.outcome.name(),
            right.outcome.name(),
            left.outcome.name()
        );
        t.insert(format!("RHom(k,A) {name}"), nonzero(&right.evidence));
        seen.push(want.name());
    }
    Ok(format!("verdicts agree: {}", seen.join(", ")))
}

fn pipeline<F: Field>(k: &F, t: &mut Tables) -> Check {
    let run = |a: &TruncAInfAlgebra<F>| lib(as_regular_pipeline(a, PipelineOptions::new(BOUND)));
    let p = run(&polynomial(k, 1, BOUND))?;
    ensure!(p.regularity == Regularity::AsRegular, "k[y]: {}", p.regularity.name());
    t.insert("pipeline HE k[y]".into(), nonzero(&p.he_dims));

    let p = run(&square_zero(k, BOUND))?;
    ensure!(p.regularity != Regularity::AsRegular, "k<x,y>/(x,y)^2 reported regular");
    let growth: Vec<usize> = (0..=BOUND).map(|w| p.he_by_weight.get(&w).copied().unwrap_or(0)).collect();
    let rising = growth.windows(2).take_while(|w| w[0] < w[1]).count() + 1;
    ensure!(rising >= 4, "k<x,y>/(x,y)^2: HE by weight {growth:?}");
    t.insert("pipeline HE k<x,y>/(x,y)^2".into(), nonzero(&p.he_dims));
    let square_zero_verdict = p.regularity.name();

    let p = run(&exterior(k, 2, BOUND))?;
    ensure!(p.regularity != Regularity::AsRegular, "Λ(x1,x2) reported regular");
    t.insert("pipeline HE Λ(x1,x2)".into(), nonzero(&p.he_dims));
    Ok(format!("k[y] AS-regular; (x,y)^2: {square_zero_verdict}, HE {growth:?}; Λ(x1,x2): {}", p.regularity.name()))
}

fn rhom_duality<F: Field>(k: &F, t: &mut Tables) -> Check {
    let bound = 6;
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for (name, a) in [("Λ(x)", exterior(k, 1, bound)), ("B(3)", lib(presets::b_p(k.clone(), 3, bound))?)] {
        let r = lib(rhom_symmetry(&a, bound))?;
        t.insert(format!("RHom A side {name}"), nonzero(&r.a_side.dims));
        t.insert(format!("RHom E side {name}"), nonzero(&r.e_side.dims));
        notes.push(format!("{name}: same-degree match {}", r.same_degree_match));
        if !r.passed() {
            failed.push(format!("{name}: {}", r.mismatches.join("; ")));
        }
    }
    ensure!(failed.is_empty(), "negated degrees differ. {} ({})", failed.join(" | "), notes.join(", "));
    Ok(notes.join(", "))
}

type Criterion<F> = fn(&F, &mut Tables) -> Check;

fn criteria<F: Field>() -> Vec<(&'static str, Criterion<F>)> {
    vec![
        ("bar differential squares to zero", sign_calculus::<F>),
        ("exterior algebras dualize to polynomial rings", exterior_duality::<F>),
        ("duals of B(3) and B(0)", b_family_duals::<F>),
        ("double dual recovers A", double_dual::<F>),
        ("resolution and bar Ext agree", reconciliation::<F>),
        ("minimal resolution properties", resolution_properties::<F>),
        ("opposites, ε-additivity, Φ", opposites::<F>),
        ("homotopy transfer", transfer::<F>),
        ("Frobenius and AS verdicts agree", frobenius_triangle::<F>),
        ("regularity pipeline", pipeline::<F>),
        ("RHom(k,A) against RHom(k,E) in negated degrees", rhom_duality::<F>),
    ]
}

fn run_all<F: Field>(k: F) -> (Vec<(&'static str, Check)>, Tables) {
    let mut tables = Tables::new();
    let results = criteria::<F>().into_iter().map(|(name, c)| (name, c(&k, &mut tables))).collect();
    (results, tables)
}

fn main() -> ExitCode {
    let (q, tq) = run_all(Rationals);
    let (p, tp) = run_all(PrimeField::new(32003).unwrap());
    let mut failing = Vec::new();
    for (i, ((name, rq), (_, rp))) in q.iter().zip(&p).enumerate() {
        let n = i + 1;
        let (pass, detail) = match (rq, rp) {
            (Ok(d), Ok(_)) => (true, d.clone()),
            (Err(e), _) => (false, format!("over Q: {e}")),
            (_, Err(e)) => (false, format!("over F_32003: {e}")),
        };
        if !pass {
            failing.push(n);
        }
        println!("criterion {n:>2} {}: {name}. {detail}", if pass { "PASS" } else { "FAIL" });
    }
    let differ: Vec<&String> = tq.keys().chain(tp.keys()).filter(|key| tq.get(*key) != tp.get(*key)).collect();
    if differ.is_empty() {
        println!("criterion 12 PASS: tables agree over Q and F_32003. {} tables compared", tq.len());
    } else {
        failing.push(12);
        println!("criterion 12 FAIL: tables agree over Q and F_32003. differing: {differ:?}");
    }
    let passed = 12 - failing.len();
    println!("{passed}/12 passed; expected failures {KNOWN_FAILURES:?}, actual {failing:?}");
    if failing == KNOWN_FAILURES {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
