//! Input documents and their translation into truncated algebras.

use std::collections::BTreeMap;

use ainfty::ainf::{check_stasheff, presets, AlgebraBuilder, Ix, Orientation, TruncAInfAlgebra};
use ainfty::bigraded::Bidegree;
use ainfty::classical::QuadraticPresentation;
use ainfty::exactla::{Field, SparseVec};
use ainfty::{Error, Result};
use serde::{Deserialize, Serialize};

pub const ALGEBRA_SCHEMA: &str = "ainfty.algebra/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    /// `"i,j"`
    pub deg: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub word: Vec<String>,
    /// Integer or fraction, e.g. `"-1"` or `"1/2"`.
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpEntry {
    pub inputs: Vec<String>,
    /// Output as basis label to coefficient.
    pub output: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adams_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coh_min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coh_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Exterior,
    Polynomial,
    TruncatedPolynomial,
    Quadratic,
    MonomialQuotient,
    AinfTable,
    Preset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
    /// Nilpotency order for `truncated_polynomial`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
    /// Homogeneous relations for `quadratic`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monomials: Vec<Vec<String>>,
    /// Ideal basis for `ainf_table` (the unit is implicit).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<Generator>,
    /// `m_n` structure constants keyed by arity.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ops: BTreeMap<usize, Vec<OpEntry>>,
    /// Whether an `ainf_table` is the whole algebra rather than a truncation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite: Option<bool>,
    #[serde(default)]
    pub window: Window,
}

impl AlgebraSpec {
    pub fn preset(name: &str) -> Self {
        AlgebraSpec {
            schema: ALGEBRA_SCHEMA.into(),
            field: None,
            kind: Kind::Preset,
            preset: Some(name.into()),
            generators: Vec::new(),
            power: None,
            relations: Vec::new(),
            monomials: Vec::new(),
            basis: Vec::new(),
            ops: BTreeMap::new(),
            finite: None,
            window: Window::default(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("algebra document: {e}")))?;
        if s.schema != ALGEBRA_SCHEMA {
            return Err(Error::Malformed(format!("unknown schema {:?}, expected {ALGEBRA_SCHEMA:?}", s.schema)));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("spec serializes")
    }
}

pub fn parse_coeff<F: Field>(k: &F, s: &str) -> Result<F::Elem> {
    let bad = || Error::Malformed(format!("bad coefficient {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    k.from_ratio(n, d).map_err(|_| bad())
}

fn degrees(gens: &[Generator]) -> Result<(Vec<String>, Vec<Bidegree>)> {
    if gens.is_empty() {
        return Err(Error::Malformed("no generators given".into()));
    }
    let mut names = Vec::new();
    let mut degs = Vec::new();
    for g in gens {
        if names.contains(&g.name) {
            return Err(Error::Malformed(format!("generator {} repeated", g.name)));
        }
        names.push(g.name.clone());
        degs.push(g.deg.parse()?);
    }
    Ok((names, degs))
}

fn word_indices(names: &[String], w: &[String]) -> Result<Vec<usize>> {
    w.iter()
        .map(|s| names.iter().position(|n| n == s).ok_or_else(|| Error::Malformed(format!("unknown generator {s}"))))
        .collect()
}

fn bidegree_list(s: &str) -> Result<Vec<Bidegree>> {
    s.split(';').map(|p| p.parse()).collect()
}

/// Named fixtures: `k`, `B(p)`, `B0(p)`, `exterior(i,j;…)`, `polynomial(i,j;…)`,
/// `truncated(i,j;p)`, `square_zero(i,j)`.
pub fn build_preset<F: Field>(k: F, name: &str, bound: i64) -> Result<TruncAInfAlgebra<F>> {
    let name = name.trim();
    let unknown = || Error::Malformed(format!("unknown preset {name:?}"));
    if name == "k" {
        return presets::ground(k, bound);
    }
    let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
    let args = rest.strip_suffix(')').ok_or_else(unknown)?;
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| unknown());
    match head {
        "B" => presets::b_p(k, int(args)?, bound),
        "B0" => presets::b_zero(k, int(args)?, bound),
        "exterior" => presets::exterior(k, &bidegree_list(args)?, bound),
        "polynomial" => presets::polynomial(k, &bidegree_list(args)?, bound),
        "square_zero" => presets::square_zero_two(k, args.parse()?, bound),
        "truncated" => {
            let (d, p) = args.rsplit_once(';').ok_or_else(unknown)?;
            presets::truncated_polynomial(k, d.parse()?, int(p)?, bound)
        }
        _ => Err(unknown()),
    }
}

fn build_table<F: Field>(k: F, s: &AlgebraSpec, bound: i64, arity: usize) -> Result<TruncAInfAlgebra<F>> {
    let (names, degs) = degrees(&s.basis)?;
    let max_arity = s.ops.keys().copied().max().unwrap_or(2);
    let mut b = AlgebraBuilder::new(k.clone(), Orientation::of_support(degs.iter().copied()), bound)
        .arity_bound(arity.max(max_arity))
        .finite(s.finite.unwrap_or(true));
    for (n, d) in names.iter().zip(&degs) {
        b.element(n, *d)?;
    }
    let ix = |label: &str, b: &AlgebraBuilder<F>| -> Result<Ix> {
        if label == "1" {
            return Ok(0);
        }
        b.index(label).ok_or_else(|| Error::Malformed(format!("unknown basis element {label}")))
    };
    for (&n, entries) in &s.ops {
        if n == 0 {
            return Err(Error::Malformed("arity 0 is not an operation".into()));
        }
        for e in entries {
            if e.inputs.len() != n {
                return Err(Error::Malformed(format!("m{n} entry with {} inputs", e.inputs.len())));
            }
            let x = e.inputs.iter().map(|l| ix(l, &b)).collect::<Result<Vec<_>>>()?;
            let mut terms = Vec::new();
            for (l, c) in &e.output {
                terms.push((ix(l, &b)? as usize, parse_coeff(&k, c)?));
            }
            b.set_op(n, x, SparseVec::from_terms(&k, terms))?;
        }
    }
    b.build()
}

/// Builds the algebra and runs the Stasheff check on it before handing it out.
pub fn ingest<F: Field>(k: F, s: &AlgebraSpec, bound: i64, arity: usize) -> Result<TruncAInfAlgebra<F>> {
    let a = match s.kind {
        Kind::Preset => build_preset(k, s.preset.as_deref().ok_or_else(|| Error::Malformed("preset kind needs a preset name".into()))?, bound)?,
        Kind::Exterior => {
            let (names, degs) = degrees(&s.generators)?;
            presets::exterior_named(k, &names, &degs, bound)?
        }
        Kind::Polynomial => {
            let (names, degs) = degrees(&s.generators)?;
            presets::polynomial_named(k, &names, &degs, bound)?
        }
        Kind::TruncatedPolynomial => {
            let (names, degs) = degrees(&s.generators)?;
            if names.len() != 1 {
                return Err(Error::Malformed("truncated_polynomial takes one generator".into()));
            }
            let p = s.power.ok_or_else(|| Error::Malformed("truncated_polynomial needs power".into()))?;
            presets::truncated_polynomial_named(k, &names[0], degs[0], p, bound)?
        }
        Kind::Quadratic => presentation(k, s)?.expect("quadratic kind").realize(bound)?,
        Kind::MonomialQuotient => {
            let (names, degs) = degrees(&s.generators)?;
            let mons = s.monomials.iter().map(|w| word_indices(&names, w)).collect::<Result<Vec<_>>>()?;
            presets::monomial_quotient(k, &names, &degs, &mons, bound)?
        }
        Kind::AinfTable => build_table(k, s, bound, arity)?,
    };
    let r = check_stasheff(&a, arity.max(a.max_arity()));
    if !r.passed() {
        let w = r.witnesses.first().map(|w| format!("SI({}) on {}: residual {}", w.arity, w.inputs, w.residual)).unwrap_or_default();
        return Err(Error::IdentityFailure(w));
    }
    Ok(a)
}

/// Presentation form of a `quadratic` document, when it is one.
pub fn presentation<F: Field>(k: F, s: &AlgebraSpec) -> Result<Option<QuadraticPresentation<F>>> {
    if s.kind != Kind::Quadratic {
        return Ok(None);
    }
    let (names, degs) = degrees(&s.generators)?;
    if degs.iter().any(|d| *d != degs[0]) {
        return Err(Error::Malformed("quadratic presentations need all generators in one bidegree".into()));
    }
    let mut rels = Vec::new();
    for r in &s.relations {
        let mut terms = Vec::new();
        for t in r {
            let w = word_indices(&names, &t.word)?;
            if w.len() != 2 {
                return Err(Error::Malformed("quadratic relations have words of length 2".into()));
            }
            terms.push(((w[0], w[1]), parse_coeff(&k, &t.coeff)?));
        }
        rels.push(terms);
    }
    Ok(Some(QuadraticPresentation::from_terms(k, names, degs[0], &rels)?))
}
