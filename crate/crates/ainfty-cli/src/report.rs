//! One JSON result per command. Dimension tables are keyed by `"i,j"`.

use std::collections::BTreeMap;

use ainfty::ainf::{check_stasheff, finiteness_classify, IdentityReport, TruncAInfAlgebra};
use ainfty::barcobar::{bar, koszul_dual, unit_quasi_iso_check};
use ainfty::bigraded::Bidegree;
use ainfty::classical::{is_koszul, KoszulReport, KoszulVerdict};
use ainfty::dgmod::{ext_of_trivial_module, homology_algebra, ChainHomology};
use ainfty::exactla::Field;
use ainfty::ringprops::{as_condition, as_condition_left, as_regular_pipeline, is_frobenius, Finiteness, PipelineOptions, Verdict};
use ainfty::Result;
use serde_json::{json, Map, Value};

use crate::spec::{presentation, AlgebraSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Check,
    Bar,
    Dual,
    Ext,
    DoubleDual,
    IsKoszul,
    IsFrobenius,
    AsCheck,
    RegularPipeline,
    ReportAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Bar => "bar",
            Command::Dual => "dual",
            Command::Ext => "ext",
            Command::DoubleDual => "double-dual",
            Command::IsKoszul => "is-koszul",
            Command::IsFrobenius => "is-frobenius",
            Command::AsCheck => "as-check",
            Command::RegularPipeline => "regular-pipeline",
            Command::ReportAll => "report-all",
        }
    }

    pub const SECTIONS: [Command; 9] = [
        Command::Check,
        Command::Bar,
        Command::Dual,
        Command::Ext,
        Command::DoubleDual,
        Command::IsKoszul,
        Command::IsFrobenius,
        Command::AsCheck,
        Command::RegularPipeline,
    ];
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub bound: i64,
    pub coh_min: Option<i64>,
    pub coh_max: Option<i64>,
    pub arity: usize,
    pub spread: Option<i64>,
    pub accept_window: bool,
}

impl Settings {
    pub fn window_json(&self) -> Value {
        json!({"adams_bound": self.bound, "coh_min": self.coh_min, "coh_max": self.coh_max, "arity_bound": self.arity})
    }

    fn keep(&self, d: &Bidegree) -> bool {
        self.coh_min.is_none_or(|m| d.coh >= m) && self.coh_max.is_none_or(|m| d.coh <= m)
    }

    pub fn table(&self, dims: &BTreeMap<Bidegree, usize>) -> Value {
        let mut m = Map::new();
        for (d, n) in dims {
            if *n > 0 && self.keep(d) {
                m.insert(d.key(), json!(n));
            }
        }
        Value::Object(m)
    }
}

fn identity_json(r: &IdentityReport) -> Value {
    let w: Vec<Value> = r.witnesses.iter().map(|w| json!({"arity": w.arity, "inputs": w.inputs, "residual": w.residual})).collect();
    json!({"identity": r.identity, "n_max": r.n_max, "checked": r.checked, "failed": r.failed, "passed": r.passed(), "witnesses": w})
}

fn verdict_json(v: &Verdict, s: &Settings) -> Value {
    json!({
        "outcome": v.outcome.name(),
        "class_degree": v.class_degree.map(|d| d.key()),
        "shift": v.shift.map(|(l, d)| json!({"l": l, "d": d})),
        "evidence": s.table(&v.evidence),
        "trusted_adams": v.window.describe(),
        "notes": v.notes,
    })
}

fn koszul_json(r: &KoszulReport, s: &Settings) -> Value {
    let (verdict, detail) = match &r.verdict {
        KoszulVerdict::YesThrough(d) => ("yes-in-window", format!("Koszul through Adams degree {d}")),
        KoszulVerdict::No(w) => ("no", w.clone()),
    };
    json!({
        "verdict": verdict,
        "detail": detail,
        "generator_degrees": s.table(&r.generator_degrees),
        "connected": r.connected,
        "single_degree": r.single_degree,
        "quadratic": r.quadratic,
        "ext": s.table(&r.ext_dims),
        "off_diagonal": r.off_diagonal.iter().map(|d| d.key()).collect::<Vec<_>>(),
        "certified": false,
    })
}

/// `HA` as an associative algebra: the homology algebra for DG inputs, `m_2` alone when `m_1 = 0`.
fn homology_as_algebra<F: Field>(a: &TruncAInfAlgebra<F>) -> Result<TruncAInfAlgebra<F>> {
    let h = if a.is_dg() {
        homology_algebra(a)?.as_algebra()?
    } else if a.has_zero_differential() {
        a.with_ops(vec![Default::default(), a.op_table(2).clone()])?
    } else {
        return Err(ainfty::Error::HypothesisViolation("homology of an A∞-algebra with m1 ≠ 0 is not computed here".into()));
    };
    Ok(h.with_finite(a.is_finite()))
}

pub fn run<F: Field>(k: F, cmd: Command, spec: &AlgebraSpec, a: &TruncAInfAlgebra<F>, s: &Settings) -> Result<Value> {
    let bound = s.bound;
    Ok(match cmd {
        Command::Check => {
            let f = finiteness_classify(a);
            json!({
                "stasheff": identity_json(&check_stasheff(a, s.arity.max(a.max_arity()))),
                "dims": s.table(&a.dims()),
                "orientation": a.orientation().name(),
                "max_arity": a.max_arity(),
                "finite": a.is_finite(),
                "finiteness": {"locally_finite": f.locally_finite, "adams_connected": f.adams_connected, "strongly_locally_finite": f.strongly_locally_finite},
            })
        }
        Command::Bar => {
            let b = bar(a, bound)?;
            let h = ChainHomology::new(&k, b.degs(), b.labels(), b.differential_columns())?;
            let mut chain = BTreeMap::new();
            for d in b.degs() {
                *chain.entry(*d).or_insert(0) += 1;
            }
            json!({
                "words": b.dim(),
                "square_zero": b.square_zero_witness().is_none(),
                "chain_dims": s.table(&chain),
                "homology": s.table(&h.dims()),
            })
        }
        Command::Dual => {
            let e = koszul_dual(a, bound)?;
            let h = homology_algebra(&e)?;
            let mut products: Vec<String> = Vec::new();
            let mut keys: Vec<_> = h.product.keys().filter(|(i, j)| *i != 0 && *j != 0).collect();
            keys.sort();
            for key in keys {
                let v = &h.product[key];
                if !v.is_zero() {
                    let terms: Vec<String> = v.iter().map(|(c, x)| format!("{}·{}", k.format(x), h.classes[*c].label)).collect();
                    products.push(format!("{} * {} = {}", h.classes[key.0].label, h.classes[key.1].label, terms.join(" + ")));
                }
            }
            json!({"dual_dims": s.table(&e.dims()), "homology": s.table(&h.dims()), "products": products})
        }
        Command::Ext => {
            let r = ext_of_trivial_module(a, bound)?;
            json!({
                "ext": s.table(r.dims()),
                "resolution": r.resolution_dims.as_ref().map(|d| s.table(d)),
                "bar": s.table(&r.bar_dims),
                "reconciled": r.reconciled(),
                "resolution_stabilized": r.resolution.as_ref().map(|l| l.stabilized),
            })
        }
        Command::DoubleDual => {
            let r = unit_quasi_iso_check(a, bound)?;
            json!({
                "homology_of_enveloping": s.table(&r.dims_u),
                "algebra_homology": s.table(&r.dims_a),
                "dims_match": r.dims_match(),
                "homology_iso": r.homology_iso,
                "products_match": r.products_match,
                "passed": r.passed(),
                "witness": r.witness,
            })
        }
        Command::IsKoszul => {
            let r = is_koszul(a, bound)?;
            let mut v = koszul_json(&r, s);
            if let Some(q) = presentation(k, spec)? {
                v["presentation"] = json!(q.to_string());
                v["quadratic_dual"] = json!(q.dual().to_string());
            }
            v
        }
        Command::IsFrobenius => {
            let h = homology_as_algebra(a)?;
            let r = is_frobenius(&h)?;
            json!({"verdict": verdict_json(&r.verdict, s), "left_socle": r.left_labels, "right_socle": r.right_labels})
        }
        Command::AsCheck => {
            json!({"right": verdict_json(&as_condition(a, bound)?, s), "left": verdict_json(&as_condition_left(a, bound)?, s)})
        }
        Command::RegularPipeline => {
            let r = as_regular_pipeline(a, PipelineOptions { bound, spread: s.spread, accept_window: s.accept_window })?;
            let by_weight: Map<String, Value> = r.he_by_weight.iter().map(|(w, n)| (w.to_string(), json!(n))).collect();
            json!({
                "verdict": r.regularity.name(),
                "he": s.table(&r.he_dims),
                "he_by_weight": by_weight,
                "he_finite": match r.finiteness {
                    Finiteness::Certified => "certified",
                    Finiteness::Accepted => "accepted-in-window",
                    Finiteness::Unknown => "not-established",
                },
                "spread": r.spread,
                "frobenius": r.frobenius.as_ref().map(|f| verdict_json(&f.verdict, s)),
                "resolution_terminates": r.resolution_terminates,
                "notes": r.notes,
            })
        }
        Command::ReportAll => {
            let mut m = Map::new();
            for c in Command::SECTIONS {
                let v = match run(k.clone(), c, spec, a, s) {
                    Ok(v) => v,
                    Err(e) => json!({"error": e.to_string()}),
                };
                m.insert(c.name().into(), v);
            }
            Value::Object(m)
        }
    })
}

