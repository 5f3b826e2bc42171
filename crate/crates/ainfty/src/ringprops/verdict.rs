use std::collections::BTreeMap;
use std::fmt;

use crate::bigraded::Bidegree;
use crate::dgmod::TrustWindow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    /// The window is too small to decide.
    WindowLimited,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::WindowLimited => "window-limited",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Bidegree of the class that decides a yes: the socle, or the surviving RHom class.
    pub class_degree: Option<Bidegree>,
    /// `(l, d)` with `Ext^d_A(k,A) ≅ Σ^l k`, so the class sits in `(d, -l)`.
    pub shift: Option<(i64, i64)>,
    pub evidence: BTreeMap<Bidegree, usize>,
    pub window: TrustWindow,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, class_degree: Option<Bidegree>, evidence: BTreeMap<Bidegree, usize>, window: TrustWindow, notes: Vec<String>) -> Self {
        let shift = class_degree.filter(|_| outcome == Outcome::Yes).map(|d| (-d.adams, d.coh));
        Verdict { outcome, class_degree, shift, evidence, window, notes }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome.name())?;
        if let Some((l, d)) = self.shift {
            write!(f, " (l={l}, d={d})")?;
        }
        if !self.notes.is_empty() {
            write!(f, ": {}", self.notes.join("; "))?;
        }
        Ok(())
    }
}
