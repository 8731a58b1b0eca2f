//! Differential checks between strategies: one-step equivalence,
//! equivalence modulo commuting redexes, big-step equivalence, absorption.

mod mcr;
mod report;

use std::fmt;

use serde::Serialize;

use crate::engine::{eval, Outcome, Status, TraceEvent};
use crate::notation::StrategySpec;
use crate::term::{alpha_eq, Term};

pub use mcr::{canonicalize, mcr_equivalent, mcr_prefix_compatible};
pub use report::{
    check_absorption, check_fusion_row, compare_corpus, AbsorptionVerdict, Counterexample, CorpusReport,
    COUNTEREXAMPLE_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    OneStepEqual,
    EqualMcr,
    BigStepEqualOnly,
    Differ,
    BothExhaustedEqualPrefix,
    BothExhaustedMcrPrefix,
    Inconclusive,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 7] = [
        VerdictKind::OneStepEqual,
        VerdictKind::EqualMcr,
        VerdictKind::BigStepEqualOnly,
        VerdictKind::Differ,
        VerdictKind::BothExhaustedEqualPrefix,
        VerdictKind::BothExhaustedMcrPrefix,
        VerdictKind::Inconclusive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::OneStepEqual => "one-step-equal",
            VerdictKind::EqualMcr => "equal-mcr",
            VerdictKind::BigStepEqualOnly => "big-step-equal-only",
            VerdictKind::Differ => "differ",
            VerdictKind::BothExhaustedEqualPrefix => "both-exhausted-equal-prefix",
            VerdictKind::BothExhaustedMcrPrefix => "both-exhausted-mcr-prefix",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    /// At least as strong as equality modulo commuting redexes (prefix
    /// versions included).
    pub fn at_least_mcr(self) -> bool {
        matches!(
            self,
            VerdictKind::OneStepEqual
                | VerdictKind::EqualMcr
                | VerdictKind::BothExhaustedEqualPrefix
                | VerdictKind::BothExhaustedMcrPrefix
        )
    }

    pub fn one_step(self) -> bool {
        matches!(self, VerdictKind::OneStepEqual | VerdictKind::BothExhaustedEqualPrefix)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where two runs part ways: the first step at which their traces differ,
/// with each side's event there (absent when that trace already ended).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub a: Option<TraceEvent>,
    pub b: Option<TraceEvent>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareVerdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    pub status_a: Option<Status>,
    pub status_b: Option<Status>,
    pub result_a: Option<Term>,
    pub result_b: Option<Term>,
}

impl fmt::Display for CompareVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(w) = &self.witness {
            write!(f, " at step {}: {}", w.index, w.note)?;
            let show = |e: &Option<TraceEvent>| match e {
                Some(e) => format!("{} @{}", e.redex, e.position),
                None => "(none)".into(),
            };
            write!(f, "; a: {}; b: {}", show(&w.a), show(&w.b))?;
        }
        Ok(())
    }
}

fn witness(a: &[TraceEvent], b: &[TraceEvent], index: usize, note: &str) -> Witness {
    Witness { index, a: a.get(index).cloned(), b: b.get(index).cloned(), note: note.to_string() }
}

/// Classify a pair of runs of the same term.
pub fn judge(a: &Outcome, b: &Outcome) -> CompareVerdict {
    let (ta, tb) = (&a.trace, &b.trace);
    let diff = mcr::first_difference(ta, tb);
    let (kind, wit) = match (a.status, b.status) {
        (Status::Converged, Status::Converged) => {
            let ra = a.result.as_ref().expect("converged");
            let rb = b.result.as_ref().expect("converged");
            if diff.is_none() && alpha_eq(ra, rb) {
                (VerdictKind::OneStepEqual, None)
            } else if alpha_eq(ra, rb) {
                let i = diff.unwrap_or(ta.len().min(tb.len()));
                if mcr_equivalent(ta, tb) {
                    (VerdictKind::EqualMcr, None)
                } else {
                    (VerdictKind::BigStepEqualOnly, Some(witness(ta, tb, i, "same result, contraction orders disagree")))
                }
            } else {
                let i = diff.unwrap_or(ta.len().min(tb.len()));
                (VerdictKind::Differ, Some(witness(ta, tb, i, "results differ")))
            }
        }
        (Status::FuelExhausted, Status::FuelExhausted) => match diff {
            None => (VerdictKind::BothExhaustedEqualPrefix, None),
            Some(_) if mcr_prefix_compatible(ta, tb) => (VerdictKind::BothExhaustedMcrPrefix, None),
            Some(i) => (VerdictKind::Differ, Some(witness(ta, tb, i, "both diverge along conflicting contractions"))),
        },
        _ => (VerdictKind::Inconclusive, None),
    };
    CompareVerdict {
        kind,
        witness: wit,
        status_a: Some(a.status),
        status_b: Some(b.status),
        result_a: a.result.clone(),
        result_b: b.result.clone(),
    }
}

/// Run both strategies on `t` with the same fuel and classify the pair.
/// Resource errors on either side make the comparison inconclusive.
pub fn compare(a: &StrategySpec, b: &StrategySpec, t: &Term, fuel: u64) -> CompareVerdict {
    match (eval(a, t, fuel), eval(b, t, fuel)) {
        (Ok(oa), Ok(ob)) => judge(&oa, &ob),
        (ra, rb) => {
            let note = [ra.as_ref().err(), rb.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            CompareVerdict {
                kind: VerdictKind::Inconclusive,
                witness: Some(Witness { index: 0, a: None, b: None, note }),
                status_a: ra.as_ref().ok().map(|o| o.status),
                status_b: rb.as_ref().ok().map(|o| o.status),
                result_a: ra.ok().and_then(|o| o.result),
                result_b: rb.ok().and_then(|o| o.result),
            }
        }
    }
}
