//! Corpus-wide comparisons and their reports.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{compare, CompareVerdict, VerdictKind};
use crate::engine::{eval, EvalError, Status};
use crate::notation::{fuse, FuseError, ReadbackEncoding, StrategySpec};
use crate::term::{alpha_eq, Term};

pub const COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub term: Term,
    pub verdict: String,
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub a: String,
    pub b: String,
    pub corpus: String,
    pub seed: Option<u64>,
    pub fuel: u64,
    pub n: usize,
    /// Count per verdict name; sums to `n`.
    pub verdicts: BTreeMap<String, usize>,
    /// Side checks run per term, each with its own verdict counts.
    pub checks: BTreeMap<String, BTreeMap<String, usize>>,
    /// Terms whose verdict contradicts what was expected.
    pub failures: usize,
    /// Terms where fuel or resource limits left the question open.
    pub inconclusive: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CorpusReport {
    fn new(a: String, b: String, fuel: u64, n: usize) -> CorpusReport {
        CorpusReport {
            a,
            b,
            corpus: String::new(),
            seed: None,
            fuel,
            n,
            verdicts: BTreeMap::new(),
            checks: BTreeMap::new(),
            failures: 0,
            inconclusive: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn count(&self, verdict: &str) -> usize {
        self.verdicts.get(verdict).copied().unwrap_or(0)
    }

    fn tally(&mut self, verdict: &str) {
        *self.verdicts.entry(verdict.to_string()).or_default() += 1;
    }

    fn tally_check(&mut self, check: &str, verdict: &str) {
        *self.checks.entry(check.to_string()).or_default().entry(verdict.to_string()).or_default() += 1;
    }

    fn record(&mut self, index: usize, term: &Term, verdict: &str, witness: serde_json::Value) {
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(Counterexample { index, term: term.clone(), verdict: verdict.to_string(), witness });
        }
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} vs {} on {} terms (fuel {})", self.a, self.b, self.n, self.fuel)?;
        for (k, v) in &self.verdicts {
            writeln!(f, "  {k}: {v}")?;
        }
        for (check, counts) in &self.checks {
            let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
            writeln!(f, "  check {check}: {}", parts.join(", "))?;
        }
        writeln!(f, "  failures: {}, inconclusive: {}", self.failures, self.inconclusive)?;
        for c in &self.counterexamples {
            writeln!(f, "  #{} {}: {}", c.index, c.verdict, c.term)?;
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

/// `compare` over a corpus, with no expectation attached: failures stay 0
/// and every `differ` is listed.
pub fn compare_corpus(a: &StrategySpec, b: &StrategySpec, corpus: &[Term], fuel: u64) -> CorpusReport {
    let verdicts: Vec<CompareVerdict> = corpus.par_iter().map(|t| compare(a, b, t, fuel)).collect();
    let mut report = CorpusReport::new(a.label(), b.label(), fuel, corpus.len());
    for (i, (t, v)) in corpus.iter().zip(&verdicts).enumerate() {
        report.tally(v.kind.name());
        if v.kind == VerdictKind::Inconclusive {
            report.inconclusive += 1;
        }
        if v.kind == VerdictKind::Differ {
            report.record(i, t, v.kind.name(), to_json(v));
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbsorptionVerdict {
    /// Both converge to alpha-equal results.
    Absorbed,
    /// Both converge, to different results.
    NotAbsorbed,
    /// One side converges within the fuel and the other does not: at this
    /// fuel, a counterexample.
    DivergesDifferently,
    BothExhausted,
    /// A resource limit was hit.
    Unknown,
}

impl AbsorptionVerdict {
    pub fn name(self) -> &'static str {
        match self {
            AbsorptionVerdict::Absorbed => "absorbed",
            AbsorptionVerdict::NotAbsorbed => "not-absorbed",
            AbsorptionVerdict::DivergesDifferently => "diverges-differently",
            AbsorptionVerdict::BothExhausted => "both-exhausted",
            AbsorptionVerdict::Unknown => "unknown",
        }
    }
}

#[derive(Serialize)]
struct AbsorptionWitness {
    composite_status: Status,
    composite_result: Option<Term>,
    outer_status: Status,
    outer_result: Option<Term>,
}

/// `outer` after `inner`, sharing one fuel budget.
fn composite(outer: &StrategySpec, inner: &StrategySpec, t: &Term, fuel: u64) -> Result<(Status, Option<Term>), EvalError> {
    let first = eval(inner, t, fuel)?;
    let Some(mid) = first.result else { return Ok((Status::FuelExhausted, None)) };
    let second = eval(outer, &mid, fuel - first.fuel_used)?;
    Ok((second.status, second.result))
}

fn absorption_one(outer: &StrategySpec, inner: &StrategySpec, t: &Term, fuel: u64) -> (AbsorptionVerdict, Option<AbsorptionWitness>) {
    let (Ok((cs, cr)), Ok(o)) = (composite(outer, inner, t, fuel), eval(outer, t, fuel)) else {
        return (AbsorptionVerdict::Unknown, None);
    };
    let verdict = match (cs, o.status) {
        (Status::Converged, Status::Converged) => {
            if alpha_eq(cr.as_ref().expect("converged"), o.result.as_ref().expect("converged")) {
                AbsorptionVerdict::Absorbed
            } else {
                AbsorptionVerdict::NotAbsorbed
            }
        }
        (Status::FuelExhausted, Status::FuelExhausted) => AbsorptionVerdict::BothExhausted,
        _ => AbsorptionVerdict::DivergesDifferently,
    };
    let w = AbsorptionWitness { composite_status: cs, composite_result: cr, outer_status: o.status, outer_result: o.result };
    (verdict, Some(w))
}

/// Big-step comparison of `outer` after `inner` against `outer` alone.
/// Failures count results that differ; runs that diverge on one side only
/// are inconclusive but listed, since at a fixed fuel they are exactly the
/// counterexamples built from divergence.
pub fn check_absorption(outer: &StrategySpec, inner: &StrategySpec, corpus: &[Term], fuel: u64) -> CorpusReport {
    let rows: Vec<_> = corpus.par_iter().map(|t| absorption_one(outer, inner, t, fuel)).collect();
    let mut report = CorpusReport::new(outer.label(), format!("{} after {}", outer.label(), inner.label()), fuel, corpus.len());
    for (i, (t, (v, w))) in corpus.iter().zip(&rows).enumerate() {
        report.tally(v.name());
        match v {
            AbsorptionVerdict::NotAbsorbed => {
                report.failures += 1;
                report.record(i, t, v.name(), to_json(w));
            }
            AbsorptionVerdict::DivergesDifferently => {
                report.inconclusive += 1;
                report.record(i, t, v.name(), to_json(w));
            }
            AbsorptionVerdict::BothExhausted | AbsorptionVerdict::Unknown => report.inconclusive += 1,
            AbsorptionVerdict::Absorbed => {}
        }
    }
    report
}

struct FusionRow {
    verdict: CompareVerdict,
    absorbs: AbsorptionVerdict,
    idempotent: AbsorptionVerdict,
}

/// Staged run of `er` against its fused hybrid over a corpus. Rows without
/// the mcr flag must be one-step equal; flagged rows equal modulo commuting
/// redexes. Each term also checks that the hybrid absorbs eval and that eval
/// is idempotent.
pub fn check_fusion_row(er: &ReadbackEncoding, corpus: &[Term], fuel: u64) -> Result<CorpusReport, FuseError> {
    let fused = fuse(er)?;
    let staged = StrategySpec::Readback(*er);
    let hybrid = StrategySpec::Hybrid(fused.hybrid);
    let ev = StrategySpec::Uniform(er.eval);
    let rows: Vec<FusionRow> = corpus
        .par_iter()
        .map(|t| {
            FusionRow {
                verdict: compare(&staged, &hybrid, t, fuel),
                absorbs: absorption_one(&hybrid, &ev, t, fuel).0,
                idempotent: absorption_one(&ev, &ev, t, fuel).0,
            }
        })
        .collect();
    let mut report = CorpusReport::new(staged.label(), hybrid.label(), fuel, corpus.len());
    for (i, (t, row)) in corpus.iter().zip(&rows).enumerate() {
        let kind = row.verdict.kind;
        report.tally(kind.name());
        report.tally_check("hybrid absorbs eval", row.absorbs.name());
        report.tally_check("eval idempotent", row.idempotent.name());
        let ok = if fused.mcr { kind.at_least_mcr() } else { kind.one_step() };
        if kind == VerdictKind::Inconclusive {
            report.inconclusive += 1;
        } else if !ok {
            report.failures += 1;
            report.record(i, t, kind.name(), to_json(&row.verdict));
        }
        for (name, v) in [("hybrid absorbs eval", row.absorbs), ("eval idempotent", row.idempotent)] {
            if v == AbsorptionVerdict::NotAbsorbed {
                report.failures += 1;
                report.record(i, t, name, serde_json::Value::Null);
            }
        }
    }
    Ok(report)
}

