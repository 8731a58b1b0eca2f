//! Fuelled evaluation with contraction traces and derivation trees.
//!
//! Fuel counts beta contractions. A readback encoding spends one budget
//! across its eval and readback stages, so a staged run and its fused hybrid
//! run out at the same contraction.

mod machine;
mod tree;

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::notation::{StrategySpec, Verdict};
use crate::term::{alpha_eq, substitute, Path, Term, TermKind};
use machine::{Machine, Stop};

pub use tree::{sequence_from_tree, Contraction, DerivationTree, Rule};

pub const DEFAULT_FUEL: u64 = 100_000;

/// One contraction. `position` addresses the redex in the whole term as it
/// stood when the contraction happened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub index: usize,
    pub position: Path,
    pub redex: Term,
    pub contractum: Term,
}

impl Serialize for TraceEvent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TraceEvent", 4)?;
        st.serialize_field("i", &self.index)?;
        st.serialize_field("path", &self.position)?;
        st.serialize_field("redex", &self.redex)?;
        st.serialize_field("contractum", &self.contractum)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Converged,
    FuelExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Converged => "converged",
            Status::FuelExhausted => "fuel-exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub spec: StrategySpec,
    pub term: Term,
    pub status: Status,
    /// Present iff converged.
    pub result: Option<Term>,
    pub trace: Vec<TraceEvent>,
    pub fuel_used: u64,
}

impl Outcome {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Outcome", 6)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("term", &self.term)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("result", &self.result)?;
        st.serialize_field("fuel_used", &self.fuel_used)?;
        st.serialize_field("trace", &self.trace)?;
        st.end()
    }
}

/// Bounds beyond fuel. Exceeding one is an error, not a fuel exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Nesting of evaluator calls.
    pub max_depth: usize,
    /// Nodes in a contractum.
    pub max_size: u64,
    /// Evaluator calls in one run.
    pub max_work: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_depth: 200_000, max_size: 1_000_000, max_work: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("malformed strategy {spec}: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("readback applied to non-intermediate form (redex at {position})")]
    ReadbackOnRedex { position: Path },
    #[error("evaluation nested deeper than {limit} calls")]
    DepthLimit { limit: usize },
    #[error("a contractum exceeded {limit} nodes")]
    SizeLimit { limit: u64 },
    #[error("evaluation exceeded {limit} evaluator calls")]
    WorkLimit { limit: u64 },
}

impl EvalError {
    /// Resource errors say nothing about the strategy, only about the budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, EvalError::DepthLimit { .. } | EvalError::SizeLimit { .. } | EvalError::WorkLimit { .. })
    }
}

fn check(spec: &StrategySpec) -> Result<(), EvalError> {
    // Readback slots that do not fit the eval triple would read back a
    // subterm eval never touched; everything else the templates can run,
    // provisos or not.
    if let StrategySpec::Readback(_) = spec {
        let report = crate::notation::validate(spec);
        let bad: Vec<&str> = report
            .diagnostics
            .iter()
            .filter(|d| d.proviso == "ER-compat")
            .map(|d| d.message.as_str())
            .collect();
        if report.verdict == Verdict::Invalid && !bad.is_empty() {
            return Err(EvalError::Malformed { spec: spec.to_string(), reason: bad.join("; ") });
        }
    }
    Ok(())
}

fn execute(spec: &StrategySpec, t: &Term, fuel: u64, limits: Limits, trees: bool) -> Result<(Outcome, Option<DerivationTree>), EvalError> {
    check(spec)?;
    let mut m = Machine::new(spec, fuel, limits, trees);
    let run = m.run(Machine::top(spec), t.clone());
    let trace = std::mem::take(&mut m.trace);
    let fuel_used = trace.len() as u64;
    let (status, result, tree) = match run {
        Ok((r, tree)) => (Status::Converged, Some(r), tree),
        Err(Stop::Fuel) => (Status::FuelExhausted, None, None),
        Err(Stop::Error(e)) => return Err(e),
    };
    Ok((Outcome { spec: *spec, term: t.clone(), status, result, trace, fuel_used }, tree))
}

pub fn eval(spec: &StrategySpec, t: &Term, fuel: u64) -> Result<Outcome, EvalError> {
    eval_with(spec, t, fuel, Limits::default())
}

pub fn eval_with(spec: &StrategySpec, t: &Term, fuel: u64, limits: Limits) -> Result<Outcome, EvalError> {
    execute(spec, t, fuel, limits, false).map(|(o, _)| o)
}

/// A run together with its derivation tree (absent when fuel ran out).
#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub outcome: Outcome,
    pub tree: Option<DerivationTree>,
}

pub fn derivation_tree(spec: &StrategySpec, t: &Term, fuel: u64) -> Result<Derivation, EvalError> {
    execute(spec, t, fuel, Limits::default(), true).map(|(outcome, tree)| Derivation { outcome, tree })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {index}: no subterm at {position}")]
    NoSubterm { index: usize, position: Path },
    #[error("step {index}: subterm at {position} is {found}, trace says {expected}")]
    RedexMismatch { index: usize, position: Path, found: Term, expected: Term },
}

/// The evaluation sequence a trace describes, starting with `t` itself.
pub fn reconstruct_sequence(t: &Term, trace: &[TraceEvent]) -> Result<Vec<Term>, ReplayError> {
    let mut seq = vec![t.clone()];
    let mut cur = t.clone();
    for (i, ev) in trace.iter().enumerate() {
        let Some(found) = cur.at(&ev.position) else {
            return Err(ReplayError::NoSubterm { index: i, position: ev.position.clone() });
        };
        if found != &ev.redex {
            return Err(ReplayError::RedexMismatch {
                index: i,
                position: ev.position.clone(),
                found: found.clone(),
                expected: ev.redex.clone(),
            });
        }
        cur = cur.replace_at(&ev.position, ev.contractum.clone()).expect("position was just resolved");
        seq.push(cur.clone());
    }
    Ok(seq)
}

/// Whether an event's contractum is what substitution makes of its redex.
pub fn event_is_sound(ev: &TraceEvent) -> bool {
    let TermKind::App(f, a) = ev.redex.kind() else { return false };
    let TermKind::Lam(x, b) = f.kind() else { return false };
    alpha_eq(&ev.contractum, &substitute(a, x, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_spec;
    use crate::term::{parse_term, print_term};

    fn run(spec: &str, term: &str, fuel: u64) -> Outcome {
        eval(&parse_spec(spec).unwrap(), &parse_term(term).unwrap(), fuel).unwrap()
    }

    #[test]
    fn by_value_example_has_three_contractions() {
        let o = run("bv", "(\\x.#I z)(#I z)", 10);
        assert_eq!(o.status, Status::Converged);
        assert_eq!(print_term(o.result.as_ref().unwrap()), "z");
        let contracta: Vec<String> = o.trace.iter().map(|e| print_term(&e.contractum)).collect();
        assert_eq!(contracta, ["z", "(\\x.x) z", "z"]);
        let seq = reconstruct_sequence(&o.term, &o.trace).unwrap();
        assert_eq!(seq.len(), 4);
        assert_eq!(print_term(&seq[1]), "(\\x.(\\x.x) z) z");
    }

    #[test]
    fn omega_argument() {
        assert_eq!(run("bv", "(\\y.z) #Omega", 1000).status, Status::FuelExhausted);
        let o = run("bn", "(\\y.z) #Omega", 10);
        assert_eq!((o.status, o.trace.len()), (Status::Converged, 1));
    }

    #[test]
    fn omega_runs_in_constant_stack() {
        let o = run("no", "#Omega", 200_000);
        assert_eq!((o.status, o.fuel_used), (Status::FuelExhausted, 200_000));
    }

    #[test]
    fn call_by_name_replay() {
        let o = run("bn", "(\\x.x)((\\y.y) z)", 10);
        let seq: Vec<String> = reconstruct_sequence(&o.term, &o.trace).unwrap().iter().map(print_term).collect();
        assert_eq!(seq, ["(\\x.x) ((\\y.y) z)", "(\\y.y) z", "z"]);
    }

    #[test]
    fn head_spine_contracts_under_lambda() {
        let o = run("he", "\\x.#I x", 10);
        assert_eq!(o.trace.len(), 1);
        assert_eq!(o.trace[0].position.to_string(), "B");
    }

    #[test]
    fn readback_staging() {
        let o = run("byValue", "(\\x.\\y.(\\z.z) y) w", 10);
        assert_eq!(print_term(o.result.as_ref().unwrap()), "\\y.y");
        assert_eq!(o.trace.iter().map(|e| e.position.to_string()).collect::<Vec<_>>(), ["", "B"]);
        let t = parse_term("(\\x.x) y").unwrap();
        let e = eval(&parse_spec("RR.ISS").unwrap(), &t, 10).unwrap_err();
        assert!(matches!(e, EvalError::Malformed { .. }));
    }

    #[test]
    fn trees_agree_with_traces() {
        let spec = parse_spec("bv").unwrap();
        let t = parse_term("(\\x.#I z)(#I z)").unwrap();
        let d = derivation_tree(&spec, &t, 10).unwrap();
        let tree = d.tree.unwrap();
        assert_eq!(tree.rule, Rule::Con);
        assert_eq!(sequence_from_tree(&tree), d.outcome.trace);
        let d = derivation_tree(&parse_spec("bn").unwrap(), &parse_term("x #Omega").unwrap(), 10).unwrap();
        let tree = d.tree.unwrap();
        assert_eq!(tree.rule, Rule::Neu);
        assert_eq!(tree.output, parse_term("x #Omega").unwrap());
        let d = derivation_tree(&spec, &parse_term("x").unwrap(), 10).unwrap();
        assert_eq!(d.tree.unwrap().node_count(), 1);
    }

    #[test]
    fn deep_spines_hit_the_depth_limit_cleanly() {
        // \x. x (x (x ...)) with every operand a redex under sn.
        let mut t = Term::var("z");
        for _ in 0..1500 {
            t = Term::app(Term::var("x"), Term::app(parse_term("\\a.a").unwrap(), t));
        }
        let limits = Limits { max_depth: 1000, ..Limits::default() };
        let e = eval_with(&parse_spec("sn").unwrap(), &t, 100_000, limits).unwrap_err();
        assert!(e.is_resource());
        let o = eval(&parse_spec("sn").unwrap(), &t, 100_000).unwrap();
        assert_eq!(o.fuel_used, 1500);
    }
}
