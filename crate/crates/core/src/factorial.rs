//! Factorial as a smoke test for every strategy.
//!
//! Each strategy needs a recursion scheme it can actually unfold: call-by-name
//! style strategies take `Y` with the direct definition, call-by-value style
//! ones need `Z` and a thunk under a lambda, and the strict head strategies
//! need the delimited-continuation variant. Full strategies must produce the
//! Church numeral for n! exactly; the rest stop at their final form.

use serde::Serialize;

use crate::engine::{eval, EvalError, Status};
use crate::notation::{lookup, StrategySpec};
use crate::term::{builtin, church, classify, is_in, FormClass, FormSet, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Encoding {
    /// `Y F_direct n`
    YDirect,
    /// `Z F_thunkLambda n I`
    ZThunk,
    /// `Y F_delimcps n I`
    YDelimCps,
}

/// Strategy label and the encoding its row uses.
pub const ROWS: &[(&str, Encoding)] = &[
    ("bn", Encoding::YDirect),
    ("hr", Encoding::YDirect),
    ("he", Encoding::YDirect),
    ("no", Encoding::YDirect),
    ("hn", Encoding::YDirect),
    ("IIS", Encoding::YDirect),
    ("bv", Encoding::ZThunk),
    ("am", Encoding::ZThunk),
    ("sn", Encoding::ZThunk),
    ("ha", Encoding::ZThunk),
    ("ho", Encoding::YDelimCps),
    ("so", Encoding::YDelimCps),
    ("bs", Encoding::YDelimCps),
];

#[derive(Debug, thiserror::Error)]
pub enum FactorialError {
    #[error("no factorial row for strategy {0}")]
    UnknownRow(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorialReport {
    pub strategy: String,
    pub encoding: Encoding,
    pub n: u64,
    pub term: Term,
    pub status: Status,
    pub result: Option<Term>,
    pub fuel_used: u64,
    /// The form the strategy is expected to deliver.
    pub expected_form: FormClass,
    pub forms: FormSet,
    /// Church numeral for n!, compared against the result only for
    /// strategies that deliver normal forms.
    pub expected: Term,
    pub ok: bool,
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn b(name: &str) -> Term {
    builtin(name).expect("known builtin")
}

pub fn factorial_term(encoding: Encoding, n: u64) -> Term {
    match encoding {
        Encoding::YDirect => Term::apps(b("Y"), [b("F_direct"), church(n)]),
        Encoding::ZThunk => Term::apps(b("Z"), [b("F_thunkLambda"), church(n), b("I")]),
        Encoding::YDelimCps => Term::apps(b("Y"), [b("F_delimcps"), church(n), b("I")]),
    }
}

pub fn row_for(spec: &StrategySpec) -> Option<Encoding> {
    let label = spec.label();
    ROWS.iter().find(|(l, _)| *l == label).map(|(_, e)| *e)
}

pub fn demo_factorial(spec: &StrategySpec, n: u64, fuel: u64) -> Result<FactorialReport, FactorialError> {
    let encoding = row_for(spec).ok_or_else(|| FactorialError::UnknownRow(spec.label()))?;
    let expected_form = lookup(spec).map(|e| e.result).ok_or_else(|| FactorialError::UnknownRow(spec.label()))?;
    let term = factorial_term(encoding, n);
    let out = eval(spec, &term, fuel)?;
    let expected = church(factorial(n));
    let forms = out.result.as_ref().map(classify).unwrap_or_default();
    let ok = match &out.result {
        None => false,
        Some(r) if expected_form == FormClass::NF => crate::term::alpha_eq(r, &expected),
        Some(r) => is_in(r, expected_form),
    };
    Ok(FactorialReport {
        strategy: spec.label(),
        encoding,
        n,
        term,
        status: out.status,
        result: out.result,
        fuel_used: out.fuel_used,
        expected_form,
        forms,
        expected,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_spec;

    #[test]
    fn every_row_succeeds() {
        for (label, _) in ROWS {
            let r = demo_factorial(&parse_spec(label).unwrap(), 3, 200_000).unwrap();
            assert!(r.ok, "{label}: {:?} {:?} forms {}", r.status, r.result.map(|t| t.to_string()), r.forms);
        }
    }
}
