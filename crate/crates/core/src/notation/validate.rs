//! Well-formedness provisos.
//!
//! Uniform (U1, U2) hold by construction of the triple notation. Hybrid:
//! H1 is fixed by the notation; H2 asks that `la`/`ar2` evaluate strictly more
//! than the subsidiary (some slot is `H`, and some slot calls `S` or `H` where
//! the subsidiary has `I`); H3 asks that `ar1` be the identity when the
//! subsidiary is non-strict and evaluate at least as much as the subsidiary
//! when it is strict. Readback: ER1 is fixed by the notation; ER2 asks for a
//! slot that calls eval where eval left the subterm alone, and a slot that
//! reads back.

use std::fmt;

use serde::Serialize;

use super::{HSlot, HybridEncoding, RSlot, ReadbackEncoding, StrategySpec, USlot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ValidUniform,
    ValidHybridBalanced,
    ValidHybridUnbalanced,
    ValidReadback,
    Spurious,
    DegenerateUniform,
    Invalid,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ValidUniform => "valid-uniform",
            Verdict::ValidHybridBalanced => "valid-hybrid-balanced",
            Verdict::ValidHybridUnbalanced => "valid-hybrid-unbalanced",
            Verdict::ValidReadback => "valid-readback",
            Verdict::Spurious => "spurious",
            Verdict::DegenerateUniform => "degenerate-uniform",
            Verdict::Invalid => "invalid",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub proviso: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    fn new(verdict: Verdict) -> ValidationReport {
        ValidationReport { verdict, diagnostics: Vec::new() }
    }

    fn with(mut self, proviso: &'static str, message: impl Into<String>) -> ValidationReport {
        self.diagnostics.push(Diagnostic { proviso, message: message.into() });
        self
    }

    pub fn is_usable(&self) -> bool {
        self.verdict != Verdict::Invalid
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.verdict.name())?;
        for d in &self.diagnostics {
            write!(f, "\n  {}: {}", d.proviso, d.message)?;
        }
        Ok(())
    }
}

pub fn validate(spec: &StrategySpec) -> ValidationReport {
    match spec {
        StrategySpec::Uniform(_) => ValidationReport::new(Verdict::ValidUniform),
        StrategySpec::Hybrid(h) => validate_hybrid(h),
        StrategySpec::Readback(r) => validate_readback(r),
    }
}

fn validate_hybrid(h: &HybridEncoding) -> ValidationReport {
    let (x, y) = (h.hybrid, h.sub);
    let spec = h.to_string();

    if x.to_string() == y.to_string() {
        return ValidationReport::new(Verdict::DegenerateUniform).with(
            "H2",
            format!("hybrid and subsidiary triples coincide; {spec} is the uniform evaluator {y}"),
        );
    }

    let mut invalid = Vec::new();
    for (name, xs, ys) in [("la", x.la, y.la), ("ar2", x.ar2, y.ar2)] {
        if ys == USlot::S && xs == HSlot::I {
            invalid.push(("H2", format!("{name} is the identity where the subsidiary evaluates")));
        }
    }
    match (y.ar1, x.ar1) {
        (USlot::I, HSlot::S | HSlot::H) => invalid.push((
            "H3",
            "ar1 must be the identity over a non-strict subsidiary".to_string(),
        )),
        (USlot::S, HSlot::I) => invalid.push((
            "H3",
            "ar1 must evaluate at least as much as the strict subsidiary".to_string(),
        )),
        _ => {}
    }
    if !invalid.is_empty() {
        return invalid
            .into_iter()
            .fold(ValidationReport::new(Verdict::Invalid), |r, (p, m)| r.with(p, m));
    }

    let recursive = x.la == HSlot::H || x.ar2 == HSlot::H;
    let exceeds = (y.la == USlot::I && x.la != HSlot::I) || (y.ar2 == USlot::I && x.ar2 != HSlot::I);
    if !recursive || !exceeds {
        let why = if !recursive {
            "neither la nor ar2 calls the hybrid"
        } else {
            "la and ar2 only repeat what the subsidiary already evaluates"
        };
        return ValidationReport::new(Verdict::Spurious)
            .with("H2", format!("{spec} does not evaluate more than its subsidiary {y}: {why}"));
    }

    // Moving non-headness into the hybrid over call-by-name gives back the
    // uniform IIS.
    if x.to_string() == "IIH" && y.to_string() == "III" {
        return ValidationReport::new(Verdict::DegenerateUniform)
            .with("H1-H3", "satisfies the hybrid provisos but defines uniform IIS");
    }

    let balanced = matches!((x.ar1, y.ar1), (HSlot::I, USlot::I) | (HSlot::S, USlot::S));
    ValidationReport::new(if balanced { Verdict::ValidHybridBalanced } else { Verdict::ValidHybridUnbalanced })
}

/// Readback slots permitted over each eval slot: an unevaluated subterm may be
/// left alone, evaluated, or evaluated and read back; an evaluated one may be
/// left alone or read back.
pub(crate) fn compatible(rb: RSlot, ev: USlot) -> bool {
    match ev {
        USlot::I => matches!(rb, RSlot::I | RSlot::E | RSlot::RE),
        USlot::S => matches!(rb, RSlot::I | RSlot::R),
    }
}

fn validate_readback(r: &ReadbackEncoding) -> ValidationReport {
    let mut report = ValidationReport::new(Verdict::ValidReadback);
    for (name, rb, ev) in [("la", r.la, r.eval.la), ("ar2", r.ar2, r.eval.ar2)] {
        if !compatible(rb, ev) {
            let want = match ev {
                USlot::I => "I, E or (RE)",
                USlot::S => "I or R",
            };
            report = report.with(
                "ER-compat",
                format!("{name} slot {} is not permitted over eval slot {}; expected {want}", rb.text(), ev.letter()),
            );
        }
    }
    let calls_eval = [r.la, r.ar2].iter().any(|s| matches!(s, RSlot::E | RSlot::RE));
    let reads_back = [r.la, r.ar2].iter().any(|s| matches!(s, RSlot::R | RSlot::RE));
    if !calls_eval {
        report = report.with("ER2", "readback never calls eval on a subterm that eval left unevaluated");
    }
    if !reads_back {
        report = report.with("ER2", "readback never calls itself, neither directly nor after eval");
    }
    if !report.diagnostics.is_empty() {
        report.verdict = Verdict::Invalid;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_spec, HybridTriple, UniformTriple};

    fn verdict(s: &str) -> Verdict {
        validate(&parse_spec(s).unwrap()).verdict
    }

    #[test]
    fn spurious_examples() {
        for s in ["HIH<>SIS", "HSI<>SSI", "IHH<>ISS", "HHI<>SSI"] {
            let r = validate(&parse_spec(s).unwrap());
            assert_eq!(r.verdict, Verdict::Spurious, "{s}");
            assert!(r.diagnostics.iter().any(|d| d.proviso == "H2"));
        }
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(verdict("SIS<>SIS"), Verdict::DegenerateUniform);
        let r = validate(&parse_spec("IIH<>III").unwrap());
        assert_eq!(r.verdict, Verdict::DegenerateUniform);
        assert!(r.diagnostics[0].message.contains("uniform IIS"));
    }

    #[test]
    fn readback_examples() {
        let r = validate(&parse_spec("II.III").unwrap());
        assert_eq!(r.verdict, Verdict::Invalid);
        assert!(r.diagnostics.iter().any(|d| d.proviso == "ER2"));
        assert_eq!(verdict("(RE)R.ISS"), Verdict::ValidReadback);
        assert_eq!(verdict("RR.ISS"), Verdict::Invalid);
        assert_eq!(verdict("(RE)(RE).ISS"), Verdict::Invalid);
    }

    #[test]
    fn survey_hybrids() {
        assert_eq!(verdict("ha"), Verdict::ValidHybridUnbalanced);
        assert_eq!(verdict("so"), Verdict::ValidHybridUnbalanced);
        for s in ["no", "hr", "sn", "hn", "am", "bs"] {
            assert_eq!(verdict(s), Verdict::ValidHybridBalanced, "{s}");
        }
        assert_eq!(verdict("HSH<>III"), Verdict::Invalid);
        assert_eq!(verdict("HIH<>ISS"), Verdict::Invalid);
    }

    #[test]
    fn valid_hybrid_space_has_thirty_three_members() {
        let mut n = 0;
        for sub in UniformTriple::all() {
            for hybrid in HybridTriple::all() {
                let v = validate(&StrategySpec::Hybrid(HybridEncoding { hybrid, sub })).verdict;
                if matches!(v, Verdict::ValidHybridBalanced | Verdict::ValidHybridUnbalanced)
                    || (v == Verdict::DegenerateUniform && hybrid.to_string() != sub.to_string())
                {
                    n += 1;
                }
            }
        }
        assert_eq!(n, 33);
    }
}
