//! Slot algebra relating eval-readback pairs to balanced hybrid triples.
//!
//! Readback after eval on a subterm is, slot for slot, the hybrid's treatment
//! of that subterm: nothing after nothing is nothing, eval after nothing is
//! the subsidiary, readback after eval is the hybrid. The operator-operand
//! slot `ar1` comes straight from the eval triple.

use std::fmt;

use serde::Serialize;

use super::{validate, HSlot, HybridEncoding, HybridTriple, RSlot, ReadbackEncoding, StrategySpec, USlot, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuseError {
    #[error("readback slot {slot} cannot follow eval slot {eval} in {spec}")]
    Incompatible { spec: String, slot: String, eval: String },
    #[error("{spec} is not a valid readback encoding: {reason}")]
    Invalid { spec: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fused {
    pub hybrid: HybridEncoding,
    /// Equivalence holds only modulo commuting redexes.
    pub mcr: bool,
}

impl Serialize for HybridEncoding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ReadbackEncoding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Fused {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = StrategySpec::Hybrid(self.hybrid);
        write!(f, "{}", self.hybrid)?;
        if let Some(a) = spec.alias() {
            write!(f, " ({a})")?;
        }
        write!(f, ", mcr={}", self.mcr)
    }
}

/// `compose(rb, ev)`: the hybrid slot equal to readback slot `rb` run after
/// eval slot `ev`. `None` for the combinations that make no sense.
pub fn compose(rb: RSlot, ev: USlot) -> Option<HSlot> {
    match (rb, ev) {
        (RSlot::I, USlot::I) => Some(HSlot::I),
        (RSlot::E, USlot::I) => Some(HSlot::S),
        (RSlot::RE, USlot::I) => Some(HSlot::H),
        (RSlot::I, USlot::S) => Some(HSlot::S),
        (RSlot::R, USlot::S) => Some(HSlot::H),
        _ => None,
    }
}

pub fn fuse(er: &ReadbackEncoding) -> Result<Fused, FuseError> {
    let slot = |rb: RSlot, ev: USlot| {
        compose(rb, ev).ok_or_else(|| FuseError::Incompatible {
            spec: er.to_string(),
            slot: rb.text().to_string(),
            eval: ev.letter().to_string(),
        })
    };
    let la = slot(er.la, er.eval.la)?;
    let ar2 = slot(er.ar2, er.eval.ar2)?;
    let report = validate(&StrategySpec::Readback(*er));
    if report.verdict != Verdict::ValidReadback {
        let reason = report.diagnostics.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; ");
        return Err(FuseError::Invalid { spec: er.to_string(), reason });
    }
    let hybrid = HybridTriple::new(la, HSlot::from_uniform(er.eval.ar1), ar2);
    Ok(Fused {
        hybrid: HybridEncoding { hybrid, sub: er.eval },
        // Fusion moves the evaluation of neutral operands ahead of the
        // readback of the head, which reorders redexes only when eval
        // already touches those operands.
        mcr: er.eval.ar2 == USlot::S,
    })
}

/// Every valid readback encoding that fuses to `hy`, by exhaustive search
/// over the sixteen slot pairs. Empty for unbalanced hybrids.
pub fn defuse(hy: &HybridEncoding) -> Vec<ReadbackEncoding> {
    let mut out = Vec::new();
    for la in RSlot::ALL {
        for ar2 in RSlot::ALL {
            let er = ReadbackEncoding { la, ar2, eval: hy.sub };
            if fuse(&er).is_ok_and(|f| f.hybrid == *hy) {
                out.push(er);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_spec;

    fn rb(s: &str) -> ReadbackEncoding {
        match parse_spec(s).unwrap() {
            StrategySpec::Readback(r) => r,
            other => panic!("{other} is not a readback encoding"),
        }
    }

    fn hy(s: &str) -> HybridEncoding {
        match parse_spec(s).unwrap() {
            StrategySpec::Hybrid(h) => h,
            other => panic!("{other} is not a hybrid encoding"),
        }
    }

    #[test]
    fn fuse_examples() {
        let f = fuse(&rb("(RE)(RE).III")).unwrap();
        assert_eq!((f.hybrid.to_string(), f.mcr), ("HIH<>III".into(), false));
        let f = fuse(&rb("(RE)I.ISS")).unwrap();
        assert_eq!((f.hybrid.to_string(), f.mcr), ("HSS<>ISS".into(), true));
        let f = fuse(&rb("R(RE).SII")).unwrap();
        assert_eq!((f.hybrid.to_string(), f.mcr), ("HIH<>SII".into(), false));
        assert_eq!(fuse(&rb("byValue")).unwrap().to_string(), "HSH<>ISS (sn), mcr=true");
        assert!(matches!(fuse(&rb("RR.III")), Err(FuseError::Incompatible { .. })));
        assert!(matches!(fuse(&rb("II.III")), Err(FuseError::Invalid { .. })));
    }

    #[test]
    fn defuse_examples() {
        assert_eq!(defuse(&hy("hr")), vec![rb("(RE)I.III")]);
        assert_eq!(defuse(&hy("sn")), vec![rb("(RE)R.ISS")]);
        assert!(defuse(&hy("ha")).is_empty());
        assert!(defuse(&hy("so")).is_empty());
        assert_eq!(defuse(&hy("IIH<>III")), vec![rb("I(RE).III")]);
    }
}
