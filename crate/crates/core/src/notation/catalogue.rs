//! The table of uniform, hybrid and eval-readback evaluators.

use std::fmt;

use serde::Serialize;

use super::{fuse, parse_spec, StrategySpec, UniformTriple, USlot};
use crate::term::FormClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Uniform,
    HybridBalanced,
    HybridUnbalanced,
    Readback,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Uniform => "uniform",
            Classification::HybridBalanced => "hybrid balanced",
            Classification::HybridUnbalanced => "hybrid unbalanced",
            Classification::Readback => "eval-readback",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogueEntry {
    pub alias: Option<&'static str>,
    pub spec: StrategySpec,
    pub classification: Classification,
    pub strict: bool,
    /// Final form of converged results.
    pub result: FormClass,
    /// Final form of the eval stage, for readback rows.
    pub intermediate: Option<FormClass>,
    /// The uniform evaluator a degenerate hybrid defines, or the hybrid a
    /// readback row fuses to.
    pub equivalent: Option<String>,
    pub mcr: bool,
    pub note: Option<&'static str>,
}

// A weak-head subsidiary leaves neutral operands in WHNF only, e.g.
// \x.x (x ((\a.a) x)), so ar2=S over it gives HNF rather than VHNF.
const WHNF_OPERANDS: &str = "neutral operands are evaluated by a weak-head subsidiary, so the result is HNF and not VHNF";

// (hybrid, subsidiary, result form, note)
const HYBRIDS: &[(&str, &str, FormClass, Option<&str>)] = {
    use FormClass::*;
    &[
        ("IIH", "III", WNF, None),
        ("SIH", "III", WNF, None),
        ("HII", "III", HNF, None),
        ("HIS", "III", HNF, Some(WHNF_OPERANDS)),
        ("HIH", "III", NF, None),
        ("SIH", "IIS", WNF, None),
        ("HIS", "IIS", VHNF, None),
        ("HIH", "IIS", NF, None),
        ("SIH", "SII", WNF, None),
        ("HIS", "SII", HNF, None),
        ("HIH", "SII", NF, None),
        ("ISH", "ISI", WNF, None),
        ("SSH", "ISI", WNF, None),
        ("HSI", "ISI", HNF, None),
        ("HSS", "ISI", HNF, Some(WHNF_OPERANDS)),
        ("HSH", "ISI", NF, None),
        ("SSH", "ISS", WNF, None),
        ("HSS", "ISS", VHNF, None),
        ("HSH", "ISS", NF, None),
        ("SSH", "SSI", WNF, None),
        ("HSS", "SSI", HNF, None),
        ("HSH", "SSI", NF, None),
        ("IHH", "ISI", WNF, None),
        ("SHH", "ISI", WNF, None),
        ("HHI", "ISI", HNF, None),
        ("HHS", "ISI", HNF, Some(WHNF_OPERANDS)),
        ("HHH", "ISI", NF, None),
        ("SHH", "ISS", WNF, None),
        ("HHS", "ISS", VHNF, None),
        ("HHH", "ISS", NF, None),
        ("SHH", "SSI", WNF, None),
        ("HHS", "SSI", HNF, None),
        ("HHH", "SSI", NF, None),
    ]
};

const READBACKS: &[&str] = &[
    "I(RE).III",
    "E(RE).III",
    "(RE)I.III",
    "(RE)E.III",
    "(RE)(RE).III",
    "ER.IIS",
    "(RE)I.IIS",
    "(RE)R.IIS",
    "I(RE).SII",
    "RE.SII",
    "R(RE).SII",
    "I(RE).ISI",
    "E(RE).ISI",
    "(RE)I.ISI",
    "(RE)E.ISI",
    "(RE)(RE).ISI",
    "ER.ISS",
    "(RE)I.ISS",
    "(RE)R.ISS",
    "I(RE).SSI",
    "RE.SSI",
    "R(RE).SSI",
];

/// Final form of a uniform evaluator, fixed by its `la` and `ar2` slots.
pub(crate) fn uniform_form(t: UniformTriple) -> FormClass {
    match (t.la, t.ar2) {
        (USlot::I, USlot::I) => FormClass::WHNF,
        (USlot::I, USlot::S) => FormClass::WNF,
        (USlot::S, USlot::I) => FormClass::HNF,
        (USlot::S, USlot::S) => FormClass::NF,
    }
}

/// 8 uniform rows, 33 hybrid rows, 22 eval-readback rows.
pub fn catalogue() -> Vec<CatalogueEntry> {
    let mut rows = Vec::new();
    for t in UniformTriple::all() {
        let spec = StrategySpec::Uniform(t);
        rows.push(CatalogueEntry {
            alias: spec.alias(),
            spec,
            classification: Classification::Uniform,
            strict: t.ar1 == USlot::S,
            result: uniform_form(t),
            intermediate: None,
            equivalent: None,
            mcr: false,
            note: None,
        });
    }
    for &(h, s, result, note) in HYBRIDS {
        let spec = parse_spec(&format!("{h}<>{s}")).expect("catalogue hybrid parses");
        let StrategySpec::Hybrid(enc) = spec else { unreachable!() };
        let (classification, equivalent) = if h == "IIH" {
            (Classification::Uniform, Some("IIS".to_string()))
        } else if enc.hybrid.ar1 == super::HSlot::H {
            (Classification::HybridUnbalanced, None)
        } else {
            (Classification::HybridBalanced, None)
        };
        rows.push(CatalogueEntry {
            alias: spec.alias(),
            spec,
            classification,
            strict: enc.sub.ar1 == USlot::S,
            result,
            intermediate: None,
            equivalent,
            mcr: false,
            note,
        });
    }
    for text in READBACKS {
        let spec = parse_spec(text).expect("catalogue readback parses");
        let StrategySpec::Readback(er) = spec else { unreachable!() };
        let fused = fuse(&er).expect("catalogue readback fuses");
        let hybrid = rows
            .iter()
            .find(|r| r.spec == StrategySpec::Hybrid(fused.hybrid))
            .expect("fused hybrid is catalogued");
        rows.push(CatalogueEntry {
            alias: spec.alias(),
            spec,
            classification: Classification::Readback,
            strict: er.eval.ar1 == USlot::S,
            result: hybrid.result,
            intermediate: Some(uniform_form(er.eval)),
            equivalent: Some(fused.hybrid.to_string()),
            mcr: fused.mcr,
            note: hybrid.note,
        });
    }
    rows
}

/// The catalogue row for a spec, if it has one.
pub fn lookup(spec: &StrategySpec) -> Option<CatalogueEntry> {
    catalogue().into_iter().find(|r| r.spec == *spec)
}
