//! Strategy encodings.
//!
//! * uniform: a triple over `{I,S}` for the `la`, `ar1`, `ar2` parameters of
//!   the eval-apply template (`op1` is the evaluator itself, `op2` is `I`);
//! * hybrid: a triple over `{I,S,H}` and a uniform subsidiary, written
//!   `XXX<>YYY` (`op1` is the subsidiary, `op2` is the hybrid);
//! * readback: a pair over `{I,E,R,(RE)}` for the `la` and `ar2` parameters
//!   of the readback template and the uniform eval triple, written `XX.YYY`.

mod catalogue;
mod fuse;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use catalogue::{catalogue, lookup, CatalogueEntry, Classification};
pub use fuse::{compose, defuse, fuse, FuseError, Fused};
pub use validate::{validate, Diagnostic, ValidationReport, Verdict};

/// Uniform slot: identity or a recursive call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum USlot {
    I,
    S,
}

/// Hybrid slot: identity, the subsidiary, or the hybrid itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HSlot {
    I,
    S,
    H,
}

/// Readback slot: identity, eval, readback, or readback after eval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RSlot {
    I,
    E,
    R,
    RE,
}

impl USlot {
    fn letter(self) -> &'static str {
        match self {
            USlot::I => "I",
            USlot::S => "S",
        }
    }
}

impl HSlot {
    fn letter(self) -> &'static str {
        match self {
            HSlot::I => "I",
            HSlot::S => "S",
            HSlot::H => "H",
        }
    }

    pub fn from_uniform(s: USlot) -> HSlot {
        match s {
            USlot::I => HSlot::I,
            USlot::S => HSlot::S,
        }
    }
}

impl RSlot {
    pub const ALL: [RSlot; 4] = [RSlot::I, RSlot::E, RSlot::R, RSlot::RE];

    fn text(self) -> &'static str {
        match self {
            RSlot::I => "I",
            RSlot::E => "E",
            RSlot::R => "R",
            RSlot::RE => "(RE)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniformTriple {
    pub la: USlot,
    pub ar1: USlot,
    pub ar2: USlot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HybridTriple {
    pub la: HSlot,
    pub ar1: HSlot,
    pub ar2: HSlot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HybridEncoding {
    pub hybrid: HybridTriple,
    pub sub: UniformTriple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReadbackEncoding {
    pub la: RSlot,
    pub ar2: RSlot,
    pub eval: UniformTriple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategySpec {
    Uniform(UniformTriple),
    Hybrid(HybridEncoding),
    Readback(ReadbackEncoding),
}

impl UniformTriple {
    pub const fn new(la: USlot, ar1: USlot, ar2: USlot) -> UniformTriple {
        UniformTriple { la, ar1, ar2 }
    }

    /// All eight uniform triples in binary order III, IIS, ..., SSS.
    pub fn all() -> impl Iterator<Item = UniformTriple> {
        (0..8u8).map(|b| {
            let s = |bit: u8| if b & bit != 0 { USlot::S } else { USlot::I };
            UniformTriple::new(s(4), s(2), s(1))
        })
    }
}

impl HybridTriple {
    pub const fn new(la: HSlot, ar1: HSlot, ar2: HSlot) -> HybridTriple {
        HybridTriple { la, ar1, ar2 }
    }

    pub fn all() -> impl Iterator<Item = HybridTriple> {
        const S: [HSlot; 3] = [HSlot::I, HSlot::S, HSlot::H];
        S.into_iter().flat_map(|a| {
            S.into_iter().flat_map(move |b| S.into_iter().map(move |c| HybridTriple::new(a, b, c)))
        })
    }

    pub fn from_uniform(t: UniformTriple) -> HybridTriple {
        HybridTriple::new(HSlot::from_uniform(t.la), HSlot::from_uniform(t.ar1), HSlot::from_uniform(t.ar2))
    }
}

impl fmt::Display for UniformTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.la.letter(), self.ar1.letter(), self.ar2.letter())
    }
}

impl fmt::Display for HybridTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.la.letter(), self.ar1.letter(), self.ar2.letter())
    }
}

impl fmt::Display for HybridEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<>{}", self.hybrid, self.sub)
    }
}

impl fmt::Display for ReadbackEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}.{}", self.la.text(), self.ar2.text(), self.eval)
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::Uniform(t) => t.fmt(f),
            StrategySpec::Hybrid(h) => h.fmt(f),
            StrategySpec::Readback(r) => r.fmt(f),
        }
    }
}

/// Named strategies and their encodings.
pub const ALIASES: &[(&str, &str)] = &[
    ("bn", "III"),
    ("bv", "ISS"),
    ("ao", "SSS"),
    ("he", "SII"),
    ("ho", "SSI"),
    ("no", "HIH<>III"),
    ("hr", "HII<>III"),
    ("sn", "HSH<>ISS"),
    ("hn", "HIH<>SII"),
    ("ha", "HHH<>ISS"),
    ("am", "HSS<>ISS"),
    ("so", "HHH<>SSI"),
    ("bs", "HSH<>SSI"),
    ("byValue", "(RE)R.ISS"),
    ("byName", "R(RE).SII"),
];

impl StrategySpec {
    /// The alias naming this encoding, if any.
    pub fn alias(&self) -> Option<&'static str> {
        let text = self.to_string();
        ALIASES.iter().find(|(_, enc)| *enc == text).map(|(a, _)| *a)
    }

    /// Alias when there is one, notation otherwise.
    pub fn label(&self) -> String {
        self.alias().map_or_else(|| self.to_string(), str::to_string)
    }

    /// The uniform triple evaluating operators (and, for readback, the eval stage).
    pub fn subsidiary(&self) -> UniformTriple {
        match self {
            StrategySpec::Uniform(t) => *t,
            StrategySpec::Hybrid(h) => h.sub,
            StrategySpec::Readback(r) => r.eval,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("malformed strategy '{text}': {reason}")]
    Syntax { text: String, reason: String },
    #[error("unknown strategy alias '{0}'")]
    UnknownAlias(String),
}

/// Parse an encoding or an alias. `◇` and `∘` are accepted for `<>` and `.`.
pub fn parse_spec(text: &str) -> Result<StrategySpec, SpecError> {
    let text = text.trim();
    if let Some((_, enc)) = ALIASES.iter().find(|(a, _)| *a == text) {
        return parse_notation(enc);
    }
    let normalized = text.replace('◇', "<>").replace('∘', ".");
    let looks_like_notation = !normalized.is_empty()
        && normalized.chars().all(|c| "ISHER()<>.".contains(c));
    if !looks_like_notation {
        return Err(SpecError::UnknownAlias(text.to_string()));
    }
    parse_notation(&normalized)
}

fn parse_notation(text: &str) -> Result<StrategySpec, SpecError> {
    let err = |reason: &str| SpecError::Syntax { text: text.to_string(), reason: reason.to_string() };
    if let Some((left, right)) = text.split_once("<>") {
        let hybrid = hybrid_triple(left).ok_or_else(|| err("hybrid triple must be three of I, S, H"))?;
        let sub = uniform_triple(right).ok_or_else(|| err("subsidiary must be three of I, S"))?;
        return Ok(StrategySpec::Hybrid(HybridEncoding { hybrid, sub }));
    }
    if let Some((left, right)) = text.split_once('.') {
        let slots = readback_slots(left).ok_or_else(|| err("readback pair must be two of I, E, R, (RE)"))?;
        let eval = uniform_triple(right).ok_or_else(|| err("eval triple must be three of I, S"))?;
        return Ok(StrategySpec::Readback(ReadbackEncoding { la: slots.0, ar2: slots.1, eval }));
    }
    uniform_triple(text)
        .map(StrategySpec::Uniform)
        .ok_or_else(|| err("expected a uniform triple, XXX<>YYY or XX.YYY"))
}

fn uniform_triple(s: &str) -> Option<UniformTriple> {
    let v: Vec<USlot> = s
        .chars()
        .map(|c| match c {
            'I' => Some(USlot::I),
            'S' => Some(USlot::S),
            _ => None,
        })
        .collect::<Option<_>>()?;
    (v.len() == 3).then(|| UniformTriple::new(v[0], v[1], v[2]))
}

fn hybrid_triple(s: &str) -> Option<HybridTriple> {
    let v: Vec<HSlot> = s
        .chars()
        .map(|c| match c {
            'I' => Some(HSlot::I),
            'S' => Some(HSlot::S),
            'H' => Some(HSlot::H),
            _ => None,
        })
        .collect::<Option<_>>()?;
    (v.len() == 3).then(|| HybridTriple::new(v[0], v[1], v[2]))
}

fn readback_slots(s: &str) -> Option<(RSlot, RSlot)> {
    let mut rest = s;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let (slot, tail) = if let Some(t) = rest.strip_prefix("(RE)") {
            (RSlot::RE, t)
        } else {
            let slot = match rest.as_bytes()[0] {
                b'I' => RSlot::I,
                b'E' => RSlot::E,
                b'R' => RSlot::R,
                _ => return None,
            };
            (slot, &rest[1..])
        };
        out.push(slot);
        rest = tail;
    }
    (out.len() == 2).then(|| (out[0], out[1]))
}

impl FromStr for StrategySpec {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<StrategySpec, SpecError> {
        parse_spec(s)
    }
}

impl Serialize for StrategySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StrategySpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<StrategySpec, D::Error> {
        let s = String::deserialize(d)?;
        parse_spec(&s).map_err(serde::de::Error::custom)
    }
}
