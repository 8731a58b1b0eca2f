//! Derivation trees and the contraction sequences read off them.

use std::fmt::{self, Write as _};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::TraceEvent;
use crate::deep;
use crate::term::{Path, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Rule {
    Var,
    Abs,
    Con,
    Neu,
    /// Readback after eval: an eval tree stacked under a readback tree.
    Stage,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Var => "VAR",
            Rule::Abs => "ABS",
            Rule::Con => "CON",
            Rule::Neu => "NEU",
            Rule::Stage => "STAGE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub index: usize,
    pub position: Path,
    pub redex: Term,
    /// The operand after the `ar1` premise.
    pub operand: Term,
    pub contractum: Term,
}

/// One rule instance. Identity premises are left out. For CON the premises
/// are the operator, the operand (if evaluated) and the contractum, in that
/// order, and the contraction happens between the last two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub rule: Rule,
    pub evaluator: String,
    pub position: Path,
    pub input: Term,
    pub output: Term,
    pub premises: Vec<DerivationTree>,
    pub contraction: Option<Contraction>,
}

impl DerivationTree {
    /// For CON and NEU, the evaluation of the operator.
    pub fn first_premise(&self) -> Option<&DerivationTree> {
        self.premises.first()
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            stack.extend(t.premises.iter());
        }
        n
    }

    /// Indented text rendering, one rule per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            let pos = if t.position.is_empty() { "e".to_string() } else { t.position.to_string() };
            let _ = writeln!(
                out,
                "{:indent$}{} [{}] @{}  {}  =>  {}",
                "",
                t.rule.name(),
                t.evaluator,
                pos,
                t.input,
                t.output,
                indent = depth * 2
            );
            if let Some(c) = &t.contraction {
                let _ = writeln!(out, "{:indent$}  #{} {}  ->  {}", "", c.index, c.redex, c.contractum, indent = depth * 2);
            }
            for p in t.premises.iter().rev() {
                stack.push((p, depth + 1));
            }
        }
        out
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Drop for DerivationTree {
    fn drop(&mut self) {
        let mut stack = std::mem::take(&mut self.premises);
        while let Some(mut t) = stack.pop() {
            stack.append(&mut t.premises);
        }
    }
}

impl Serialize for DerivationTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        deep(|| {
            let mut st = s.serialize_struct("DerivationTree", 7)?;
            st.serialize_field("rule", &self.rule)?;
            st.serialize_field("evaluator", &self.evaluator)?;
            st.serialize_field("position", &self.position)?;
            st.serialize_field("input", &self.input)?;
            st.serialize_field("output", &self.output)?;
            st.serialize_field("contraction", &self.contraction)?;
            st.serialize_field("premises", &self.premises)?;
            st.end()
        })
    }
}

/// Contractions in the order an in-order traversal of the CON rules meets
/// them, renumbered from zero.
pub fn sequence_from_tree(tree: &DerivationTree) -> Vec<TraceEvent> {
    enum Visit<'a> {
        Node(&'a DerivationTree),
        Emit(&'a Contraction),
    }
    let mut out = Vec::new();
    let mut stack = vec![Visit::Node(tree)];
    while let Some(v) = stack.pop() {
        match v {
            Visit::Emit(c) => out.push(TraceEvent {
                index: out.len(),
                position: c.position.clone(),
                redex: c.redex.clone(),
                contractum: c.contractum.clone(),
            }),
            Visit::Node(t) => {
                let split = match (&t.contraction, t.premises.last()) {
                    (Some(_), Some(_)) => t.premises.len() - 1,
                    _ => t.premises.len(),
                };
                if let Some(last) = t.premises.get(split) {
                    stack.push(Visit::Node(last));
                }
                if let Some(c) = &t.contraction {
                    stack.push(Visit::Emit(c));
                }
                for p in t.premises[..split].iter().rev() {
                    stack.push(Visit::Node(p));
                }
            }
        }
    }
    out
}
