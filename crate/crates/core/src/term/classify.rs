//! Final-form classification by the grammars
//!
//! ```text
//! Neu  ::= x Λ {Λ}*
//! NF   ::= λx.NF  | x {NF}*
//! WNF  ::= λx.Λ   | x {WNF}*
//! HNF  ::= λx.HNF | x {Λ}*
//! WHNF ::= λx.Λ   | x {Λ}*
//! VHNF ::= λx.VHNF | x {WNF}*
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Term, TermKind};
use crate::deep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormClass {
    NF,
    WNF,
    HNF,
    WHNF,
    VHNF,
    Neutral,
    Redex,
}

impl FormClass {
    pub const ALL: [FormClass; 7] = [
        FormClass::NF,
        FormClass::WNF,
        FormClass::HNF,
        FormClass::WHNF,
        FormClass::VHNF,
        FormClass::Neutral,
        FormClass::Redex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormClass::NF => "NF",
            FormClass::WNF => "WNF",
            FormClass::HNF => "HNF",
            FormClass::WHNF => "WHNF",
            FormClass::VHNF => "VHNF",
            FormClass::Neutral => "Neutral",
            FormClass::Redex => "Redex",
        }
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of form classes.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FormSet(u8);

impl FormSet {
    pub fn contains(self, c: FormClass) -> bool {
        self.0 & (1 << c as u8) != 0
    }

    pub fn insert(&mut self, c: FormClass) {
        self.0 |= 1 << c as u8;
    }

    pub fn iter(self) -> impl Iterator<Item = FormClass> {
        FormClass::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for FormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(FormClass::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for FormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FormSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub fn classify(t: &Term) -> FormSet {
    let mut set = FormSet::default();
    for c in FormClass::ALL {
        if is_in(t, c) {
            set.insert(c);
        }
    }
    set
}

// Head of the application spine and its arguments, outermost last.
fn spine(t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    let mut h = t;
    while let TermKind::App(f, a) = h.kind() {
        args.push(a);
        h = f;
    }
    args.reverse();
    (h, args)
}

pub fn is_in(t: &Term, c: FormClass) -> bool {
    match c {
        FormClass::NF => nf(t),
        FormClass::WNF => wnf(t),
        FormClass::HNF => hnf(t),
        FormClass::WHNF => whnf(t),
        FormClass::VHNF => vhnf(t),
        FormClass::Neutral => {
            let (h, args) = spine(t);
            matches!(h.kind(), TermKind::Var(_)) && !args.is_empty()
        }
        FormClass::Redex => t.is_redex(),
    }
}

// Shared shape of the grammars: what abstractions require of their body,
// and what variable-headed spines require of each operand.
fn form(t: &Term, body: Option<fn(&Term) -> bool>, operand: Option<fn(&Term) -> bool>) -> bool {
    let (h, args) = spine(t);
    match h.kind() {
        TermKind::Lam(_, b) => args.is_empty() && body.is_none_or(|f| deep(|| f(b))),
        TermKind::Var(_) => operand.is_none_or(|f| args.iter().all(|a| deep(|| f(a)))),
        TermKind::App(..) => unreachable!("spine head is never an application"),
    }
}

fn nf(t: &Term) -> bool {
    form(t, Some(nf), Some(nf))
}

fn wnf(t: &Term) -> bool {
    form(t, None, Some(wnf))
}

fn hnf(t: &Term) -> bool {
    form(t, Some(hnf), None)
}

fn whnf(t: &Term) -> bool {
    form(t, None, None)
}

fn vhnf(t: &Term) -> bool {
    form(t, Some(vhnf), Some(wnf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn classes(s: &str) -> Vec<FormClass> {
        classify(&parse_term(s).unwrap()).iter().collect()
    }

    #[test]
    fn grammar_examples() {
        use FormClass::*;
        assert_eq!(classes("\\x.#Omega"), vec![WNF, WHNF]);
        assert_eq!(classes("x (\\y.#Omega)"), vec![WNF, HNF, WHNF, VHNF, Neutral]);
        assert_eq!(classes("\\x.x"), vec![NF, WNF, HNF, WHNF, VHNF]);
        assert_eq!(classes("#Omega"), vec![Redex]);
        assert_eq!(classes("x (y ((\\a.a) u))"), vec![HNF, WHNF, Neutral]);
        assert_eq!(classes("x"), vec![NF, WNF, HNF, WHNF, VHNF]);
        assert_eq!(classes("\\x.x ((\\a.a) u)"), vec![WNF, HNF, WHNF]);
    }
}
