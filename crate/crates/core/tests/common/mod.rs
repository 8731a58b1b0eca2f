//! Test-only reference material: a normal-order small-step reducer written
//! independently of the engine (own term type, own substitution), and a
//! shared seeded corpus.

#![allow(dead_code)]

use std::collections::HashSet;

use evalspace::corpus::{generate, GenConfig};
use evalspace::term::TermKind;
use evalspace::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum O {
    V(String),
    L(String, Box<O>),
    A(Box<O>, Box<O>),
}

pub fn from_term(t: &Term) -> O {
    match t.kind() {
        TermKind::Var(x) => O::V(x.to_string()),
        TermKind::Lam(x, b) => O::L(x.to_string(), Box::new(from_term(b))),
        TermKind::App(f, a) => O::A(Box::new(from_term(f)), Box::new(from_term(a))),
    }
}

pub fn to_term(o: &O) -> Term {
    match o {
        O::V(x) => Term::var(x.as_str()),
        O::L(x, b) => Term::lam(x.as_str(), to_term(b)),
        O::A(f, a) => Term::app(to_term(f), to_term(a)),
    }
}

fn free(o: &O, out: &mut HashSet<String>, bound: &mut Vec<String>) {
    match o {
        O::V(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        O::L(x, b) => {
            bound.push(x.clone());
            free(b, out, bound);
            bound.pop();
        }
        O::A(f, a) => {
            free(f, out, bound);
            free(a, out, bound);
        }
    }
}

fn fv(o: &O) -> HashSet<String> {
    let mut s = HashSet::new();
    free(o, &mut s, &mut Vec::new());
    s
}

fn names(o: &O, out: &mut HashSet<String>) {
    match o {
        O::V(x) => {
            out.insert(x.clone());
        }
        O::L(x, b) => {
            out.insert(x.clone());
            names(b, out);
        }
        O::A(f, a) => {
            names(f, out);
            names(a, out);
        }
    }
}

/// `[n/x] m`, renaming binders that would capture.
pub fn subst(n: &O, x: &str, m: &O) -> O {
    let fvn = fv(n);
    go(n, &fvn, x, m)
}

fn go(n: &O, fvn: &HashSet<String>, x: &str, m: &O) -> O {
    match m {
        O::V(y) if y == x => n.clone(),
        O::V(_) => m.clone(),
        O::A(f, a) => O::A(Box::new(go(n, fvn, x, f)), Box::new(go(n, fvn, x, a))),
        O::L(y, _) if y == x => m.clone(),
        O::L(y, b) => {
            if fvn.contains(y) && fv(b).contains(x) {
                let mut used = HashSet::new();
                names(n, &mut used);
                names(b, &mut used);
                used.insert(x.to_string());
                let mut k = 0;
                let fresh = loop {
                    let c = format!("{y}_{k}");
                    if !used.contains(&c) {
                        break c;
                    }
                    k += 1;
                };
                let b2 = go(&O::V(fresh.clone()), &HashSet::from([fresh.clone()]), y, b);
                O::L(fresh, Box::new(go(n, fvn, x, &b2)))
            } else {
                O::L(y.clone(), Box::new(go(n, fvn, x, b)))
            }
        }
    }
}

/// One leftmost-outermost contraction, if any redex exists.
pub fn step(o: &O) -> Option<O> {
    match o {
        O::V(_) => None,
        O::L(x, b) => step(b).map(|b| O::L(x.clone(), Box::new(b))),
        O::A(f, a) => {
            if let O::L(x, b) = &**f {
                return Some(subst(a, x, b));
            }
            if let Some(f2) = step(f) {
                return Some(O::A(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| O::A(f.clone(), Box::new(a2)))
        }
    }
}

/// Normal form by normal order within `fuel` steps.
pub fn normalize(t: &Term, fuel: u64) -> Option<Term> {
    let mut o = from_term(t);
    for _ in 0..fuel {
        match step(&o) {
            Some(next) => o = next,
            None => return Some(to_term(&o)),
        }
    }
    None
}

/// Seeded closed corpus used by the property and acceptance suites.
pub fn corpus(seed: u64, n: usize) -> Vec<Term> {
    generate(&GenConfig { seed, size_max: 30, ..GenConfig::default() }, n).expect("valid config")
}
