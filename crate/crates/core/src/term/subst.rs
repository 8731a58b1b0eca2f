//! Free variables, capture-avoiding substitution, fresh names and alpha-equality.

use std::collections::{BTreeSet, HashMap};

use super::{Name, Term, TermKind};
use crate::deep;

pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    t.fv().iter().cloned().collect()
}

/// A name not in `used`, built from the stem of `base` by incrementing the
/// largest trailing number carried by any name with that stem.
///
/// `fresh_var({x, x1}, "x") == "x2"`, `fresh_var({}, "y") == "y1"`.
pub fn fresh_var<'a, I>(used: I, base: &str) -> Name
where
    I: IntoIterator<Item = &'a str>,
{
    let stem = stem_of(base);
    let used: Vec<&str> = used.into_iter().collect();
    let mut max = trailing(base, stem).unwrap_or(0);
    for u in &used {
        if let Some(n) = trailing(u, stem) {
            max = max.max(n);
        }
    }
    let mut n = max.saturating_add(1);
    loop {
        let cand = format!("{stem}{n}");
        if !used.contains(&cand.as_str()) {
            return Name::from(cand);
        }
        n = n.saturating_add(1);
    }
}

fn stem_of(name: &str) -> &str {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if stem.is_empty() {
        "v"
    } else {
        stem
    }
}

// Trailing number of `name` when its stem is `stem`; a bare stem counts as 0.
fn trailing(name: &str, stem: &str) -> Option<u64> {
    let rest = name.strip_prefix(stem)?;
    if rest.is_empty() {
        return Some(0);
    }
    if !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(rest.parse::<u64>().unwrap_or(u64::MAX - 1))
}

/// `[operand/var] body`, renaming binders of `body` that would capture a free
/// variable of `operand`.
pub fn substitute(operand: &Term, var: &str, body: &Term) -> Term {
    Subst { n: operand, x: var }.go(body).unwrap_or_else(|| body.clone())
}

struct Subst<'a> {
    n: &'a Term,
    x: &'a str,
}

impl Subst<'_> {
    // `None` means unchanged, which lets untouched subterms stay shared.
    fn go(&self, t: &Term) -> Option<Term> {
        if !t.has_free(self.x) {
            return None;
        }
        match t.kind() {
            TermKind::Var(_) => Some(self.n.clone()),
            TermKind::App(f, a) => {
                let (f2, a2) = deep(|| (self.go(f), self.go(a)));
                Some(Term::app(f2.unwrap_or_else(|| f.clone()), a2.unwrap_or_else(|| a.clone())))
            }
            TermKind::Lam(y, b) => {
                // x is free in t, so y differs from x.
                if !self.n.has_free(y) {
                    let b2 = deep(|| self.go(b))?;
                    return Some(Term::lam(y.clone(), b2));
                }
                let used = self
                    .n
                    .fv()
                    .iter()
                    .chain(b.fv())
                    .map(|s| &**s)
                    .chain(std::iter::once(self.x));
                let z = fresh_var(used, y);
                let renamed = substitute(&Term::var(z.clone()), y, b);
                let b2 = deep(|| self.go(&renamed)).unwrap_or(renamed);
                Some(Term::lam(z, b2))
            }
        }
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    if a == b {
        return true;
    }
    if a.size() != b.size() || a.fv() != b.fv() {
        return false;
    }
    let mut cx = Alpha::default();
    cx.go(a, b)
}

#[derive(Default)]
struct Alpha<'a> {
    depth: usize,
    left: HashMap<&'a str, Vec<usize>>,
    right: HashMap<&'a str, Vec<usize>>,
}

impl<'a> Alpha<'a> {
    fn go(&mut self, a: &'a Term, b: &'a Term) -> bool {
        if a.size() != b.size() {
            return false;
        }
        match (a.kind(), b.kind()) {
            (TermKind::Var(x), TermKind::Var(y)) => {
                let i = self.left.get(&**x).and_then(|v| v.last());
                let j = self.right.get(&**y).and_then(|v| v.last());
                match (i, j) {
                    (None, None) => x == y,
                    (Some(i), Some(j)) => i == j,
                    _ => false,
                }
            }
            (TermKind::Lam(x, p), TermKind::Lam(y, q)) => {
                self.depth += 1;
                self.left.entry(&**x).or_default().push(self.depth);
                self.right.entry(&**y).or_default().push(self.depth);
                let ok = deep(|| self.go(p, q));
                self.left.get_mut(&**x).map(Vec::pop);
                self.right.get_mut(&**y).map(Vec::pop);
                self.depth -= 1;
                ok
            }
            (TermKind::App(f, x), TermKind::App(g, y)) => {
                deep(|| self.go(f, g)) && deep(|| self.go(x, y))
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_term, print_term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn fresh_names_follow_the_trailing_number_scheme() {
        assert_eq!(&*fresh_var(["x", "x1"], "x"), "x2");
        assert_eq!(&*fresh_var([], "y"), "y1");
        assert_eq!(&*fresh_var(["y5"], "y"), "y6");
        assert_eq!(&*fresh_var(["x3"], "x3"), "x4");
        assert_eq!(&*fresh_var(["z", "x9"], "x"), "x10");
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(substitute(&t("z"), "x", &t("x")), t("z"));
        assert_eq!(substitute(&t("z"), "x", &t("(\\x.x) z")), t("(\\x.x) z"));
        let r = substitute(&t("x"), "z", &t("\\x.z"));
        assert_eq!(print_term(&r), "\\x1.x");
        assert!(!alpha_eq(&r, &t("\\x.x")));
        assert!(r.has_free("x"));
    }

    #[test]
    fn substitution_respects_shadowing() {
        assert_eq!(substitute(&t("y"), "x", &t("\\x.x")), t("\\x.x"));
        let r = substitute(&t("y"), "x", &t("\\y.x y"));
        assert!(alpha_eq(&r, &t("\\w.y w")));
    }

    #[test]
    fn unchanged_subterms_are_shared() {
        let b = t("(\\q.q) x");
        let r = substitute(&t("z"), "x", &b);
        match (b.kind(), r.kind()) {
            (TermKind::App(f, _), TermKind::App(g, _)) => assert!(f.same(g)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn alpha_equality_examples() {
        assert!(alpha_eq(&t("\\x.x"), &t("\\y.y")));
        assert!(!alpha_eq(&t("\\x.y"), &t("\\y.y")));
        assert!(alpha_eq(&t("\\x.\\y.x y"), &t("\\a.\\b.a b")));
        assert!(!alpha_eq(&t("\\x.\\y.x y"), &t("\\a.\\b.b a")));
        assert!(alpha_eq(&t("\\x.\\x.x"), &t("\\a.\\b.b")));
        assert!(!alpha_eq(&t("\\x.\\x.x"), &t("\\a.\\b.a")));
    }

    #[test]
    fn free_vars_examples() {
        let fv = free_vars(&t("\\x.x y"));
        assert_eq!(fv.into_iter().map(|n| n.to_string()).collect::<Vec<_>>(), vec!["y"]);
        assert!(free_vars(&t("(\\x.x x)(\\x.x x)")).is_empty());
    }
}
