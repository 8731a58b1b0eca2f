//! Pure lambda terms over string variables.
//!
//! Terms are immutable and reference counted, so cloning is cheap and
//! unchanged subterms are shared between a redex and its contractum. Each
//! node caches its size and its sorted set of free variables; substitution
//! uses the latter to skip subterms that cannot mention the variable.

mod builtins;
mod classify;
mod parse;
mod path;
mod print;
mod subst;

use std::fmt;
use std::sync::{Arc, LazyLock};

pub use builtins::{builtin, builtin_names, church, church_value};
pub use classify::{classify, is_in, FormClass, FormSet};
pub use parse::{parse_term, ParseError};
pub use path::{Move, Path, PathError};
pub use print::{print_marked, print_term};
pub use subst::{alpha_eq, fresh_var, free_vars, substitute};

/// Variable names. Shared, immutable strings.
pub type Name = Arc<str>;

/// Sorted, duplicate-free free-variable set attached to every node.
type FvSet = Arc<[Name]>;

static EMPTY_FV: LazyLock<FvSet> = LazyLock::new(|| Arc::from(Vec::<Name>::new()));
static HOLE: LazyLock<Name> = LazyLock::new(|| Arc::from(""));

#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    size: u64,
    fv: FvSet,
    kind: TermKind,
}

#[derive(Clone, PartialEq, Eq)]
pub enum TermKind {
    Var(Name),
    Lam(Name, Term),
    App(Term, Term),
}

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        let name = name.into();
        let fv: FvSet = Arc::from(vec![name.clone()]);
        Term(Arc::new(Node { size: 1, fv, kind: TermKind::Var(name) }))
    }

    pub fn lam(param: impl Into<Name>, body: Term) -> Term {
        let param = param.into();
        let fv = match body.0.fv.binary_search(&param) {
            Ok(i) => {
                let mut v = body.0.fv.to_vec();
                v.remove(i);
                if v.is_empty() {
                    EMPTY_FV.clone()
                } else {
                    Arc::from(v)
                }
            }
            Err(_) => body.0.fv.clone(),
        };
        let size = body.size().saturating_add(1);
        Term(Arc::new(Node { size, fv, kind: TermKind::Lam(param, body) }))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        let fv = union(&fun.0.fv, &arg.0.fv);
        let size = fun.size().saturating_add(arg.size()).saturating_add(1);
        Term(Arc::new(Node { size, fv, kind: TermKind::App(fun, arg) }))
    }

    /// Left-nested application `head a1 a2 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Nested abstraction `\p1 p2 ... pn. body`.
    pub fn lams<S: Into<Name>>(params: impl IntoIterator<Item = S>, body: Term) -> Term {
        let params: Vec<Name> = params.into_iter().map(Into::into).collect();
        params.into_iter().rev().fold(body, |b, p| Term::lam(p, b))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Number of nodes of the term viewed as a tree (saturating).
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Free variables, sorted.
    pub fn fv(&self) -> &[Name] {
        &self.0.fv
    }

    pub fn is_closed(&self) -> bool {
        self.0.fv.is_empty()
    }

    pub fn has_free(&self, x: &str) -> bool {
        self.0.fv.binary_search_by(|n| (**n).cmp(x)).is_ok()
    }

    pub fn is_lam(&self) -> bool {
        matches!(self.kind(), TermKind::Lam(..))
    }

    pub fn is_redex(&self) -> bool {
        matches!(self.kind(), TermKind::App(f, _) if f.is_lam())
    }

    /// Pointer identity; a cheap sufficient condition for equality.
    pub fn same(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Subterm at `path`, if every move is legal.
    pub fn at(&self, path: &Path) -> Option<&Term> {
        let mut t = self;
        for mv in path.moves() {
            t = match (mv, t.kind()) {
                (Move::Fun, TermKind::App(f, _)) => f,
                (Move::Arg, TermKind::App(_, a)) => a,
                (Move::Body, TermKind::Lam(_, b)) => b,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Replace the subterm at `path`. Returns `None` when the path is illegal.
    pub fn replace_at(&self, path: &Path, new: Term) -> Option<Term> {
        let moves = path.moves();
        let mut spine = Vec::with_capacity(moves.len());
        let mut t = self;
        for &mv in &moves {
            spine.push(t);
            t = match (mv, t.kind()) {
                (Move::Fun, TermKind::App(f, _)) => f,
                (Move::Arg, TermKind::App(_, a)) => a,
                (Move::Body, TermKind::Lam(_, b)) => b,
                _ => return None,
            };
        }
        let mut acc = new;
        for (node, mv) in spine.into_iter().zip(moves).rev() {
            acc = match (mv, node.kind()) {
                (Move::Fun, TermKind::App(_, a)) => Term::app(acc, a.clone()),
                (Move::Arg, TermKind::App(f, _)) => Term::app(f.clone(), acc),
                (Move::Body, TermKind::Lam(x, _)) => Term::lam(x.clone(), acc),
                _ => unreachable!("spine was checked on the way down"),
            };
        }
        Some(acc)
    }
}

fn union(a: &FvSet, b: &FvSet) -> FvSet {
    if b.is_empty() || Arc::ptr_eq(a, b) {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().cloned());
    if out.len() == a.len() {
        return a.clone();
    }
    if out.len() == b.len() {
        return b.clone();
    }
    Arc::from(out)
}

// Syntactic equality. Iterative, since terms may be nested far deeper than
// the native stack allows; shared subterms are skipped by pointer identity.
impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if self.same(other) {
            return true;
        }
        let mut work = vec![(self, other)];
        while let Some((a, b)) = work.pop() {
            if a.same(b) {
                continue;
            }
            if a.0.size != b.0.size {
                return false;
            }
            match (a.kind(), b.kind()) {
                (TermKind::Var(x), TermKind::Var(y)) if x == y => {}
                (TermKind::Lam(x, p), TermKind::Lam(y, q)) if x == y => work.push((p, q)),
                (TermKind::App(f, x), TermKind::App(g, y)) => {
                    work.push((x, y));
                    work.push((f, g));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

// Dropping a long chain of uniquely owned nodes recursively would overflow
// the stack, so children are detached onto an explicit worklist.
impl Drop for Node {
    fn drop(&mut self) {
        let unique = |t: &Term| Arc::strong_count(&t.0) == 1;
        let worth = match &self.kind {
            TermKind::Var(_) => false,
            TermKind::Lam(_, b) => unique(b),
            TermKind::App(f, a) => unique(f) || unique(a),
        };
        if !worth {
            return;
        }
        let mut stack = Vec::new();
        detach(&mut self.kind, &mut stack);
        while let Some(t) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(t.0) {
                detach(&mut node.kind, &mut stack);
            }
        }
    }
}

fn detach(kind: &mut TermKind, stack: &mut Vec<Term>) {
    match std::mem::replace(kind, TermKind::Var(HOLE.clone())) {
        TermKind::Var(_) => {}
        TermKind::Lam(_, b) => stack.push(b),
        TermKind::App(f, a) => {
            stack.push(f);
            stack.push(a);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", print_term(self))
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_term(self))
    }
}

impl<'de> serde::Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Term, D::Error> {
        let s = String::deserialize(d)?;
        parse_term(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variable_cache_follows_binders() {
        let t = Term::lam("x", Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(t.fv().len(), 1);
        assert!(t.has_free("y"));
        assert!(!t.has_free("x"));
        assert_eq!(t.size(), 4);
    }

    #[test]
    fn deep_terms_drop_without_overflow() {
        let mut t = Term::var("x");
        for _ in 0..1_000_000 {
            t = Term::app(t, Term::var("y"));
        }
        drop(t);
        let mut t = Term::var("x");
        for _ in 0..1_000_000 {
            t = Term::lam("x", t);
        }
        drop(t);
    }

    #[test]
    fn replace_at_rebuilds_the_spine() {
        let t = parse_term("(\\x.x) (y z)").unwrap();
        let p = Path::root().child(Move::Arg).child(Move::Fun);
        assert_eq!(t.at(&p), Some(&Term::var("y")));
        let r = t.replace_at(&p, Term::var("w")).unwrap();
        assert_eq!(print_term(&r), "(\\x.x) (w z)");
        assert!(t.replace_at(&Path::root().child(Move::Body), Term::var("w")).is_none());
    }
}
