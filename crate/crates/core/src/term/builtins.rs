//! Named combinators and Church encodings, referenced in source as `#Name`.

use super::{alpha_eq, parse_term, Term, TermKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown builtin '{0}' (known: {known})", known = builtin_names().join(", "))]
pub struct UnknownBuiltin(pub String);

const TABLE: &[(&str, &str)] = &[
    ("I", "\\x.x"),
    ("Y", "\\f.(\\x.f (x x)) (\\x.f (x x))"),
    ("Z", "\\f.(\\x.f (\\v.x x v)) (\\x.f (\\v.x x v))"),
    ("Omega", "(\\x.x x) (\\x.x x)"),
    ("True", "\\t.\\e.t"),
    ("False", "\\t.\\e.e"),
    ("Cond", "\\p.\\a.\\b.p a b"),
    ("IsZero", "\\n.n (\\d.\\t.\\e.e) (\\t.\\e.t)"),
    ("One", "\\s.\\z.s z"),
    ("Mult", "\\m.\\n.\\s.m (n s)"),
    ("Pred", "\\n.\\s.\\z.n (\\g.\\h.h (g s)) (\\u.z) (\\u.u)"),
    // Direct recursion; needs a non-strict evaluator and Y.
    ("F_direct", "\\f.\\n.#Cond (#IsZero n) #One (#Mult n (f (#Pred n)))"),
    // Branches protected by a dummy abstraction; the result is a thunk that
    // the caller forces by application, and the recursive result is forced
    // with the same dummy argument before it is multiplied.
    ("F_thunkLambda", "\\f.\\n.#Cond (#IsZero n) (\\v.#One) (\\v.#Mult n (f (#Pred n) v))"),
    ("F_cps", "\\f.\\n.#Cond (#IsZero n) (\\k.k #One) (\\k.f (#Pred n) (\\x.k (#Mult n x)))"),
    // Serious subterms protected by the continuation variable k.
    ("F_delimcps", "\\f.\\n.\\k.#Cond (#IsZero n) (k #One) (k (f (#Pred n) (#Mult n)))"),
];

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = TABLE.iter().map(|(n, _)| n.to_string()).collect();
    names.push("church:N".into());
    names
}

/// Expand a builtin. `church:N` is the Church numeral for N.
pub fn builtin(name: &str) -> Result<Term, UnknownBuiltin> {
    if let Some(n) = name.strip_prefix("church:") {
        let n: u64 = n.parse().map_err(|_| UnknownBuiltin(name.to_string()))?;
        return Ok(church(n));
    }
    let (_, src) = TABLE
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| UnknownBuiltin(name.to_string()))?;
    Ok(parse_term(src).expect("builtin table entries parse"))
}

/// `\f.\x.f (f ... (f x))` with `n` applications.
pub fn church(n: u64) -> Term {
    let mut body = Term::var("x");
    for _ in 0..n {
        body = Term::app(Term::var("f"), body);
    }
    Term::lam("f", Term::lam("x", body))
}

/// The number a term denotes if it is (alpha-equal to) a Church numeral.
pub fn church_value(t: &Term) -> Option<u64> {
    let TermKind::Lam(_, inner) = t.kind() else { return None };
    let TermKind::Lam(_, body) = inner.kind() else { return None };
    let mut body = body;
    let mut n = 0;
    while let TermKind::App(_, a) = body.kind() {
        n += 1;
        body = a;
    }
    alpha_eq(t, &church(n)).then_some(n)
}
