//! Concrete syntax.
//!
//! ```text
//! term  := lam | app
//! lam   := ("\" | "λ") ident+ "." term
//! app   := atom+ [lam]
//! atom  := ident | "#" builtin | "(" term ")"
//! ident := [a-zA-Z_][a-zA-Z0-9_']*
//! ```
//!
//! `--` starts a comment running to the end of the line. A trailing
//! abstraction may appear unparenthesized as the last operand (`x \y.y`).

use std::fmt;

use super::{builtin, Name, Term};
use crate::deep;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: {}", self.line, self.column, self.message)
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let t = p.term()?;
    match p.peek() {
        None => Ok(t),
        Some(tok) => Err(tok.error(format!("unexpected {}", tok.kind))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Lambda,
    Dot,
    Open,
    Close,
    Ident(Name),
    Builtin(String),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Lambda => f.write_str("'\\'"),
            Kind::Dot => f.write_str("'.'"),
            Kind::Open => f.write_str("'('"),
            Kind::Close => f.write_str("')'"),
            Kind::Ident(x) => write!(f, "identifier '{x}'"),
            Kind::Builtin(x) => write!(f, "builtin '#{x}'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Tok {
    kind: Kind,
    line: usize,
    column: usize,
}

impl Tok {
    fn error(&self, message: String) -> ParseError {
        ParseError { line: self.line, column: self.column, message }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let kind = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() != Some(&'-') {
                    return Err(ParseError { line: l, column: col, message: "unexpected '-'".into() });
                }
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            '\\' | 'λ' => {
                bump(&mut chars);
                Kind::Lambda
            }
            '.' => {
                bump(&mut chars);
                Kind::Dot
            }
            '(' => {
                bump(&mut chars);
                Kind::Open
            }
            ')' => {
                bump(&mut chars);
                Kind::Close
            }
            '#' => {
                bump(&mut chars);
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_char(c) || c == ':' {
                        name.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError { line: l, column: col, message: "empty builtin name after '#'".into() });
                }
                Kind::Builtin(name)
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_char(c) {
                        name.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Kind::Ident(Name::from(name))
            }
            other => {
                return Err(ParseError { line: l, column: col, message: format!("unexpected character {other:?}") });
            }
        };
        toks.push(Tok { kind, line: l, column: col });
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eof_error(&self, what: &str) -> ParseError {
        let (line, column) = self.toks.last().map_or((1, 1), |t| (t.line, t.column + 1));
        ParseError { line, column, message: format!("unexpected end of input, expected {what}") }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        deep(|| match self.peek().map(|t| &t.kind) {
            Some(Kind::Lambda) => self.lam(),
            _ => self.app(),
        })
    }

    fn lam(&mut self) -> Result<Term, ParseError> {
        self.pos += 1;
        let mut params = Vec::new();
        loop {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.eof_error("a parameter or '.'"));
            };
            match tok.kind.clone() {
                Kind::Ident(x) => {
                    params.push(x);
                    self.pos += 1;
                }
                Kind::Dot if !params.is_empty() => {
                    self.pos += 1;
                    break;
                }
                other => return Err(tok.error(format!("expected a parameter, found {other}"))),
            }
        }
        let body = self.term()?;
        Ok(Term::lams(params, body))
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut acc: Option<Term> = None;
        loop {
            let next = match self.peek().map(|t| t.kind.clone()) {
                Some(Kind::Lambda) if acc.is_some() => Some(self.lam()?),
                Some(Kind::Ident(_) | Kind::Builtin(_) | Kind::Open) => Some(self.atom()?),
                _ => None,
            };
            let Some(t) = next else { break };
            acc = Some(match acc {
                None => t,
                Some(f) => Term::app(f, t),
            });
        }
        match acc {
            Some(t) => Ok(t),
            None => match self.peek() {
                Some(tok) => Err(tok.error(format!("expected a term, found {}", tok.kind))),
                None => Err(self.eof_error("a term")),
            },
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let tok = self.toks[self.pos].clone();
        self.pos += 1;
        match tok.kind.clone() {
            Kind::Ident(x) => Ok(Term::var(x)),
            Kind::Builtin(name) => builtin(&name).map_err(|e| tok.error(e.to_string())),
            Kind::Open => {
                let t = self.term()?;
                match self.peek() {
                    Some(Tok { kind: Kind::Close, .. }) => {
                        self.pos += 1;
                        Ok(t)
                    }
                    Some(other) => Err(other.error(format!("expected ')', found {}", other.kind))),
                    None => Err(self.eof_error("')'")),
                }
            }
            _ => unreachable!("atom called on a non-atom token"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{print_term, TermKind};

    #[test]
    fn identity_and_application() {
        let i = parse_term("\\x.x").unwrap();
        assert_eq!(i, Term::lam("x", Term::var("x")));
        assert_eq!(parse_term("λx.x").unwrap(), i);
        let xyz = parse_term("x y z").unwrap();
        assert_eq!(xyz, Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z")));
    }

    #[test]
    fn omega_literal_matches_builtin() {
        assert_eq!(parse_term("(\\x.x x)(\\x.x x)").unwrap(), parse_term("#Omega").unwrap());
    }

    #[test]
    fn multi_binder_sugar_and_comments() {
        let t = parse_term("-- the K combinator\n\\x y. x -- done").unwrap();
        assert_eq!(print_term(&t), "\\x.\\y.x");
    }

    #[test]
    fn abstraction_extends_right() {
        let t = parse_term("\\x.x y").unwrap();
        assert!(matches!(t.kind(), TermKind::Lam(..)));
        let t = parse_term("x \\y.y z").unwrap();
        assert_eq!(print_term(&t), "x (\\y.y z)");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("x\n  (y").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_term("\\.x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_term("").is_err());
        assert!(parse_term("x )").is_err());
        assert!(parse_term("#Nope").unwrap_err().message.contains("Nope"));
    }

    #[test]
    fn deeply_nested_input_parses() {
        let n = 100_000;
        let s = format!("{}x{}", "(".repeat(n), ")".repeat(n));
        assert_eq!(parse_term(&s).unwrap(), Term::var("x"));
    }
}
