//! Minimal-parenthesis rendering that re-parses to the same term.

use super::{Path, Term, TermKind};
use crate::deep;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Printer { mark: None }.term(t, &mut out, 0);
    out
}

/// Render `t` with the subterm at `path` wrapped in brackets, the way an
/// evaluation sequence underlines the redex about to be contracted.
pub fn print_marked(t: &Term, path: &Path) -> String {
    let moves: Vec<u8> = path.moves().into_iter().map(|m| m as u8).collect();
    let mut out = String::new();
    Printer { mark: Some(Mark { moves, depth_ok: 0 }) }.term(t, &mut out, 0);
    out
}

struct Mark {
    moves: Vec<u8>,
    // Length of the prefix of `moves` matched by the current descent.
    depth_ok: usize,
}

struct Printer {
    mark: Option<Mark>,
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    Operator,
    Operand,
}

impl Printer {
    fn term(&mut self, t: &Term, out: &mut String, depth: usize) {
        self.at(t, out, depth, Ctx::Top)
    }

    fn marked_here(&self, depth: usize) -> bool {
        self.mark.as_ref().is_some_and(|m| m.depth_ok == depth && m.moves.len() == depth)
    }

    // Descend along `mv` from a node at `depth`, tracking whether we are
    // still on the marked path.
    fn child(&mut self, mv: u8, depth: usize, f: impl FnOnce(&mut Self)) {
        let on_path = self
            .mark
            .as_ref()
            .is_some_and(|m| m.depth_ok == depth && m.moves.get(depth) == Some(&mv));
        if on_path {
            if let Some(m) = self.mark.as_mut() {
                m.depth_ok += 1;
            }
        }
        deep(|| f(self));
        if on_path {
            if let Some(m) = self.mark.as_mut() {
                m.depth_ok -= 1;
            }
        }
    }

    fn at(&mut self, t: &Term, out: &mut String, depth: usize, ctx: Ctx) {
        if self.marked_here(depth) {
            out.push('[');
            // Block further matches inside the bracket.
            let saved = self.mark.take();
            self.at(t, out, depth, Ctx::Top);
            self.mark = saved;
            out.push(']');
            return;
        }
        match t.kind() {
            TermKind::Var(x) => out.push_str(x),
            TermKind::Lam(x, b) => {
                let paren = ctx != Ctx::Top;
                if paren {
                    out.push('(');
                }
                out.push('\\');
                out.push_str(x);
                out.push('.');
                self.child(2, depth, |p| p.at(b, out, depth + 1, Ctx::Top));
                if paren {
                    out.push(')');
                }
            }
            TermKind::App(f, a) => {
                let paren = ctx == Ctx::Operand;
                if paren {
                    out.push('(');
                }
                self.child(0, depth, |p| p.at(f, out, depth + 1, Ctx::Operator));
                out.push(' ');
                self.child(1, depth, |p| p.at(a, out, depth + 1, Ctx::Operand));
                if paren {
                    out.push(')');
                }
            }
        }
    }
}
