//! The two generic templates, run directly over terms.
//!
//! Every evaluator is a role: the uniform (or subsidiary) triple, the hybrid,
//! the readback, or readback after eval. Slots resolve to a role or to the
//! identity. The evaluation of a contractum is a loop rather than a recursive
//! call, so a diverging redex chain like Omega consumes fuel but not stack.

use super::tree::{Contraction, DerivationTree, Rule};
use super::{EvalError, Limits, TraceEvent};
use crate::notation::{HSlot, RSlot, StrategySpec, USlot};
use crate::term::{substitute, Move, Name, Path, Term, TermKind};
use crate::deep;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Role {
    Sub,
    Hyb,
    Rb,
    RbEv,
}

pub(super) enum Stop {
    Fuel,
    Error(EvalError),
}

impl From<EvalError> for Stop {
    fn from(e: EvalError) -> Stop {
        Stop::Error(e)
    }
}

/// Parameters of one eval-apply role.
#[derive(Clone, Copy)]
struct Template {
    la: Option<Role>,
    op1: Role,
    ar1: Option<Role>,
    op2: Option<Role>,
    ar2: Option<Role>,
}

/// Moves leading to the subterm under evaluation, with the persistent paths
/// for its prefixes built lazily: most descents never contract anything.
#[derive(Default)]
struct PathStack {
    moves: Vec<Move>,
    cache: Vec<Path>,
}

impl PathStack {
    fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    fn pop(&mut self) {
        self.moves.pop();
        self.cache.truncate(self.moves.len() + 1);
    }

    fn current(&mut self) -> Path {
        if self.cache.is_empty() {
            self.cache.push(Path::root());
        }
        while self.cache.len() <= self.moves.len() {
            let i = self.cache.len();
            let next = self.cache[i - 1].child(self.moves[i - 1]);
            self.cache.push(next);
        }
        self.cache[self.moves.len()].clone()
    }
}

pub(super) struct Machine {
    sub: Template,
    hyb: Option<Template>,
    rb: (Option<Role>, Option<Role>),
    labels: [String; 4],
    fuel: u64,
    limits: Limits,
    trees: bool,
    depth: usize,
    work: u64,
    paths: PathStack,
    pub(super) trace: Vec<TraceEvent>,
}

type Out = (Term, Option<DerivationTree>);

fn uslot(s: USlot) -> Option<Role> {
    match s {
        USlot::I => None,
        USlot::S => Some(Role::Sub),
    }
}

fn hslot(s: HSlot) -> Option<Role> {
    match s {
        HSlot::I => None,
        HSlot::S => Some(Role::Sub),
        HSlot::H => Some(Role::Hyb),
    }
}

fn rslot(s: RSlot) -> Option<Role> {
    match s {
        RSlot::I => None,
        RSlot::E => Some(Role::Sub),
        RSlot::R => Some(Role::Rb),
        RSlot::RE => Some(Role::RbEv),
    }
}

impl Machine {
    pub(super) fn new(spec: &StrategySpec, fuel: u64, limits: Limits, trees: bool) -> Machine {
        let u = spec.subsidiary();
        let sub = Template { la: uslot(u.la), op1: Role::Sub, ar1: uslot(u.ar1), op2: None, ar2: uslot(u.ar2) };
        let mut hyb = None;
        let mut rb = (None, None);
        match spec {
            StrategySpec::Uniform(_) => {}
            StrategySpec::Hybrid(h) => {
                let x = h.hybrid;
                hyb = Some(Template {
                    la: hslot(x.la),
                    op1: Role::Sub,
                    ar1: hslot(x.ar1),
                    op2: Some(Role::Hyb),
                    ar2: hslot(x.ar2),
                });
            }
            StrategySpec::Readback(r) => rb = (rslot(r.la), rslot(r.ar2)),
        }
        let sub_label = StrategySpec::Uniform(u).label();
        let labels = [sub_label.clone(), spec.label(), "rb".to_string(), format!("rb.{sub_label}")];
        Machine {
            sub,
            hyb,
            rb,
            labels,
            fuel,
            limits,
            trees,
            depth: 0,
            work: 0,
            paths: PathStack::default(),
            trace: Vec::new(),
        }
    }

    /// The role a whole spec evaluates with.
    pub(super) fn top(spec: &StrategySpec) -> Role {
        match spec {
            StrategySpec::Uniform(_) => Role::Sub,
            StrategySpec::Hybrid(_) => Role::Hyb,
            StrategySpec::Readback(_) => Role::RbEv,
        }
    }

    fn label(&self, role: Role) -> String {
        self.labels[role as usize].clone()
    }

    fn node(&mut self, rule: Rule, role: Role, input: Term, output: Term, premises: Vec<Option<DerivationTree>>) -> Option<DerivationTree> {
        if !self.trees {
            return None;
        }
        Some(DerivationTree {
            rule,
            evaluator: self.label(role),
            position: self.paths.current(),
            input,
            output,
            premises: premises.into_iter().flatten().collect(),
            contraction: None,
        })
    }

    pub(super) fn run(&mut self, role: Role, t: Term) -> Result<Out, Stop> {
        self.depth += 1;
        self.work += 1;
        if self.depth > self.limits.max_depth {
            return Err(EvalError::DepthLimit { limit: self.limits.max_depth }.into());
        }
        if self.work > self.limits.max_work {
            return Err(EvalError::WorkLimit { limit: self.limits.max_work }.into());
        }
        let out = deep(|| match role {
            Role::Sub => self.eval_apply(role, self.sub, t),
            Role::Hyb => {
                let tpl = self.hyb.expect("hybrid role only runs for hybrid specs");
                self.eval_apply(role, tpl, t)
            }
            Role::Rb => self.readback(t),
            Role::RbEv => self.staged(t),
        });
        self.depth -= 1;
        out
    }

    /// Evaluate `t`, reached from the current subterm by `mv`, with `slot`.
    fn descend(&mut self, slot: Option<Role>, t: &Term, mv: Move) -> Result<Out, Stop> {
        let Some(role) = slot else { return Ok((t.clone(), None)) };
        self.paths.push(mv);
        let out = self.run(role, t.clone());
        self.paths.pop();
        out
    }

    fn contract(&mut self, redex: Term, param: &Name, body: &Term, operand: &Term) -> Result<Term, Stop> {
        if self.trace.len() as u64 >= self.fuel {
            return Err(Stop::Fuel);
        }
        let contractum = substitute(operand, param, body);
        if contractum.size() > self.limits.max_size {
            return Err(EvalError::SizeLimit { limit: self.limits.max_size }.into());
        }
        let position = self.paths.current();
        self.trace.push(TraceEvent { index: self.trace.len(), position, redex, contractum: contractum.clone() });
        Ok(contractum)
    }

    fn eval_apply(&mut self, role: Role, tpl: Template, t: Term) -> Result<Out, Stop> {
        // CON frames awaiting the result of their contractum.
        let mut chain: Vec<(Term, Vec<Option<DerivationTree>>, Contraction)> = Vec::new();
        let mut cur = t;
        let (result, mut tree) = loop {
            match cur.kind() {
                TermKind::Var(_) => {
                    let tree = self.node(Rule::Var, role, cur.clone(), cur.clone(), vec![]);
                    break (cur, tree);
                }
                TermKind::Lam(x, b) => {
                    let (b2, pb) = self.descend(tpl.la, b, Move::Body)?;
                    let out = if b2.same(b) { cur.clone() } else { Term::lam(x.clone(), b2) };
                    let tree = self.node(Rule::Abs, role, cur.clone(), out.clone(), vec![pb]);
                    break (out, tree);
                }
                TermKind::App(m, n) => {
                    let (m2, pm) = self.descend(Some(tpl.op1), m, Move::Fun)?;
                    if let TermKind::Lam(x, body) = m2.kind() {
                        let (n2, pn) = self.descend(tpl.ar1, n, Move::Arg)?;
                        let redex = if m2.same(m) && n2.same(n) { cur.clone() } else { Term::app(m2.clone(), n2.clone()) };
                        let contractum = self.contract(redex.clone(), x, body, &n2)?;
                        if self.trees {
                            let c = Contraction {
                                index: self.trace.len() - 1,
                                position: self.paths.current(),
                                redex,
                                operand: n2,
                                contractum: contractum.clone(),
                            };
                            chain.push((cur.clone(), vec![pm, pn], c));
                        }
                        cur = contractum;
                        continue;
                    }
                    let (m3, po) = self.descend(tpl.op2, &m2, Move::Fun)?;
                    let (n2, pn) = self.descend(tpl.ar2, n, Move::Arg)?;
                    let out = if m3.same(m) && n2.same(n) { cur.clone() } else { Term::app(m3, n2) };
                    let tree = self.node(Rule::Neu, role, cur.clone(), out.clone(), vec![pm, po, pn]);
                    break (out, tree);
                }
            }
        };
        if self.trees {
            let position = self.paths.current();
            while let Some((input, mut premises, c)) = chain.pop() {
                premises.push(tree);
                tree = Some(DerivationTree {
                    rule: Rule::Con,
                    evaluator: self.label(role),
                    position: position.clone(),
                    input,
                    output: result.clone(),
                    premises: premises.into_iter().flatten().collect(),
                    contraction: Some(c),
                });
            }
        }
        Ok((result, tree))
    }

    fn readback(&mut self, t: Term) -> Result<Out, Stop> {
        let (la, ar2) = self.rb;
        match t.kind() {
            TermKind::Var(_) => {
                let tree = self.node(Rule::Var, Role::Rb, t.clone(), t.clone(), vec![]);
                Ok((t, tree))
            }
            TermKind::Lam(x, b) => {
                let (b2, pb) = self.descend(la, b, Move::Body)?;
                let out = if b2.same(b) { t.clone() } else { Term::lam(x.clone(), b2) };
                let tree = self.node(Rule::Abs, Role::Rb, t.clone(), out.clone(), vec![pb]);
                Ok((out, tree))
            }
            TermKind::App(m, n) => {
                if m.is_lam() {
                    let position = self.paths.current();
                    return Err(EvalError::ReadbackOnRedex { position }.into());
                }
                let (m2, pm) = self.descend(Some(Role::Rb), m, Move::Fun)?;
                let (n2, pn) = self.descend(ar2, n, Move::Arg)?;
                let out = if m2.same(m) && n2.same(n) { t.clone() } else { Term::app(m2, n2) };
                let tree = self.node(Rule::Neu, Role::Rb, t.clone(), out.clone(), vec![pm, pn]);
                Ok((out, tree))
            }
        }
    }

    /// Readback after eval, on the same subterm.
    fn staged(&mut self, t: Term) -> Result<Out, Stop> {
        let (mid, pe) = self.run(Role::Sub, t.clone())?;
        let (out, pr) = self.run(Role::Rb, mid)?;
        let tree = self.node(Rule::Stage, Role::RbEv, t, out.clone(), vec![pe, pr]);
        Ok((out, tree))
    }
}
