//! Equivalence of contraction traces modulo commuting redexes.
//!
//! Two contractions commute when their positions are disjoint. Starting from
//! the same term, a contraction sequence is fixed by its positions alone (each
//! redex and contractum is whatever sits at that position in the current
//! term), so events are matched on positions, with redex and contractum sizes
//! as a cheap cross-check.

use std::collections::HashSet;

use crate::engine::TraceEvent;
use crate::term::Path;

pub(crate) fn same_event(a: &TraceEvent, b: &TraceEvent) -> bool {
    a.position == b.position && a.redex.size() == b.redex.size() && a.contractum.size() == b.contractum.size()
}

/// Index of the first event where two traces part ways, if they do.
pub(crate) fn first_difference(a: &[TraceEvent], b: &[TraceEvent]) -> Option<usize> {
    let common = a.iter().zip(b).take_while(|(x, y)| same_event(x, y)).count();
    (common < a.len() || common < b.len()).then_some(common)
}

/// Events of `from` that could not be moved to the front of `into`, and the
/// leftovers of `into`.
struct Matching {
    unmatched_from: Vec<usize>,
    leftover_into: Vec<usize>,
}

/// Walk `from` in order and pull each event out of `into`: the first equal
/// event whose predecessors still in `into` all commute with it. An event of
/// `from` that depends on an earlier unmatched one stays unmatched.
fn greedy_match(from: &[TraceEvent], into: &[TraceEvent]) -> Matching {
    let skip = from.iter().zip(into).take_while(|(x, y)| same_event(x, y)).count();
    let mut remaining: Vec<Option<&TraceEvent>> = into[skip..].iter().map(Some).collect();
    let mut head = 0;
    let mut unmatched: Vec<usize> = Vec::new();
    for (k, ev) in from.iter().enumerate().skip(skip) {
        let blocked = unmatched.iter().any(|&u| !from[u].position.disjoint(&ev.position));
        let mut found = None;
        if !blocked {
            for (i, slot) in remaining.iter().enumerate().skip(head) {
                let Some(cand) = slot else { continue };
                if same_event(cand, ev) {
                    found = Some(i);
                    break;
                }
                if !cand.position.disjoint(&ev.position) {
                    break;
                }
            }
        }
        match found {
            Some(i) => {
                remaining[i] = None;
                while head < remaining.len() && remaining[head].is_none() {
                    head += 1;
                }
            }
            None => unmatched.push(k),
        }
    }
    let leftover_into = remaining
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.map(|_| i + skip))
        .collect();
    Matching { unmatched_from: unmatched, leftover_into }
}

/// Same events up to reordering of commuting contractions.
pub fn mcr_equivalent(a: &[TraceEvent], b: &[TraceEvent]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let m = greedy_match(a, b);
    m.unmatched_from.is_empty() && m.leftover_into.is_empty()
}

fn pairwise_disjoint(xs: &[&Path], ys: &[&Path]) -> bool {
    xs.iter().all(|x| ys.iter().all(|y| x.disjoint(y)))
}

fn distinct<'a>(trace: &'a [TraceEvent], idx: &[usize]) -> Vec<&'a Path> {
    let mut seen = HashSet::new();
    idx.iter().map(|&i| &trace[i].position).filter(|p| seen.insert(*p)).collect()
}

/// Two equally long prefixes of diverging runs agree modulo commuting
/// redexes when, after matching what can be matched, the contractions left
/// over on either side commute with each other, so both prefixes extend to
/// a common sequence.
pub fn mcr_prefix_compatible(a: &[TraceEvent], b: &[TraceEvent]) -> bool {
    let check = |x: &[TraceEvent], y: &[TraceEvent]| {
        let m = greedy_match(x, y);
        let xs = distinct(x, &m.unmatched_from);
        let ys = distinct(y, &m.leftover_into);
        pairwise_disjoint(&xs, &ys)
    };
    check(a, b) && check(b, a)
}

/// The lexicographically least linearization by position that keeps every
/// pair of overlapping contractions in their original order.
pub fn canonicalize(trace: &[TraceEvent]) -> Vec<TraceEvent> {
    let mut remaining: Vec<&TraceEvent> = trace.iter().collect();
    let mut out = Vec::with_capacity(trace.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for j in 0..remaining.len() {
            let free = remaining[..j].iter().all(|e| e.position.disjoint(&remaining[j].position));
            if free && best.is_none_or(|b| remaining[j].position < remaining[b].position) {
                best = Some(j);
            }
            // Nothing past an event at the root can be free.
            if remaining[j].position.is_empty() {
                break;
            }
        }
        let j = best.expect("the first remaining event is always free");
        let ev = remaining.remove(j);
        out.push(TraceEvent { index: out.len(), ..ev.clone() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_term, Term};

    fn ev(path: &str, size: u64) -> TraceEvent {
        let mut t = Term::var("x");
        for _ in 1..size {
            t = Term::lam("y", t);
        }
        let redex = parse_term("(\\a.a) u").unwrap();
        TraceEvent { index: 0, position: Path::parse(path).unwrap(), redex, contractum: t }
    }

    fn paths(t: &[TraceEvent]) -> Vec<String> {
        t.iter().map(|e| e.position.to_string()).collect()
    }

    #[test]
    fn independent_steps_sort_by_position() {
        assert_eq!(paths(&canonicalize(&[ev("A", 1), ev("F", 1)])), ["F", "A"]);
        assert_eq!(paths(&canonicalize(&[ev("A", 1), ev("AF", 1)])), ["A", "AF"]);
        assert_eq!(paths(&canonicalize(&[ev("B", 1), ev("", 1), ev("A", 1)])), ["B", "", "A"]);
    }

    #[test]
    fn matching_agrees_with_canonical_forms() {
        let a = [ev("AA", 1), ev("FA", 1), ev("A", 2)];
        let b = [ev("FA", 1), ev("AA", 1), ev("A", 2)];
        assert!(mcr_equivalent(&a, &b));
        assert_eq!(paths(&canonicalize(&a)), paths(&canonicalize(&b)));
        let c = [ev("A", 2), ev("FA", 1), ev("AA", 1)];
        assert!(!mcr_equivalent(&a, &c));
    }

    #[test]
    fn prefixes_with_commuting_residues_are_compatible() {
        let a = [ev("FA", 1), ev("FA", 1)];
        let b = [ev("A", 1), ev("A", 1)];
        assert!(mcr_prefix_compatible(&a, &b));
        let c = [ev("F", 1), ev("F", 1)];
        assert!(!mcr_prefix_compatible(&a, &c));
    }
}
