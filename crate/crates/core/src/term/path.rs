//! Redex addresses as persistent lists of moves.
//!
//! A trace of a diverging run can hold tens of thousands of positions whose
//! lengths grow with the term, so positions share their prefixes: a path is a
//! pointer to its last move, which points back to its parent.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// One step of descent. The declaration order is the canonical order used to
/// linearize independent contractions: operator, then operand, then body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    Fun,
    Arg,
    Body,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Fun => 'F',
            Move::Arg => 'A',
            Move::Body => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        match c {
            'F' => Some(Move::Fun),
            'A' => Some(Move::Arg),
            'B' => Some(Move::Body),
            _ => None,
        }
    }
}

#[derive(Clone, Default)]
pub struct Path(Option<Arc<PathNode>>);

struct PathNode {
    parent: Path,
    mv: Move,
    len: usize,
    hash: u64,
}

#[derive(Debug, thiserror::Error)]
#[error("invalid path letter {0:?} (expected F, A or B)")]
pub struct PathError(char);

impl Path {
    pub fn root() -> Path {
        Path(None)
    }

    pub fn child(&self, mv: Move) -> Path {
        let hash = mix(self.hash(), mv as u64 + 1);
        Path(Some(Arc::new(PathNode { parent: self.clone(), mv, len: self.len() + 1, hash })))
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Hash of the move sequence; equal paths have equal hashes.
    pub fn hash(&self) -> u64 {
        self.0.as_ref().map_or(0x9e37_79b9_7f4a_7c15, |n| n.hash)
    }

    pub fn last(&self) -> Option<Move> {
        self.0.as_ref().map(|n| n.mv)
    }

    pub fn parent(&self) -> Option<&Path> {
        self.0.as_ref().map(|n| &n.parent)
    }

    /// The prefix of this path with `len` moves.
    pub fn ancestor(&self, len: usize) -> Option<&Path> {
        if len > self.len() {
            return None;
        }
        let mut p = self;
        while p.len() > len {
            p = p.parent()?;
        }
        Some(p)
    }

    pub fn moves(&self) -> Vec<Move> {
        let mut out = Vec::with_capacity(self.len());
        let mut p = self;
        while let Some(n) = &p.0 {
            out.push(n.mv);
            p = &n.parent;
        }
        out.reverse();
        out
    }

    pub fn from_moves(moves: &[Move]) -> Path {
        moves.iter().fold(Path::root(), |p, &m| p.child(m))
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.ancestor(self.len()).is_some_and(|a| a == self)
    }

    /// Neither path is a prefix of the other: the addressed subterms do not
    /// overlap, so contractions there commute.
    pub fn disjoint(&self, other: &Path) -> bool {
        !(self.is_prefix_of(other) || other.is_prefix_of(self))
    }

    pub fn parse(s: &str) -> Result<Path, PathError> {
        let mut p = Path::root();
        for c in s.chars() {
            p = p.child(Move::from_letter(c).ok_or(PathError(c))?);
        }
        Ok(p)
    }
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl PartialEq for Path {
    fn eq(&self, other: &Path) -> bool {
        if self.len() != other.len() || self.hash() != other.hash() {
            return false;
        }
        let (mut a, mut b) = (self, other);
        loop {
            match (&a.0, &b.0) {
                (None, None) => return true,
                (Some(x), Some(y)) => {
                    if Arc::ptr_eq(x, y) {
                        return true;
                    }
                    if x.mv != y.mv {
                        return false;
                    }
                    a = &x.parent;
                    b = &y.parent;
                }
                _ => return false,
            }
        }
    }
}

impl Eq for Path {}

impl std::hash::Hash for Path {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(Path::hash(self));
    }
}

/// Lexicographic order on move sequences, a proper prefix first.
impl Ord for Path {
    fn cmp(&self, other: &Path) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.moves().cmp(&other.moves())
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Path) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Drop for PathNode {
    fn drop(&mut self) {
        let mut next = self.parent.0.take();
        while let Some(node) = next {
            match Arc::try_unwrap(node) {
                Ok(mut n) => next = n.parent.0.take(),
                Err(_) => break,
            }
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.moves().into_iter().map(Move::letter).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({self})")
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Path, D::Error> {
        let s = String::deserialize(d)?;
        Path::parse(&s).map_err(serde::de::Error::custom)
    }
}
