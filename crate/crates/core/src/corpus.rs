//! Random terms, named regression terms, and corpus files.

use std::fs;
use std::io;
use std::path::{Path as FsPath, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::deep;
use crate::term::{parse_term, print_term, Name, ParseError, Term};

/// Parameters are drawn from this small alphabet so that shadowing and
/// capture come up often.
const PARAMS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on node count.
    pub size_max: u64,
    /// Free variables available everywhere. Empty means closed terms.
    pub free_var_pool: Vec<String>,
    /// Probability that an application gets an abstraction as operator.
    pub redex_bias: f64,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig { seed: 0, size_max: 30, free_var_pool: Vec::new(), redex_bias: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("size_max must be at least {min} (got {got})")]
    SizeTooSmall { min: u64, got: u64 },
    #[error("redex_bias must lie in [0, 1] (got {0})")]
    BadBias(f64),
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    cfg: &'a GenConfig,
    pool: Vec<Name>,
}

impl Gen<'_> {
    fn min_size(&self, scope: &[Name]) -> u64 {
        if scope.is_empty() && self.pool.is_empty() {
            2
        } else {
            1
        }
    }

    fn var(&mut self, scope: &[Name]) -> Term {
        let n = scope.len() + self.pool.len();
        let i = self.rng.gen_range(0..n);
        let name = if i < scope.len() { scope[i].clone() } else { self.pool[i - scope.len()].clone() };
        Term::var(name)
    }

    fn lam(&mut self, budget: u64, scope: &mut Vec<Name>) -> Term {
        let p: Name = PARAMS[self.rng.gen_range(0..PARAMS.len())].into();
        scope.push(p.clone());
        let body = self.term(budget - 1, scope);
        scope.pop();
        Term::lam(p, body)
    }

    /// A term of at most `budget` nodes; `budget` is at least `min_size`.
    fn term(&mut self, budget: u64, scope: &mut Vec<Name>) -> Term {
        deep(|| {
            let min = self.min_size(scope);
            let has_var = min == 1;
            let can_lam = budget >= 2;
            let can_app = budget > 2 * min;
            // Leaves become likelier as the budget runs out.
            let fill = budget as f64 / self.cfg.size_max.max(1) as f64;
            let w_var = if has_var { 0.3 + 0.7 * (1.0 - fill) } else { 0.0 };
            let w_lam = if can_lam { 0.35 } else { 0.0 };
            let w_app = if can_app { 0.35 * fill.max(0.2) } else { 0.0 };
            let total = w_var + w_lam + w_app;
            let r = self.rng.gen::<f64>() * total;
            if r < w_var {
                self.var(scope)
            } else if r < w_var + w_lam {
                self.lam(budget, scope)
            } else {
                let rest = budget - 1;
                let force_lam = rest >= 2 + min && self.rng.gen_bool(self.cfg.redex_bias);
                let lo = if force_lam { 2 } else { min };
                let left = self.rng.gen_range(lo..=rest - min);
                let f = if force_lam { self.lam(left, scope) } else { self.term(left, scope) };
                let a = self.term(rest - f.size(), scope);
                Term::app(f, a)
            }
        })
    }
}

/// `n` random terms, each of at most `cfg.size_max` nodes. The same config
/// always yields the same list.
pub fn generate(cfg: &GenConfig, n: usize) -> Result<Vec<Term>, GenError> {
    if !(0.0..=1.0).contains(&cfg.redex_bias) {
        return Err(GenError::BadBias(cfg.redex_bias));
    }
    let pool: Vec<Name> = cfg.free_var_pool.iter().map(|s| Name::from(s.as_str())).collect();
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(cfg.seed), cfg, pool };
    let min = g.min_size(&[]);
    if cfg.size_max < min {
        return Err(GenError::SizeTooSmall { min, got: cfg.size_max });
    }
    Ok((0..n).map(|_| g.term(cfg.size_max, &mut Vec::new())).collect())
}

/// Metavariable instances: `R` is a small redex, `N` a value, `B` a body.
const R: &str = "((\\a.a) u)";
const N: &str = "(\\w.w)";

/// Terms the literature uses as examples and counterexamples, under stable
/// names.
pub fn paper_corpus() -> Vec<(String, Term)> {
    let r = |i: usize| format!("((\\a.a) u{i})");
    let entries: Vec<(&str, String)> = vec![
        ("sestoft-fig-example", "(\\x.#I z) (#I z)".into()),
        ("omega-argument", "(\\y.z) #Omega".into()),
        ("neutral-argument", format!("(\\y.z) (x {N})")),
        ("strictness-counterexample", "(\\x.y) #Omega".into()),
        ("sis-counterexample", "(\\k.k #Omega) (\\x.y)".into()),
        ("ao-counterexample", "(\\x.y) (\\k.k #Omega)".into()),
        ("bv-isi-counterexample", "(\\x.y) (x #Omega)".into()),
        ("ho-isi-counterexample", "(\\x.y) (\\x.#Omega)".into()),
        ("no-hr-counterexample", format!("x (\\x.{}) {} {}", r(1), r(2), r(3))),
        ("his-counterexample", format!("x (x {R})")),
        ("hsh-isi-counterexample", format!("(\\x.x x) (x {R}) {N}")),
        ("hsh-isi-divergent", format!("(\\x.x x) (x {R}) #Omega")),
        ("duplicated-argument", format!("(\\x.(\\y.\\z.y) x x) {N}")),
        ("fixpoint-argument", format!("(\\x.#Y x) {N}")),
        ("mcr-example", format!("x (\\y.{}) {}", r(1), r(2))),
    ];
    entries
        .into_iter()
        .map(|(name, src)| (name.to_string(), parse_term(&src).expect("paper corpus entries parse")))
        .collect()
}

/// The named term, if the paper corpus has it.
pub fn paper_term(name: &str) -> Option<Term> {
    paper_corpus().into_iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        #[source]
        source: ParseError,
    },
}

/// One term per line. Names, when given, go in a comment line above.
pub fn save_corpus(path: &FsPath, terms: &[Term], names: Option<&[String]>) -> Result<(), CorpusError> {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if let Some(name) = names.and_then(|ns| ns.get(i)) {
            out.push_str("-- ");
            out.push_str(name);
            out.push('\n');
        }
        out.push_str(&print_term(t));
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

/// Parse a corpus file. Blank lines and `--` comment lines are skipped.
pub fn parse_corpus(path: &FsPath, text: &str) -> Result<Vec<Term>, CorpusError> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with("--") {
            continue;
        }
        let t = parse_term(trimmed).map_err(|source| CorpusError::Parse { path: path.to_path_buf(), line: i + 1, source })?;
        terms.push(t);
    }
    Ok(terms)
}

pub fn load_corpus(path: &FsPath) -> Result<Vec<Term>, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::alpha_eq;

    #[test]
    fn smallest_open_term() {
        let cfg = GenConfig { seed: 1, size_max: 1, free_var_pool: vec!["x".into()], redex_bias: 0.5 };
        assert_eq!(generate(&cfg, 1).unwrap(), vec![Term::var("x")]);
        let closed = GenConfig { size_max: 1, ..GenConfig::default() };
        assert!(generate(&closed, 1).is_err());
    }

    #[test]
    fn generation_is_deterministic_closed_and_bounded() {
        let cfg = GenConfig { seed: 7, ..GenConfig::default() };
        let a = generate(&cfg, 200).unwrap();
        assert_eq!(a, generate(&cfg, 200).unwrap());
        assert!(a.iter().all(|t| t.is_closed() && t.size() <= 30));
        let sizes: std::collections::BTreeSet<u64> = a.iter().map(Term::size).collect();
        assert!(sizes.len() > 10, "sizes are too uniform: {sizes:?}");
    }

    #[test]
    fn file_round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        let terms = generate(&GenConfig { seed: 3, ..GenConfig::default() }, 500).unwrap();
        save_corpus(&p, &terms, None).unwrap();
        let back = load_corpus(&p).unwrap();
        assert_eq!(back.len(), terms.len());
        assert!(terms.iter().zip(&back).all(|(a, b)| alpha_eq(a, b)));

        fs::write(&p, "x\n-- fine\n(y\nz\n").unwrap();
        match load_corpus(&p) {
            Err(CorpusError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {other:?}"),
        }
        fs::write(&p, "").unwrap();
        assert!(load_corpus(&p).unwrap().is_empty());
    }

    #[test]
    fn paper_terms() {
        assert_eq!(paper_term("sestoft-fig-example").unwrap(), parse_term("(\\x.(\\x.x) z) ((\\x.x) z)").unwrap());
        assert_eq!(paper_term("strictness-counterexample").unwrap(), parse_term("(\\x.y) #Omega").unwrap());
        assert_eq!(paper_term("sis-counterexample").unwrap(), parse_term("(\\k.k #Omega) (\\x.y)").unwrap());
    }
}
