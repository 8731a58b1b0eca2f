//! `evalspace`: run, trace, compare and catalogue evaluation strategies.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use evalspace::corpus::{generate, load_corpus, paper_corpus, save_corpus, GenConfig};
use evalspace::engine::reconstruct_sequence;
use evalspace::equiv::{check_absorption, check_fusion_row, compare_corpus, CorpusReport};
use evalspace::factorial::demo_factorial;
use evalspace::notation::{catalogue, defuse, fuse, validate, StrategySpec, Verdict};
use evalspace::term::{classify, print_marked, print_term};
use evalspace::{compare, derivation_tree, eval, parse_spec, parse_term, EvalError, Outcome, Status, Term, DEFAULT_FUEL};

#[derive(Parser)]
#[command(name = "evalspace", version, about = "Evaluation strategies of the pure lambda calculus, side by side")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct RunOpts {
    /// Strategy: an alias such as `no` or an encoding such as `HIH<>III`.
    #[arg(short = 's', long = "strategy")]
    strategy: String,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Exit with status 2 when fuel or another resource runs out.
    #[arg(long)]
    strict_fuel: bool,
    term: String,
}

#[derive(Args)]
struct GenOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    size_max: u64,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Comma-separated free variables; empty for closed terms.
    #[arg(long, default_value = "")]
    pool: String,
}

impl GenOpts {
    fn config(&self) -> GenConfig {
        let free_var_pool = self.pool.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        GenConfig { seed: self.seed, size_max: self.size_max, free_var_pool, ..GenConfig::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term.
    Eval(RunOpts),
    /// Print the evaluation sequence with each contracted redex in brackets.
    Trace(RunOpts),
    /// Print the derivation tree of a run.
    Tree(RunOpts),
    /// Final-form classes a term belongs to.
    Classify { term: String },
    /// Run two strategies on one term and classify the pair.
    Compare {
        #[arg(short = 's', long = "strategy", num_args = 1, required = true)]
        strategies: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        term: String,
    },
    /// The hybrid encoding equivalent to a readback encoding.
    Fuse { spec: String },
    /// Readback encodings that fuse into a hybrid encoding.
    Defuse { spec: String },
    /// Check an encoding against the well-formedness provisos.
    Validate { spec: String },
    /// Every catalogued strategy with its result form.
    Catalogue,
    /// Generate a random corpus.
    CorpusGen {
        #[command(flatten)]
        gen: GenOpts,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare strategies over a corpus. Two strategies are compared step by
    /// step (or with `--absorb`, the first after the second against the first
    /// alone); a single readback encoding is checked against its fused hybrid.
    CorpusRun {
        #[arg(short = 's', long = "strategy", num_args = 1, required = true)]
        strategies: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Corpus file; without one a corpus is generated.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        gen: GenOpts,
        /// Append the named regression terms.
        #[arg(long)]
        paper: bool,
        #[arg(long)]
        absorb: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factorial of a Church numeral under one strategy.
    DemoFactorial {
        #[arg(short = 's', long = "strategy")]
        strategy: String,
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 200_000)]
        fuel: u64,
    },
}

/// What a command prints, and how the process should exit.
struct Report {
    json: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, code: 0 }
    }
}

fn spec(text: &str) -> Result<StrategySpec> {
    Ok(parse_spec(text)?)
}

fn term(text: &str) -> Result<Term> {
    parse_term(text).with_context(|| format!("cannot parse term {text:?}"))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Resource errors are reported as a run status; anything else is a
/// domain error.
fn resource_report(e: EvalError, strict: bool) -> Result<Report> {
    if !e.is_resource() {
        return Err(e.into());
    }
    Ok(Report { json: json!({ "status": "resource-limit", "error": e.to_string() }), text: format!("stopped: {e}"), code: if strict { 2 } else { 0 } })
}

fn exhausted_code(o: &Outcome, strict: bool) -> u8 {
    if strict && o.status == Status::FuelExhausted {
        2
    } else {
        0
    }
}

fn summary(o: &Outcome) -> String {
    match &o.result {
        Some(r) => format!("{r}\n{} steps", o.trace.len()),
        None => format!("fuel exhausted after {} steps", o.trace.len()),
    }
}

fn run_eval(opts: &RunOpts) -> Result<Report> {
    let s = spec(&opts.strategy)?;
    let t = term(&opts.term)?;
    match eval(&s, &t, opts.fuel) {
        Ok(o) => Ok(Report { text: summary(&o), code: exhausted_code(&o, opts.strict_fuel), json: to_json(&o) }),
        Err(e) => resource_report(e, opts.strict_fuel),
    }
}

fn run_trace(opts: &RunOpts) -> Result<Report> {
    let s = spec(&opts.strategy)?;
    let t = term(&opts.term)?;
    let o = match eval(&s, &t, opts.fuel) {
        Ok(o) => o,
        Err(e) => return resource_report(e, opts.strict_fuel),
    };
    let seq = reconstruct_sequence(&t, &o.trace)?;
    let mut text = String::new();
    for (i, ev) in o.trace.iter().enumerate() {
        let _ = writeln!(text, "{:>4}  {}", i, print_marked(&seq[i], &ev.position));
    }
    match &o.result {
        Some(r) => {
            let _ = write!(text, "{:>4}  {}", o.trace.len(), print_term(r));
        }
        None => {
            let _ = write!(text, "      ... fuel exhausted");
        }
    }
    Ok(Report { text, code: exhausted_code(&o, opts.strict_fuel), json: to_json(&o) })
}

fn run_tree(opts: &RunOpts) -> Result<Report> {
    let s = spec(&opts.strategy)?;
    let t = term(&opts.term)?;
    let d = match derivation_tree(&s, &t, opts.fuel) {
        Ok(d) => d,
        Err(e) => return resource_report(e, opts.strict_fuel),
    };
    let text = match &d.tree {
        Some(tree) => tree.render().trim_end().to_string(),
        None => summary(&d.outcome),
    };
    Ok(Report { text, code: exhausted_code(&d.outcome, opts.strict_fuel), json: to_json(&d) })
}

fn with_paper(mut terms: Vec<Term>, paper: bool) -> Vec<Term> {
    if paper {
        terms.extend(paper_corpus().into_iter().map(|(_, t)| t));
    }
    terms
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Eval(o) => run_eval(o),
        Command::Trace(o) => run_trace(o),
        Command::Tree(o) => run_tree(o),
        Command::Classify { term: src } => {
            let forms = classify(&term(src)?);
            Ok(Report::ok(to_json(&forms), forms.to_string()))
        }
        Command::Compare { strategies, fuel, term: src } => {
            let [a, b] = strategies.as_slice() else { bail!("compare takes exactly two strategies") };
            let v = compare(&spec(a)?, &spec(b)?, &term(src)?, *fuel);
            Ok(Report::ok(to_json(&v), v.to_string()))
        }
        Command::Fuse { spec: src } => {
            let StrategySpec::Readback(er) = spec(src)? else { bail!("{src} is not a readback encoding") };
            let f = fuse(&er)?;
            Ok(Report::ok(to_json(&f), f.to_string()))
        }
        Command::Defuse { spec: src } => {
            let StrategySpec::Hybrid(h) = spec(src)? else { bail!("{src} is not a hybrid encoding") };
            let rs = defuse(&h);
            let text = if rs.is_empty() {
                "no readback encoding fuses into this hybrid".to_string()
            } else {
                rs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            };
            Ok(Report::ok(to_json(&rs), text))
        }
        Command::Validate { spec: src } => {
            let r = validate(&spec(src)?);
            let code = if matches!(r.verdict, Verdict::Invalid | Verdict::Spurious) { 1 } else { 0 };
            Ok(Report { json: to_json(&r), text: r.to_string(), code })
        }
        Command::Catalogue => {
            let rows = catalogue();
            let mut text = String::new();
            for e in &rows {
                let _ = write!(text, "{:<8} {:<14} {:<18} {:<5}", e.alias.unwrap_or("-"), e.spec.to_string(), e.classification, e.result);
                if let Some(eq) = &e.equivalent {
                    let _ = write!(text, " = {eq}");
                }
                if e.mcr {
                    text.push_str(" (mcr)");
                }
                text.push('\n');
            }
            Ok(Report::ok(to_json(&rows), text.trim_end().to_string()))
        }
        Command::CorpusGen { gen, out } => {
            let terms = generate(&gen.config(), gen.n)?;
            let text = terms.iter().map(print_term).collect::<Vec<_>>().join("\n");
            if let Some(path) = out {
                save_corpus(path, &terms, None)?;
            }
            let text = if out.is_some() { format!("wrote {} terms", terms.len()) } else { text };
            Ok(Report::ok(to_json(&terms), text))
        }
        Command::CorpusRun { strategies, fuel, corpus, gen, paper, absorb, out } => {
            let (terms, name, seed) = match corpus {
                Some(p) => (load_corpus(p)?, p.display().to_string(), None),
                None => (generate(&gen.config(), gen.n)?, "generated".to_string(), Some(gen.seed)),
            };
            let terms = with_paper(terms, *paper);
            let specs = strategies.iter().map(|s| spec(s)).collect::<Result<Vec<_>>>()?;
            let mut report: CorpusReport = match (specs.as_slice(), absorb) {
                ([StrategySpec::Readback(er)], false) => check_fusion_row(er, &terms, *fuel)?,
                ([a, b], false) => compare_corpus(a, b, &terms, *fuel),
                ([outer, inner], true) => check_absorption(outer, inner, &terms, *fuel),
                _ => return Err(anyhow!("give one readback encoding, or two strategies")),
            };
            report.corpus = if *paper { format!("{name}+paper") } else { name };
            report.seed = seed;
            let json = to_json(&report);
            if let Some(path) = out {
                let body = serde_json::to_string_pretty(&json)?;
                std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            let code = if report.failures > 0 { 1 } else { 0 };
            Ok(Report { json, text: report.to_string().trim_end().to_string(), code })
        }
        Command::DemoFactorial { strategy, n, fuel } => {
            let r = demo_factorial(&spec(strategy)?, *n, *fuel)?;
            let result = r.result.as_ref().map_or_else(|| "(none)".to_string(), print_term);
            let text = format!(
                "{}! under {}: {} ({}), {} steps\nresult {}\nforms {}, expected {}",
                r.n,
                r.strategy,
                if r.ok { "ok" } else { "FAILED" },
                match r.status {
                    Status::Converged => "converged",
                    Status::FuelExhausted => "fuel exhausted",
                },
                r.fuel_used,
                result,
                r.forms,
                r.expected_form,
            );
            let code = if r.ok { 0 } else { 1 };
            Ok(Report { json: to_json(&r), text, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("json values print"));
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
