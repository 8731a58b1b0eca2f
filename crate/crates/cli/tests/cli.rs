use std::process::{Command, Output};

use evalspace::notation::{fuse, StrategySpec};
use evalspace::{eval, parse_spec, parse_term};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evalspace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_result_and_step_count() {
    let o = run(&["eval", "--strategy", "bv", "--fuel", "1000", "(\\x.#I z)(#I z)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "z\n3 steps\n");
}

#[test]
fn json_output_is_the_library_value() {
    let term = "(\\x.#I z)(#I z)";
    let o = run(&["eval", "-s", "bv", "--json", term]);
    let lib = eval(&parse_spec("bv").unwrap(), &parse_term(term).unwrap(), 100_000).unwrap();
    let expected = serde_json::to_string_pretty(&serde_json::to_value(&lib).unwrap()).unwrap();
    assert_eq!(stdout(&o).trim_end(), expected);

    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "converged");
    assert_eq!(v["fuel_used"], 3);
    assert_eq!(v["trace"][0]["path"], "A");
    assert_eq!(v["trace"][1]["path"], "");

    let f = run(&["fuse", "--json", "(RE)R.ISS"]);
    let StrategySpec::Readback(er) = parse_spec("(RE)R.ISS").unwrap() else { unreachable!() };
    let lib = serde_json::to_string_pretty(&serde_json::to_value(fuse(&er).unwrap()).unwrap()).unwrap();
    assert_eq!(stdout(&f).trim_end(), lib);
}

#[test]
fn trace_brackets_each_redex() {
    let o = run(&["trace", "-s", "bv", "(\\x.#I z)(#I z)"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].ends_with("(\\x.(\\x.x) z) [(\\x.x) z]"), "{}", lines[0]);
    assert!(lines[1].ends_with("[(\\x.(\\x.x) z) z]"), "{}", lines[1]);
    assert!(lines[3].ends_with("z"));
}

#[test]
fn tree_renders_rules() {
    let text = stdout(&run(&["tree", "-s", "bv", "(\\x.#I z)(#I z)"]));
    assert!(text.starts_with("CON [bv]"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("CON")).count(), 3);
}

#[test]
fn fuse_and_defuse() {
    assert_eq!(stdout(&run(&["fuse", "(RE)R.ISS"])), "HSH<>ISS (sn), mcr=true\n");
    let d = stdout(&run(&["defuse", "HIH<>III"]));
    assert!(d.lines().any(|l| l == "(RE)(RE).III"), "{d}");
    let none = run(&["defuse", "HHH<>ISS"]);
    assert_eq!(none.status.code(), Some(0));
    assert!(stdout(&none).contains("no readback"));
}

#[test]
fn validate_exit_codes() {
    let o = run(&["validate", "HIH<>SIS"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("spurious") && text.contains("H2"), "{text}");
    assert_eq!(run(&["validate", "no"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["eval", "-s", "nosuch", "x"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "-s", "no", "(x"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "-s", "ER.SSS", "x"]).status.code(), Some(1));
}

#[test]
fn fuel_exhaustion_is_only_an_error_when_strict() {
    let lax = run(&["eval", "-s", "no", "--fuel", "50", "#Omega"]);
    assert_eq!(lax.status.code(), Some(0));
    assert!(stdout(&lax).contains("fuel exhausted"));
    assert_eq!(run(&["eval", "-s", "no", "--fuel", "50", "--strict-fuel", "#Omega"]).status.code(), Some(2));
}

#[test]
fn classify_and_compare() {
    assert!(stdout(&run(&["classify", "\\x.x"])).contains("NF"));
    let c = stdout(&run(&["compare", "-s", "no", "-s", "hr", "x ((\\a.a) u)"]));
    assert!(c.starts_with("differ"), "{c}");
    assert_eq!(run(&["compare", "-s", "no", "x"]).status.code(), Some(1));
}

#[test]
fn catalogue_lists_every_row() {
    let text = stdout(&run(&["catalogue"]));
    assert_eq!(text.lines().count(), 63);
}

#[test]
fn corpus_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let p = path.to_str().unwrap();
    let g = run(&["corpus-gen", "--seed", "5", "--n", "40", "--size-max", "20", "--out", p]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 40);

    let report = dir.path().join("r.json");
    let r = run(&["corpus-run", "-s", "(RE)(RE).III", "--corpus", p, "--fuel", "2000", "--out", report.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["n"], 40);
    assert_eq!(v["failures"], 0);

    let same = stdout(&run(&["corpus-gen", "--seed", "5", "--n", "40", "--size-max", "20"]));
    assert_eq!(same, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn comparing_over_the_paper_corpus() {
    let o = run(&["corpus-run", "-s", "no", "-s", "hr", "--n", "0", "--paper", "--json", "--fuel", "2000"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["verdicts"]["differ"].as_u64().unwrap() > 0);
    assert!(!v["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn factorial_demo() {
    let o = run(&["demo-factorial", "-s", "so", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\\s.\\x.s (s x)"));
    assert_eq!(run(&["demo-factorial", "-s", "ao", "--n", "2"]).status.code(), Some(1));
}
