//! Command-line front end.
//!
//! Exit codes: 0 when every requested property holds (or a search finished),
//! 1 when a requested property fails, 2 on input or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dsl::{self, Document, DslErrorKind};
use crate::gallery::{Remark6, Theorem4Window};
use crate::grade::parse_grid;
use crate::report::{self, ElementNames};
use crate::search::{run_search, Goal, SearchTask, DEFAULT_BUDGET};
use crate::semiprime::{
    crisp_semiprime, def2_bruteforce, has_property_a, is_semiprime_def1, is_semiprime_def2,
    Witness, WitnessReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fsemi", about = "Semiprime fuzzy subsets of finite ordered groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a document and validate every groupoid in it.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run semiprimeness deciders on a fuzzy subset.
    Check {
        file: PathBuf,
        #[arg(long)]
        fuzzy: String,
        #[arg(long)]
        def1: bool,
        #[arg(long)]
        def2: bool,
        #[arg(long = "property-a")]
        property_a: bool,
        /// Brute-force oracle over a comma-separated grade grid, e.g. `0,1/2,1`.
        #[arg(long, value_name = "GRIDSPEC")]
        oracle: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the sup-min product of two fuzzy subsets.
    Compose {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Check crisp semiprimeness of a set.
    Crisp {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Scan small structures for a goal.
    Search {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, value_name = "GRIDSPEC")]
        grid: String,
        #[arg(long)]
        goal: String,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the two infinite examples.
    #[command(group(ArgGroup::new("example").required(true).args(["theorem4", "remark6"])))]
    Paper {
        #[arg(long)]
        theorem4: bool,
        #[arg(long, requires = "theorem4")]
        window: Option<u64>,
        #[arg(long)]
        remark6: bool,
        #[arg(long)]
        json: bool,
    },
}

/// A failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<i32, UsageError>;

/// Runs the CLI with `args` (including the program name).
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Validate { file, json } => validate(&file, json, out, err),
        Command::Check {
            file,
            fuzzy,
            def1,
            def2,
            property_a,
            oracle,
            json,
        } => check(&file, &fuzzy, [def1, def2, property_a], oracle.as_deref(), json, out),
        Command::Compose {
            file,
            left,
            right,
            json,
        } => compose(&file, &left, &right, json, out),
        Command::Crisp { file, set, json } => crisp(&file, &set, json, out),
        Command::Search {
            max_n,
            grid,
            goal,
            budget,
            json,
        } => search(max_n, &grid, &goal, budget, json, out),
        Command::Paper {
            theorem4,
            window,
            remark6,
            json,
        } => {
            if theorem4 {
                paper_theorem4(window.unwrap_or(1000), json, out)
            } else {
                debug_assert!(remark6);
                paper_remark6(json, out)
            }
        }
    }
}

fn read(file: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(file).map_err(|e| UsageError(format!("{}: {e}", file.display())))
}

fn load(file: &Path) -> Result<Document, UsageError> {
    let src = read(file)?;
    dsl::parse(&src).map_err(|e| UsageError(format!("{}:{e}", file.display())))
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), UsageError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn exit_for(all_hold: bool) -> i32 {
    if all_hold {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn validate(file: &Path, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let src = read(file)?;
    let inputs = json!({ "file": file.display().to_string() });
    match dsl::parse(&src) {
        Ok(doc) => {
            let results: Vec<Value> = doc
                .structures
                .iter()
                .map(|ns| {
                    let s = &ns.structure;
                    json!({
                        "name": ns.name,
                        "ok": true,
                        "elements": s.len(),
                        "associative": s.is_associative(),
                        "greatest": s.greatest_element().map(|e| s.label(e).to_string()),
                    })
                })
                .collect();
            if json {
                emit(out, &report::envelope("validate", inputs, results))?;
            } else {
                for ns in &doc.structures {
                    let s = &ns.structure;
                    let kind = if s.is_associative() { "ordered semigroup" } else { "ordered groupoid" };
                    let top = match s.greatest_element() {
                        Some(e) => format!(", greatest element {}", s.label(e)),
                        None => String::new(),
                    };
                    writeln!(out, "{}: ok ({} elements, {kind}{top})", ns.name, s.len())?;
                }
            }
            Ok(EXIT_OK)
        }
        Err(e) => match &e.kind {
            DslErrorKind::Axioms { report, labels } => {
                if json {
                    let violations: Vec<Value> = report
                        .violations
                        .iter()
                        .map(|v| {
                            json!({
                                "axiom": v.axiom.name(),
                                "witness": v.witness.iter().map(|w| labels[w.0].clone()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let result = json!({
                        "ok": false,
                        "line": e.line,
                        "column": e.column,
                        "violations": violations,
                    });
                    emit(out, &report::envelope("validate", inputs, vec![result]))?;
                } else {
                    writeln!(out, "{}:{e}", file.display())?;
                }
                Ok(EXIT_FAILED)
            }
            _ => {
                writeln!(err, "error: {}:{e}", file.display())?;
                Ok(EXIT_USAGE)
            }
        },
    }
}

/// One-line description of a report.
pub fn report_text(r: &WitnessReport, names: &dyn ElementNames) -> String {
    let n = |e: &crate::structure::Element| names.element_name(*e);
    let verdict = if r.holds { "holds" } else { "fails" };
    let detail = match &r.witness {
        None => String::new(),
        Some(Witness::Square { x, xx, fx, fxx }) => {
            format!(" at x = {}: f({}) = {fx} < f({}) = {fxx}", n(x), n(x), n(xx))
        }
        Some(Witness::FuzzyPoint { x, lambda, fx }) => format!(
            " at x = {}: the fuzzy point {}_{lambda} squares below f but {lambda} > f({}) = {fx}",
            n(x),
            n(x),
            n(x)
        ),
        Some(Witness::Subset { g, x }) => {
            let parts: Vec<String> = g
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{}: {v}", n(&crate::structure::Element(i))))
                .collect();
            format!(" with g = {{ {} }}: g∘g ⪯ f but g({}) > f({})", parts.join(", "), n(x), n(x))
        }
        Some(Witness::Triple { a, x, y, fa, fxx, fyy }) => format!(
            " at (a, x, y) = ({}, {}, {}): min{{{fxx}, {fyy}}} > f({}) = {fa}",
            n(a),
            n(x),
            n(y),
            n(a)
        ),
        Some(Witness::Crisp { x, xx }) => {
            format!(" at x = {}: {} is in the set but {} is not", n(x), n(xx), n(x))
        }
        Some(Witness::Composition { a, left, right }) => {
            format!(" at {}: (f∘g)∘h = {left} but f∘(g∘h) = {right}", n(a))
        }
    };
    format!("{}: {verdict}{detail}", r.checker.name())
}

fn check(
    file: &Path,
    fuzzy: &str,
    [def1, def2, property_a]: [bool; 3],
    oracle: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    let doc = load(file)?;
    let nf = doc
        .fuzzy(fuzzy)
        .ok_or_else(|| UsageError(format!("unknown fuzzy subset `{fuzzy}`")))?;
    let f = &nf.subset;
    let run_all = !(def1 || def2 || property_a || oracle.is_some());
    let mut reports = Vec::new();
    if def1 || run_all {
        reports.push(is_semiprime_def1(f));
    }
    if def2 || run_all {
        reports.push(is_semiprime_def2(f));
    }
    if property_a || run_all {
        reports.push(has_property_a(f));
    }
    if let Some(spec) = oracle {
        let grid = parse_grid(spec)?;
        reports.push(def2_bruteforce(f, &grid)?);
    }
    let s = &**f.structure();
    if json {
        let inputs = json!({
            "file": file.display().to_string(),
            "fuzzy": fuzzy,
            "oracle": oracle,
        });
        let results = reports.iter().map(|r| report::report_json(r, s)).collect();
        emit(out, &report::envelope("check", inputs, results))?;
    } else {
        for r in &reports {
            writeln!(out, "{}", report_text(r, s))?;
        }
    }
    Ok(exit_for(reports.iter().all(|r| r.holds)))
}

fn compose(file: &Path, left: &str, right: &str, json: bool, out: &mut dyn Write) -> CliResult {
    let doc = load(file)?;
    let get = |name: &str| {
        doc.fuzzy(name)
            .map(|nf| &nf.subset)
            .ok_or_else(|| UsageError(format!("unknown fuzzy subset `{name}`")))
    };
    let product = get(left)?.compose(get(right)?)?;
    if json {
        let inputs = json!({
            "file": file.display().to_string(),
            "left": left,
            "right": right,
        });
        let result = json!({
            "name": format!("{left}*{right}"),
            "grades": report::fuzzy_json(&product),
        });
        emit(out, &report::envelope("compose", inputs, vec![result]))?;
    } else {
        writeln!(out, "{left}∘{right} = {product}")?;
    }
    Ok(EXIT_OK)
}

fn crisp(file: &Path, set: &str, json: bool, out: &mut dyn Write) -> CliResult {
    let doc = load(file)?;
    let ns = doc
        .set(set)
        .ok_or_else(|| UsageError(format!("unknown set `{set}`")))?;
    let s = &doc.structure(&ns.structure).expect("owner defined").structure;
    let r = crisp_semiprime(s, &ns.members)?;
    if json {
        let inputs = json!({ "file": file.display().to_string(), "set": set });
        emit(out, &report::envelope("crisp", inputs, vec![report::report_json(&r, &**s)]))?;
    } else {
        writeln!(out, "{}", report_text(&r, &**s))?;
    }
    Ok(exit_for(r.holds))
}

fn search(
    max_n: usize,
    grid: &str,
    goal: &str,
    budget: Option<u128>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    let task = SearchTask::new(
        max_n,
        parse_grid(grid)?,
        goal.parse::<Goal>()?,
        budget.unwrap_or(DEFAULT_BUDGET),
    )?;
    let result = run_search(&task)?;
    if json {
        for found in &result.found {
            writeln!(out, "{}", serde_json::to_string(&report::found_json(found))?)?;
        }
        writeln!(out, "{}", serde_json::to_string(&report::search_summary_json(&task, &result))?)?;
    } else {
        for found in &result.found {
            let s = &*found.structure;
            let subsets: Vec<String> = found.subsets.iter().map(|f| f.to_string()).collect();
            writeln!(out, "structure:")?;
            let doc = Document {
                structures: vec![dsl::NamedStructure {
                    name: "S".into(),
                    structure: found.structure.clone(),
                }],
                ..Document::default()
            };
            for line in dsl::print(&doc).lines().filter(|l| !l.is_empty()) {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "subsets: {}", subsets.join("; "))?;
            writeln!(out, "{}", report_text(&found.report, s))?;
            writeln!(out)?;
        }
        writeln!(
            out,
            "goal {}: examined {} candidates, {} found, {}",
            task.goal,
            result.examined,
            result.found.len(),
            if result.exhausted { "space exhausted" } else { "budget reached" }
        )?;
    }
    Ok(EXIT_OK)
}

fn paper_theorem4(bound: u64, json: bool, out: &mut dyn Write) -> CliResult {
    let w = Theorem4Window::new(bound)?;
    let d1 = w.def1_report();
    let d2 = w.def2_report();
    let reproduced = !d1.holds
        && matches!(&d1.witness, Some(Witness::Square { x, .. }) if w.element_name(*x) == "2")
        && d2.holds;
    if json {
        let mut v = report::envelope(
            "paper",
            json!({ "theorem4": true, "window": bound }),
            vec![report::report_json(&d1, &w), report::report_json(&d2, &w)],
        );
        v["transcript"] = json!(w.transcript());
        emit(out, &v)?;
    } else {
        for line in w.transcript() {
            writeln!(out, "{line}")?;
        }
        writeln!(out, "{}", report_text(&d1, &w))?;
        writeln!(out, "{}", report_text(&d2, &w))?;
    }
    Ok(exit_for(reproduced))
}

fn paper_remark6(json: bool, out: &mut dyn Write) -> CliResult {
    let r = Remark6::default();
    let (d1, pa) = r.check();
    let reproduced = d1.holds && !pa.holds;
    if json {
        let mut v = report::envelope(
            "paper",
            json!({ "remark6": true }),
            vec![report::report_json(&d1, &r), report::report_json(&pa, &r)],
        );
        v["transcript"] = json!(r.transcript());
        emit(out, &v)?;
    } else {
        for line in r.transcript() {
            writeln!(out, "{line}")?;
        }
        writeln!(out, "{}", report_text(&d1, &r))?;
        writeln!(out, "{}", report_text(&pa, &r))?;
    }
    Ok(exit_for(reproduced))
}
