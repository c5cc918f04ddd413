//! Command-line front end. Exit codes: 0 success, 1 a checked claim failed,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{self, ConstructError};
use crate::io::{self, IoError};
use crate::lemmas;
use crate::properties::{self, Catalog};
use crate::search::{self, SearchSpec};
use crate::terms::{check_identity, Identity};

#[derive(Parser, Debug)]
#[command(name = "loopkit", version, about = "Finite loop toolkit: identity checking, middle Bol suites and loop search")]
pub struct Cli {
    /// Also write a structured JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a catalog property or an identity on a table.
    Check(CheckArgs),
    /// Evaluate every catalog property on a table.
    Classify {
        #[arg(long)]
        table: PathBuf,
    },
    /// Enumerate loops of one order.
    Search(SearchArgs),
    /// Build a middle Bol loop from a one-sided Bol loop.
    Construct {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long)]
        table: PathBuf,
    },
    /// Principal isotope (x/b)(a\y).
    Isotope {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Test two tables for isomorphism.
    Iso {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        table2: PathBuf,
    },
    /// Run every lemma and theorem suite over a corpus.
    VerifyLemmas {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Corpus management.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Print the built-in property catalog in the catalog file format.
    DumpCatalog,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "what")]
pub struct CheckTarget {
    #[arg(long)]
    pub prop: Option<String>,
    #[arg(long)]
    pub identity: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub table: PathBuf,
    #[command(flatten)]
    pub target: CheckTarget,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub order: usize,
    /// Comma-separated property names; raw identities may be given by
    /// repeating the flag.
    #[arg(long, value_delimiter = ',')]
    pub require: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<String>,
    #[arg(long)]
    pub dedup: bool,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Source {
    RightBol,
    LeftBol,
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// Build the corpus directory.
    Build {
        /// Range `a..b` (inclusive) or comma-separated list.
        #[arg(long, default_value = "2..8")]
        orders: String,
        #[arg(long, value_delimiter = ',', default_value = "MIDDLE_BOL")]
        classes: Vec<String>,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

/// Usage or input problems; exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

pub fn parse_orders(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid order list `{s}`");
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn table(path: &Path) -> Result<crate::LoopTable, InputError> {
    io::read_table(path).map_err(|e: IoError| InputError(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), InputError> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(value)? + "\n")?;
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name), writing normal output
/// to `out` and diagnostics to standard error. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Check(a) => check(a, &cli.json, out),
        Command::Classify { table: t } => {
            let l = table(t)?;
            let c = properties::classify(&l);
            for (name, v) in &c.values {
                writeln!(out, "{name}: {v}")?;
            }
            for (p, q) in &c.violations {
                writeln!(out, "implication violated: {p} => {q}")?;
            }
            write_json(&cli.json, &c.values)?;
            Ok(if c.violations.is_empty() { 0 } else { 1 })
        }
        Command::Search(a) => {
            let spec = SearchSpec {
                order: a.order,
                require: a.require.clone(),
                forbid: a.forbid.clone(),
                dedup: a.dedup,
                limit: a.limit,
                budget: a.budget,
            };
            let r = search::enumerate(&spec)?;
            writeln!(out, "found {} loops, {} nodes, complete: {}", r.loops.len(), r.nodes_explored, r.complete)?;
            for l in &r.loops {
                writeln!(out, "{}", io::to_json(l))?;
            }
            #[derive(Serialize)]
            struct Report<'a> {
                spec: &'a SearchSpec,
                complete: bool,
                nodes_explored: u64,
                loops: Vec<Vec<Vec<usize>>>,
            }
            let loops = r.loops.iter().map(|l| l.rows()).collect();
            write_json(&cli.json, &Report { spec: &spec, complete: r.complete, nodes_explored: r.nodes_explored, loops })?;
            Ok(0)
        }
        Command::Construct { from, table: t } => {
            let l = table(t)?;
            let built = match from {
                Source::RightBol => construct::middle_from_right_bol(&l),
                Source::LeftBol => construct::middle_from_left_bol(&l),
            };
            match built {
                Ok(m) => {
                    writeln!(out, "{}", io::to_json(&m))?;
                    Ok(0)
                }
                Err(e @ (ConstructError::NotRightBol | ConstructError::NotLeftBol)) => Err(InputError(e.to_string())),
                Err(e) => {
                    writeln!(out, "construction failed: {e}")?;
                    Ok(1)
                }
            }
        }
        Command::Isotope { table: t, a, b } => {
            let l = table(t)?;
            let iso = construct::principal_isotope(&l, *a, *b)?;
            writeln!(out, "{}", io::to_json(&iso))?;
            Ok(0)
        }
        Command::Iso { table: t, table2 } => {
            let (l1, l2) = (table(t)?, table(table2)?);
            let found = construct::are_isomorphic(&l1, &l2);
            match &found {
                Some(p) => writeln!(out, "isomorphic: {p:?}")?,
                None => writeln!(out, "not isomorphic")?,
            }
            write_json(&cli.json, &serde_json::json!({ "isomorphic": found.is_some(), "map": found }))?;
            Ok(if found.is_some() { 0 } else { 1 })
        }
        Command::VerifyLemmas { corpus } => {
            let c = search::load_corpus(corpus)?;
            let r = lemmas::verify_lemmas(&c);
            for (lemma, (pass, fail)) in &r.matrix {
                writeln!(out, "{lemma:8} pass {pass:6}  fail {fail:4}")?;
            }
            let s = &r.summary;
            writeln!(
                out,
                "loops {}  pass {}  fail {}  skipped {}  known errata {}  rejected readings {}",
                s.loops, s.pass, s.fail, s.skipped, s.known_errata, s.rejected_readings
            )?;
            for (id, why) in &s.invalid {
                writeln!(out, "invalid entry {id}: {why}")?;
            }
            for id in &s.not_middle_bol {
                writeln!(out, "not middle Bol, skipped: {id}")?;
            }
            for row in r.rows.iter().filter(|r| r.outcome == lemmas::Outcome::Fail) {
                writeln!(out, "FAIL {} {}:{} {} [{}]", row.loop_id, row.lemma_id, row.item, row.statement, row.witness.as_deref().unwrap_or("-"))?;
            }
            if !s.uncovered.is_empty() {
                writeln!(out, "uncovered: {}", s.uncovered.join(", "))?;
            }
            write_json(&cli.json, &r)?;
            Ok(if r.all_passed() { 0 } else { 1 })
        }
        Command::Corpus { action: CorpusAction::Build { orders, classes, out: dir } } => {
            let orders = parse_orders(orders)?;
            let classes: Vec<&str> = classes.iter().map(String::as_str).collect();
            let ms = search::build_corpus(dir, &orders, &classes)?;
            for m in &ms {
                writeln!(out, "{}/n{}: {} loops, complete: {} ({})", m.class, m.order, m.count, m.complete, m.method)?;
            }
            write_json(&cli.json, &ms)?;
            Ok(0)
        }
        Command::DumpCatalog => {
            write!(out, "{}", Catalog::builtin())?;
            Ok(0)
        }
    }
}

fn check(a: &CheckArgs, json: &Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    let l = table(&a.table)?;
    let report = match (&a.target.prop, &a.target.identity) {
        (Some(p), _) => properties::check(&l, p)?,
        (_, Some(src)) => check_identity(&Identity::parse(src)?, &l),
        _ => unreachable!("clap enforces exactly one target"),
    };
    match (&report.skipped, &report.counterexample) {
        (Some(code), _) => writeln!(out, "skipped: {code}")?,
        (None, Some(cx)) => writeln!(out, "fails: {cx}")?,
        (None, None) => writeln!(out, "holds")?,
    }
    write_json(json, &report)?;
    Ok(if report.holds || report.skipped.is_some() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("loopkit").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn orders() {
        assert_eq!(parse_orders("2..5"), Ok(vec![2, 3, 4, 5]));
        assert_eq!(parse_orders("2,4"), Ok(vec![2, 4]));
        assert!(parse_orders("5..2").is_err());
    }

    #[test]
    fn check_and_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let z4 = dir.path().join("z4.json");
        io::write_json(&z4, &crate::LoopTable::cyclic(4)).unwrap();
        let z4 = z4.to_str().unwrap();
        assert_eq!(run_str(&["check", "--table", z4, "--prop", "MIDDLE_BOL"]), (0, "holds\n".into()));
        assert_eq!(run_str(&["check", "--table", z4, "--identity", "x(yz\\x) = (x/z)(y\\x)"]).0, 0);
        let (code, text) = run_str(&["check", "--table", z4, "--identity", "xy = x"]);
        assert_eq!(code, 1);
        assert!(text.starts_with("fails: "));
        assert_eq!(run_str(&["check", "--table", z4, "--prop", "NOPE"]).0, 2);
        assert_eq!(run_str(&["check", "--table", "/nonexistent.json", "--prop", "FLEXIBLE"]).0, 2);
        assert_eq!(run_str(&["check", "--table", z4]).0, 2);
        assert_eq!(run_str(&["dump-catalog"]).0, 0);
    }
}
