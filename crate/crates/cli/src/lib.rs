//! Command-line front end for the `card-dealing` library.
//!
//! Four subcommands: `triangle`, `sequence`, `trick` and `check`. Exit status
//! is 0 on success or a passing trick/check, 1 when a trick fails or is
//! infeasible or a check fails, and 2 on a usage or input error.
//!
//! With `--format json` each command prints one record:
//!
//! | command    | fields                                          |
//! |------------|-------------------------------------------------|
//! | `sequence` | `family`, `pattern`, `offset`, `terms`          |
//! | `triangle` | `flavor`, `pattern`, `offset`, `rows`           |
//! | `trick`    | `trick`, `params`, `verdict`, `solved`, `trace` |
//! | `check`    | `suite`, `pattern`, `passed`, `failed`, `results` |
//!
//! `pattern` is always the canonical expression, so it parses back to the
//! same pattern.

use std::ffi::OsString;

use card_dealing::sequence::{self, Family, SequenceResult, SequenceSpec};
use card_dealing::tricks::{self, Insertion, TrickReport, Verdict};
use card_dealing::{lang, recursion, Error, Pattern};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod checks;

pub use checks::Suite;

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "card-dealing",
    version,
    about = "Dealing patterns: triangles, sequences, card tricks and invariant checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows 1..N of the dealing (T) or Josephus (J) triangle
    Triangle(TriangleArgs),
    /// Print terms of a sequence family
    Sequence(SequenceArgs),
    /// Simulate a card trick and report whether it works
    Trick(TrickArgs),
    /// Run a suite of invariant checks against the simulator
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Flavor {
    #[value(name = "T")]
    T,
    #[value(name = "J")]
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Bfile,
    Json,
}

fn pattern_arg(s: &str) -> Result<Pattern, String> {
    lang::parse(s).map_err(|e| e.to_string())
}

fn family_arg(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn insertion_arg(s: &str) -> Result<Insertion, String> {
    let (count, depth) = s
        .split_once('@')
        .ok_or_else(|| format!("expected COUNT@DEPTH, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Insertion {
        count: num(count)?,
        depth: num(depth)?,
    })
}

#[derive(Args)]
struct TriangleArgs {
    /// Pattern expression, e.g. UD, "U (UUD)*", SUD+5
    #[arg(long, value_parser = pattern_arg)]
    pattern: Pattern,
    #[arg(long, value_enum, ignore_case = true, default_value = "T")]
    flavor: Flavor,
    #[arg(long, default_value_t = 10)]
    rows: usize,
    /// Print only this row, e.g. a single prepared deck
    #[arg(long, conflicts_with = "rows")]
    row: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Index of the first entry in b-file output
    #[arg(long, default_value_t = 1)]
    offset: u64,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long, value_parser = pattern_arg)]
    pattern: Pattern,
    /// moves, T, J, freed, elim-first, first-freed or last-freed
    #[arg(long, value_parser = family_arg)]
    family: Family,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Largest deck size tried by first-freed and last-freed
    #[arg(long, default_value_t = sequence::DEFAULT_SEARCH_LIMIT)]
    limit: usize,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Index of the first term
    #[arg(long, default_value_t = 1)]
    offset: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TrickName {
    KnowFreed,
    SpellingBee,
    DoubleDealing,
    AceQuartet,
    LoveRitual,
    PowerOfB,
    Stripes,
    KthTime,
}

#[derive(Args)]
struct TrickArgs {
    #[arg(value_enum)]
    name: TrickName,
    /// Defaults to UD
    #[arg(long, value_parser = pattern_arg)]
    pattern: Option<Pattern>,
    #[arg(long, short = 'n')]
    deck_size: Option<usize>,
    /// Position the audience remembers (know-freed)
    #[arg(long)]
    index: Option<usize>,
    /// Pairs of matching cards (love-ritual) or cards per colour (stripes)
    #[arg(long)]
    half_deck: Option<usize>,
    /// Most cards the audience may discard (love-ritual)
    #[arg(long, default_value_t = 0)]
    max_discards: usize,
    /// Use this shift instead of solving for it (love-ritual)
    #[arg(long)]
    ell: Option<u64>,
    /// Number of piles (power-of-b)
    #[arg(long)]
    piles: Option<usize>,
    /// The deck has piles^power cards (power-of-b)
    #[arg(long)]
    power: Option<u32>,
    /// Comma-separated cut sizes
    #[arg(long, value_delimiter = ',')]
    cuts: Vec<usize>,
    /// Comma-separated cut sizes after the riffle (stripes)
    #[arg(long, value_delimiter = ',')]
    cuts_after: Vec<usize>,
    /// Comma-separated COUNT@DEPTH moves (double-dealing)
    #[arg(long, value_delimiter = ',', value_parser = insertion_arg)]
    insert: Vec<Insertion>,
    /// Position that must come out last (ace-quartet with --pattern)
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, default_value_t = tricks::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Defaults to UD
    #[arg(long, value_parser = pattern_arg)]
    pattern: Option<Pattern>,
    /// Largest deck size checked
    #[arg(long, default_value_t = 64)]
    rows: usize,
    /// Skip parameter for the skip-x suite
    #[arg(long, default_value_t = 3)]
    x: usize,
    /// Search bound for the special-sizes suite
    #[arg(long, default_value_t = 6561)]
    limit: usize,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Triangle(a) => triangle(a),
        Command::Sequence(a) => sequence_cmd(a),
        Command::Trick(a) => trick(a),
        Command::Check(a) => check(a),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn join(values: &[impl ToString]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn triangle(a: TriangleArgs) -> Result<Outcome, Error> {
    let last = a.row.unwrap_or(a.rows);
    if last == 0 {
        return Err(Error::InvalidArgument("rows are numbered from 1".into()));
    }
    let tri = match a.flavor {
        Flavor::T => recursion::triangle_t(&a.pattern, last)?,
        Flavor::J => recursion::triangle_j(&a.pattern, last)?,
    };
    let first = if a.row.is_some() { last } else { 1 };
    let rows: Vec<&[usize]> = (first..=last).map(|n| tri.row(n)).collect();
    let flavor = if a.flavor == Flavor::T { "T" } else { "J" };
    let out = match a.format {
        Format::Plain => rows.iter().map(|r| join(r) + "\n").collect(),
        Format::Bfile => {
            let terms = rows.concat().into_iter().map(|v| v as u64).collect();
            sequence::bfile_export(&SequenceResult {
                terms,
                offset: a.offset,
                complete: true,
            })
        }
        Format::Json => {
            let record = json!({
                "flavor": flavor,
                "pattern": lang::format(&a.pattern),
                "offset": a.offset,
                "rows": rows,
            });
            record.to_string() + "\n"
        }
    };
    Ok(Outcome::ok(out))
}

fn sequence_cmd(a: SequenceArgs) -> Result<Outcome, Error> {
    let mut spec = SequenceSpec::new(a.pattern.clone(), a.family, a.count);
    spec.search_limit = a.limit;
    let mut result = sequence::generate(&spec)?;
    result.offset = a.offset;
    let stdout = match a.format {
        Format::Plain => join(&result.terms) + "\n",
        Format::Bfile => sequence::bfile_export(&result),
        Format::Json => {
            let record = json!({
                "family": a.family.name(),
                "pattern": lang::format(&a.pattern),
                "offset": result.offset,
                "terms": result.terms,
            });
            record.to_string() + "\n"
        }
    };
    let stderr = if result.complete {
        String::new()
    } else {
        format!(
            "note: found {} of {} terms with deck sizes up to {}\n",
            result.terms.len(),
            a.count,
            a.limit
        )
    };
    Ok(Outcome {
        status: 0,
        stdout,
        stderr,
    })
}

fn need<T>(value: Option<T>, flag: &str, trick: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidArgument(format!("{trick} needs {flag}")))
}

fn trick(a: TrickArgs) -> Result<Outcome, Error> {
    let pattern = match a.pattern.clone() {
        Some(p) => p,
        None => Pattern::from_word("UD")?,
    };
    let name = a.name.to_possible_value().unwrap().get_name().to_string();
    let deck = || need(a.deck_size, "--deck-size", &name);
    let report: TrickReport = match a.name {
        TrickName::KnowFreed => tricks::know_freed(&pattern, deck()?, a.index.unwrap_or(1))?,
        TrickName::SpellingBee => tricks::spelling_bee_seeded(&pattern, deck()?, a.seed)?,
        TrickName::DoubleDealing => tricks::double_dealing(&pattern, deck()?, &a.insert)?,
        TrickName::AceQuartet => match a.pattern {
            Some(_) => {
                let target = need(a.target, "--target", &name)?;
                tricks::ace_quartet_direct(&pattern, deck()?, target)?
            }
            None => tricks::ace_quartet(a.deck_size.unwrap_or(52))?,
        },
        TrickName::LoveRitual => {
            let n = need(a.half_deck, "--half-deck", &name)?;
            match a.ell {
                Some(ell) => tricks::love_ritual_verify(&pattern, n, a.max_discards, ell)?,
                None => tricks::love_ritual(&pattern, n, a.max_discards)?,
            }
        }
        TrickName::PowerOfB => {
            let b = need(a.piles, "--piles", &name)?;
            let power = need(a.power, "--power", &name)?;
            tricks::power_of_b(&pattern, b, power, &a.cuts)?
        }
        TrickName::Stripes => {
            let n = need(a.half_deck, "--half-deck", &name)?;
            tricks::stripes(n, &a.cuts, &a.cuts_after, a.seed)?
        }
        TrickName::KthTime => tricks::kth_time_verify(&pattern, deck()?)?,
    };
    let stdout = match a.format {
        Format::Plain => format!("{report}\n"),
        Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        Format::Bfile => return Err(Error::InvalidArgument("tricks have no b-file form".into())),
    };
    let status = match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail | Verdict::Infeasible => 1,
    };
    Ok(Outcome {
        status,
        stdout,
        stderr: String::new(),
    })
}

fn check(a: CheckArgs) -> Result<Outcome, Error> {
    let pattern = match a.pattern {
        Some(p) => p,
        None => Pattern::from_word("UD")?,
    };
    let params = checks::Params {
        rows: a.rows,
        x: a.x,
        limit: a.limit,
    };
    let results = checks::run_suite(a.suite, &pattern, &params)?;
    let passed = results.iter().filter(|r| r.1).count();
    let failed = results.len() - passed;
    let suite = a.suite.to_possible_value().unwrap().get_name().to_string();
    let stdout = match a.format {
        Format::Plain => {
            let mut out: String = results
                .iter()
                .map(|(name, ok)| format!("{name}: {}\n", if *ok { "pass" } else { "fail" }))
                .collect();
            out += &format!("passed {passed}, failed {failed}\n");
            out
        }
        Format::Json => {
            let items: Vec<_> = results
                .iter()
                .map(|(name, ok)| json!({ "name": name, "passed": ok }))
                .collect();
            let record = json!({
                "suite": suite,
                "pattern": lang::format(&pattern),
                "passed": passed,
                "failed": failed,
                "results": items,
            });
            record.to_string() + "\n"
        }
        Format::Bfile => return Err(Error::InvalidArgument("checks have no b-file form".into())),
    };
    let status = if failed == 0 { 0 } else { 1 };
    Ok(Outcome {
        status,
        stdout,
        stderr: String::new(),
    })
}
