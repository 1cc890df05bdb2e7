//! Command-line front end. [`execute`] parses arguments, runs one
//! subcommand and returns the exit code with everything that would be
//! written to stdout and stderr.
//!
//! Exit codes: 0 success, 1 failed check or internal violation, 2 usage or
//! input error, 3 refused by the memory cap.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::amidakuji::{synthesize, Ladder};
use crate::cayley::{bfs_diameter, distance_with, BfsOptions, DistanceOptions, DEFAULT_MEMORY_CAP};
use crate::error::Error;
use crate::extremal::{audit_classification, delta_bounds, delta_closed_form, enumerate_extremal, is_extremal, DeltaBounds};
use crate::factorize::{
    adjacent_sort, auto_factor, bfs_factor, factor_by_cycle_classes, recursive_factor, unrestricted_factor, verify,
    Factorization,
};
use crate::perm::Permutation;
use crate::rank::CODEC_VERSION;

pub const SCHEMA: &str = "permband/1";

#[derive(Debug, Parser)]
#[command(name = "permband", version, about = "Bounded-width transposition factorizations and Cayley graph diameters")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Memory budget for full searches, e.g. 512MiB or 4G.
    #[arg(long, env = "PERMBAND_MEMCAP", value_parser = parse_bytes, global = true)]
    memory_cap: Option<u64>,

    /// Worker threads for full searches; 0 picks automatically.
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact distance from the identity.
    Dist(PermArgs),
    /// Factor into transpositions of width at most m.
    Factor {
        #[command(flatten)]
        perm: PermArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Also run BFS and report whether the length is optimal.
        #[arg(long)]
        prove_optimal: bool,
    },
    /// Exact diameter by BFS.
    Diameter {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value_t = Farthest::Count)]
        farthest: Farthest,
        /// List at most this many farthest permutations.
        #[arg(long)]
        farthest_limit: Option<usize>,
    },
    /// Number of permutations at each distance.
    Histogram(SizeArgs),
    /// Grid of diameters: closed forms, BFS, and upper bounds marked `?`.
    Table {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Largest degree searched by BFS; larger cells show bounds.
        #[arg(long, default_value_t = 10)]
        bfs_max: usize,
    },
    /// Lower and upper bounds on the diameter.
    Bounds {
        #[arg(long)]
        n: usize,
        /// All widths when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Permutations attaining the diameter.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Amidakuji ladders.
    #[command(subcommand)]
    Amida(AmidaCmd),
}

#[derive(Debug, Args)]
struct PermArgs {
    /// One-line ("3 2 4 5 1") or cycle ("(1 7)(2 3 4 5 6)") notation.
    #[arg(long)]
    perm: String,
    #[arg(long)]
    m: usize,
    /// Degree for cycle notation; defaults to the largest entry.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct SizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Adjacent,
    Unrestricted,
    CycleClasses,
    Recursive,
    Bfs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Farthest {
    None,
    Count,
    List,
}

#[derive(Debug, Subcommand)]
enum ExtremalCmd {
    /// Enumerate the farthest permutations from their shapes.
    Gen(SizeArgs),
    /// Classify one permutation, or audit all shapes against BFS.
    Check {
        #[arg(long, conflicts_with = "n")]
        perm: Option<String>,
        #[arg(long, required_unless_present = "perm")]
        n: Option<usize>,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Subcommand)]
enum AmidaCmd {
    /// Trace a ladder file ("-" for stdin).
    Apply {
        file: String,
        #[arg(long, default_value_t = 3)]
        gap: usize,
    },
    /// Build a ladder with the fewest rungs.
    Solve {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        gap: usize,
    },
    /// Validate a ladder file.
    Check { file: String },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub codec_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub ok: bool,
    pub elapsed_ms: u64,
}

struct Payload {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
    csv: Option<Vec<Vec<String>>>,
    /// False for failed checks, which exit with code 1.
    ok: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MemoryCap { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

/// Accepts plain byte counts and K/M/G/T suffixes, decimal (`KB`) or
/// binary (`K`, `KiB`).
pub fn parse_bytes(text: &str) -> Result<u64, String> {
    let t = text.trim();
    let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    let (digits, unit) = t.split_at(split);
    let value: u64 = digits.parse().map_err(|_| format!("bad byte count `{text}`"))?;
    let scale: u64 = match unit.trim().to_ascii_lowercase().as_str() {
        "" | "b" => 1,
        "k" | "kib" => 1 << 10,
        "m" | "mib" => 1 << 20,
        "g" | "gib" => 1 << 30,
        "t" | "tib" => 1 << 40,
        "kb" => 1_000,
        "mb" => 1_000_000,
        "gb" => 1_000_000_000,
        "tb" => 1_000_000_000_000,
        other => return Err(format!("unknown unit `{other}`")),
    };
    value.checked_mul(scale).ok_or_else(|| format!("byte count `{text}` overflows"))
}

pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let format = cli.format;
    match run(&cli) {
        Ok(payload) => {
            let code = if payload.ok { 0 } else { 1 };
            match render(payload, format, start) {
                Ok(stdout) => Outcome {
                    code,
                    stdout,
                    stderr: String::new(),
                },
                Err(f) => Outcome {
                    code: f.code,
                    stdout: String::new(),
                    stderr: format!("error: {}\n", f.message),
                },
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

/// Runs with the process arguments, prints, and returns the exit code.
pub fn main_with_env() -> i32 {
    let outcome = execute(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}

fn render(payload: Payload, format: Format, start: Instant) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(payload.text),
        Format::Json => {
            let doc = OutputDocument {
                schema: SCHEMA,
                tool_version: env!("CARGO_PKG_VERSION"),
                codec_version: CODEC_VERSION,
                command: payload.command.to_string(),
                inputs: payload.inputs,
                result: payload.result,
                ok: payload.ok,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            let mut text = serde_json::to_string_pretty(&doc).map_err(|e| internal(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let rows = payload
                .csv
                .ok_or_else(|| usage(format!("`{}` has no CSV form", payload.command)))?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer.write_record(&row).map_err(|e| internal(e.to_string()))?;
            }
            let bytes = writer.into_inner().map_err(|e| internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| internal(e.to_string()))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| internal(e.to_string()))
}

fn run(cli: &Cli) -> Result<Payload, Failure> {
    let cap = cli.memory_cap.unwrap_or(DEFAULT_MEMORY_CAP);
    let bfs = BfsOptions {
        memory_cap: cap,
        threads: cli.threads,
        ..BfsOptions::default()
    };
    let dist_opts = DistanceOptions {
        memory_cap: cap,
        threads: cli.threads,
        ..DistanceOptions::default()
    };
    match &cli.command {
        Command::Dist(args) => dist(args, &dist_opts),
        Command::Factor {
            perm,
            method,
            prove_optimal,
        } => factor(perm, *method, *prove_optimal, &dist_opts),
        Command::Diameter {
            size,
            farthest,
            farthest_limit,
        } => diameter(size, *farthest, *farthest_limit, &bfs),
        Command::Histogram(size) => histogram(size, &bfs),
        Command::Table { n_max, bfs_max } => table(*n_max, *bfs_max, &bfs),
        Command::Bounds { n, m } => bounds(*n, *m),
        Command::Extremal(ExtremalCmd::Gen(size)) => extremal_gen(size),
        Command::Extremal(ExtremalCmd::Check { perm, n, m }) => match perm {
            Some(perm) => extremal_classify(perm, *m),
            None => extremal_audit(n.expect("clap requires n without perm"), *m, &bfs),
        },
        Command::Amida(AmidaCmd::Apply { file, gap }) => amida_apply(file, *gap),
        Command::Amida(AmidaCmd::Solve { perm, n, gap }) => amida_solve(perm, *n, *gap),
        Command::Amida(AmidaCmd::Check { file }) => amida_check(file),
    }
}

fn parse_perm(text: &str, n: Option<usize>) -> Result<Permutation, Failure> {
    let p = Permutation::parse(text, n)?;
    if let Some(n) = n {
        if p.n() != n {
            return Err(usage(format!("permutation has degree {}, but --n is {n}", p.n())));
        }
    }
    Ok(p)
}

fn line(p: &Permutation) -> String {
    p.to_string()
}

fn dist(args: &PermArgs, opts: &DistanceOptions) -> Result<Payload, Failure> {
    let p = parse_perm(&args.perm, args.n)?;
    let d = distance_with(&p, args.m, opts)?;
    Ok(Payload {
        command: "dist",
        inputs: json!({ "perm": p, "m": args.m }),
        result: json!({ "distance": d }),
        text: format!("{d}\n"),
        csv: Some(vec![
            vec!["perm".into(), "m".into(), "distance".into()],
            vec![line(&p), args.m.to_string(), d.to_string()],
        ]),
        ok: true,
    })
}

fn factor(args: &PermArgs, method: MethodArg, prove: bool, opts: &DistanceOptions) -> Result<Payload, Failure> {
    let p = parse_perm(&args.perm, args.n)?;
    let n = p.n();
    let m = args.m;
    if n > 1 {
        crate::cayley::check_width(n, m)?;
    }
    let f: Factorization = match method {
        MethodArg::Auto => auto_factor(&p, m)?,
        MethodArg::Adjacent => adjacent_sort(&p),
        MethodArg::Unrestricted => {
            if m + 1 < n {
                return Err(usage(format!("unrestricted factors need m = n - 1 = {}", n - 1)));
            }
            unrestricted_factor(&p)
        }
        MethodArg::CycleClasses => factor_by_cycle_classes(&p, m)?,
        MethodArg::Recursive => recursive_factor(&p, m)?,
        MethodArg::Bfs => bfs_factor(&p, m, opts)?,
    };
    let verdict = verify(&f);
    if let Err(v) = &verdict {
        return Err(internal(format!("factorization failed verification: {v}")));
    }
    let optimal = if prove {
        let d = distance_with(&p, m, opts)?;
        Some((d, f.len() == d))
    } else {
        None
    };

    let mut text = format!("{f}\n");
    if let Some(stats) = f.stats {
        writeln!(text, "cycles {} spread {} pairs {}", stats.r, stats.spread, stats.pairs).unwrap();
    }
    if let Some((d, is_opt)) = optimal {
        writeln!(text, "distance {d} ({})", if is_opt { "optimal" } else { "not optimal" }).unwrap();
    }
    let mut csv = vec![vec!["index".into(), "i".into(), "j".into()]];
    for (k, t) in f.factors.iter().enumerate() {
        csv.push(vec![k.to_string(), t.i().to_string(), t.j().to_string()]);
    }
    let mut result = to_value(&f)?;
    result["length"] = json!(f.len());
    result["verified"] = json!(true);
    if let Some((d, is_opt)) = optimal {
        result["distance"] = json!(d);
        result["optimal"] = json!(is_opt);
    }
    Ok(Payload {
        command: "factor",
        inputs: json!({ "perm": p, "m": m, "method": format!("{method:?}").to_lowercase(), "prove_optimal": prove }),
        result,
        text,
        csv: Some(csv),
        ok: true,
    })
}

fn level_rows(counts: &[u64]) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["level".to_string(), "count".to_string()]];
    rows.extend(counts.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]));
    rows
}

fn diameter(size: &SizeArgs, farthest: Farthest, limit: Option<usize>, opts: &BfsOptions) -> Result<Payload, Failure> {
    let opts = BfsOptions {
        collect_farthest: farthest == Farthest::List,
        farthest_limit: limit,
        ..opts.clone()
    };
    let report = bfs_diameter(size.n, size.m, &opts)?;
    let mut text = format!("delta({},{}) = {}\n", size.n, size.m, report.delta);
    if farthest != Farthest::None {
        writeln!(text, "farthest {}", report.farthest_count).unwrap();
    }
    if farthest == Farthest::List {
        match &report.farthest {
            Some(list) => list.iter().for_each(|p| writeln!(text, "{p}").unwrap()),
            None => writeln!(text, "(list elided)").unwrap(),
        }
    }
    Ok(Payload {
        command: "diameter",
        inputs: json!({ "n": size.n, "m": size.m, "farthest": format!("{farthest:?}").to_lowercase() }),
        result: to_value(&report)?,
        text,
        csv: Some(level_rows(&report.level_counts)),
        ok: true,
    })
}

fn histogram(size: &SizeArgs, opts: &BfsOptions) -> Result<Payload, Failure> {
    let counts = crate::cayley::distance_histogram(size.n, size.m, opts)?;
    let mut text = String::new();
    for (k, c) in counts.iter().enumerate() {
        writeln!(text, "{k:>4} {c}").unwrap();
    }
    Ok(Payload {
        command: "histogram",
        inputs: json!({ "n": size.n, "m": size.m }),
        result: json!({ "level_counts": counts }),
        text,
        csv: Some(level_rows(&counts)),
        ok: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CellSource {
    ClosedForm,
    Bfs,
    UpperBound,
}

#[derive(Debug, Clone, Serialize)]
struct Cell {
    n: usize,
    m: usize,
    delta: usize,
    source: CellSource,
}

impl Cell {
    fn label(&self) -> String {
        match self.source {
            CellSource::ClosedForm => self.delta.to_string(),
            CellSource::Bfs => format!("[{}]", self.delta),
            CellSource::UpperBound => format!("{}?", self.delta),
        }
    }
}

fn table(n_max: usize, bfs_max: usize, opts: &BfsOptions) -> Result<Payload, Failure> {
    if n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    let opts = BfsOptions {
        collect_farthest: false,
        ..opts.clone()
    };
    let mut cells = Vec::new();
    for n in 2..=n_max {
        for m in 1..n {
            let cell = if let Some(d) = delta_closed_form(n, m)? {
                Cell { n, m, delta: d, source: CellSource::ClosedForm }
            } else if n <= bfs_max {
                let d = bfs_diameter(n, m, &opts)?.delta;
                Cell { n, m, delta: d, source: CellSource::Bfs }
            } else {
                let b = delta_bounds(n, m)?;
                Cell { n, m, delta: b.upper, source: CellSource::UpperBound }
            };
            cells.push(cell);
        }
    }

    let width = cells.iter().map(|c| c.label().len()).max().unwrap_or(1).max(3) + 1;
    let mut text = format!("{:>4} |", "n\\m");
    for m in 1..n_max {
        write!(text, "{m:>width$}").unwrap();
    }
    text.push('\n');
    writeln!(text, "{}", "-".repeat(6 + width * (n_max - 1))).unwrap();
    for n in 2..=n_max {
        write!(text, "{n:>4} |").unwrap();
        for c in cells.iter().filter(|c| c.n == n) {
            write!(text, "{:>width$}", c.label()).unwrap();
        }
        text.push('\n');
    }

    let mut csv = vec![vec!["n".into(), "m".into(), "delta".into(), "source".into()]];
    for c in &cells {
        let source = serde_json::to_value(c.source).unwrap();
        csv.push(vec![
            c.n.to_string(),
            c.m.to_string(),
            c.delta.to_string(),
            source.as_str().unwrap().to_string(),
        ]);
    }
    Ok(Payload {
        command: "table",
        inputs: json!({ "n_max": n_max, "bfs_max": bfs_max }),
        result: json!({ "cells": cells }),
        text,
        csv: Some(csv),
        ok: true,
    })
}

fn bounds(n: usize, m: Option<usize>) -> Result<Payload, Failure> {
    let widths: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (1..n.max(2)).collect(),
    };
    let all: Vec<DeltaBounds> = widths.iter().map(|&m| delta_bounds(n, m)).collect::<Result<_, _>>()?;
    let mut text = String::new();
    let mut csv = vec![["n", "m", "lower", "upper", "exact", "lower_source", "upper_source"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    for b in &all {
        if b.exact {
            writeln!(text, "delta({},{}) = {} ({})", b.n, b.m, b.upper, b.upper_source).unwrap();
        } else {
            writeln!(
                text,
                "{} <= delta({},{}) <= {} ({} / {})",
                b.lower, b.n, b.m, b.upper, b.lower_source, b.upper_source
            )
            .unwrap();
        }
        csv.push(vec![
            b.n.to_string(),
            b.m.to_string(),
            b.lower.to_string(),
            b.upper.to_string(),
            b.exact.to_string(),
            b.lower_source.to_string(),
            b.upper_source.to_string(),
        ]);
    }
    Ok(Payload {
        command: "bounds",
        inputs: json!({ "n": n, "m": m }),
        result: json!({ "bounds": all }),
        text,
        csv: Some(csv),
        ok: true,
    })
}

fn extremal_gen(size: &SizeArgs) -> Result<Payload, Failure> {
    let list = enumerate_extremal(size.n, size.m)?;
    let delta = delta_closed_form(size.n, size.m)?;
    let text: String = list.iter().map(|p| format!("{p}\n")).collect();
    let mut csv = vec![vec!["permutation".to_string()]];
    csv.extend(list.iter().map(|p| vec![line(p)]));
    Ok(Payload {
        command: "extremal gen",
        inputs: json!({ "n": size.n, "m": size.m }),
        result: json!({ "delta": delta, "count": list.len(), "permutations": list }),
        text,
        csv: Some(csv),
        ok: true,
    })
}

fn extremal_classify(perm: &str, m: usize) -> Result<Payload, Failure> {
    let p = parse_perm(perm, None)?;
    let case = is_extremal(&p, m)?;
    let mut text = format!("{} d={}\n", case.shape, case.d);
    if let Some(w) = &case.witness {
        let pairs: String = w.pairs.iter().map(|(a, b)| format!("({a} {b})")).collect();
        writeln!(text, "pairs {pairs}").unwrap();
        if let Some(sp) = &w.special {
            writeln!(text, "special {sp:?}").unwrap();
        }
        writeln!(text, "middle {:?}", w.middle).unwrap();
    }
    Ok(Payload {
        command: "extremal check",
        inputs: json!({ "perm": p, "m": m }),
        result: to_value(&case)?,
        text,
        csv: None,
        ok: true,
    })
}

fn extremal_audit(n: usize, m: usize, opts: &BfsOptions) -> Result<Payload, Failure> {
    let audit = audit_classification(n, m, opts)?;
    let ok = audit.is_consistent();
    let mut text = format!(
        "delta({n},{m}) = {} (closed form {})\nfarthest {} enumerated {}\n",
        audit.delta,
        audit.expected_delta.map_or("none".to_string(), |d| d.to_string()),
        audit.farthest_count,
        audit.enumerated_count
    );
    for p in &audit.missing {
        writeln!(text, "missing {p}").unwrap();
    }
    for p in &audit.extra {
        writeln!(text, "extra {p}").unwrap();
    }
    for p in &audit.recognizer_mismatches {
        writeln!(text, "misclassified {p}").unwrap();
    }
    writeln!(text, "{}", if ok { "consistent" } else { "classification mismatch" }).unwrap();
    Ok(Payload {
        command: "extremal check",
        inputs: json!({ "n": n, "m": m }),
        result: to_value(&audit)?,
        text,
        csv: None,
        ok,
    })
}

fn read_ladder(file: &str) -> Result<Ladder, Failure> {
    let text = if file == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(Error::from)?
    } else {
        std::fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?
    };
    Ok(text.parse()?)
}

fn amida_apply(file: &str, gap: usize) -> Result<Payload, Failure> {
    let ladder = read_ladder(file)?;
    let sigma = ladder.apply()?;
    Ok(Payload {
        command: "amida apply",
        inputs: json!({ "ladder": ladder }),
        result: json!({ "permutation": sigma, "rungs": ladder.rung_count() }),
        text: format!("{}{sigma}\n", ladder.render(gap)),
        csv: None,
        ok: true,
    })
}

fn amida_solve(perm: &str, n: Option<usize>, gap: usize) -> Result<Payload, Failure> {
    let p = parse_perm(perm, n)?;
    let ladder = synthesize(&p);
    Ok(Payload {
        command: "amida solve",
        inputs: json!({ "perm": p }),
        result: json!({ "ladder": ladder, "rungs": ladder.rung_count(), "inversions": p.inversion_count() }),
        text: format!("{ladder}{}", ladder.render(gap)),
        csv: None,
        ok: true,
    })
}

fn amida_check(file: &str) -> Result<Payload, Failure> {
    let ladder = read_ladder(file)?;
    let verdict = ladder.validate();
    let text = match &verdict {
        Ok(()) => "ok\n".to_string(),
        Err(v) => format!("{v}\n"),
    };
    Ok(Payload {
        command: "amida check",
        inputs: json!({ "ladder": ladder }),
        result: json!({ "valid": verdict.is_ok(), "violation": verdict.err() }),
        text,
        csv: None,
        ok: ladder.validate().is_ok(),
    })
}
