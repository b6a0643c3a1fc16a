//! `weil`: construct, verify, sweep and summarize q-polynomials.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use weil_core::engine::{
    classify, validate_tuple, AbsSimple, ClassificationReport, ClassifyConfig, ClassifyInput, Limits, MPolicy,
    ParamTuple, QRange, RPolicy, SearchRange,
};
use weil_core::intpoly::IntPoly;
use weil_core::numtheory::is_prime_u64;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INVALID_TUPLE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "weil", version, about = "Construct and verify characteristic polynomials of abelian varieties over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build f from a parameter tuple and classify it.
    Construct(ConstructArgs),
    /// Classify an arbitrary polynomial.
    Verify(VerifyArgs),
    /// Classify every valid tuple in a range.
    Search(SearchArgs),
    /// Summarize a JSONL file written by `search`.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Working precision of the numeric root oracle, in bits.
    #[arg(long, env = "WEIL_PRECISION_BITS")]
    precision_bits: Option<usize>,
    /// Largest power tried when testing absolute simplicity (default 2g^2).
    #[arg(long)]
    d_bound: Option<u64>,
    /// Largest allowed 2g.
    #[arg(long, default_value_t = 256)]
    max_two_g: u64,
    /// Largest allowed q.
    #[arg(long, default_value_t = 1u64 << 32)]
    max_q: u64,
}

impl CommonArgs {
    fn config(&self, timings: bool) -> ClassifyConfig {
        ClassifyConfig {
            d_bound: self.d_bound,
            precision_bits: self.precision_bits,
            timings,
            limits: Limits {
                max_two_g: self.max_two_g,
                max_q: BigUint::from(self.max_q),
                ..Limits::default()
            },
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ShowFormat {
    Pretty,
    Jsonl,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    rho: u64,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: BigUint,
    #[arg(long, value_enum, default_value_t = ShowFormat::Pretty)]
    format: ShowFormat,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated coefficients, constant term first.
    #[arg(long)]
    poly: String,
    #[arg(long)]
    q: BigUint,
    #[arg(long, value_enum, default_value_t = ShowFormat::Pretty)]
    format: ShowFormat,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Jsonl,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MChoice {
    /// m in {0, 1, m_max}
    ZeroOneMax,
    /// every m in 0..=m_max
    All,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    rho: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<u32>,
    /// Candidate r values; defaults to the least prime primitive root mod rho^2.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<u64>>,
    /// Every prime power 4 <= q <= this value.
    #[arg(long, conflicts_with = "q")]
    q_max: Option<u64>,
    /// Explicit q values.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = MChoice::ZeroOneMax)]
    m_policy: MChoice,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Jsonl)]
    format: OutFormat,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Leave timings out so that repeated runs give identical files.
    #[arg(long)]
    no_timings: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Search(a) => cmd_search(&a),
        Command::Report(a) => cmd_report(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn print_report(report: &ClassificationReport, format: ShowFormat) -> Result<()> {
    let text = match format {
        ShowFormat::Pretty => serde_json::to_string_pretty(report)?,
        ShowFormat::Jsonl => serde_json::to_string(report)?,
    };
    println!("{text}");
    Ok(())
}

fn cmd_construct(a: &ConstructArgs) -> Result<u8> {
    for (name, v) in [("rho", a.rho), ("r", a.r), ("p", a.p)] {
        if !is_prime_u64(v) {
            anyhow::bail!("--{name} {v} is not prime");
        }
    }
    let t = ParamTuple::new(a.rho, a.b, a.r, a.p, a.n, a.m.clone());
    let config = a.common.config(false);
    let checks = validate_tuple(&t, &config.limits);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    if !failed.is_empty() {
        println!("invalid tuple {t}");
        for c in failed {
            println!("  {} fails ({})", c.condition, c.detail);
        }
        return Ok(EXIT_INVALID_TUPLE);
    }
    let report = classify(&ClassifyInput::Tuple(t), &config);
    println!("{}", report.poly);
    print_report(&report, a.format)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8> {
    let poly: IntPoly = a.poly.parse().with_context(|| format!("cannot parse polynomial {:?}", a.poly))?;
    if poly.is_zero() {
        anyhow::bail!("polynomial is zero");
    }
    let report = classify(
        &ClassifyInput::Poly {
            poly,
            q: a.q.clone(),
        },
        &a.common.config(false),
    );
    print_report(&report, a.format)?;
    Ok(if report.is_q_polynomial { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_search(a: &SearchArgs) -> Result<u8> {
    let range = SearchRange {
        rhos: a.rho.clone(),
        bs: a.b.clone(),
        r: match &a.r {
            Some(v) => RPolicy::Explicit(v.clone()),
            None => RPolicy::LeastPrimitiveRoot,
        },
        q: match (&a.q, a.q_max) {
            (Some(v), _) => QRange::Explicit(v.clone()),
            (None, Some(max)) => QRange::UpTo(max),
            (None, None) => anyhow::bail!("one of --q-max or --q is required"),
        },
        m: match a.m_policy {
            MChoice::ZeroOneMax => MPolicy::ZeroOneMax,
            MChoice::All => MPolicy::All,
        },
    };
    let file = File::create(&a.out).with_context(|| format!("cannot write {}", a.out.display()))?;
    let config = a.common.config(!a.no_timings);
    let outcome = weil_core::engine::search(&range, &config, a.workers)?;
    let mut sink = BufWriter::new(file);
    match a.format {
        OutFormat::Jsonl => {
            for r in &outcome.reports {
                serde_json::to_writer(&mut sink, r)?;
                sink.write_all(b"\n")?;
            }
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(ClassificationReport::COLUMNS)?;
            for r in &outcome.reports {
                w.write_record(r.flat_fields())?;
            }
            w.flush()?;
        }
    }
    sink.flush().with_context(|| format!("cannot write {}", a.out.display()))?;
    println!("{}", summary(&outcome.reports, outcome.invalid));
    Ok(EXIT_OK)
}

fn summary(reports: &[ClassificationReport], invalid: usize) -> String {
    let count = |f: &dyn Fn(&ClassificationReport) -> bool| reports.iter().filter(|r| f(r)).count();
    format!(
        "{} tuples ({} invalid candidates skipped): q-polynomial {}, ordinary {}, simple {}; \
         absolutely simple: certified_yes {}, certified_no {}, inconclusive {}, not_applicable {}",
        reports.len(),
        invalid,
        count(&|r| r.is_q_polynomial),
        count(&|r| r.ordinary == Some(true)),
        count(&|r| r.simple == Some(true)),
        count(&|r| r.absolutely_simple == AbsSimple::CertifiedYes),
        count(&|r| r.absolutely_simple == AbsSimple::CertifiedNo),
        count(&|r| r.absolutely_simple == AbsSimple::Inconclusive),
        count(&|r| r.absolutely_simple == AbsSimple::NotApplicable),
    )
}

#[derive(Default)]
struct Group {
    tuples: usize,
    q_polynomials: usize,
    outcomes: BTreeMap<String, usize>,
    max_deviation: Option<f64>,
}

fn abs_label(r: &ClassificationReport) -> String {
    match (r.absolutely_simple, r.witness_d) {
        (AbsSimple::CertifiedYes, _) => "yes".into(),
        (AbsSimple::CertifiedNo, Some(d)) => format!("no (d = {d})"),
        (AbsSimple::CertifiedNo, None) => "no".into(),
        (AbsSimple::Inconclusive, _) => match r.d_bound {
            Some(b) => format!("inconclusive (d <= {b})"),
            None => "inconclusive".into(),
        },
        (AbsSimple::NotApplicable, _) => "n/a".into(),
    }
}

fn cmd_report(a: &ReportArgs) -> Result<u8> {
    let file = File::open(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let mut groups: BTreeMap<(Option<u64>, Option<u32>), Group> = BTreeMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: ClassificationReport =
            serde_json::from_str(&line).with_context(|| format!("line {}: not a report", i + 1))?;
        let key = (r.tuple.as_ref().map(|t| t.rho), r.tuple.as_ref().map(|t| t.b));
        let g = groups.entry(key).or_default();
        g.tuples += 1;
        g.q_polynomials += usize::from(r.is_q_polynomial);
        *g.outcomes.entry(abs_label(&r)).or_default() += 1;
        if let Some(d) = r.max_modulus_deviation {
            g.max_deviation = Some(g.max_deviation.map_or(d, |m: f64| m.max(d)));
        }
    }
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:>5} {:>3} {:>7} {:>7}  {:<28} {:>14}",
        "rho", "b", "tuples", "q-poly", "absolutely simple", "max deviation"
    )?;
    let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    for ((rho, b), g) in &groups {
        let abs = if g.outcomes.len() == 1 {
            g.outcomes.keys().next().unwrap().clone()
        } else {
            g.outcomes
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(
            out,
            "{:>5} {:>3} {:>7} {:>7}  {:<28} {:>14}",
            dash(rho.map(|v| v.to_string())),
            dash(b.map(|v| v.to_string())),
            g.tuples,
            g.q_polynomials,
            abs,
            dash(g.max_deviation.map(|d| format!("{d:.3e}"))),
        )?;
    }
    Ok(EXIT_OK)
}
