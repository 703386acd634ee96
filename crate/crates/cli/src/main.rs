//! `quartic`: verification runs, content tables and single-object queries.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad arguments.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use quartic_core::arith::is_prime;
use quartic_core::closedforms::{coeff_cnr, coeff_cnr_factored, test_monomial};
use quartic_core::covariant::Covariant;
use quartic_core::padic::{
    content_report, witness_for_prime, witnesses, ContentReport, WitnessResult,
};
use quartic_core::polyring::IntPoly;
use quartic_core::verify::{verify_n, NReport};
use quartic_core::Error;

const CSV_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Parser)]
#[command(
    name = "quartic",
    version,
    about = "Content of the quartic invariant of odd-degree binary forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. Defaults to text for `verify` and `poly`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for 1 <= n <= n-max.
    Verify {
        #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// S(n), its factorization and squarefree kernel.
    Content {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Witness specializations, for one prime or for every prime <= 2n+1.
    Witness {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Coefficient of the test monomial in Delta_n.
    Coeff {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// One of A, B, C, Delta in canonical text form.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum)]
        which: Which,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "Delta")]
    Delta,
}

/// Rendered output and whether every check in it passed.
struct Rendered {
    body: String,
    pass: bool,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { n_max } => {
            cmd_verify(*n_max as usize, cli.format.unwrap_or(Format::Text))
        }
        Command::Content { n } => cmd_content(*n as usize, cli.format.unwrap_or(Format::Json)),
        Command::Witness { n, prime } => {
            cmd_witness(*n as usize, *prime, cli.format.unwrap_or(Format::Json))
        }
        Command::Coeff { n, r } => {
            cmd_coeff(*n as usize, *r as usize, cli.format.unwrap_or(Format::Json))
        }
        Command::Poly { n, which } => {
            cmd_poly(*n as usize, *which, cli.format.unwrap_or(Format::Text))
        }
    };
    match result {
        Ok(out) => {
            if let Err(e) = emit(cli.output.as_deref(), &out.body) {
                eprintln!("quartic: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("quartic: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("quartic: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: Option<&std::path::Path>, body: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

// Small counts are numbers; anything that may outgrow 64 bits is a string.
fn small_or_string(x: &num_bigint::BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn content_json(r: &ContentReport) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(r.n));
    obj.insert("S".into(), json!(r.content.to_string()));
    obj.insert("sqf".into(), small_or_string(&r.sqf));
    obj.insert("predicted_sqf".into(), json!(r.predicted_sqf));
    obj.insert("theorem_holds".into(), json!(r.theorem_holds));
    let factors: Map<String, Value> = r
        .factors
        .iter()
        .map(|(p, v)| (p.to_string(), json!(v)))
        .collect();
    obj.insert("factors".into(), Value::Object(factors));
    for (p, v) in &r.factors {
        obj.insert(format!("v_{p}"), json!(v));
    }
    let parity: Vec<Value> = r
        .parity
        .iter()
        .map(|x| {
            json!({
                "p": x.p,
                "valuation": x.valuation,
                "odd": x.odd,
                "predicted_odd": x.predicted_odd,
                "pass": x.pass,
            })
        })
        .collect();
    obj.insert("parity".into(), Value::Array(parity));
    Value::Object(obj)
}

fn csv_row(r: &ContentReport, pass: bool) -> Vec<String> {
    let mut row = vec![
        r.n.to_string(),
        r.content.to_string(),
        r.sqf.to_string(),
        r.predicted_sqf.to_string(),
        pass.to_string(),
    ];
    row.extend(CSV_PRIMES.iter().map(|&p| r.valuation(p).to_string()));
    row
}

fn csv_table(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n", "S", "sqf", "predicted", "pass"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    header.extend(CSV_PRIMES.iter().map(|p| format!("v_{p}")));
    w.write_record(&header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn text_table(rows: &[(&ContentReport, bool)]) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{:>3}  {:>5}  {:>9}  {:<4}",
        "n", "sqf", "predicted", "pass"
    );
    for p in CSV_PRIMES {
        let _ = write!(out, "  {:>4}", format!("v_{p}"));
    }
    let _ = writeln!(out, "  S");
    for (r, pass) in rows {
        let _ = write!(
            out,
            "{:>3}  {:>5}  {:>9}  {:<4}",
            r.n,
            r.sqf,
            r.predicted_sqf,
            if *pass { "ok" } else { "FAIL" }
        );
        for p in CSV_PRIMES {
            let _ = write!(out, "  {:>4}", r.valuation(p));
        }
        let _ = writeln!(out, "  {}", r.content);
    }
    out
}

fn run_all(n_max: usize) -> Vec<(usize, Result<NReport, Error>)> {
    thread::scope(|s| {
        let handles: Vec<_> = (1..=n_max)
            .map(|n| (n, s.spawn(move || verify_n(n))))
            .collect();
        handles
            .into_iter()
            .map(|(n, h)| (n, h.join().expect("verification thread panicked")))
            .collect()
    })
}

fn cmd_verify(n_max: usize, format: Format) -> Result<Rendered, Failure> {
    let results = run_all(n_max);
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (n, r) in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => errors.push((n, e.to_string())),
        }
    }
    let pass = errors.is_empty() && reports.iter().all(NReport::pass);
    let body = match format {
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                        .collect();
                    json!({"n": r.n, "pass": r.pass(), "content": content_json(&r.content), "checks": checks})
                })
                .collect();
            let errs: Vec<Value> = errors
                .iter()
                .map(|(n, e)| json!({"n": n, "error": e}))
                .collect();
            pretty(&json!({"n_max": n_max, "pass": pass, "results": rows, "errors": errs}))
        }
        Format::Csv => csv_table(reports.iter().map(|r| csv_row(&r.content, r.pass()))),
        Format::Text => {
            let rows: Vec<(&ContentReport, bool)> =
                reports.iter().map(|r| (&r.content, r.pass())).collect();
            let mut out = text_table(&rows);
            for r in &reports {
                for c in r.failures() {
                    let _ = writeln!(out, "FAIL n={} {}: {}", r.n, c.name, c.detail);
                }
            }
            for (n, e) in &errors {
                let _ = writeln!(out, "FAIL n={n}: {e}");
            }
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize =
                reports.iter().map(|r| r.failures().count()).sum::<usize>() + errors.len();
            let _ = writeln!(out, "{} checks, {} failed", total, failed);
            out
        }
    };
    Ok(Rendered { body, pass })
}

fn cmd_content(n: usize, format: Format) -> Result<Rendered, Failure> {
    let r = content_report(&Covariant::new(n)?)?;
    let body = match format {
        Format::Json => pretty(&content_json(&r)),
        Format::Csv => csv_table([csv_row(&r, r.theorem_holds)]),
        Format::Text => text_table(&[(&r, r.theorem_holds)]),
    };
    Ok(Rendered {
        body,
        pass: r.theorem_holds,
    })
}

fn witness_json(w: &WitnessResult) -> Value {
    let spec: Map<String, Value> = w
        .specialization
        .iter()
        .map(|(i, v)| (format!("f_{i}"), json!(v.to_string())))
        .collect();
    json!({
        "kind": w.kind.label(),
        "n": w.n,
        "prime": w.p,
        "k": w.k,
        "specialization": spec,
        "delta": w.delta.to_string(),
        "v_p": w.valuation,
        "expected_v_p": w.expected,
        "pass": w.pass,
    })
}

fn cmd_witness(n: usize, prime: Option<u64>, format: Format) -> Result<Rendered, Failure> {
    let cov = Covariant::new(n)?;
    let list = match prime {
        Some(p) if !is_prime(p) => return Err(Failure::Usage(format!("{p} is not prime"))),
        Some(p) => vec![witness_for_prime(&cov, p)?],
        None => witnesses(&cov)?,
    };
    let pass = list.iter().all(|w| w.pass);
    let body = match format {
        Format::Json => pretty(&Value::Array(list.iter().map(witness_json).collect())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "n",
                "prime",
                "kind",
                "k",
                "delta",
                "v_p",
                "expected_v_p",
                "pass",
            ])
            .expect("in-memory csv");
            for x in &list {
                w.write_record([
                    x.n.to_string(),
                    x.p.to_string(),
                    x.kind.label().to_string(),
                    x.k.map_or(String::new(), |k| k.to_string()),
                    x.delta.to_string(),
                    x.valuation.map_or(String::new(), |v| v.to_string()),
                    x.expected.to_string(),
                    x.pass.to_string(),
                ])
                .expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for x in &list {
                let spec: Vec<String> = x
                    .specialization
                    .iter()
                    .map(|(i, v)| format!("f_{i}={v}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "p={} {} [{}] v_p={} expected={} {}",
                    x.p,
                    x.kind.label(),
                    spec.join(" "),
                    x.valuation.map_or("inf".to_string(), |v| v.to_string()),
                    x.expected,
                    if x.pass { "ok" } else { "FAIL" }
                );
            }
            out
        }
    };
    Ok(Rendered { body, pass })
}

fn cmd_coeff(n: usize, r: usize, format: Format) -> Result<Rendered, Failure> {
    let value = coeff_cnr(n, r)?;
    let factored = coeff_cnr_factored(n, r)?;
    let monomial = test_monomial(n, r)?;
    let extracted = Covariant::new(n)?.delta.coefficient_of(&monomial);
    let matches = extracted == value && factored == value;
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "r": r,
            "monomial": monomial.to_string(),
            "value": value.to_string(),
            "extracted": extracted.to_string(),
            "matches_extraction": matches,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "n",
                "r",
                "monomial",
                "value",
                "extracted",
                "matches_extraction",
            ])
            .expect("in-memory csv");
            w.write_record([
                n.to_string(),
                r.to_string(),
                monomial.to_string(),
                value.to_string(),
                extracted.to_string(),
                matches.to_string(),
            ])
            .expect("in-memory csv");
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
        }
        Format::Text => format!("{value} * {monomial}\nmatches_extraction: {matches}\n"),
    };
    Ok(Rendered {
        body,
        pass: matches,
    })
}

fn cmd_poly(n: usize, which: Which, format: Format) -> Result<Rendered, Failure> {
    let cov = Covariant::new(n)?;
    let (name, poly): (&str, &IntPoly) = match which {
        Which::A => ("A", &cov.q.a),
        Which::B => ("B", &cov.q.b),
        Which::C => ("C", &cov.q.c),
        Which::Delta => ("Delta", &cov.delta),
    };
    let body = match format {
        Format::Text => poly.to_string(),
        Format::Json => {
            let terms: Vec<Value> = poly
                .terms()
                .map(|(m, c)| json!({"monomial": m.to_string(), "coefficient": c.to_string()}))
                .collect();
            let content = poly
                .content()
                .map(|c| c.to_string())
                .unwrap_or_else(|_| "0".into());
            pretty(&json!({"n": n, "which": name, "content": content, "terms": terms}))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["monomial", "coefficient"])
                .expect("in-memory csv");
            for (m, c) in poly.terms() {
                w.write_record([m.to_string(), c.to_string()])
                    .expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
        }
    };
    Ok(Rendered { body, pass: true })
}
