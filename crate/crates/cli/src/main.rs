use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use capelli_core::arith::DEFAULT_TRIAL_BOUND;
use capelli_core::capelli::{
    decide_rational_with_bound, decide_with_bound, factor_deep, factor_once, reduce_to_integer,
    witness_to_json, Certificate, CertificateDocument, Verdict, Witness,
};
use capelli_core::oracle::oracle_factor;
use capelli_core::polyring::cyclotomic;
use capelli_core::sweep::{run_sweep, SweepConfig, SweepError};
use capelli_core::{verify_certificate, BigInt, BigRational};
use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Reducibility of x^n - a over Q and Z, with verified factorization certificates.
#[derive(Parser)]
#[command(name = "capelli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether x^n - a is reducible.
    Decide(InstanceArgs),
    /// Factor x^n - a and emit a verified certificate.
    Factor {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Recursively split binomial factors.
        #[arg(long)]
        deep: bool,
        /// Use the numerical oracle to factor completely.
        #[arg(long)]
        oracle: bool,
        /// Write the certificate document to FILE.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print the n-th cyclotomic polynomial.
    Cyclotomic {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Compare the decision procedure with the oracle over a grid and run the lemma checks.
    Sweep(SweepArgs),
    /// Check a certificate document.
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Factor x^n - a completely with the numerical oracle (n <= 24).
    OracleFactor {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Degree n >= 2.
    n: u32,
    /// Rational constant: 7, -4, 3/8, or a=-4.
    #[arg(allow_hyphen_values = true)]
    a: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Trial-division bound for factoring constants.
    #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
    trial_bound: u64,
    /// Accept a = 0.
    #[arg(long)]
    allow_zero: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    /// Grid is a in [-a_max, a_max] without 0.
    #[arg(long, default_value_t = 200)]
    a_max: i64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
    trial_bound: u64,
    /// Write the JSON report to FILE.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
}

/// A command failure carrying its exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit::usage(format!("{e:#}"))
    }
}

type CmdResult = std::result::Result<u8, Exit>;

fn parse_constant(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let body = text.strip_prefix("a=").unwrap_or(text);
    body.parse::<BigRational>()
        .with_context(|| format!("not a rational constant: {text:?}"))
}

struct Instance {
    n: u32,
    a: BigRational,
    normalized: BigInt,
}

fn instance(args: &InstanceArgs) -> std::result::Result<Instance, Exit> {
    if args.n < 2 {
        return Err(Exit::usage(format!("n must be >= 2, got {}", args.n)));
    }
    let a = parse_constant(&args.a)?;
    if a.is_zero() && !args.allow_zero {
        return Err(Exit::usage("a = 0 requires --allow-zero"));
    }
    let normalized = reduce_to_integer(args.n, &a);
    Ok(Instance { n: args.n, a, normalized })
}

fn rational_json(a: &BigRational) -> Value {
    json!({ "num": a.numer().to_string(), "den": a.denom().to_string() })
}

fn to_string_stable(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn witness_line<T: std::fmt::Display + Signed>(w: &Witness<T>, n: u32) -> String {
    match w {
        Witness::PerfectPower { t, .. } => format!("{w}, t={t} | {n}"),
        _ => w.to_string(),
    }
}

fn cmd_decide(args: &InstanceArgs) -> CmdResult {
    let inst = instance(args)?;
    let verdict = decide_rational_with_bound(inst.n, &inst.a, args.trial_bound)
        .map_err(|e| Exit::usage(e.to_string()))?;
    if args.json {
        let doc = json!({
            "n": inst.n.to_string(),
            "a": rational_json(&inst.a),
            "normalized": inst.normalized.to_string(),
            "decision": verdict.decision,
            "witnesses": verdict.witnesses.iter().map(witness_to_json).collect::<Vec<_>>(),
        });
        print!("{}", to_string_stable(&doc));
    } else {
        print_verdict(&verdict, inst.n);
    }
    Ok(if verdict.is_reducible() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn print_verdict<T: std::fmt::Display + Signed>(verdict: &Verdict<T>, n: u32) {
    match verdict.constructive_witness() {
        Some(w) => {
            println!("REDUCIBLE: {}", witness_line(w, n));
            for other in verdict.witnesses.iter().filter(|o| o.proves_reducible()).skip(1) {
                println!("  also: {}", witness_line(other, n));
            }
        }
        None => {
            println!("IRREDUCIBLE");
            match verdict.irreducibility_certificate() {
                Some(w) => println!("  certificate: {w}"),
                None => println!("  certificate: none beyond the criterion (no perfect-power or -4b^4 form)"),
            }
        }
    }
}

fn write_out(path: &Path, text: &str) -> std::result::Result<(), Exit> {
    fs::write(path, text).map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display())))
}

fn emit_document(doc: &CertificateDocument, json: bool, out: Option<&Path>) -> CmdResult {
    if !doc.verify() {
        return Err(Exit {
            code: EXIT_RESOURCE,
            message: "internal error: refusing to emit an unverified certificate".into(),
        });
    }
    let text = doc.to_json_string();
    if let Some(path) = out {
        write_out(path, &text)?;
    }
    if json {
        print!("{text}");
    } else {
        print_certificate(&doc.certificate);
    }
    Ok(EXIT_OK)
}

fn print_certificate(cert: &Certificate) {
    let product: Vec<String> = cert.polys().map(|f| format!("({f})")).collect();
    println!("{} = {}", cert.target, product.join(" * "));
    for f in &cert.factors {
        println!("  {}  [{}]", f.poly, f.provenance.as_str());
    }
}

fn no_factorization(verdict: &Verdict) -> CmdResult {
    match verdict.irreducibility_certificate() {
        Some(w) => eprintln!("no factorization exists: {w}"),
        None => eprintln!("no factorization exists"),
    }
    Ok(EXIT_NEGATIVE)
}

fn cmd_factor(args: &InstanceArgs, deep: bool, oracle: bool, out: Option<&Path>) -> CmdResult {
    if deep && oracle {
        return Err(Exit::usage("--deep and --oracle are mutually exclusive"));
    }
    let inst = instance(args)?;
    let verdict = decide_with_bound(inst.n, &inst.normalized, args.trial_bound)
        .map_err(|e| Exit::usage(e.to_string()))?;
    if !verdict.is_reducible() {
        return no_factorization(&verdict);
    }
    let certificate = if oracle {
        oracle_certificate(&inst)?
    } else if deep {
        factor_deep(inst.n, &inst.normalized).map_err(|e| Exit::usage(e.to_string()))?
    } else {
        factor_once(inst.n, &inst.normalized, &verdict).map_err(|e| Exit::usage(e.to_string()))?
    };
    let doc = CertificateDocument { n: inst.n, a: inst.a, certificate, witnesses: verdict.witnesses };
    emit_document(&doc, args.json, out)
}

fn oracle_certificate(inst: &Instance) -> std::result::Result<Certificate, Exit> {
    let factorization =
        oracle_factor(inst.n, &inst.normalized).map_err(|e| Exit::usage(e.to_string()))?;
    factorization.to_certificate().ok_or_else(|| Exit {
        code: EXIT_RESOURCE,
        message: "internal error: oracle found no factor of a reducible binomial".into(),
    })
}

fn cmd_oracle_factor(args: &InstanceArgs, out: Option<&Path>) -> CmdResult {
    let inst = instance(args)?;
    let factorization =
        oracle_factor(inst.n, &inst.normalized).map_err(|e| Exit::usage(e.to_string()))?;
    match factorization.to_certificate() {
        None => {
            eprintln!("no factorization exists: oracle finds {} irreducible", factorization.target);
            Ok(EXIT_NEGATIVE)
        }
        Some(certificate) => {
            let doc = CertificateDocument { n: inst.n, a: inst.a, certificate, witnesses: Vec::new() };
            emit_document(&doc, args.json, out)
        }
    }
}

fn cmd_cyclotomic(n: i64) -> CmdResult {
    let n = u32::try_from(n)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Exit::usage(format!("n must be a positive integer, got {n}")))?;
    println!("{}", cyclotomic(n));
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let config = SweepConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        a_min: -args.a_max,
        a_max: args.a_max,
        jobs,
        trial_bound: args.trial_bound,
    };
    let report = match run_sweep(&config) {
        Ok(r) => r,
        Err(SweepError::Bounds(msg)) => return Err(Exit::usage(msg)),
        Err(e) => return Err(Exit { code: EXIT_RESOURCE, message: e.to_string() }),
    };
    let value = serde_json::to_value(&report).expect("reports always serialize");
    if let Some(path) = &args.report {
        write_out(path, &to_string_stable(&value))?;
    }
    if args.json {
        print!("{}", to_string_stable(&value));
    } else {
        println!(
            "grid n in [{}, {}], a in [{}, {}] \\ {{0}}: {} cells, {:.2}s",
            report.n_min, report.n_max, report.a_min, report.a_max, report.cells, report.elapsed
        );
        println!("mismatches: {}", report.mismatches.len());
        for m in &report.mismatches {
            println!("  n={} a={} theorem={} oracle={}", m.n, m.a, m.theorem, m.oracle);
        }
        println!("{:<6} {:>8} {:>6}  check", "status", "checked", "fails");
        for l in &report.lemma_results {
            let status = if l.passed() { "PASS" } else { "FAIL" };
            println!("{status:<6} {:>8} {:>6}  {}", l.checked, l.counterexamples.len(), l.name);
            for c in &l.counterexamples {
                println!("         counterexample: {c}");
            }
        }
        for e in &report.errors {
            println!("error: {e}");
        }
    }
    Ok(if !report.errors.is_empty() {
        EXIT_RESOURCE
    } else if report.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_verify(input: &Path) -> CmdResult {
    let text = fs::read_to_string(input)
        .with_context(|| format!("cannot read {}", input.display()))?;
    let doc = CertificateDocument::from_json_str(&text)
        .map_err(|e| Exit::usage(format!("malformed certificate: {e}")))?;
    if doc.verify() {
        println!("VALID: {} = product of {} factors", doc.certificate.target, doc.certificate.factors.len());
        return Ok(EXIT_OK);
    }
    let reason = if !verify_certificate(&doc.certificate) {
        "factors do not multiply to the target with proper degrees"
    } else {
        "target is not x^n - a for the recorded n and a"
    };
    println!("INVALID: {reason}");
    Ok(EXIT_NEGATIVE)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Decide(args) => cmd_decide(args),
        Command::Factor { instance, deep, oracle, out } => {
            cmd_factor(instance, *deep, *oracle, out.as_deref())
        }
        Command::Cyclotomic { n } => cmd_cyclotomic(*n),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify { input } => cmd_verify(input),
        Command::OracleFactor { instance, out } => cmd_oracle_factor(instance, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
