//! Command-line front end.
//!
//! Every command prints records, one per line: `kind  key=value ...` in text
//! mode or one JSON object per line with `--format json-lines`. Numbers use
//! 17 significant digits and travel with their residual or deviation.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::audit::run_audit;
use crate::claims::Format;
use crate::elliptic::{dn_third_of_k, Modulus};
use crate::error::{Error, Result};
use crate::modular::{singular_modulus, singular_modulus_extended, Rational};
use crate::multiangle::triplication_from_dn;
use crate::poly::C64;
use crate::quintic::{build_family, dn_third_from_quintic, expanded_coefficients, solve, Candidates};
use crate::recognize::{below_acceptance, recognize, AlgebraicCandidate, BigReal};
use crate::trisection::{dn_third_closed_form_with_branch, tabulated_value, RadicalBranch, TABULATED_R};

#[derive(Debug, Parser)]
#[command(
    name = "elliptic-quintic",
    version,
    about = "Elliptic solutions of a quintic family, singular moduli and trisection values"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    #[value(name = "json-lines", alias = "json")]
    JsonLines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular modulus k_r with K(1-k^2)/K(k^2) = sqrt(r).
    Singular {
        /// Positive rational, `p/q` or an integer.
        #[arg(long)]
        r: Rational,
        /// Bits for the extended-precision value and the recognition step.
        #[arg(long, default_value_t = 256)]
        precision: u32,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 10_000)]
        height: i64,
    },
    /// Coefficients of the quintic family at x with parameter h.
    Build {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
    },
    /// Elliptic root, recovered modulus and certified co-roots.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
    },
    /// dn(K/3) by direct evaluation, nested radicals and the quintic.
    #[command(group(ArgGroup::new("modulus").required(true).args(["r", "k"])))]
    DnThird {
        #[arg(long)]
        r: Option<Rational>,
        #[arg(long)]
        k: Option<f64>,
    },
    /// Full numeric claims report; exits nonzero on a gating failure.
    Audit {
        /// Keep only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
    /// Integer polynomial with a root at the given decimal value.
    Recognize {
        /// Decimal value; read from stdin when absent (longest number wins).
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 10_000)]
        height: i64,
        /// Upper bound on the working precision in bits.
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
}

enum Field {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
    Complex(C64),
    Ints(Vec<i64>),
}

fn num_text(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

fn num_json(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(v) => num_text(*v),
            Field::Int(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Flag(b) => b.to_string(),
            Field::Complex(z) => {
                let im = if z.im.is_nan() { "+nan".into() } else { format!("{:+.16e}", z.im) };
                format!("{}{im}i", num_text(z.re))
            }
            Field::Ints(v) => format!("[{}]", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(v) => num_json(*v),
            Field::Int(v) => Value::from(*v),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Flag(b) => Value::from(*b),
            Field::Complex(z) => Value::Array(vec![num_json(z.re), num_json(z.im)]),
            Field::Ints(v) => Value::from(v.clone()),
        }
    }
}

/// Real when the imaginary part vanishes exactly.
fn scalar(z: C64) -> Field {
    if z.im == 0.0 {
        Field::Num(z.re)
    } else {
        Field::Complex(z)
    }
}

struct Record {
    kind: &'static str,
    fields: Vec<(&'static str, Field)>,
}

impl Record {
    fn new(kind: &'static str) -> Self {
        Record { kind, fields: Vec::new() }
    }

    fn with(mut self, key: &'static str, value: Field) -> Self {
        self.fields.push((key, value));
        self
    }

    fn num(self, key: &'static str, v: f64) -> Self {
        self.with(key, Field::Num(v))
    }

    fn text(self, key: &'static str, v: impl Into<String>) -> Self {
        self.with(key, Field::Text(v.into()))
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut line = self.kind.to_string();
                for (k, v) in &self.fields {
                    line.push_str(&format!("  {k}={}", v.text()));
                }
                line + "\n"
            }
            OutputFormat::JsonLines => {
                let mut map = Map::new();
                map.insert("record".into(), Value::from(self.kind));
                for (k, v) in &self.fields {
                    map.insert((*k).into(), v.json());
                }
                Value::Object(map).to_string() + "\n"
            }
        }
    }
}

fn candidate_record(found: Option<AlgebraicCandidate>, precision: u32) -> Record {
    match found {
        Some(c) => Record::new("candidate")
            .text("polynomial", c.polynomial_string())
            .with("coefficients", Field::Ints(c.coefficients.clone()))
            .with("degree", Field::Int(c.degree as i64))
            .with("height", Field::Int(c.height))
            .num("residual", c.eval_residual.to_f64())
            .with("certified", Field::Flag(below_acceptance(&c.eval_residual, precision))),
        None => Record::new("candidate").text("result", "none"),
    }
}

fn cmd_singular(r: Rational, precision: u32, degree: usize, height: i64) -> Result<Vec<Record>> {
    let s = singular_modulus(r)?;
    let big = singular_modulus_extended(r, precision);
    let found = recognize(&big, degree, height)?;
    Ok(vec![
        Record::new("singular-modulus")
            .text("r", r.to_string())
            .num("k", s.k())
            .num("m", s.modulus.m())
            .num("kprime", s.modulus.kprime())
            .num("q", s.q)
            .num("residual", s.residual),
        Record::new("extended")
            .with("precision", Field::Int(i64::from(precision)))
            .text("k", big.to_scientific(big.decimal_digits()))
            .num("deviation", (big.to_f64() - s.k()).abs()),
        candidate_record(found, precision),
    ])
}

fn cmd_build(x: f64, h: f64) -> Vec<Record> {
    let f = build_family(x);
    let deviation =
        f.coefficients().iter().zip(expanded_coefficients(x)).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let mut family = Record::new("family").num("x", x).num("h", h);
    for (name, c) in ["e", "d", "c", "b", "a"].into_iter().zip(f.coefficients()) {
        family = family.with(name, scalar(c));
    }
    let family = family.num("expansion_deviation", deviation);
    let mut poly = Record::new("polynomial");
    for (name, c) in ["y0", "y1", "y2", "y3", "y4", "y5"].into_iter().zip(f.polynomial(h)) {
        poly = poly.with(name, scalar(c));
    }
    let mut out = vec![family, poly];
    if f.is_degenerate() {
        out.push(Record::new("warning").text("message", "degenerate family: e, d, c, b and a all vanish"));
    }
    out
}

fn cmd_solve(x: f64, h: f64) -> Result<Vec<Record>> {
    let list = match solve(x, h)? {
        Candidates::Underdetermined => {
            return Ok(vec![Record::new("solve")
                .num("x", x)
                .num("h", h)
                .text("status", "underdetermined")
                .text("note", "x = 1 and h = 0: every modulus gives a root")]);
        }
        Candidates::Found(list) => list,
    };
    let mut out = Vec::new();
    for (i, c) in list.iter().enumerate() {
        let m0 = c.recovered_m0.unwrap_or(f64::NAN);
        out.push(
            Record::new("certificate")
                .with("index", Field::Int(i as i64))
                .num("x", c.x)
                .num("h", c.h)
                .num("m0", m0)
                .num("k0", m0.sqrt())
                .with("root", scalar(c.root_y))
                .num("residual", c.residual)
                .text("method", c.method.tag())
                .with("ill_conditioned", Field::Flag(c.ill_conditioned)),
        );
        for (z, res) in c.co_roots.iter().zip(&c.co_root_residuals) {
            out.push(
                Record::new("co-root")
                    .with("certificate", Field::Int(i as i64))
                    .with("root", scalar(*z))
                    .num("residual", *res),
            );
        }
    }
    Ok(out)
}

fn cmd_dn_third(r: Option<Rational>, k: Option<f64>) -> Result<Vec<Record>> {
    let modulus = match (r, k) {
        (Some(r), _) => singular_modulus(r)?.modulus,
        (None, Some(k)) => Modulus::from_k(k)?,
        (None, None) => return Err(Error::Parse("one of --r or --k is required".into())),
    };
    let (k, m) = (modulus.k(), modulus.m());
    let direct = dn_third_of_k(m)?;
    // dn(3 · K/3) = dn(K) = k'
    let check = (triplication_from_dn(direct, modulus)?.dn - modulus.kprime()).abs();
    let mut out = vec![Record::new("numeric").num("k", k).num("dn_third", direct).num("residual", check)];
    for (branch, tag) in [(RadicalBranch::Principal, "principal"), (RadicalBranch::Negated, "negated")] {
        let rec = Record::new("closed-form").text("branch", tag);
        out.push(match dn_third_closed_form_with_branch(k, branch) {
            Ok(v) => rec.num("value", v).num("deviation", (v - direct).abs()),
            Err(e) => rec.text("error", e.to_string()),
        });
    }
    let rec = Record::new("quintic-root");
    out.push(match dn_third_from_quintic(modulus) {
        Ok(t) => rec.num("value", t.x).num("deviation", (t.x - direct).abs()),
        Err(e) => rec.text("error", e.to_string()),
    });
    if let Some(r) = r.filter(|r| TABULATED_R.contains(&r.to_string().as_str())) {
        let t = tabulated_value(r)?;
        let rec = Record::new("table").text("r", r.to_string());
        out.push(match t.closed_form_value {
            Ok(v) => rec.num("value", v).num("deviation", (v - direct).abs()),
            Err(e) => rec.text("error", e.to_string()),
        });
    }
    Ok(out)
}

/// Longest token that parses as a decimal number.
fn longest_number(text: &str) -> Option<&str> {
    text.split(|c: char| c.is_whitespace() || matches!(c, '=' | ',' | '[' | ']' | '"' | ':'))
        .filter(|t| BigReal::parse_decimal(t, 64).is_ok())
        .max_by_key(|t| t.len())
}

/// Significant digits in a decimal literal.
fn significant_digits(token: &str) -> usize {
    let mantissa = token.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len().max(1)
}

fn cmd_recognize(text: &str, degree: usize, height: i64, precision: u32) -> Result<Vec<Record>> {
    let token = longest_number(text).ok_or_else(|| Error::Parse("no decimal number in the input".into()))?;
    let digits = significant_digits(token);
    let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32;
    let prec = precision.min(bits).max(16);
    let alpha = BigReal::parse_decimal(token, prec)?;
    let found = recognize(&alpha, degree, height)?;
    Ok(vec![
        Record::new("input")
            .with("digits", Field::Int(digits as i64))
            .with("precision", Field::Int(i64::from(prec)))
            .num("value", alpha.to_f64()),
        candidate_record(found, prec),
    ])
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn render(records: &[Record], format: OutputFormat) -> String {
    records.iter().map(|r| r.render(format)).collect()
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> ExitCode {
    let result: std::result::Result<(String, bool), String> = (|| {
        let records = match cli.command {
            Command::Singular { r, precision, degree, height } => cmd_singular(r, precision, degree, height),
            Command::Build { x, h } => Ok(cmd_build(x, h)),
            Command::Solve { x, h } => cmd_solve(x, h),
            Command::DnThird { r, k } => cmd_dn_third(r, k),
            Command::Audit { only } => {
                let mut report = run_audit();
                if let Some(prefix) = only {
                    report = report.filtered(&prefix);
                }
                let format = match cli.format {
                    OutputFormat::Text => Format::Text,
                    OutputFormat::JsonLines => Format::JsonLines,
                };
                return Ok((report.render(format), report.exit_ok()));
            }
            Command::Recognize { value, degree, height, precision } => {
                let text = match value {
                    Some(v) => v,
                    None => {
                        let mut s = String::new();
                        io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
                        s
                    }
                };
                cmd_recognize(&text, degree, height, precision)
            }
        };
        records.map(|r| (render(&r, cli.format), true)).map_err(|e| e.to_string())
    })();
    match result {
        Ok((text, ok)) => {
            if let Err(e) = emit(&cli.out, &text) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

pub fn run() -> ExitCode {
    execute(Cli::parse())
}
