//! Checked claims and the report that collects them.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undetermined => "UNDETERMINED",
        }
    }
}

/// One numerically checked statement.
///
/// `report_only` claims test printed formulas that may be wrong; they are
/// always reported but never decide the exit status.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub branch_notes: String,
    pub report_only: bool,
}

impl Claim {
    /// PASS iff `residual < tolerance`; a NaN residual is UNDETERMINED.
    pub fn check(id: impl Into<String>, description: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual.is_nan() {
            Status::Undetermined
        } else if residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Claim {
            id: id.into(),
            description: description.into(),
            status,
            residual,
            tolerance,
            branch_notes: String::new(),
            report_only: false,
        }
    }

    /// A claim that could not be evaluated.
    pub fn undetermined(
        id: impl Into<String>,
        description: impl Into<String>,
        tolerance: f64,
        note: impl Into<String>,
    ) -> Self {
        Claim::check(id, description, f64::NAN, tolerance).with_note(note)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if !note.is_empty() {
            if !self.branch_notes.is_empty() {
                self.branch_notes.push_str("; ");
            }
            self.branch_notes.push_str(&note);
        }
        self
    }

    pub fn report_only(mut self) -> Self {
        self.report_only = true;
        self
    }

    /// FAIL on a claim that gates the exit status.
    pub fn is_gating_failure(&self) -> bool {
        !self.report_only && self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undetermined: usize,
    pub gating_fail: usize,
}

impl Summary {
    pub fn tally(claims: &[Claim]) -> Self {
        let mut s = Summary::default();
        for c in claims {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Undetermined => s.undetermined += 1,
            }
            if c.is_gating_failure() {
                s.gating_fail += 1;
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimsReport {
    pub version: String,
    /// Unix seconds.
    pub timestamp: u64,
    pub claims: Vec<Claim>,
}

#[derive(Serialize)]
struct Header<'a> {
    record: &'static str,
    tool: &'static str,
    version: &'a str,
    timestamp: u64,
}

#[derive(Serialize)]
struct ClaimRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    claim: &'a Claim,
}

#[derive(Serialize)]
struct SummaryRecord {
    record: &'static str,
    #[serde(flatten)]
    summary: Summary,
}

/// `SOURCE_DATE_EPOCH` when set, otherwise the current time.
pub fn report_timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.trim().parse().ok()).unwrap_or_else(|| {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
    })
}

fn number(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

impl ClaimsReport {
    pub fn new(claims: Vec<Claim>) -> Self {
        ClaimsReport { version: env!("CARGO_PKG_VERSION").to_string(), timestamp: report_timestamp(), claims }
    }

    pub fn summary(&self) -> Summary {
        Summary::tally(&self.claims)
    }

    /// True when no gating claim failed.
    pub fn exit_ok(&self) -> bool {
        self.summary().gating_fail == 0
    }

    /// Keeps claims whose id starts with `prefix`.
    pub fn filtered(&self, prefix: &str) -> Self {
        ClaimsReport {
            claims: self.claims.iter().filter(|c| c.id.starts_with(prefix)).cloned().collect(),
            ..self.clone()
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::JsonLines => self.render_json_lines(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elliptic-quintic {} claims report (timestamp {})", self.version, self.timestamp);
        for c in &self.claims {
            let kind = if c.report_only { "report" } else { "gate" };
            let _ = write!(
                out,
                "{:<12} {:<6} {}  residual={} tolerance={}  {}",
                c.status.as_str(),
                kind,
                c.id,
                number(c.residual),
                number(c.tolerance),
                c.description
            );
            if !c.branch_notes.is_empty() {
                let _ = write!(out, "  [{}]", c.branch_notes);
            }
            out.push('\n');
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "summary: {} claims, {} pass, {} fail, {} undetermined, {} gating failures",
            self.claims.len(),
            s.pass,
            s.fail,
            s.undetermined,
            s.gating_fail
        );
        out
    }

    fn render_json_lines(&self) -> String {
        let mut out = String::new();
        let header =
            Header { record: "header", tool: "elliptic-quintic", version: &self.version, timestamp: self.timestamp };
        out.push_str(&line(&header));
        for c in &self.claims {
            out.push_str(&line(&ClaimRecord { record: "claim", claim: c }));
        }
        out.push_str(&line(&SummaryRecord { record: "summary", summary: self.summary() }));
        out
    }
}

fn line<T: Serialize>(record: &T) -> String {
    let mut s = serde_json::to_string(record).expect("report records serialize");
    s.push('\n');
    s
}
