//! Run reports: one JSON document per run, with a plain-text rendering of
//! the same fields.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "splitov-report/1";
pub const TOOL: &str = "splitov";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const LOWER_BOUND: i32 = 3;
    pub const MISMATCH: i32 = 4;
    pub const VALIDATION: i32 = 5;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Ok,
    Exact,
    LowerBound,
    Mismatch,
    ValidationFailed,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok | RunStatus::Exact => exit::OK,
            RunStatus::LowerBound => exit::LOWER_BOUND,
            RunStatus::Mismatch => exit::MISMATCH,
            RunStatus::ValidationFailed => exit::VALIDATION,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Exact => "exact",
            RunStatus::LowerBound => "lower-bound",
            RunStatus::Mismatch => "mismatch",
            RunStatus::ValidationFailed => "validation-failed",
        }
    }
}

/// One detector query made by `analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub message: String,
    /// `(i, j, j', l)` of the least violation.
    pub tuple: Option<[usize; 4]>,
    pub repetition: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass }
    }

    fn line(&self) -> String {
        format!("{}: {}", self.name, if self.pass { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub source: String,
    pub label: String,
    pub relation: String,
    /// Exact rational value, `a` or `a/b`.
    pub value: String,
    pub floor: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Exact,
    LowerBound,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Computed value equals the reference one (and the least witness, when listed).
    Match,
    /// Not settled, but nothing computed contradicts the reference entry.
    Consistent,
    Mismatch,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub k: usize,
    pub param: usize,
    pub expected_relation: String,
    pub expected_value: usize,
    pub expected_witness: Option<String>,
    pub status: CellStatus,
    pub computed: Option<usize>,
    pub witness: Option<String>,
    pub verdict: Verdict,
    pub nodes: u64,
    pub elapsed_us: u64,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Analysis {
        word: String,
        k: usize,
        length: usize,
        period: Option<usize>,
        /// Lengths of all borders, longest first.
        borders: Vec<usize>,
        primitive: Option<bool>,
        unbordered: Option<bool>,
        findings: Vec<Finding>,
    },
    Search {
        problem: String,
        max_length: usize,
        witnesses: Vec<String>,
        budget_used: String,
        checkpoint: Option<String>,
    },
    Bounds {
        family: String,
        k: usize,
        param: usize,
        bounds: Vec<BoundEntry>,
        exact: Option<String>,
        best_upper: String,
        /// `(period, number of words)` pairs.
        period_census: Option<Vec<(usize, String)>>,
    },
    Construction {
        construction: String,
        word: String,
        length: usize,
        checks: Vec<Check>,
    },
    Table {
        table: u8,
        cells: Vec<TableCell>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub status: RunStatus,
    pub outcome: Outcome,
    pub nodes: Option<u64>,
    pub elapsed_us: u64,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>, status: RunStatus, outcome: Outcome) -> Self {
        RunReport {
            format: FORMAT.into(),
            tool: TOOL.into(),
            version: VERSION.into(),
            command,
            params: BTreeMap::new(),
            status,
            outcome,
            nodes: None,
            elapsed_us: 0,
            notes: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with the wall-clock fields zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_us = 0;
        if let Outcome::Table { cells, .. } = &mut r.outcome {
            for c in cells {
                c.elapsed_us = 0;
            }
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} ({})", self.tool, self.version, self.format);
        let _ = writeln!(s, "command: {}", self.command.join(" "));
        for (k, v) in &self.params {
            let _ = writeln!(s, "{k}: {v}");
        }
        match &self.outcome {
            Outcome::Analysis { word, k, length, period, borders, primitive, unbordered, findings } => {
                let _ = writeln!(s, "word: {word}");
                let _ = writeln!(s, "alphabet: {k}");
                let _ = writeln!(s, "length: {length}");
                let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "period: {}", opt(period.map(|p| p.to_string())));
                let list: Vec<String> = borders.iter().map(|b| b.to_string()).collect();
                let _ = writeln!(s, "borders: [{}]", list.join(", "));
                let _ = writeln!(s, "primitive: {}", opt(primitive.map(|b| b.to_string())));
                let _ = writeln!(s, "unbordered: {}", opt(unbordered.map(|b| b.to_string())));
                for f in findings {
                    let _ = write!(s, "{}: {}", f.check, f.message);
                    if let Some([i, j, jp, l]) = f.tuple {
                        let _ = write!(s, " at ({i}, {j}, {jp}, {l})");
                    }
                    if let Some(r) = &f.repetition {
                        let _ = write!(s, " repetition {r}");
                    }
                    s.push('\n');
                }
            }
            Outcome::Search { problem, max_length, witnesses, budget_used, checkpoint } => {
                let _ = writeln!(s, "problem: {problem}");
                let _ = writeln!(s, "value: {max_length}");
                for w in witnesses {
                    let _ = writeln!(s, "witness: {w}");
                }
                let _ = writeln!(s, "budget: {budget_used}");
                if let Some(c) = checkpoint {
                    let _ = writeln!(s, "checkpoint: {c}");
                }
            }
            Outcome::Bounds { family, k, param, bounds, exact, best_upper, period_census } => {
                let _ = writeln!(s, "cell: {family}({k},{param})");
                for b in bounds {
                    let _ = writeln!(
                        s,
                        "{} {} {} (floor {})  [{}]",
                        b.source, b.relation, b.value, b.floor, b.label
                    );
                }
                if let Some(e) = exact {
                    let _ = writeln!(s, "exact: {e}");
                }
                let _ = writeln!(s, "best upper: {best_upper}");
                if let Some(c) = period_census {
                    let parts: Vec<String> = c.iter().map(|(p, n)| format!("{p}:{n}")).collect();
                    let _ = writeln!(s, "period census: {}", parts.join(" "));
                }
            }
            Outcome::Construction { construction, word, length, checks } => {
                let _ = writeln!(s, "construction: {construction}");
                let _ = writeln!(s, "word: {word}");
                let _ = writeln!(s, "length: {length}");
                for c in checks {
                    let _ = writeln!(s, "{}", c.line());
                }
            }
            Outcome::Table { table, cells } => {
                let _ = writeln!(s, "table: {table}");
                let _ = writeln!(s, "k\tparam\texpected\tcomputed\tstatus\tverdict\tnodes\telapsed_us");
                for c in cells {
                    let computed = c.computed.map_or("-".into(), |v| v.to_string());
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}{}\t{}\t{:?}\t{:?}\t{}\t{}",
                        c.k,
                        c.param,
                        c.expected_relation,
                        c.expected_value,
                        computed,
                        c.status,
                        c.verdict,
                        c.nodes,
                        c.elapsed_us
                    );
                    if let Some(n) = &c.note {
                        let _ = writeln!(s, "  note: {n}");
                    }
                }
            }
        }
        if let Some(n) = self.nodes {
            let _ = writeln!(s, "nodes: {n}");
        }
        let _ = writeln!(s, "elapsed_us: {}", self.elapsed_us);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "status: {}", self.status.name());
        s
    }
}
