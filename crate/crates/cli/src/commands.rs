use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use splitov::combinatorics::{
    c_bounds, max_nondisjoint_cap, occurrence_witness, s_upper_bounds, theorem_sum_bound, Family,
    Relation as BoundRelation,
};
use splitov::debruijn::{
    construct_c2_lower, construct_c3_lower, debruijn_order3_special, debruijn_order_n,
    has_pair_coverage, windows_exactly_once,
};
use splitov::detect::{
    find_disjoint_pair, find_reversed_split_t_overlap_with, find_split_t_overlap_with,
    find_t_overlap_factor, SplitConvention, Violation,
};
use splitov::search::{
    frontier_lower_bound_with, search_resumable, verify_witness, Budget, Checkpoint,
    FrontierOptions, ProblemKind, SearchOptions, SearchOutcome, SearchProblem, Status,
};
use splitov::word::{border_array, is_primitive, is_unbordered, occurrences, period};
use splitov::Word;

use crate::report::{
    BoundEntry, CellStatus, Check, Finding, Outcome, RunReport, RunStatus, TableCell, Verdict,
};
use crate::tables::{self, Entry, Relation};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => crate::report::exit::USAGE,
            CliError::Validation(_) => crate::report::exit::VALIDATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<splitov::Error> for CliError {
    fn from(e: splitov::Error) -> Self {
        match e {
            splitov::Error::Validation(_) => CliError::Validation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "splitov", version, about = "Split-overlap avoidance toolkit")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Periodicity facts and repetition findings for one word.
    Analyze(AnalyzeArgs),
    /// Longest word avoiding a pattern.
    Search(SearchArgs),
    /// Upper bounds and exact values for one cell.
    Bounds(BoundsArgs),
    /// Build and check one of the explicit constructions.
    Construct(ConstructArgs),
    /// Recompute a reference table and diff it against the stored values.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "R", alias = "r")]
    R,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::C => Family::C,
            FamilyArg::S => Family::S,
            FamilyArg::R => Family::R,
        }
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub word: String,
    /// Alphabet size; defaults to the smallest one containing the word.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number characters by first appearance instead of reading digits.
    #[arg(long)]
    pub text: bool,
    #[arg(long)]
    pub t: Option<usize>,
    /// With --t: check split occurrences.
    #[arg(long)]
    pub split: bool,
    /// With --t: check reversed split occurrences.
    #[arg(long)]
    pub reversed: bool,
    /// With --t: check contiguous t-overlaps.
    #[arg(long)]
    pub factor: bool,
    /// Check for two disjoint occurrences of a length-n factor.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub convention: Option<String>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Time budget in seconds.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Depth at which the tree is split across workers; 0 searches serially.
    #[arg(long, default_value_t = 0)]
    pub split_depth: usize,
    /// Serial nodes spent before splitting.
    #[arg(long, default_value_t = 50_000)]
    pub warmup_nodes: u64,
    /// Where to save a checkpoint if the budget runs out.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from a saved checkpoint.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Randomized lower-bound search with this many nodes.
    #[arg(long)]
    pub frontier: Option<u64>,
    #[arg(long, default_value_t = 1_000)]
    pub round_nodes: u64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    /// Frontier mode: extend this word.
    #[arg(long)]
    pub seed_word: Option<String>,
    /// Report every optimal canonical word.
    #[arg(long)]
    pub all_witnesses: bool,
    /// Prune branches that cannot reach this length.
    #[arg(long)]
    pub min_length: Option<usize>,
    #[arg(long)]
    pub convention: Option<String>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    C2,
    C3,
    Debruijn,
    Witness,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Factor for `witness`.
    #[arg(long)]
    pub x: Option<String>,
    /// `debruijn`: the order-3 word from the successor rule.
    #[arg(long)]
    pub special: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: u8,
    /// Node budget for each exact cell.
    #[arg(long, default_value_t = 200_000_000)]
    pub budget_per_cell: u64,
    /// Also recompute the slow exact cells.
    #[arg(long)]
    pub stretch: bool,
    /// Frontier node budget for cells outside the exact set; omitted means skip them.
    #[arg(long)]
    pub frontier: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 0)]
    pub split_depth: usize,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_from_args<I, S>(argv: I) -> CliResult<(Cli, RunReport)>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = execute(&cli, &argv)?;
    Ok((cli, report))
}

/// The command line as recorded in reports. Worker count is left out: it
/// never changes results, and dropping it keeps reports from runs that
/// differ only in parallelism identical.
fn echo(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for (i, a) in argv.iter().enumerate() {
        if skip {
            skip = false;
            continue;
        }
        if i == 0 {
            out.push("splitov".to_string());
        } else if a == "--threads" {
            skip = true;
        } else if !a.starts_with("--threads=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn execute(cli: &Cli, argv: &[String]) -> CliResult<RunReport> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Analyze(a) => analyze(a)?,
        Command::Search(a) => search(a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Construct(a) => construct(a)?,
        Command::Table(a) => table(a)?,
    };
    report.command = echo(argv);
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

fn convention(name: &Option<String>) -> CliResult<SplitConvention> {
    match name {
        None => Ok(SplitConvention::default()),
        Some(n) => SplitConvention::from_name(n).ok_or_else(|| {
            let names: Vec<String> = SplitConvention::ALL.iter().map(|c| c.name()).collect();
            CliError::Usage(format!("unknown convention {n:?}; expected one of {}", names.join(", ")))
        }),
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn parse_word(text: &str, k: Option<usize>) -> CliResult<Word> {
    if text.trim().is_empty() {
        return usage("empty word");
    }
    Ok(match k {
        Some(k) => Word::parse(text, k)?,
        None => Word::parse_minimal(text)?,
    })
}

fn finding(check: String, absent: String, present: String, v: Option<Violation>) -> Finding {
    match v {
        None => Finding { check, message: absent, tuple: None, repetition: None },
        Some(v) => {
            let (i, j, jp, l) = v.tuple();
            Finding {
                check,
                message: present,
                tuple: Some([i, j, jp, l]),
                repetition: Some(v.repetition.to_string()),
            }
        }
    }
}

fn analyze(a: &AnalyzeArgs) -> CliResult<RunReport> {
    let w = if a.text {
        if a.word.is_empty() {
            return usage("empty word");
        }
        Word::from_text_canonical(&a.word)?
    } else {
        parse_word(&a.word, a.k)?
    };
    let conv = convention(&a.convention)?;
    let mut borders = Vec::new();
    let table = border_array(&w)?;
    let mut b = table.last();
    while b > 0 {
        borders.push(b);
        b = table.as_slice()[b - 1];
    }
    let mut findings = Vec::new();
    if let Some(n) = a.n {
        if n == 0 {
            return usage("--n must be at least 1");
        }
        findings.push(finding(
            format!("disjoint n={n}"),
            format!("no disjoint length-{n} pair"),
            format!("disjoint length-{n} pair"),
            find_disjoint_pair(&w, n),
        ));
    }
    if let Some(t) = a.t {
        let all = !(a.split || a.reversed || a.factor);
        if a.split || all {
            findings.push(finding(
                format!("split t={t}"),
                format!("no split {t}-overlap"),
                format!("split {t}-overlap"),
                find_split_t_overlap_with(&w, t, conv),
            ));
        }
        if a.reversed || all {
            findings.push(finding(
                format!("reversed t={t}"),
                format!("no reversed split {t}-overlap"),
                format!("reversed split {t}-overlap"),
                find_reversed_split_t_overlap_with(&w, t, conv),
            ));
        }
        if a.factor || all {
            findings.push(finding(
                format!("factor t={t}"),
                format!("no {t}-overlap factor"),
                format!("{t}-overlap factor"),
                find_t_overlap_factor(&w, t),
            ));
        }
    } else if a.split || a.reversed || a.factor {
        return usage("--split, --reversed and --factor need --t");
    }
    let outcome = Outcome::Analysis {
        word: w.to_string(),
        k: w.k(),
        length: w.len(),
        period: Some(period(&w)?),
        borders,
        primitive: Some(is_primitive(&w)?),
        unbordered: Some(is_unbordered(&w)?),
        findings,
    };
    let mut report = RunReport::new(Vec::new(), RunStatus::Ok, outcome);
    let mut p = vec![("k", w.k().to_string())];
    if a.t.is_some() {
        p.push(("convention", conv.name()));
    }
    report.params = params(&p);
    Ok(report)
}

fn problem_for(family: FamilyArg, k: usize, n: Option<usize>, t: Option<usize>) -> CliResult<ProblemKind> {
    match (family, n, t) {
        (FamilyArg::C, Some(n), None) => Ok(ProblemKind::DisjointFactors(n)),
        (FamilyArg::S, None, Some(t)) => Ok(ProblemKind::SplitOverlap(t)),
        (FamilyArg::R, None, Some(t)) => Ok(ProblemKind::ReversedSplitOverlap(t)),
        (FamilyArg::C, _, _) => usage(format!("C(k,n) takes --n only (k = {k})")),
        _ => usage(format!("S(k,t) and R(k,t) take --t only (k = {k})")),
    }
}

fn search_report(outcome: &SearchOutcome, checkpoint: Option<String>) -> RunReport {
    let status = match outcome.status {
        Status::Exact => RunStatus::Exact,
        Status::LowerBound => RunStatus::LowerBound,
    };
    let o = Outcome::Search {
        problem: outcome.problem.to_string(),
        max_length: outcome.max_length,
        witnesses: outcome.witnesses.iter().map(ToString::to_string).collect(),
        budget_used: outcome.budget_used.name().to_string(),
        checkpoint,
    };
    let mut r = RunReport::new(Vec::new(), status, o);
    r.nodes = Some(outcome.nodes_explored);
    r
}

fn search(a: &SearchArgs) -> CliResult<RunReport> {
    let kind = problem_for(a.family, a.k, a.n, a.t)?;
    let conv = convention(&a.convention)?;
    let problem = SearchProblem::new(kind, a.k)?.with_convention(conv);
    let time_limit = match a.time {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return usage(format!("bad --time {s}")),
        None => None,
    };
    if a.threads == 0 {
        return usage("--threads must be at least 1");
    }
    let mut p = vec![
        ("family", problem.kind.family().to_string()),
        ("k", a.k.to_string()),
        (if a.family == FamilyArg::C { "n" } else { "t" }, problem.kind.param().to_string()),
    ];
    if a.family != FamilyArg::C {
        p.push(("convention", conv.name()));
    }
    if let Some(b) = a.budget {
        p.push(("budget_nodes", b.to_string()));
    }
    if let Some(s) = a.time {
        p.push(("budget_seconds", s.to_string()));
    }

    if let Some(nodes) = a.frontier {
        if a.checkpoint.is_some() || a.resume.is_some() {
            return usage("checkpoints apply to exhaustive search only");
        }
        let prefix = a.seed_word.as_deref().map(|s| parse_word(s, Some(a.k))).transpose()?;
        let options = FrontierOptions {
            max_nodes: nodes,
            round_nodes: a.round_nodes.max(1),
            seed: a.rng_seed,
            prefix,
            time_limit,
        };
        let outcome = frontier_lower_bound_with(&problem, &options)?;
        let mut report = search_report(&outcome, None);
        p.extend([
            ("mode", "frontier".to_string()),
            ("frontier_nodes", nodes.to_string()),
            ("round_nodes", options.round_nodes.to_string()),
            ("rng_seed", a.rng_seed.to_string()),
        ]);
        report.params = params(&p);
        report.notes.push("randomized search: the value is a lower bound".into());
        return Ok(report);
    }
    if a.seed_word.is_some() {
        return usage("--seed-word needs --frontier");
    }

    let options = SearchOptions {
        budget: Budget { max_nodes: a.budget, time_limit },
        split_depth: a.split_depth,
        threads: a.threads,
        collect_all: a.all_witnesses,
        warmup_nodes: a.warmup_nodes,
        min_length: a.min_length,
    };
    p.push(("mode", "exhaustive".to_string()));
    if let Some(m) = a.min_length {
        p.push(("min_length", m.to_string()));
    }
    if a.split_depth > 0 {
        if a.checkpoint.is_some() || a.resume.is_some() {
            return usage("checkpoints need a serial search (--split-depth 0)");
        }
        p.push(("split_depth", a.split_depth.to_string()));
        p.push(("warmup_nodes", a.warmup_nodes.to_string()));
        let outcome = splitov::search::longest_avoiding_with(&problem, &options)?;
        let mut report = search_report(&outcome, None);
        report.params = params(&p);
        return Ok(report);
    }
    let from = a.resume.as_deref().map(Checkpoint::load).transpose()?;
    let (outcome, cp) = search_resumable(&problem, &options, from.as_ref())?;
    let mut saved = None;
    if let (Some(path), Some(cp)) = (&a.checkpoint, cp) {
        cp.save(path)?;
        saved = Some(path.display().to_string());
    }
    let mut report = search_report(&outcome, saved);
    if let Some(r) = &a.resume {
        p.push(("resumed_from", r.display().to_string()));
    }
    report.params = params(&p);
    if outcome.status == Status::LowerBound && a.checkpoint.is_none() {
        report.notes.push("budget ran out; pass --checkpoint to continue later".into());
    }
    Ok(report)
}

fn bounds(a: &BoundsArgs) -> CliResult<RunReport> {
    let family = a.family.family();
    let param = match (a.family, a.n, a.t) {
        (FamilyArg::C, Some(n), None) => n,
        (FamilyArg::S | FamilyArg::R, None, Some(t)) => t,
        (FamilyArg::C, _, _) => return usage("C takes --n only"),
        _ => return usage("S and R take --t only"),
    };
    let mut notes = Vec::new();
    let report = match family {
        Family::C => {
            let r = c_bounds(a.k, param)?;
            if r.period_census.is_none() {
                notes.push("period census omitted: k^n exceeds the enumeration budget".to_string());
            }
            r
        }
        _ => {
            let known = tables::known_c(a.k);
            if param > 0 && !known.is_empty() {
                notes.push(format!(
                    "composition uses listed exact C({},n) for n in {:?}",
                    a.k,
                    known.keys().collect::<Vec<_>>()
                ));
            }
            let mut r = s_upper_bounds(a.k, param, Some(&known))?;
            r.family = family;
            r
        }
    };
    let entries = report
        .bounds
        .iter()
        .map(|b| BoundEntry {
            source: b.source.key().to_string(),
            label: b.source.label().to_string(),
            relation: match b.relation {
                BoundRelation::Exact => "=",
                BoundRelation::AtMost => "<=",
            }
            .to_string(),
            value: b.value.to_string(),
            floor: b.floor().to_string(),
        })
        .collect();
    let outcome = Outcome::Bounds {
        family: family.to_string(),
        k: a.k,
        param,
        bounds: entries,
        exact: report.exact().map(|v| v.to_string()),
        best_upper: report.best_upper().to_string(),
        period_census: report
            .period_census
            .as_ref()
            .map(|c| c.iter().map(|(p, n)| (*p, n.to_string())).collect()),
    };
    let mut r = RunReport::new(Vec::new(), RunStatus::Ok, outcome);
    r.params = params(&[("family", family.to_string()), ("k", a.k.to_string()), ("param", param.to_string())]);
    r.notes = notes;
    Ok(r)
}

fn need_k(k: Option<usize>) -> CliResult<usize> {
    k.ok_or_else(|| CliError::Usage("--k is required".into()))
}

fn construct(a: &ConstructArgs) -> CliResult<RunReport> {
    let mut checks = Vec::new();
    let mut p = Vec::new();
    let (name, word) = match a.kind {
        ConstructKind::C2 | ConstructKind::C3 => {
            let k = need_k(a.k)?;
            let n = if a.kind == ConstructKind::C2 { 2 } else { 3 };
            let w = if n == 2 { construct_c2_lower(k)? } else { construct_c3_lower(k)? };
            let target = theorem_sum_bound(k, n)?;
            checks.push(Check::new(
                format!("length equals period-sum bound {target}"),
                BigUint::from(w.len()) == target,
            ));
            checks.push(Check::new(
                format!("no disjoint length-{n} pair"),
                find_disjoint_pair(&w, n).is_none(),
            ));
            p.push(("k", k.to_string()));
            (format!("c{n}"), w)
        }
        ConstructKind::Debruijn => {
            let k = need_k(a.k)?;
            if a.special {
                if a.n.is_some_and(|n| n != 3) {
                    return usage("--special builds order 3 only");
                }
                let w = debruijn_order3_special(k)?;
                let kb = k.pow(3);
                checks.push(Check::new(format!("length {}", kb + 2), w.len() == kb + 2));
                checks.push(Check::new("window census", windows_exactly_once(w.symbols(), k, 3)));
                checks.push(Check::new("abab or baba for every pair", has_pair_coverage(w.symbols(), k)));
                p.extend([("k", k.to_string()), ("n", "3".to_string())]);
                ("debruijn-special".to_string(), w)
            } else {
                let n = a.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
                let w = debruijn_order_n(k, n)?;
                let expect = k.pow(n as u32) + n - 1;
                checks.push(Check::new(format!("length {expect}"), w.len() == expect));
                checks.push(Check::new("window census", windows_exactly_once(w.symbols(), k, n)));
                p.extend([("k", k.to_string()), ("n", n.to_string())]);
                ("debruijn".to_string(), w)
            }
        }
        ConstructKind::Witness => {
            let x = parse_word(a.x.as_deref().unwrap_or(""), a.k)?;
            let w = occurrence_witness(&x)?;
            let cap = max_nondisjoint_cap(&x)?;
            let occ = occurrences(&w, &x)?;
            checks.push(Check::new(format!("{} occurrences of {x} (cap {cap})", occ.len()), occ.len() == cap));
            let overlapping = occ.last().zip(occ.first()).is_none_or(|(l, f)| l - f < x.len());
            checks.push(Check::new("every two occurrences overlap", overlapping));
            p.push(("x", x.to_string()));
            ("witness".to_string(), w)
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    let outcome = Outcome::Construction {
        construction: name,
        length: word.len(),
        word: word.to_string(),
        checks,
    };
    let status = if pass { RunStatus::Ok } else { RunStatus::ValidationFailed };
    let mut r = RunReport::new(Vec::new(), status, outcome);
    r.params = params(&p);
    Ok(r)
}

/// Recomputes one cell and compares it with the stored entry.
pub fn table_cell(
    e: &Entry,
    exact: bool,
    frontier: Option<u64>,
    options: &SearchOptions,
) -> CliResult<TableCell> {
    let problem = e.problem()?;
    let mut cell = TableCell {
        k: e.k,
        param: e.param,
        expected_relation: e.relation.symbol().to_string(),
        expected_value: e.value,
        expected_witness: e.witness.clone(),
        status: CellStatus::Skipped,
        computed: None,
        witness: None,
        verdict: Verdict::Skipped,
        nodes: 0,
        elapsed_us: 0,
        note: None,
    };
    let mut problems = Vec::new();
    if let Some(w) = e.witness_word() {
        match w {
            Ok(w) if w.len() != e.value => problems.push(format!("listed witness has length {}", w.len())),
            Ok(w) if !verify_witness(&problem, &w) => problems.push("listed witness fails the checker".into()),
            Ok(_) => {}
            Err(err) => problems.push(format!("listed witness does not parse: {err}")),
        }
    }
    let outcome = if exact {
        Some(splitov::search::longest_avoiding_with(&problem, options)?)
    } else if let Some(nodes) = frontier {
        let opts = FrontierOptions { max_nodes: nodes, ..FrontierOptions::default() };
        Some(frontier_lower_bound_with(&problem, &opts)?)
    } else {
        None
    };
    if let Some(o) = outcome {
        let v = o.max_length;
        cell.computed = Some(v);
        cell.witness = Some(o.witness().to_string());
        cell.nodes = o.nodes_explored;
        cell.elapsed_us = o.elapsed.as_micros() as u64;
        if !verify_witness(&problem, o.witness()) {
            problems.push("computed witness fails the checker".into());
        }
        match (o.status, e.relation) {
            (Status::Exact, Relation::Equal) => {
                cell.status = CellStatus::Exact;
                if v != e.value {
                    problems.push(format!("computed {v}, listed {}", e.value));
                } else if e.least && e.witness.as_deref() != cell.witness.as_deref() {
                    problems.push("least witness differs".into());
                }
            }
            (Status::Exact, Relation::AtLeast) => {
                cell.status = CellStatus::Exact;
                if v < e.value {
                    problems.push(format!("exact value {v} is below the listed bound {}", e.value));
                }
            }
            (Status::LowerBound, Relation::Equal) => {
                cell.status = CellStatus::LowerBound;
                if v > e.value {
                    problems.push(format!("found length {v} above the listed value {}", e.value));
                }
            }
            (Status::LowerBound, Relation::AtLeast) => cell.status = CellStatus::LowerBound,
        }
        cell.verdict = match (cell.status, problems.is_empty()) {
            (_, false) => Verdict::Mismatch,
            (CellStatus::Exact, true) if e.relation == Relation::Equal => Verdict::Match,
            _ => Verdict::Consistent,
        };
    } else if !problems.is_empty() {
        cell.verdict = Verdict::Mismatch;
    }
    if !problems.is_empty() {
        cell.note = Some(problems.join("; "));
    }
    Ok(cell)
}

fn table(a: &TableArgs) -> CliResult<RunReport> {
    if a.threads == 0 {
        return usage("--threads must be at least 1");
    }
    let options = SearchOptions {
        budget: Budget::nodes(a.budget_per_cell),
        split_depth: a.split_depth,
        threads: a.threads,
        ..SearchOptions::default()
    };
    let mut cells = Vec::new();
    for e in tables::table(a.table) {
        let exact = tables::default_cell(a.table, e.k, e.param)
            || (a.stretch && tables::stretch_cell(a.table, e.k, e.param));
        cells.push(table_cell(&e, exact, a.frontier, &options)?);
    }
    let mismatch = cells.iter().any(|c| c.verdict == Verdict::Mismatch);
    let nodes = cells.iter().map(|c| c.nodes).sum();
    let status = if mismatch { RunStatus::Mismatch } else { RunStatus::Ok };
    let mut r = RunReport::new(Vec::new(), status, Outcome::Table { table: a.table, cells });
    r.nodes = Some(nodes);
    let mut p = vec![
        ("family", tables::family_of(a.table).to_string()),
        ("budget_per_cell", a.budget_per_cell.to_string()),
        ("stretch", a.stretch.to_string()),
    ];
    if let Some(f) = a.frontier {
        p.push(("frontier_nodes", f.to_string()));
    }
    r.params = params(&p);
    Ok(r)
}
