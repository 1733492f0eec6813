//! Exhaustive and heuristic search for longest avoiding words.
//!
//! The exact search is a depth-first walk over words in lexicographic order
//! with letter-renaming symmetry removed: a letter may only appear after all
//! smaller letters have. Every problem here is invariant under renaming, and
//! the lexicographically least word of an orbit is the canonical one, so the
//! first longest word found is the lexicographically least optimum.

mod checkpoint;
mod engine;
mod frontier;
mod state;

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::combinatorics::{c_closed_form, s_upper_bounds, theorem_sum_bound, Family};
use crate::detect::{
    find_disjoint_pair, find_reversed_split_t_overlap_with, find_split_t_overlap_with,
    SplitConvention,
};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

pub use checkpoint::Checkpoint;
pub use frontier::{frontier_lower_bound, frontier_lower_bound_with, FrontierOptions};
pub use state::SearchState;

use engine::{Cursor, Limits, RunResult};
use state::{DisjointState, Extender, SplitState};

/// Largest `k^n` for which the disjoint-factor state keeps per-factor tables.
pub const FACTOR_TABLE_LIMIT: usize = 1 << 24;

/// Which pattern the words must avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Two disjoint occurrences of a length-`n` factor.
    DisjointFactors(usize),
    /// A split `t`-overlap.
    SplitOverlap(usize),
    /// A reversed split `t`-overlap.
    ReversedSplitOverlap(usize),
}

impl ProblemKind {
    pub fn family(self) -> Family {
        match self {
            ProblemKind::DisjointFactors(_) => Family::C,
            ProblemKind::SplitOverlap(_) => Family::S,
            ProblemKind::ReversedSplitOverlap(_) => Family::R,
        }
    }

    pub fn param(self) -> usize {
        match self {
            ProblemKind::DisjointFactors(n)
            | ProblemKind::SplitOverlap(n)
            | ProblemKind::ReversedSplitOverlap(n) => n,
        }
    }

    pub fn from_family(family: Family, param: usize) -> Self {
        match family {
            Family::C => ProblemKind::DisjointFactors(param),
            Family::S => ProblemKind::SplitOverlap(param),
            Family::R => ProblemKind::ReversedSplitOverlap(param),
        }
    }

    fn param_name(self) -> &'static str {
        match self {
            ProblemKind::DisjointFactors(_) => "n",
            _ => "t",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchProblem {
    pub kind: ProblemKind,
    pub k: usize,
    pub convention: SplitConvention,
}

impl SearchProblem {
    pub fn new(kind: ProblemKind, k: usize) -> Result<Self> {
        if !(1..=256).contains(&k) {
            return Err(Error::BadAlphabet(k));
        }
        if let ProblemKind::DisjointFactors(n) = kind {
            if n == 0 {
                return Err(Error::InvalidParameter("need n >= 1".into()));
            }
            let fits = (k as u128)
                .checked_pow(n as u32)
                .is_some_and(|v| v <= FACTOR_TABLE_LIMIT as u128);
            if !fits {
                return Err(Error::InvalidParameter(format!(
                    "k^n exceeds the factor table limit of {FACTOR_TABLE_LIMIT}"
                )));
            }
        }
        Ok(SearchProblem { kind, k, convention: SplitConvention::default() })
    }

    pub fn disjoint(k: usize, n: usize) -> Result<Self> {
        Self::new(ProblemKind::DisjointFactors(n), k)
    }

    pub fn split(k: usize, t: usize) -> Result<Self> {
        Self::new(ProblemKind::SplitOverlap(t), k)
    }

    pub fn reversed(k: usize, t: usize) -> Result<Self> {
        Self::new(ProblemKind::ReversedSplitOverlap(t), k)
    }

    pub fn with_convention(mut self, convention: SplitConvention) -> Self {
        self.convention = convention;
        self
    }

    /// A length no avoiding word can exceed, when it fits in `usize`.
    pub fn a_priori_cap(&self) -> Option<usize> {
        match self.kind {
            ProblemKind::DisjointFactors(n) => theorem_sum_bound(self.k, n).ok()?.to_usize(),
            ProblemKind::SplitOverlap(t) | ProblemKind::ReversedSplitOverlap(t) => {
                if self.convention != SplitConvention::default() {
                    return None;
                }
                s_upper_bounds(self.k, t, None).ok()?.best_upper().to_usize()
            }
        }
    }

    /// The optimum when a closed form settles it. The search then prunes
    /// every branch that cannot reach it, which leaves the least optimal
    /// word in place but skips the shorter dead ends.
    pub fn known_value(&self) -> Option<usize> {
        match self.kind {
            ProblemKind::DisjointFactors(n) => c_closed_form(self.k, n)?.to_usize(),
            ProblemKind::SplitOverlap(t) | ProblemKind::ReversedSplitOverlap(t) => {
                if self.convention != SplitConvention::default() {
                    return None;
                }
                s_upper_bounds(self.k, t, None).ok()?.exact()?.to_usize()
            }
        }
    }
}

impl fmt::Display for SearchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.family(), self.k, self.kind.param())?;
        match self.kind {
            ProblemKind::DisjointFactors(_) => Ok(()),
            _ => write!(f, " [{}]", self.convention.name()),
        }
    }
}

/// Resource limits. A node is a word that was appended and found to avoid
/// the pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), time_limit: None }
    }

    pub fn time(limit: Duration) -> Self {
        Budget { max_nodes: None, time_limit: Some(limit) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The search space was exhausted; the length is the maximum.
    Exact,
    /// The search stopped early; the length is only attained.
    LowerBound,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::LowerBound => "lower-bound",
        }
    }
}

/// Which limit, if any, ended the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BudgetUse {
    Completed,
    NodeLimit,
    TimeLimit,
}

impl BudgetUse {
    pub fn name(self) -> &'static str {
        match self {
            BudgetUse::Completed => "completed",
            BudgetUse::NodeLimit => "node-limit",
            BudgetUse::TimeLimit => "time-limit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Depth at which the tree is cut into independent subtrees. `0` runs a
    /// single serial walk. The result never depends on `threads`.
    pub split_depth: usize,
    pub threads: usize,
    /// Keep every canonical word of maximal length, not just the least.
    pub collect_all: bool,
    /// Nodes spent on a serial warm-up before splitting; the length it finds
    /// is used to prune every subtree.
    pub warmup_nodes: u64,
    /// Skip every branch that cannot reach this length. A completed run that
    /// reaches it is exact; one that stays below it is only a lower bound.
    pub min_length: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            split_depth: 0,
            threads: 1,
            collect_all: false,
            warmup_nodes: 50_000,
            min_length: None,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SearchOptions { budget, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub problem: SearchProblem,
    pub max_length: usize,
    pub status: Status,
    /// The lexicographically least longest word first.
    pub witnesses: Vec<Word>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub budget_used: BudgetUse,
}

impl SearchOutcome {
    pub fn witness(&self) -> &Word {
        &self.witnesses[0]
    }
}

/// Does `w` avoid the problem's pattern over the problem's alphabet?
pub fn verify_witness(problem: &SearchProblem, w: &Word) -> bool {
    if w.symbols().iter().any(|&a| a as usize >= problem.k) {
        return false;
    }
    let w = Word::from_raw(w.symbols().to_vec(), problem.k);
    match problem.kind {
        ProblemKind::DisjointFactors(n) => find_disjoint_pair(&w, n).is_none(),
        ProblemKind::SplitOverlap(t) => find_split_t_overlap_with(&w, t, problem.convention).is_none(),
        ProblemKind::ReversedSplitOverlap(t) => {
            find_reversed_split_t_overlap_with(&w, t, problem.convention).is_none()
        }
    }
}

/// Longest word avoiding the problem's pattern, searched serially.
pub fn longest_avoiding(problem: &SearchProblem, budget: Budget) -> Result<SearchOutcome> {
    longest_avoiding_with(problem, &SearchOptions::with_budget(budget))
}

/// Longest avoiding word with explicit options.
pub fn longest_avoiding_with(
    problem: &SearchProblem,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if options.split_depth == 0 {
        return Ok(search_serial(problem, options, None)?.0);
    }
    let out = search_split(problem, options, true)?;
    let below_known = problem.known_value().is_some_and(|v| out.max_length < v);
    if out.status == Status::Exact && below_known {
        return search_split(problem, options, false);
    }
    Ok(out)
}

/// Serial search that can stop and be resumed. Returns the outcome so far
/// and, when a budget ended the run, a checkpoint to continue from.
pub fn search_resumable(
    problem: &SearchProblem,
    options: &SearchOptions,
    from: Option<&Checkpoint>,
) -> Result<(SearchOutcome, Option<Checkpoint>)> {
    if let Some(c) = from {
        if c.problem != *problem {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for {}, not {}",
                c.problem, problem
            )));
        }
    }
    search_serial(problem, options, from)
}

fn limits_for(problem: &SearchProblem, options: &SearchOptions, start: Instant) -> Limits {
    Limits {
        max_nodes: options.budget.max_nodes,
        deadline: options.budget.time_limit.map(|d| start + d),
        cap: problem.a_priori_cap(),
        collect_all: options.collect_all,
        canonical: true,
        floor: problem.known_value().unwrap_or(0).max(options.min_length.unwrap_or(0)),
    }
}

fn dispatch<R>(
    problem: &SearchProblem,
    disjoint: impl FnOnce(DisjointState) -> R,
    split: impl FnOnce(SplitState) -> R,
) -> R {
    let state = SearchState::new(problem);
    match problem.kind {
        ProblemKind::DisjointFactors(_) => disjoint(state.into_disjoint().expect("disjoint")),
        _ => split(state.into_split().expect("split")),
    }
}

fn to_words(k: usize, ws: Vec<Vec<Symbol>>) -> Vec<Word> {
    ws.into_iter().map(|w| Word::from_raw(w, k)).collect()
}

fn search_serial(
    problem: &SearchProblem,
    options: &SearchOptions,
    from: Option<&Checkpoint>,
) -> Result<(SearchOutcome, Option<Checkpoint>)> {
    let start = Instant::now();
    let limits = limits_for(problem, options, start);
    let k = problem.k;
    let (resume, seed, prior_nodes) = match from {
        Some(c) => {
            let cursor = Cursor { path: c.prefix.symbols().to_vec(), next: c.cursor };
            let seed: Vec<Vec<Symbol>> = c.best.iter().map(|w| w.symbols().to_vec()).collect();
            (Some(cursor), Some(seed), c.nodes)
        }
        None => (None, None, 0),
    };
    if let Some(c) = from {
        if !verify_witness(problem, &c.prefix) {
            return Err(Error::Checkpoint("checkpoint prefix violates the pattern".into()));
        }
    }
    let mut r: RunResult = dispatch(
        problem,
        |mut s| engine::run(&mut s, k, limits, resume.clone(), seed.clone()),
        |mut s| engine::run(&mut s, k, limits, resume.clone(), seed.clone()),
    );
    let hint = options.min_length.unwrap_or(0);
    if r.complete && r.best.len() < limits.floor && r.best.len() >= hint {
        // The known optimum was not reached, so it cannot be trusted here.
        let open = Limits { floor: hint, ..limits };
        let spent = r.nodes;
        r = dispatch(
            problem,
            |mut s| engine::run(&mut s, k, open, resume.clone(), seed.clone()),
            |mut s| engine::run(&mut s, k, open, resume.clone(), seed.clone()),
        );
        r.nodes += spent;
    }
    let settled = r.complete && r.best.len() >= hint;
    let nodes = prior_nodes + r.nodes;
    let budget_used = if r.complete {
        BudgetUse::Completed
    } else if r.timed_out {
        BudgetUse::TimeLimit
    } else {
        BudgetUse::NodeLimit
    };
    let checkpoint = r.cursor.map(|c| Checkpoint {
        problem: *problem,
        prefix: Word::from_raw(c.path, k),
        cursor: c.next,
        nodes,
        best: to_words(k, r.witnesses.clone()),
    });
    let outcome = SearchOutcome {
        problem: *problem,
        max_length: r.best.len(),
        status: if settled { Status::Exact } else { Status::LowerBound },
        witnesses: to_words(k, r.witnesses),
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        budget_used,
    };
    Ok((outcome, checkpoint))
}

/// All canonical avoiding words of exactly `depth` letters, plus the shallow
/// walk's node count and its longest words.
fn prefixes_at<E: Extender>(
    state: &mut E,
    k: usize,
    depth: usize,
) -> (Vec<Vec<Symbol>>, u64, Vec<Vec<Symbol>>) {
    fn walk<E: Extender>(
        state: &mut E,
        k: usize,
        depth: usize,
        lim: usize,
        out: &mut Vec<Vec<Symbol>>,
        nodes: &mut u64,
        best: &mut Vec<Vec<Symbol>>,
    ) {
        let len = state.word().len();
        if len == depth {
            out.push(state.word().to_vec());
            return;
        }
        *nodes += 1;
        if best.is_empty() || len > best[0].len() {
            best.clear();
            best.push(state.word().to_vec());
        } else if len == best[0].len() {
            best.push(state.word().to_vec());
        }
        for a in 0..lim {
            if state.try_push(a as Symbol) {
                let child_lim = lim.max(a + 2).min(k);
                walk(state, k, depth, child_lim, out, nodes, best);
                state.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut nodes = 0;
    let mut best = Vec::new();
    walk(state, k, depth, 1.min(k), &mut out, &mut nodes, &mut best);
    (out, nodes, best)
}

fn merge(into: &mut Vec<Vec<Symbol>>, from: Vec<Vec<Symbol>>, collect_all: bool) {
    let Some(first) = from.first() else { return };
    let cur = into.first().map_or(0, |w| w.len());
    if into.is_empty() || first.len() > cur {
        *into = from;
    } else if first.len() == cur {
        into.extend(from);
    }
    into.sort();
    into.dedup();
    if !collect_all {
        into.truncate(1);
    }
}

fn search_split(
    problem: &SearchProblem,
    options: &SearchOptions,
    use_known: bool,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    let k = problem.k;
    let mut base_limits = limits_for(problem, options, start);
    if !use_known {
        base_limits.floor = options.min_length.unwrap_or(0);
    }

    // Serial warm-up: settles small instances outright and supplies a floor.
    let warm_opts = SearchOptions {
        budget: Budget {
            max_nodes: Some(
                options.budget.max_nodes.map_or(options.warmup_nodes, |m| m.min(options.warmup_nodes)),
            ),
            time_limit: options.budget.time_limit,
        },
        ..options.clone()
    };
    let (warm, _) = search_serial(problem, &warm_opts, None)?;
    if warm.status == Status::Exact || warm.budget_used == BudgetUse::TimeLimit {
        return Ok(SearchOutcome { elapsed: start.elapsed(), ..warm });
    }
    let floor = warm.max_length.max(base_limits.floor);

    let depth = options.split_depth;
    let (prefixes, shallow_nodes, shallow_best) = dispatch(
        problem,
        |mut s| prefixes_at(&mut s, k, depth),
        |mut s| prefixes_at(&mut s, k, depth),
    );

    let limits = Limits { floor, ..base_limits };
    let run_one = |prefix: &Vec<Symbol>| -> RunResult {
        dispatch(
            problem,
            |mut s| {
                for &a in prefix {
                    s.try_push(a);
                }
                engine::run(&mut s, k, limits, None, None)
            },
            |mut s| {
                for &a in prefix {
                    s.try_push(a);
                }
                engine::run(&mut s, k, limits, None, None)
            },
        )
    };
    let threads = options.threads.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let results: Vec<RunResult> = pool.install(|| prefixes.par_iter().map(run_one).collect());

    let mut witnesses: Vec<Vec<Symbol>> = Vec::new();
    merge(&mut witnesses, shallow_best, options.collect_all);
    let mut nodes = warm.nodes_explored + shallow_nodes;
    let mut complete = true;
    let mut timed_out = false;
    for r in results {
        nodes += r.nodes;
        complete &= r.complete;
        timed_out |= r.timed_out;
        merge(&mut witnesses, r.witnesses, options.collect_all);
    }
    // The warm-up word is attainable; it only matters if every subtree fell
    // short of it, which can happen when budgets cut subtrees off.
    merge(&mut witnesses, to_raw(&warm.witnesses), options.collect_all);
    let budget_used = if complete {
        BudgetUse::Completed
    } else if timed_out {
        BudgetUse::TimeLimit
    } else {
        BudgetUse::NodeLimit
    };
    let settled = complete && witnesses[0].len() >= options.min_length.unwrap_or(0);
    Ok(SearchOutcome {
        problem: *problem,
        max_length: witnesses[0].len(),
        status: if settled { Status::Exact } else { Status::LowerBound },
        witnesses: to_words(k, witnesses),
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        budget_used,
    })
}

fn to_raw(ws: &[Word]) -> Vec<Vec<Symbol>> {
    ws.iter().map(|w| w.symbols().to_vec()).collect()
}
