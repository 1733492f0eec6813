//! Randomized lower bounds for instances too large to settle exactly.
//!
//! Each round runs a depth-first walk with shuffled child order and a small
//! node allowance, starting from a random cut of the best word so far. The
//! cut reaches further back the longer no round has improved; every
//! sixteenth round starts over from the seed prefix.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

use super::state::Extender;
use super::{
    verify_witness, Budget, BudgetUse, ProblemKind, SearchOutcome, SearchProblem, SearchState,
    Status,
};

#[derive(Clone, Debug)]
pub struct FrontierOptions {
    /// Total node allowance across all rounds.
    pub max_nodes: u64,
    /// Node allowance of a single round.
    pub round_nodes: u64,
    pub seed: u64,
    /// Every round extends this word.
    pub prefix: Option<Word>,
    pub time_limit: Option<Duration>,
}

impl Default for FrontierOptions {
    fn default() -> Self {
        FrontierOptions {
            max_nodes: 2_000_000,
            round_nodes: 1_000,
            seed: 0,
            prefix: None,
            time_limit: None,
        }
    }
}

struct Walker<'a, E: Extender> {
    state: E,
    k: usize,
    rng: &'a mut StdRng,
    best: Vec<Symbol>,
}

impl<E: Extender> Walker<'_, E> {
    fn letters(&mut self, lim: usize) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = (0..lim as Symbol).collect();
        v.shuffle(self.rng);
        v
    }

    /// Randomized depth-first walk below the current word; returns nodes used.
    fn round(&mut self, allowance: u64) -> u64 {
        let base = self.state.word().len();
        let used = self.state.word().iter().max().map_or(0, |&m| m as usize + 1);
        let root_lim = (used + 1).min(self.k);
        let mut stack: Vec<(Vec<Symbol>, usize, usize)> = vec![(self.letters(root_lim), 0, root_lim)];
        let mut nodes = 0u64;
        while let Some(top) = stack.last_mut() {
            if nodes >= allowance {
                break;
            }
            if top.1 >= top.0.len() {
                stack.pop();
                if self.state.word().len() > base {
                    self.state.pop();
                }
                continue;
            }
            let a = top.0[top.1];
            let lim = top.2;
            top.1 += 1;
            if !self.state.try_push(a) {
                continue;
            }
            nodes += 1;
            if self.state.word().len() > self.best.len() {
                self.best = self.state.word().to_vec();
            }
            let dead = self.state.upper_bound().is_some_and(|ub| ub <= self.best.len());
            let child_lim = lim.max(a as usize + 2).min(self.k);
            let order = if dead { Vec::new() } else { self.letters(child_lim) };
            stack.push((order, 0, child_lim));
        }
        while self.state.word().len() > base {
            self.state.pop();
        }
        nodes
    }
}

fn drive<E: Extender>(
    mut state: E,
    k: usize,
    options: &FrontierOptions,
    prefix: &[Symbol],
    deadline: Option<Instant>,
) -> (Vec<Symbol>, u64, bool) {
    let mut rng = StdRng::seed_from_u64(options.seed);
    for &a in prefix {
        state.try_push(a);
    }
    let mut walker = Walker { state, k, rng: &mut rng, best: prefix.to_vec() };
    let mut nodes = 0u64;
    let mut rounds = 0u64;
    let mut stall = 0usize;
    while nodes < options.max_nodes && deadline.is_none_or(|d| Instant::now() < d) {
        let allowance = options.round_nodes.min(options.max_nodes - nodes).max(1);
        let span = walker.best.len() - prefix.len();
        let fresh = span == 0 || rounds.is_multiple_of(16);
        let cut = if fresh {
            prefix.len()
        } else {
            let reach = (2 + stall).min(span);
            walker.best.len() - walker.rng.random_range(1..=reach)
        };
        let target: Vec<Symbol> = walker.best[prefix.len()..cut].to_vec();
        for &a in &target {
            walker.state.try_push(a);
        }
        let before = walker.best.len();
        nodes += walker.round(allowance);
        for _ in 0..target.len() {
            walker.state.pop();
        }
        if walker.best.len() > before {
            stall = 0;
        } else {
            stall += 1;
        }
        rounds += 1;
    }
    (walker.best, nodes, nodes < options.max_nodes)
}

/// Best avoiding word found within `budget`, extending `seed` when given.
/// The budget must be finite; the status is always a lower bound.
pub fn frontier_lower_bound(
    problem: &SearchProblem,
    budget: Budget,
    seed: Option<&Word>,
) -> Result<SearchOutcome> {
    if budget.max_nodes.is_none() && budget.time_limit.is_none() {
        return Err(Error::InvalidParameter("frontier search needs a finite budget".into()));
    }
    let options = FrontierOptions {
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        time_limit: budget.time_limit,
        prefix: seed.cloned(),
        ..FrontierOptions::default()
    };
    frontier_lower_bound_with(problem, &options)
}

/// Randomized restarts with explicit options. Deterministic for a fixed RNG
/// seed and node allowance; a zero allowance returns the prefix.
pub fn frontier_lower_bound_with(
    problem: &SearchProblem,
    options: &FrontierOptions,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    let k = problem.k;
    let prefix: Vec<Symbol> = match &options.prefix {
        Some(w) => {
            if !verify_witness(problem, w) {
                return Err(Error::InvalidParameter("prefix violates the pattern".into()));
            }
            w.symbols().to_vec()
        }
        None => Vec::new(),
    };
    let deadline = options.time_limit.map(|d| start + d);
    let state = SearchState::new(problem);
    let (best, nodes, timed_out) = match problem.kind {
        ProblemKind::DisjointFactors(_) => {
            drive(state.into_disjoint().expect("disjoint"), k, options, &prefix, deadline)
        }
        _ => drive(state.into_split().expect("split"), k, options, &prefix, deadline),
    };
    Ok(SearchOutcome {
        problem: *problem,
        max_length: best.len(),
        status: Status::LowerBound,
        witnesses: vec![Word::from_raw(best, k)],
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        budget_used: if timed_out { BudgetUse::TimeLimit } else { BudgetUse::NodeLimit },
    })
}
