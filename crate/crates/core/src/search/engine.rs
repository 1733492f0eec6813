use std::time::Instant;

use crate::word::Symbol;

use super::state::Extender;

/// Limits for one depth-first run.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Limits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    /// A length no avoiding word can exceed; reaching it ends the run.
    pub cap: Option<usize>,
    pub collect_all: bool,
    pub canonical: bool,
    /// A length known to be attainable elsewhere; subtrees that cannot
    /// reach it are skipped.
    pub floor: usize,
}

/// Where a stopped run should resume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cursor {
    /// Path below the run's root.
    pub path: Vec<Symbol>,
    /// Next child letter to try below `path`.
    pub next: u16,
}

#[derive(Clone, Debug)]
pub(crate) struct RunResult {
    pub best: Vec<Symbol>,
    pub witnesses: Vec<Vec<Symbol>>,
    pub nodes: u64,
    /// True when the whole subtree was covered (or the cap was hit).
    pub complete: bool,
    pub timed_out: bool,
    pub cursor: Option<Cursor>,
}

/// Largest letter that may come next under letter-renaming symmetry.
fn child_limit(word: &[Symbol], k: usize, canonical: bool) -> u16 {
    if !canonical {
        return k as u16;
    }
    let used = word.iter().max().map_or(0, |&m| m as usize + 1);
    (used + 1).min(k) as u16
}

/// Depth-first search below the state's current word, children in
/// increasing letter order. The first word of maximal length found is the
/// lexicographically least one in the subtree.
pub(crate) fn run<E: Extender>(
    state: &mut E,
    k: usize,
    limits: Limits,
    resume: Option<Cursor>,
    seed: Option<Vec<Vec<Symbol>>>,
) -> RunResult {
    let base = state.word().len();
    let mut witnesses = match seed {
        Some(ws) if !ws.is_empty() => ws,
        _ => vec![state.word().to_vec()],
    };
    let mut best = witnesses[0].clone();
    let mut nodes: u64 = 0;
    let mut next: Vec<u16> = Vec::new();
    let mut limit_stack: Vec<u16> = vec![child_limit(state.word(), k, limits.canonical)];
    let child_lim = |parent: u16, a: Symbol| -> u16 {
        if limits.canonical {
            parent.max(a as u16 + 2).min(k as u16)
        } else {
            k as u16
        }
    };

    let prune = |state: &E, best_len: usize| -> bool {
        match state.upper_bound() {
            Some(ub) if ub < limits.floor => true,
            Some(ub) if limits.collect_all => ub < best_len,
            Some(ub) => ub <= best_len,
            None => false,
        }
    };

    if let Some(cur) = resume {
        for &a in &cur.path {
            let pushed = state.try_push(a);
            assert!(pushed, "resume path must avoid the pattern");
            next.push(a as u16 + 1);
            let parent = *limit_stack.last().expect("root limit");
            limit_stack.push(child_lim(parent, a));
        }
        next.push(cur.next);
    } else {
        nodes += 1;
        if limits.cap.is_some_and(|c| best.len() >= c) && !limits.collect_all {
            return RunResult {
                best,
                witnesses,
                nodes,
                complete: true,
                timed_out: false,
                cursor: None,
            };
        }
        next.push(if prune(state, best.len()) { u16::MAX } else { 0 });
    }

    let mut ticks: u32 = 0;
    loop {
        let depth = state.word().len() - base;
        let lim = limit_stack[depth];
        if next[depth] < lim {
            let out_of_nodes = limits.max_nodes.is_some_and(|m| nodes >= m);
            ticks = ticks.wrapping_add(1);
            let out_of_time =
                ticks.is_multiple_of(1024) && limits.deadline.is_some_and(|d| Instant::now() >= d);
            if out_of_nodes || out_of_time {
                let path = state.word()[base..].to_vec();
                let cursor = Cursor { path, next: next[depth] };
                while state.word().len() > base {
                    state.pop();
                }
                return RunResult {
                    best,
                    witnesses,
                    nodes,
                    complete: false,
                    timed_out: out_of_time,
                    cursor: Some(cursor),
                };
            }
            let a = next[depth] as Symbol;
            next[depth] += 1;
            if !state.try_push(a) {
                continue;
            }
            nodes += 1;
            let w = state.word();
            if w.len() > best.len() {
                best = w.to_vec();
                witnesses.clear();
                witnesses.push(best.clone());
            } else if limits.collect_all && w.len() == best.len() {
                witnesses.push(w.to_vec());
            }
            if !limits.collect_all && limits.cap.is_some_and(|c| best.len() >= c) {
                while state.word().len() > base {
                    state.pop();
                }
                return RunResult {
                    best,
                    witnesses,
                    nodes,
                    complete: true,
                    timed_out: false,
                    cursor: None,
                };
            }
            let child_next = if prune(state, best.len()) { u16::MAX } else { 0 };
            next.push(child_next);
            limit_stack.push(child_lim(lim, a));
        } else {
            if depth == 0 {
                break;
            }
            next.pop();
            limit_stack.pop();
            state.pop();
        }
    }
    RunResult { best, witnesses, nodes, complete: true, timed_out: false, cursor: None }
}
