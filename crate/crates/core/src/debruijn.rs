//! De Bruijn words, the order-3 cycle-joining successor rule built on the
//! feedback function `f(a1 a2 a3) = a1 + a2 - a3`, and the two explicit
//! constructions that meet the period-sum bound for `C(k,2)` and `C(k,3)`.

use crate::detect::find_disjoint_pair;
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Largest number of windows (`k^n`) the generators will materialize.
pub const WINDOW_BUDGET: usize = 1 << 24;

pub type Triple = [Symbol; 3];

/// `(a1 + a2 - a3) mod k`.
pub fn feedback_f(k: usize, a1: Symbol, a2: Symbol, a3: Symbol) -> Symbol {
    ((a1 as usize + a2 as usize + k - a3 as usize) % k) as Symbol
}

/// `F(a1 a2 a3) = a2 a3 f(a1 a2 a3)`.
pub fn shift_map(k: usize, w: Triple) -> Triple {
    [w[1], w[2], feedback_f(k, w[0], w[1], w[2])]
}

fn code(k: usize, w: Triple) -> usize {
    (w[0] as usize * k + w[1] as usize) * k + w[2] as usize
}

fn decode(k: usize, c: usize) -> Triple {
    [(c / (k * k)) as Symbol, (c / k % k) as Symbol, (c % k) as Symbol]
}

fn check_order3(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter("order-3 cycle joining needs k >= 2".into()));
    }
    if k.checked_pow(3).is_none_or(|v| v > WINDOW_BUDGET) {
        return Err(Error::BudgetExceeded(format!("k^3 windows for k = {k}")));
    }
    Ok(())
}

/// The cycles of `F` on `Sigma_k^3`. Each cycle is listed starting at its
/// representative (its lexicographically least element) and follows `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePartition {
    pub k: usize,
    pub cycles: Vec<Vec<Triple>>,
    pub representatives: Vec<Triple>,
    cycle_of: Vec<usize>,
}

impl CyclePartition {
    pub fn cycle_index(&self, w: Triple) -> usize {
        self.cycle_of[code(self.k, w)]
    }

    pub fn is_representative(&self, w: Triple) -> bool {
        self.representatives[self.cycle_index(w)] == w
    }
}

pub fn cycle_partition(k: usize) -> Result<CyclePartition> {
    check_order3(k)?;
    let total = k * k * k;
    let mut cycle_of = vec![usize::MAX; total];
    let mut cycles = Vec::new();
    let mut representatives = Vec::new();
    // Codes ascend in lexicographic order, so the first unvisited code of a
    // cycle is its representative.
    for start in 0..total {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let rep = decode(k, start);
        let mut cycle = vec![rep];
        cycle_of[start] = id;
        let mut cur = shift_map(k, rep);
        while cur != rep {
            let c = code(k, cur);
            if cycle_of[c] != usize::MAX {
                return Err(Error::Validation("shift map is not injective".into()));
            }
            cycle_of[c] = id;
            cycle.push(cur);
            cur = shift_map(k, cur);
        }
        cycles.push(cycle);
        representatives.push(rep);
    }
    Ok(CyclePartition { k, cycles, representatives, cycle_of })
}

/// The rotation order used by the successor rule for words whose last two
/// letters are `a2 a3`.
///
/// Starts from the increasing list of `c` with `a2 a3 c` a representative.
/// When `0` is in the list and `a2 a3 != 00`, `f(0 a2 a3)` is put in front;
/// when `0` is absent and the list is nonempty, `0` is put in front.
pub fn tau_sequence(partition: &CyclePartition, a2: Symbol, a3: Symbol) -> Vec<Symbol> {
    let k = partition.k;
    let mut seq: Vec<Symbol> = (0..k as Symbol)
        .filter(|&c| partition.is_representative([a2, a3, c]))
        .collect();
    if seq.first() == Some(&0) {
        if (a2, a3) != (0, 0) {
            seq.insert(0, feedback_f(k, 0, a2, a3));
        }
    } else if !seq.is_empty() {
        seq.insert(0, 0);
    }
    seq
}

/// Next-symbol rule `g` assembled from the stored `tau` sequences.
#[derive(Clone, Debug)]
pub struct SuccessorRule {
    k: usize,
    tau: Vec<Vec<Symbol>>,
}

impl SuccessorRule {
    pub fn new(k: usize) -> Result<Self> {
        let partition = cycle_partition(k)?;
        Ok(Self::from_partition(&partition))
    }

    pub fn from_partition(partition: &CyclePartition) -> Self {
        let k = partition.k;
        let mut tau = Vec::with_capacity(k * k);
        for a2 in 0..k as Symbol {
            for a3 in 0..k as Symbol {
                tau.push(tau_sequence(partition, a2, a3));
            }
        }
        SuccessorRule { k, tau }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tau(&self, a2: Symbol, a3: Symbol) -> &[Symbol] {
        &self.tau[a2 as usize * self.k + a3 as usize]
    }

    pub fn next(&self, a1: Symbol, a2: Symbol, a3: Symbol) -> Symbol {
        let f = feedback_f(self.k, a1, a2, a3);
        let t = self.tau(a2, a3);
        match t.iter().position(|&c| c == f) {
            Some(j) => t[(j + 1) % t.len()],
            None => f,
        }
    }
}

/// One-off evaluation of `g`; build a [`SuccessorRule`] for repeated use.
pub fn successor_g(k: usize, a1: Symbol, a2: Symbol, a3: Symbol) -> Result<Symbol> {
    Ok(SuccessorRule::new(k)?.next(a1, a2, a3))
}

/// Iterates the rule from `000` for `k^3` steps; returns the cyclic word.
pub fn successor_cycle(rule: &SuccessorRule) -> Vec<Symbol> {
    let k = rule.k;
    let total = k * k * k;
    let mut out = Vec::with_capacity(total);
    let mut state: Triple = [0, 0, 0];
    for _ in 0..total {
        out.push(state[0]);
        state = [state[1], state[2], rule.next(state[0], state[1], state[2])];
    }
    out
}

/// Does every length-`n` window over `k` letters occur exactly once in `w`
/// (read linearly)?
pub fn windows_exactly_once(w: &[Symbol], k: usize, n: usize) -> bool {
    let Some(total) = k.checked_pow(n as u32) else {
        return false;
    };
    if w.len() + 1 != total + n {
        return false;
    }
    let mut seen = vec![false; total];
    for win in w.windows(n) {
        let c = win.iter().fold(0usize, |acc, &s| acc * k + s as usize);
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

fn contains(w: &[Symbol], pattern: &[Symbol]) -> bool {
    w.windows(pattern.len()).any(|win| win == pattern)
}

fn position(w: &[Symbol], pattern: &[Symbol]) -> Option<usize> {
    w.windows(pattern.len()).position(|win| win == pattern)
}

/// Does `w` contain `abab` or `baba` for every pair of distinct letters?
pub fn has_pair_coverage(w: &[Symbol], k: usize) -> bool {
    (0..k as Symbol).all(|a| {
        (a + 1..k as Symbol).all(|b| contains(w, &[a, b, a, b]) || contains(w, &[b, a, b, a]))
    })
}

/// An order-3 de Bruijn word of length `k^3 + 2` (the successor-rule cycle
/// from `000` with its first two letters appended) that contains `abab` or
/// `baba` for every pair `a != b`.
pub fn debruijn_order3_special(k: usize) -> Result<Word> {
    let rule = SuccessorRule::new(k)?;
    let mut w = successor_cycle(&rule);
    let (first, second) = (w[0], w[1]);
    w.push(first);
    w.push(second);
    if !windows_exactly_once(&w, k, 3) || !has_pair_coverage(&w, k) {
        return Err(Error::Validation(
            "successor rule did not produce a de Bruijn word".into(),
        ));
    }
    Ok(Word::from_raw(w, k))
}

/// A linear de Bruijn word of order `n`, built greedily: start from
/// `(k-1)^n` and always append the smallest letter that yields a new window.
pub fn debruijn_order_n(k: usize, n: usize) -> Result<Word> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("need k >= 1 and n >= 1".into()));
    }
    let total = k
        .checked_pow(n as u32)
        .filter(|&v| v <= WINDOW_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("k^n windows for k = {k}, n = {n}")))?;
    let top = (k - 1) as Symbol;
    let mut w: Vec<Symbol> = vec![top; n];
    let mut seen = vec![false; total];
    let mut cur = w.iter().fold(0usize, |acc, &s| acc * k + s as usize);
    seen[cur] = true;
    let high = total / k;
    loop {
        let tail = (cur % high) * k;
        match (0..k).find(|&a| !seen[tail + a]) {
            Some(a) => {
                cur = tail + a;
                seen[cur] = true;
                w.push(a as Symbol);
            }
            None => break,
        }
    }
    if !windows_exactly_once(&w, k, n) {
        return Err(Error::Validation("greedy construction did not cover every window".into()));
    }
    Ok(Word::from_raw(w, k))
}

/// A word of length `k^2 + k + 1` without two disjoint occurrences of any
/// length-2 factor: an order-2 de Bruijn word with each `aa` grown to `aaa`.
pub fn construct_c2_lower(k: usize) -> Result<Word> {
    let mut w = debruijn_order_n(k, 2)?.into_symbols();
    for a in 0..k as Symbol {
        let pos = position(&w, &[a, a])
            .ok_or_else(|| Error::Validation(format!("no {a}{a} in the de Bruijn word")))?;
        w.insert(pos + 2, a);
    }
    let word = Word::from_raw(w, k);
    if find_disjoint_pair(&word, 2).is_some() {
        return Err(Error::Validation("c2 construction has a disjoint pair".into()));
    }
    Ok(word)
}

/// A word of length `k^3 + k^2 + k + 2` without two disjoint occurrences of
/// any length-3 factor.
///
/// Starting from [`debruijn_order3_special`], `ab` is inserted right after an
/// `abab` (or `ba` after a `baba`) for every pair, leftmost site first, and
/// then `aa` after the occurrence of each `aaa`.
pub fn construct_c3_lower(k: usize) -> Result<Word> {
    let mut w = debruijn_order3_special(k)?.into_symbols();
    let mut pending: Vec<(Symbol, Symbol)> = Vec::new();
    for a in 0..k as Symbol {
        for b in a + 1..k as Symbol {
            pending.push((a, b));
        }
    }
    while !pending.is_empty() {
        let mut best: Option<(usize, usize, [Symbol; 2])> = None;
        for (idx, &(a, b)) in pending.iter().enumerate() {
            let site = match (position(&w, &[a, b, a, b]), position(&w, &[b, a, b, a])) {
                (Some(p), Some(q)) if q < p => (q, [b, a]),
                (Some(p), _) => (p, [a, b]),
                (None, Some(q)) => (q, [b, a]),
                (None, None) => {
                    return Err(Error::Validation(format!("pair {a},{b} has no alternating site")))
                }
            };
            if best.is_none_or(|(p, _, _)| site.0 < p) {
                best = Some((site.0, idx, site.1));
            }
        }
        let (pos, idx, ins) = best.expect("pending is nonempty");
        w.splice(pos + 4..pos + 4, ins);
        pending.swap_remove(idx);
    }
    for a in 0..k as Symbol {
        let pos = position(&w, &[a, a, a])
            .ok_or_else(|| Error::Validation(format!("no {a}{a}{a} in the word")))?;
        w.splice(pos + 3..pos + 3, [a, a]);
    }
    let word = Word::from_raw(w, k);
    if find_disjoint_pair(&word, 3).is_some() {
        return Err(Error::Validation("c3 construction has a disjoint pair".into()));
    }
    Ok(word)
}
