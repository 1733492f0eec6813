//! Incremental, suffix-anchored violation checks.
//!
//! A state holds a word that avoids its pattern and answers whether one more
//! letter keeps it that way. Only violations whose last letter is the new
//! one are examined; everything earlier was checked when it was appended.

use crate::combinatorics::max_nondisjoint_cap;
use crate::detect::{min_period, SplitConvention};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

use super::{ProblemKind, SearchProblem};

/// The operations the depth-first engine needs from a state.
pub(crate) trait Extender: Clone + Send {
    fn word(&self) -> &[Symbol];
    /// Appends `a` if that introduces no violation.
    fn try_push(&mut self, a: Symbol) -> bool;
    fn pop(&mut self);
    /// An upper bound on the length of any avoiding extension, if one is known.
    fn upper_bound(&self) -> Option<usize> {
        None
    }
}

const NONE: u32 = u32::MAX;

/// Tracks every length-`n` factor: where it first occurs, how often it has
/// occurred, and how many more occurrences it could still take.
#[derive(Clone, Debug)]
pub(crate) struct DisjointState {
    k: usize,
    n: usize,
    high: usize,
    word: Vec<Symbol>,
    codes: Vec<usize>,
    earliest: Vec<u32>,
    occ: Vec<u16>,
    cap: Vec<u16>,
    /// Occurrences still available to factors that are unseen or whose
    /// overlap window is still open.
    avail: i64,
    undo: Vec<(bool, i64)>,
}

impl DisjointState {
    pub(crate) fn new(k: usize, n: usize) -> Self {
        let total = k.pow(n as u32);
        let mut cap = vec![0u16; total];
        let mut buf = vec![0 as Symbol; n];
        for (c, slot) in cap.iter_mut().enumerate() {
            let mut v = c;
            for i in (0..n).rev() {
                buf[i] = (v % k) as Symbol;
                v /= k;
            }
            let x = Word::from_raw(buf.clone(), k);
            *slot = max_nondisjoint_cap(&x).expect("n >= 1") as u16;
        }
        let avail = cap.iter().map(|&c| c as i64).sum();
        DisjointState {
            k,
            n,
            high: total / k,
            word: Vec::new(),
            codes: Vec::new(),
            earliest: vec![NONE; total],
            occ: vec![0; total],
            cap,
            avail,
            undo: Vec::new(),
        }
    }

    fn code_with(&self, a: Symbol) -> usize {
        let prev = self.codes.last().copied().unwrap_or(0);
        (prev % self.high) * self.k + a as usize
    }
}

impl Extender for DisjointState {
    fn word(&self) -> &[Symbol] {
        &self.word
    }

    fn try_push(&mut self, a: Symbol) -> bool {
        let n = self.n;
        let m = self.word.len() + 1;
        let code = self.code_with(a);
        let mut first = false;
        if m >= n {
            let start = m - n;
            let e = self.earliest[code];
            if e != NONE && e as usize + n <= start {
                return false;
            }
            if e == NONE {
                self.earliest[code] = start as u32;
                first = true;
            }
            self.occ[code] += 1;
            self.avail -= 1;
        }
        self.word.push(a);
        self.codes.push(code);
        // The factor first seen at m - 2n + 1 can no longer recur.
        let mut killed = 0i64;
        if m + 1 >= 2 * n {
            let e = m + 1 - 2 * n;
            let c = self.codes[e + n - 1];
            if self.earliest[c] as usize == e {
                killed = self.cap[c] as i64 - self.occ[c] as i64;
                self.avail -= killed;
            }
        }
        self.undo.push((first, killed));
        true
    }

    fn pop(&mut self) {
        let (first, killed) = self.undo.pop().expect("pop on empty state");
        self.avail += killed;
        let m = self.word.len();
        let code = self.codes.pop().expect("nonempty");
        self.word.pop();
        if m >= self.n {
            self.occ[code] -= 1;
            self.avail += 1;
            if first {
                self.earliest[code] = NONE;
            }
        }
    }

    fn upper_bound(&self) -> Option<usize> {
        let base = self.word.len().max(self.n - 1) as i64;
        Some((base + self.avail).max(0) as usize)
    }
}

/// Split and reversed-split t-overlap checks.
///
/// Tables, all indexed by prefix length and kept for every prefix of the
/// current word:
///
/// * `runs[e][p]`: length of the longest suffix of `w[..e]` with period `p`;
/// * `lcs[m][e]`: longest common suffix of `w[..m]` and `w[..e]`;
/// * `long[e]`: the periods `p` with `runs[e][p] > p + t`, which are the only
///   ones (with `p >= max(t, 1)`) that can host a copy of a trailing piece
///   shorter than `p`.
#[derive(Clone, Debug)]
pub(crate) struct SplitState {
    t: usize,
    reversed: bool,
    gap: usize,
    /// Contiguous t-overlaps count too.
    factors: bool,
    word: Vec<Symbol>,
    runs: Vec<Vec<u16>>,
    lcs: Vec<Vec<u16>>,
    long: Vec<Vec<(u16, u16)>>,
}

fn reuse<T>(rows: &mut [Vec<T>], m: usize) -> Vec<T> {
    let mut row = rows.get_mut(m).map(std::mem::take).unwrap_or_default();
    row.clear();
    row
}

fn store<T>(rows: &mut Vec<Vec<T>>, m: usize, row: Vec<T>) {
    if rows.len() > m {
        rows[m] = row;
    } else {
        rows.push(row);
    }
}

impl SplitState {
    pub(crate) fn new(t: usize, reversed: bool, conv: SplitConvention) -> Self {
        SplitState {
            t,
            reversed,
            gap: conv.min_gap(),
            factors: conv.empty_piece,
            word: Vec::new(),
            runs: vec![Vec::new()],
            lcs: vec![Vec::new()],
            long: vec![Vec::new()],
        }
    }

    #[inline]
    fn run(&self, e: usize, p: usize) -> usize {
        if p >= e {
            e
        } else {
            self.runs[e][p] as usize
        }
    }

    fn extend_tables(&mut self) {
        let m = self.word.len();
        let last = self.word[m - 1];
        let mut run_row = reuse(&mut self.runs, m);
        let mut lcs_row = reuse(&mut self.lcs, m);
        let mut long_row = reuse(&mut self.long, m);
        {
            let w = &self.word;
            run_row.push(0);
            for p in 1..m {
                let v = if w[m - 1 - p] == last { self.run(m - 1, p) + 1 } else { p };
                run_row.push(v as u16);
                if v > p + self.t && p >= min_period(self.t) {
                    long_row.push((p as u16, v as u16));
                }
            }
            lcs_row.push(0);
            let prev = &self.lcs[m - 1];
            for e in 1..m {
                let v = if w[e - 1] == last {
                    if e >= 2 { prev[e - 1] + 1 } else { 1 }
                } else {
                    0
                };
                lcs_row.push(v);
            }
        }
        store(&mut self.runs, m, run_row);
        store(&mut self.lcs, m, lcs_row);
        store(&mut self.long, m, long_row);
    }

    /// Is there a violation whose trailing piece `z` is a suffix of the word?
    ///
    /// `x` is the other piece, `s = |x|`, `lz = |z|`, `c = m - lz` the start
    /// of `z`, and the repetition has length `2p + t`.
    fn violates(&self) -> bool {
        let m = self.word.len();
        let t = self.t;
        let g = self.gap;
        let pmin = min_period(t);
        let row = &self.lcs[m];

        if self.factors {
            let mut p = pmin;
            while 2 * p + t <= m {
                if self.run(m, p) >= 2 * p + t {
                    return true;
                }
                p += 1;
            }
        }

        // lz = p: x is z followed (or preceded) by its periodic continuation,
        // so a full copy of z sits at one end of x.
        for (f, &common) in row.iter().enumerate().take(m).skip(1) {
            let common = common as usize;
            let mut p = pmin;
            while p <= common {
                let (end, fits) = if self.reversed {
                    (f + t, f + t + p + g <= m)
                } else {
                    (f, f + p + g <= m && p + t <= f)
                };
                if !fits {
                    break;
                }
                if self.run(end, p) >= p + t {
                    return true;
                }
                p += 1;
            }
        }

        // p < lz < 2p + t: z has period p beyond one period. x needs period p
        // and must agree with z on the q = min(s, p) letters one period away.
        let mut p = pmin;
        while 2 * p + t + g <= m {
            let top = self.run(m, p).min(2 * p + t - 1);
            for lz in p + 1..=top {
                let c = m - lz;
                let s = 2 * p + t - lz;
                let q = s.min(p);
                for end in s..=c - g {
                    let meet = if self.reversed {
                        self.lcs[m - p + q][end - s + q]
                    } else {
                        // x's last q letters sit p letters before z[p - q..p].
                        self.lcs[c + p][end]
                    };
                    if meet as usize >= q && self.run(end, p) >= s {
                        return true;
                    }
                }
            }
            p += 1;
        }

        // lz < p: x contains a full copy of z and a run of period p longer
        // than p + t.
        for end in 1..m.saturating_sub(g) {
            for &(p, r) in &self.long[end] {
                let (p, r) = (p as usize, r as usize);
                let lo = (2 * p + t).saturating_sub(r).max(1);
                for lz in lo..p {
                    let e = if self.reversed {
                        if end + lz + g > m || end + lz < p + t + p {
                            continue;
                        }
                        end + lz - p - t
                    } else {
                        let e = end + lz - p;
                        if e + p + g > m || e < p + t {
                            continue;
                        }
                        e
                    };
                    if e >= 1 && e < m && row[e] as usize >= lz {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Direct enumeration of the same cases, for cross-checking.
    #[cfg(test)]
    fn violates_by_scan(&self) -> bool {
        let w = &self.word;
        let m = w.len();
        let t = self.t;
        let g = self.gap;
        let pmin = min_period(t);
        if self.factors
            && (pmin..).take_while(|p| 2 * p + t <= m).any(|p| self.run(m, p) >= 2 * p + t)
        {
            return true;
        }
        for lz in 1..m {
            let c = m - lz;
            let mut p = pmin;
            while 2 * p + t + g <= m {
                let s = (2 * p + t).saturating_sub(lz);
                if s >= 1 && s + g <= c {
                    for a in 0..=c - g - s {
                        let r: Vec<Symbol> = if self.reversed {
                            w[c..m].iter().chain(&w[a..a + s]).copied().collect()
                        } else {
                            w[a..a + s].iter().chain(&w[c..m]).copied().collect()
                        };
                        if (p..r.len()).all(|i| r[i] == r[i - p]) {
                            return true;
                        }
                    }
                }
                p += 1;
            }
        }
        false
    }
}

impl Extender for SplitState {
    fn word(&self) -> &[Symbol] {
        &self.word
    }

    fn try_push(&mut self, a: Symbol) -> bool {
        self.word.push(a);
        self.extend_tables();
        #[cfg(test)]
        debug_assert_eq!(self.violates(), self.violates_by_scan(), "{:?}", self.word);
        if self.violates() {
            self.word.pop();
            false
        } else {
            true
        }
    }

    fn pop(&mut self) {
        self.word.pop().expect("pop on empty state");
    }
}

#[derive(Clone, Debug)]
enum Inner {
    Disjoint(DisjointState),
    Split(SplitState),
}

/// Incremental avoidance state for one [`SearchProblem`].
#[derive(Clone, Debug)]
pub struct SearchState {
    k: usize,
    inner: Inner,
}

impl SearchState {
    pub fn new(problem: &SearchProblem) -> Self {
        let inner = match problem.kind {
            ProblemKind::DisjointFactors(n) => Inner::Disjoint(DisjointState::new(problem.k, n)),
            ProblemKind::SplitOverlap(t) => {
                Inner::Split(SplitState::new(t, false, problem.convention))
            }
            ProblemKind::ReversedSplitOverlap(t) => {
                Inner::Split(SplitState::new(t, true, problem.convention))
            }
        };
        SearchState { k: problem.k, inner }
    }

    /// Builds the state for `w`, failing if some prefix already violates.
    pub fn from_word(problem: &SearchProblem, w: &Word) -> Result<Self> {
        let mut state = SearchState::new(problem);
        for (i, &a) in w.symbols().iter().enumerate() {
            if !state.push(a)? {
                return Err(Error::InvalidParameter(format!(
                    "prefix of length {} already violates",
                    i + 1
                )));
            }
        }
        Ok(state)
    }

    pub fn word(&self) -> Word {
        Word::from_raw(self.symbols().to_vec(), self.k)
    }

    pub fn symbols(&self) -> &[Symbol] {
        match &self.inner {
            Inner::Disjoint(s) => s.word(),
            Inner::Split(s) => s.word(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols().len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols().is_empty()
    }

    /// Would appending `letter` keep the word violation-free?
    pub fn extend_check(&mut self, letter: Symbol) -> bool {
        if letter as usize >= self.k {
            return false;
        }
        let ok = match &mut self.inner {
            Inner::Disjoint(s) => s.try_push(letter),
            Inner::Split(s) => s.try_push(letter),
        };
        if ok {
            self.pop();
        }
        ok
    }

    /// Appends `letter` when allowed; returns whether it was appended.
    pub fn push(&mut self, letter: Symbol) -> Result<bool> {
        if letter as usize >= self.k {
            return Err(Error::SymbolOutOfRange { symbol: letter as usize, k: self.k });
        }
        Ok(match &mut self.inner {
            Inner::Disjoint(s) => s.try_push(letter),
            Inner::Split(s) => s.try_push(letter),
        })
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        let last = self.symbols().last().copied()?;
        match &mut self.inner {
            Inner::Disjoint(s) => s.pop(),
            Inner::Split(s) => s.pop(),
        }
        Some(last)
    }

    pub fn upper_bound(&self) -> Option<usize> {
        match &self.inner {
            Inner::Disjoint(s) => s.upper_bound(),
            Inner::Split(s) => s.upper_bound(),
        }
    }

    pub(crate) fn into_disjoint(self) -> Option<DisjointState> {
        match self.inner {
            Inner::Disjoint(s) => Some(s),
            Inner::Split(_) => None,
        }
    }

    pub(crate) fn into_split(self) -> Option<SplitState> {
        match self.inner {
            Inner::Split(s) => Some(s),
            Inner::Disjoint(_) => None,
        }
    }
}
