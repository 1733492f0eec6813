//! Naive reference implementations: direct index-tuple enumeration with no
//! tables or shortcuts.

#![allow(dead_code)]

use splitov::detect::SplitConvention;
use splitov::search::{ProblemKind, SearchProblem};

pub type Tuple = (usize, usize, usize, usize);

pub fn has_period(s: &[u8], p: usize) -> bool {
    (p..s.len()).all(|i| s[i] == s[i - p])
}

/// `s = u u u'` with `|u| >= max(t, 1)`, `u'` the length-`t` prefix of `u`.
pub fn is_t_overlap(s: &[u8], t: usize) -> bool {
    let n = s.len();
    (t.max(1)..=n / 2).any(|p| 2 * p + t == n && has_period(s, p))
}

pub fn factor(w: &[u8], t: usize) -> Option<Tuple> {
    for i in 0..w.len() {
        for end in i..w.len() {
            if is_t_overlap(&w[i..=end], t) {
                return Some((i, end, i, end));
            }
        }
    }
    None
}

fn proper_split(w: &[u8], t: usize, gap: usize, reversed: bool) -> Option<Tuple> {
    let m = w.len();
    for i in 0..m {
        for j in i..m {
            for jp in j + 1 + gap..m {
                for l in jp..m {
                    let x = &w[i..=j];
                    let z = &w[jp..=l];
                    let joined: Vec<u8> = if reversed {
                        z.iter().chain(x).copied().collect()
                    } else {
                        x.iter().chain(z).copied().collect()
                    };
                    if is_t_overlap(&joined, t) {
                        return Some((i, j, jp, l));
                    }
                }
            }
        }
    }
    None
}

/// Proper occurrences first; contiguous ones only when the convention
/// admits an empty piece.
pub fn split(w: &[u8], t: usize, conv: SplitConvention, reversed: bool) -> Option<Tuple> {
    let gap = usize::from(!conv.empty_gap);
    proper_split(w, t, gap, reversed).or_else(|| if conv.empty_piece { factor(w, t) } else { None })
}

pub fn disjoint(w: &[u8], n: usize) -> Option<Tuple> {
    let m = w.len();
    if n == 0 || m < 2 * n {
        return None;
    }
    for a in 0..=m - n {
        for b in a + n..=m - n {
            if w[a..a + n] == w[b..b + n] {
                return Some((a, a + n - 1, b, b + n - 1));
            }
        }
    }
    None
}

pub fn avoids(problem: &SearchProblem, w: &[u8]) -> bool {
    match problem.kind {
        ProblemKind::DisjointFactors(n) => disjoint(w, n).is_none(),
        ProblemKind::SplitOverlap(t) => split(w, t, problem.convention, false).is_none(),
        ProblemKind::ReversedSplitOverlap(t) => split(w, t, problem.convention, true).is_none(),
    }
}

/// Generate-and-test by increasing length over all words (no symmetry
/// reduction). Returns the maximum length and the least word of that length.
pub fn longest(problem: &SearchProblem, max_len: usize) -> (usize, Vec<u8>) {
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    loop {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..problem.k as u8 {
                let mut v = w.clone();
                v.push(a);
                if avoids(problem, &v) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() || layer[0].len() >= max_len {
            let best = layer.iter().min().cloned().unwrap_or_default();
            return (best.len(), best);
        }
        layer = next;
    }
}

/// All words over `k` letters of length `n`.
pub fn all_words(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn smallest_period(s: &[u8]) -> usize {
    (1..=s.len()).find(|&p| has_period(s, p)).unwrap_or(0)
}

pub fn is_unbordered(s: &[u8]) -> bool {
    (1..s.len()).all(|b| s[..b] != s[s.len() - b..])
}

pub fn count_occurrences(w: &[u8], x: &[u8]) -> usize {
    if x.len() > w.len() {
        return 0;
    }
    (0..=w.len() - x.len()).filter(|&i| &w[i..i + x.len()] == x).count()
}
