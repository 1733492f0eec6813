//! Whole-word repetition detectors.
//!
//! Each detector reports the violation with the lexicographically least
//! index tuple `(i, j, j', l)`, where the first piece is `w[i..=j]` and the
//! second piece (when there is one) is `w[j'..=l]`. Factor comparisons go
//! through a longest-common-extension table, so every candidate tuple costs
//! O(1) after O(|w|^2) preprocessing.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{occurrences, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    TOverlap,
    SplitTOverlap,
    ReversedSplitTOverlap,
    DisjointPair,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::TOverlap => "t-overlap",
            ViolationKind::SplitTOverlap => "split t-overlap",
            ViolationKind::ReversedSplitTOverlap => "reversed split t-overlap",
            ViolationKind::DisjointPair => "disjoint pair",
        })
    }
}

/// Which degenerate forms of `xyz` count as split occurrences.
///
/// `empty_gap` lets `y` be empty. `empty_piece` lets one of `x`, `z` be
/// empty, so that a contiguous repetition is itself an occurrence; for the
/// forward kind with an empty gap this adds nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitConvention {
    pub empty_gap: bool,
    pub empty_piece: bool,
}

impl Default for SplitConvention {
    fn default() -> Self {
        SplitConvention { empty_gap: true, empty_piece: true }
    }
}

impl SplitConvention {
    pub const ALL: [SplitConvention; 4] = [
        SplitConvention { empty_gap: true, empty_piece: true },
        SplitConvention { empty_gap: true, empty_piece: false },
        SplitConvention { empty_gap: false, empty_piece: true },
        SplitConvention { empty_gap: false, empty_piece: false },
    ];

    pub fn min_gap(self) -> usize {
        usize::from(!self.empty_gap)
    }

    /// `empty-gap/empty-piece`, `nonempty-gap/nonempty-pieces`, and so on.
    pub fn name(self) -> String {
        format!(
            "{}/{}",
            if self.empty_gap { "empty-gap" } else { "nonempty-gap" },
            if self.empty_piece { "empty-piece" } else { "nonempty-pieces" }
        )
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let (gap, piece) = name.split_once('/')?;
        let empty_gap = match gap {
            "empty-gap" => true,
            "nonempty-gap" => false,
            _ => return None,
        };
        let empty_piece = match piece {
            "empty-piece" => true,
            "nonempty-pieces" => false,
            _ => return None,
        };
        Some(SplitConvention { empty_gap, empty_piece })
    }
}

/// A located repetition. Spans are inclusive `(start, end)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// `t` for the overlap kinds, the factor length `n` for disjoint pairs.
    pub param: usize,
    pub x_span: (usize, usize),
    pub z_span: Option<(usize, usize)>,
    /// `xz`, `zx`, the contiguous factor, or the repeated factor.
    pub repetition: Word,
}

impl Violation {
    /// The index tuple `(i, j, j', l)`; contiguous kinds repeat the x span.
    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        let (i, j) = self.x_span;
        let (jp, l) = self.z_span.unwrap_or(self.x_span);
        (i, j, jp, l)
    }
}

/// Smallest `|u|` allowed in a t-overlap `u u u'`.
pub(crate) fn min_period(t: usize) -> usize {
    t.max(1)
}

/// True iff `w = u u u'` with `|u| >= max(t, 1)` and `u'` the first `t` letters of `u`.
pub fn is_t_overlap(w: &Word, t: usize) -> bool {
    is_t_overlap_slice(w.symbols(), t)
}

pub(crate) fn is_t_overlap_slice(s: &[Symbol], t: usize) -> bool {
    if s.len() < t || !(s.len() - t).is_multiple_of(2) {
        return false;
    }
    let p = (s.len() - t) / 2;
    p >= min_period(t) && (p..s.len()).all(|i| s[i] == s[i - p])
}

/// Longest-common-extension table: `get(a, b)` is the length of the longest
/// common prefix of `w[a..]` and `w[b..]`.
pub(crate) struct Lce {
    n: usize,
    table: Vec<u32>,
}

impl Lce {
    pub(crate) fn new(s: &[Symbol]) -> Self {
        let n = s.len();
        let stride = n + 1;
        let mut table = vec![0u32; stride * stride];
        for a in (0..n).rev() {
            for b in (0..n).rev() {
                if s[a] == s[b] {
                    table[a * stride + b] = table[(a + 1) * stride + b + 1] + 1;
                }
            }
        }
        Lce { n, table }
    }

    #[inline]
    pub(crate) fn get(&self, a: usize, b: usize) -> usize {
        self.table[a * (self.n + 1) + b] as usize
    }
}

/// Does `first · second` have period `p`? Pieces are given as (start, len).
#[inline]
fn concat_has_period(lce: &Lce, first: (usize, usize), second: (usize, usize), p: usize) -> bool {
    let (a, la) = first;
    let (b, lb) = second;
    if la > p && lce.get(a, a + p) < la - p {
        return false;
    }
    if lb > p && lce.get(b, b + p) < lb - p {
        return false;
    }
    // cross pairs: first[q] against second[q + p - la]
    let q0 = la.saturating_sub(p);
    let q1 = la.min(la + lb - p);
    q1 <= q0 || lce.get(a + q0, b + q0 + p - la) >= q1 - q0
}

pub fn find_t_overlap_factor(w: &Word, t: usize) -> Option<Violation> {
    let s = w.symbols();
    let m = s.len();
    let lce = Lce::new(s);
    let pmin = min_period(t);
    for i in 0..m {
        let mut p = pmin;
        while i + 2 * p + t <= m {
            if lce.get(i, i + p) >= p + t {
                let end = i + 2 * p + t - 1;
                return Some(Violation {
                    kind: ViolationKind::TOverlap,
                    param: t,
                    x_span: (i, end),
                    z_span: None,
                    repetition: w.factor(i, end + 1),
                });
            }
            p += 1;
        }
    }
    None
}

pub fn find_split_t_overlap(w: &Word, t: usize) -> Option<Violation> {
    find_split_t_overlap_with(w, t, SplitConvention::default())
}

pub fn find_reversed_split_t_overlap(w: &Word, t: usize) -> Option<Violation> {
    find_reversed_split_t_overlap_with(w, t, SplitConvention::default())
}

pub fn find_split_t_overlap_with(w: &Word, t: usize, conv: SplitConvention) -> Option<Violation> {
    find_split(w, t, conv, false)
}

pub fn find_reversed_split_t_overlap_with(
    w: &Word,
    t: usize,
    conv: SplitConvention,
) -> Option<Violation> {
    find_split(w, t, conv, true)
}

fn find_split(w: &Word, t: usize, conv: SplitConvention, reversed: bool) -> Option<Violation> {
    let proper = find_proper_split(w, t, conv.min_gap(), reversed);
    if proper.is_some() || !conv.empty_piece {
        return proper;
    }
    find_t_overlap_factor(w, t).map(|v| Violation {
        kind: if reversed {
            ViolationKind::ReversedSplitTOverlap
        } else {
            ViolationKind::SplitTOverlap
        },
        ..v
    })
}

/// Both pieces nonempty, at least `g` letters between them.
fn find_proper_split(w: &Word, t: usize, g: usize, reversed: bool) -> Option<Violation> {
    let s = w.symbols();
    let m = s.len();
    let lce = Lce::new(s);
    let pmin = min_period(t);
    let mut periods: Vec<usize> = Vec::new();
    for i in 0..m {
        for lx in 1..=m - i {
            let z_from = i + lx + g;
            if z_from >= m {
                break;
            }
            // Total length 2p + t = lx + lz with lz <= m - z_from.
            let p_lo = pmin.max((lx + 1).saturating_sub(t).div_ceil(2));
            let p_hi = (lx + m - z_from).saturating_sub(t) / 2;
            periods.clear();
            // When x is the trailing piece its periodicity is checked the same
            // way, so the filter is shared by both kinds.
            periods.extend(
                (p_lo..=p_hi).filter(|&p| lx <= p || lce.get(i, i + p) >= lx - p),
            );
            if periods.is_empty() {
                continue;
            }
            for jp in z_from..m {
                for &p in &periods {
                    let lz = 2 * p + t - lx;
                    if jp + lz > m {
                        break;
                    }
                    let hit = if reversed {
                        concat_has_period(&lce, (jp, lz), (i, lx), p)
                    } else {
                        concat_has_period(&lce, (i, lx), (jp, lz), p)
                    };
                    if hit {
                        let x = w.factor(i, i + lx);
                        let z = w.factor(jp, jp + lz);
                        let (kind, repetition) = if reversed {
                            (ViolationKind::ReversedSplitTOverlap, z.concat(&x))
                        } else {
                            (ViolationKind::SplitTOverlap, x.concat(&z))
                        };
                        return Some(Violation {
                            kind,
                            param: t,
                            x_span: (i, i + lx - 1),
                            z_span: Some((jp, jp + lz - 1)),
                            repetition,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Two occurrences of one length-`n` factor at `p1 < p2` with `p1 + n <= p2`.
pub fn find_disjoint_pair(w: &Word, n: usize) -> Option<Violation> {
    if n == 0 {
        return None;
    }
    let s = w.symbols();
    let m = s.len();
    let lce = Lce::new(s);
    for p1 in 0..m.saturating_sub(2 * n - 1) {
        for p2 in p1 + n..=m - n {
            if lce.get(p1, p2) >= n {
                return Some(Violation {
                    kind: ViolationKind::DisjointPair,
                    param: n,
                    x_span: (p1, p1 + n - 1),
                    z_span: Some((p2, p2 + n - 1)),
                    repetition: w.factor(p1, p1 + n),
                });
            }
        }
    }
    None
}

/// Number of occurrences of `x` in `w` (overlapping ones included).
pub fn count_nondisjoint_occurrences(w: &Word, x: &Word) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(occurrences(w, x)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_minimal(s).unwrap()
    }

    fn canon(text: &str) -> Word {
        Word::from_text_canonical(text).unwrap()
    }

    #[test]
    fn t_overlap_examples() {
        assert!(is_t_overlap(&canon("entente"), 1));
        assert!(!is_t_overlap(&w("0011"), 0));
        let inpinpin = canon("inpinpin");
        assert_eq!(inpinpin.to_string(), "01201201");
        assert!(is_t_overlap(&inpinpin, 2));
        assert!(is_t_overlap(&w("0101"), 0));
        // |u| must be at least t
        assert!(!is_t_overlap(&w("00000"), 3));
        assert!(is_t_overlap(&w("000000000"), 3));
    }

    #[test]
    fn factor_detector_examples() {
        let v = find_t_overlap_factor(&w("0120120"), 1).unwrap();
        assert_eq!(v.x_span, (0, 6));
        assert!(find_t_overlap_factor(&w("0011"), 1).is_none());
        let v = find_t_overlap_factor(&w("011"), 0).unwrap();
        assert_eq!(v.repetition, w("11"));
        assert_eq!(v.x_span, (1, 2));
    }

    #[test]
    fn split_detector_examples() {
        let contentment = canon("contentment");
        assert_eq!(contentment.to_string(), "01234235423");
        let v = find_split_t_overlap(&contentment, 2).unwrap();
        assert_eq!(v.tuple(), (2, 6, 8, 10));
        assert_eq!(v.repetition.to_string(), "23423423");

        let v = find_split_t_overlap(&w("00110"), 1).unwrap();
        assert_eq!(v.tuple(), (0, 1, 4, 4));
        assert_eq!(v.repetition.to_string(), "000");
        assert!(find_split_t_overlap(&w("0011"), 1).is_none());
    }

    #[test]
    fn reversed_detector_examples() {
        let independent = canon("independent");
        assert_eq!(independent.symbols(), &[0, 1, 2, 3, 4, 3, 1, 2, 3, 1, 5]);
        let v = find_reversed_split_t_overlap(&independent, 1).unwrap();
        assert_eq!(v.tuple(), (1, 3, 5, 8));
        assert_eq!(v.repetition.to_string(), "3123123");
        assert!(is_t_overlap(&v.repetition, 1));
        assert!(find_reversed_split_t_overlap(&w("0011"), 1).is_none());
        let v = find_reversed_split_t_overlap(&w("000"), 0).unwrap();
        assert_eq!(v.tuple(), (0, 0, 1, 1));
        assert_eq!(v.repetition, w("00"));
    }

    #[test]
    fn conventions_change_degenerate_cases() {
        let strict = SplitConvention { empty_gap: false, empty_piece: false };
        let loose_gap = SplitConvention { empty_gap: true, empty_piece: false };
        assert!(find_split_t_overlap_with(&w("00"), 0, loose_gap).is_some());
        assert!(find_split_t_overlap_with(&w("00"), 0, strict).is_none());
        assert!(find_split_t_overlap_with(&w("010"), 0, strict).is_some());

        // 01010 is a contiguous 1-overlap but has no proper reversed split one.
        assert!(find_reversed_split_t_overlap_with(&w("01010"), 1, loose_gap).is_none());
        let v = find_reversed_split_t_overlap(&w("01010"), 1).unwrap();
        assert_eq!(v.z_span, None);
        assert_eq!(v.repetition, w("01010"));
        for conv in SplitConvention::ALL {
            assert_eq!(SplitConvention::from_name(&conv.name()), Some(conv));
        }
    }

    #[test]
    fn disjoint_pair_examples() {
        assert!(find_disjoint_pair(&w("0111000"), 2).is_none());
        for n in 1..6 {
            let v = find_disjoint_pair(&Word::new(vec![0; 2 * n], 2).unwrap(), n).unwrap();
            assert_eq!(v.tuple(), (0, n - 1, n, 2 * n - 1));
        }
        for a in 0..2u8 {
            let ext = w("0001110").pushed(a).unwrap();
            assert!(find_disjoint_pair(&ext, 2).is_some(), "{ext}");
        }
        assert!(find_disjoint_pair(&w("0001110"), 2).is_none());
    }

    #[test]
    fn nondisjoint_counts() {
        assert_eq!(count_nondisjoint_occurrences(&w("01010"), &w("010")).unwrap(), 2);
        assert_eq!(count_nondisjoint_occurrences(&w("000"), &w("00")).unwrap(), 2);
        assert_eq!(count_nondisjoint_occurrences(&w("010101010"), &w("0101010")).unwrap(), 2);
    }
}
