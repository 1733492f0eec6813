//! Words over the alphabet `{0, .., k-1}` and the periodicity primitives
//! (borders, periods, primitivity) the rest of the crate is built on.

use std::fmt;

use crate::error::{Error, Result};

/// A single letter. Alphabets are capped at 256 letters.
pub type Symbol = u8;

/// A finite word over `{0, .., k-1}`.
///
/// Words are plain values: cloning is cheap enough at the lengths this crate
/// deals with, and nothing hands out interior mutability.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    symbols: Vec<Symbol>,
    k: usize,
}

fn check_alphabet(k: usize) -> Result<()> {
    if (1..=256).contains(&k) {
        Ok(())
    } else {
        Err(Error::BadAlphabet(k))
    }
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, k: usize) -> Result<Self> {
        check_alphabet(k)?;
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= k) {
            return Err(Error::SymbolOutOfRange { symbol: s as usize, k });
        }
        Ok(Word { symbols, k })
    }

    pub fn empty(k: usize) -> Result<Self> {
        Word::new(Vec::new(), k)
    }

    /// Builds a word whose symbols are already known to be `< k`.
    pub(crate) fn from_raw(symbols: Vec<Symbol>, k: usize) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < k));
        Word { symbols, k }
    }

    /// Parses the textual format: a digit string when `k <= 10`, otherwise
    /// comma-separated decimal symbols. Comma-separated input is accepted for
    /// any `k`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        check_alphabet(k)?;
        let text = text.trim();
        let raw: Vec<usize> = if text.contains(',') || k > 10 {
            if text.is_empty() {
                Vec::new()
            } else {
                text.split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad symbol {:?}", tok.trim())))
                    })
                    .collect::<Result<_>>()?
            }
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        let mut symbols = Vec::with_capacity(raw.len());
        for s in raw {
            if s >= k {
                return Err(Error::SymbolOutOfRange { symbol: s, k });
            }
            symbols.push(s as Symbol);
        }
        Ok(Word { symbols, k })
    }

    /// Parses a word and takes the smallest alphabet that contains it.
    pub fn parse_minimal(text: &str) -> Result<Self> {
        let wide = if text.contains(',') {
            Word::parse(text, 256)?
        } else {
            Word::parse(text, 10)?
        };
        let k = wide.symbols.iter().map(|&s| s as usize + 1).max().unwrap_or(1);
        Ok(Word::from_raw(wide.symbols, k))
    }

    /// Maps arbitrary text to a word by numbering characters in order of
    /// first appearance: `alfalfa` becomes `0120120` over a 3-letter alphabet.
    pub fn from_text_canonical(text: &str) -> Result<Self> {
        let mut seen: Vec<char> = Vec::new();
        let mut symbols = Vec::with_capacity(text.len());
        for c in text.chars() {
            let idx = match seen.iter().position(|&x| x == c) {
                Some(i) => i,
                None => {
                    seen.push(c);
                    seen.len() - 1
                }
            };
            if idx >= 256 {
                return Err(Error::BadAlphabet(idx + 1));
            }
            symbols.push(idx as Symbol);
        }
        Ok(Word { symbols, k: seen.len().max(1) })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// The factor `self[start..end]` (end exclusive).
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word::from_raw(self.symbols[start..end].to_vec(), self.k)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word::from_raw(symbols, self.k.max(other.k))
    }

    pub fn pushed(&self, letter: Symbol) -> Result<Word> {
        if letter as usize >= self.k {
            return Err(Error::SymbolOutOfRange { symbol: letter as usize, k: self.k });
        }
        let mut symbols = self.symbols.clone();
        symbols.push(letter);
        Ok(Word::from_raw(symbols, self.k))
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word::from_raw(symbols, self.k)
    }

    /// Same symbols, read over a different alphabet.
    pub fn with_alphabet(&self, k: usize) -> Result<Word> {
        Word::new(self.symbols.clone(), k)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.symbols.cmp(&other.symbols).then(self.k.cmp(&other.k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            for (i, &s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// Longest proper border of every prefix.
///
/// Entry `i` is the length of the longest proper border of `w[0..=i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderTable(Vec<usize>);

impl BorderTable {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("border tables are nonempty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn failure_function(w: &[Symbol]) -> Vec<usize> {
    let mut table = vec![0usize; w.len()];
    let mut b = 0usize;
    for i in 1..w.len() {
        while b > 0 && w[i] != w[b] {
            b = table[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        table[i] = b;
    }
    table
}

/// Smallest period of a nonempty slice.
pub(crate) fn period_of(w: &[Symbol]) -> usize {
    debug_assert!(!w.is_empty());
    w.len() - failure_function(w).last().copied().unwrap_or(0)
}

pub fn border_array(w: &Word) -> Result<BorderTable> {
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(BorderTable(failure_function(&w.symbols)))
}

/// `per(w)`: the smallest `q >= 1` with `w[i] = w[i+q]` wherever both sides exist.
pub fn period(w: &Word) -> Result<usize> {
    Ok(w.len() - border_array(w)?.last())
}

pub fn is_primitive(w: &Word) -> Result<bool> {
    let p = period(w)?;
    Ok(p == w.len() || !w.len().is_multiple_of(p))
}

pub fn is_unbordered(w: &Word) -> Result<bool> {
    Ok(border_array(w)?.last() == 0)
}

/// Start positions of every occurrence of `x` in `w`, ascending.
pub fn occurrences(w: &Word, x: &Word) -> Result<Vec<usize>> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(occurrences_in(&w.symbols, &x.symbols))
}

/// KMP scan; `x` must be nonempty.
pub(crate) fn occurrences_in(w: &[Symbol], x: &[Symbol]) -> Vec<usize> {
    let fail = failure_function(x);
    let mut out = Vec::new();
    let mut q = 0usize;
    for (i, &c) in w.iter().enumerate() {
        while q > 0 && (q == x.len() || x[q] != c) {
            q = fail[q - 1];
        }
        if x[q] == c {
            q += 1;
        }
        if q == x.len() {
            out.push(i + 1 - x.len());
        }
    }
    out
}

/// The forced form of two overlapping occurrences `x = y t = t z`:
/// `y = uv`, `t = (uv)^e u`, `z = vu` with `u` nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapDecomposition {
    pub u: Word,
    pub v: Word,
    pub e: usize,
}

impl OverlapDecomposition {
    /// `(uv)^(e+2) u`, the factor spanned by both occurrences.
    pub fn spanned(&self) -> Word {
        let uv = self.u.concat(&self.v);
        let mut out = Vec::new();
        for _ in 0..self.e + 2 {
            out.extend_from_slice(uv.symbols());
        }
        out.extend_from_slice(self.u.symbols());
        Word::from_raw(out, self.u.k())
    }
}

/// Given equal length-`n` factors at `i < j` with `j - i < n`, recovers the
/// decomposition of `w[i..j+n]` as `(uv)^(e+2) u`, which contains an overlap.
pub fn overlap_from_overlapping_pair(
    w: &Word,
    i: usize,
    j: usize,
    n: usize,
) -> Result<OverlapDecomposition> {
    if !(i < j && j - i < n && j + n <= w.len()) {
        return Err(Error::NotOverlapping);
    }
    let s = w.symbols();
    if s[i..i + n] != s[j..j + n] {
        return Err(Error::NotOverlapping);
    }
    let d = j - i;
    let t_len = n - d;
    // |t| = e*d + |u| with 1 <= |u| <= d
    let e = (t_len - 1) / d;
    let u_len = t_len - e * d;
    let u = w.factor(i, i + u_len);
    let v = w.factor(i + u_len, j);
    Ok(OverlapDecomposition { u, v, e })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_minimal(s).unwrap()
    }

    fn brute_longest_border(s: &[Symbol]) -> usize {
        (1..s.len()).rev().find(|&b| s[..b] == s[s.len() - b..]).unwrap_or(0)
    }

    #[test]
    fn border_array_examples() {
        let t = border_array(&w("0120120")).unwrap();
        assert_eq!(t.last(), 4);
        assert_eq!(t.last(), brute_longest_border(w("0120120").symbols()));
        assert_eq!(border_array(&w("0123")).unwrap().as_slice(), &[0, 0, 0, 0]);
        assert_eq!(border_array(&w("0000")).unwrap().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(border_array(&Word::empty(2).unwrap()), Err(Error::EmptyInput));
    }

    #[test]
    fn period_examples() {
        let alfalfa = Word::from_text_canonical("alfalfa").unwrap();
        assert_eq!(alfalfa.to_string(), "0120120");
        assert_eq!(period(&alfalfa).unwrap(), 3);
        assert_eq!(period(&w("1111")).unwrap(), 1);
        assert_eq!(brute_longest_border(w("0001110").symbols()), 1);
        assert_eq!(period(&w("0001110")).unwrap(), 6);
        assert!(period(&Word::empty(2).unwrap()).is_err());
    }

    #[test]
    fn primitivity_and_borders() {
        assert!(!is_primitive(&w("0101")).unwrap());
        assert!(is_primitive(&w("010")).unwrap());
        assert!(is_primitive(&w("1")).unwrap());
        assert!(is_unbordered(&w("01")).unwrap());
        assert!(!is_unbordered(&w("0110")).unwrap());
        assert!(!is_unbordered(&w("000")).unwrap());
        assert!(is_unbordered(&Word::empty(1).unwrap()).is_err());
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&w("01010"), &w("010")).unwrap(), vec![0, 2]);
        let x = Word::parse("2", 3).unwrap();
        assert!(occurrences(&w("0011"), &x).unwrap().is_empty());
        assert_eq!(occurrences(&w("000"), &w("00")).unwrap(), vec![0, 1]);
    }

    #[test]
    fn overlap_decomposition_examples() {
        let d = overlap_from_overlapping_pair(&w("01010"), 0, 2, 3).unwrap();
        assert_eq!((d.u.to_string(), d.v.to_string(), d.e), ("0".into(), "1".into(), 0));

        let d = overlap_from_overlapping_pair(&w("000"), 0, 1, 2).unwrap();
        assert_eq!((d.u.to_string(), d.v.to_string(), d.e), ("0".into(), "".into(), 0));

        let d = overlap_from_overlapping_pair(&w("0120120"), 0, 3, 4).unwrap();
        assert_eq!((d.u.to_string(), d.v.to_string(), d.e), ("0".into(), "12".into(), 0));
        assert_eq!(d.spanned(), w("0120120"));

        assert_eq!(
            overlap_from_overlapping_pair(&w("0101"), 0, 2, 2),
            Err(Error::NotOverlapping)
        );
        assert_eq!(
            overlap_from_overlapping_pair(&w("0110"), 0, 1, 2),
            Err(Error::NotOverlapping)
        );
    }

    #[test]
    fn text_format() {
        assert_eq!(Word::parse("0,11,3", 12).unwrap().to_string(), "0,11,3");
        assert_eq!(Word::parse("0,11,3", 12).unwrap().symbols(), &[0, 11, 3]);
        assert!(matches!(Word::parse("0120", 2), Err(Error::SymbolOutOfRange { .. })));
        assert!(Word::parse("01a", 3).is_err());
        assert!(Word::parse("", 2).unwrap().is_empty());
    }
}
