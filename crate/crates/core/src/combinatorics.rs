//! Counting primitive, unbordered and fixed-period words, and the closed-form
//! upper bounds on `C(k,n)`, `S(k,t)` and `R(k,t)`.
//!
//! All counts are exact big integers; `k^n` leaves `u64` long before any
//! search does.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::{failure_function, period_of, Symbol, Word};

/// Largest `k^n` that [`period_census`] will enumerate.
pub const CENSUS_BUDGET: u64 = 1 << 24;

pub fn mobius(d: u64) -> Result<i8> {
    if d == 0 {
        return Err(Error::InvalidParameter("mobius is defined for d >= 1".into()));
    }
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn pow(k: usize, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(k), e)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `psi_k(n) = sum_{d | n} mu(d) k^{n/d}`, the number of primitive words.
pub fn primitive_count(k: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut total = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(d as u64).expect("d >= 1");
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(pow(k, n / d));
        }
    }
    total.to_biguint().expect("primitive counts are nonnegative")
}

/// `u_k(n)`, the number of unbordered words of length `n`, from the recurrence
/// `u(1) = k`, `u(2m+1) = k u(2m)`, `u(2m) = k u(2m-1) - u(m)`.
pub fn unbordered_count(k: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let k_big = BigUint::from(k);
    let mut u: Vec<BigUint> = vec![BigUint::zero(), k_big.clone()];
    for len in 2..=n {
        let next = if len % 2 == 1 {
            &k_big * &u[len - 1]
        } else {
            &k_big * &u[len - 1] - &u[len / 2]
        };
        u.push(next);
    }
    u.swap_remove(n)
}

/// Calls `f` on every word of length `n` over `k` letters, in lexicographic order.
pub(crate) fn for_each_word(k: usize, n: usize, mut f: impl FnMut(&[Symbol])) {
    let mut w = vec![0 as Symbol; n];
    loop {
        f(&w);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (w[i] as usize) + 1 < k {
                w[i] += 1;
                for c in &mut w[i + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}

fn census_size(k: usize, n: usize) -> Option<u64> {
    (k as u64).checked_pow(n as u32)
}

/// `A_k(n, p)` for every `p` in `1..=n`, by enumerating all `k^n` words.
pub fn period_census(k: usize, n: usize) -> Result<BTreeMap<usize, BigUint>> {
    period_census_with_budget(k, n, CENSUS_BUDGET)
}

pub fn period_census_with_budget(
    k: usize,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<usize, BigUint>> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("census needs k >= 1 and n >= 1".into()));
    }
    match census_size(k, n) {
        Some(size) if size <= budget => {}
        _ => return Err(Error::CensusTooLarge),
    }
    let mut counts = vec![0u64; n + 1];
    for_each_word(k, n, |w| counts[period_of(w)] += 1);
    Ok((1..=n)
        .filter(|&p| counts[p] > 0)
        .map(|p| (p, BigUint::from(counts[p])))
        .collect())
}

/// Unbordered count by brute force; the independent check on the recurrence.
pub fn unbordered_count_enumerated(k: usize, n: usize) -> Result<BigUint> {
    match census_size(k, n) {
        Some(size) if size <= CENSUS_BUDGET => {}
        _ => return Err(Error::CensusTooLarge),
    }
    let mut count = 0u64;
    for_each_word(k, n, |w| {
        if failure_function(w).last() == Some(&0) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// `ceil(|x| / per(x))`: the most occurrences of `x` a word can hold while
/// every two of them overlap.
pub fn max_nondisjoint_cap(x: &Word) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(x.len().div_ceil(period_of(x.symbols())))
}

/// A word attaining [`max_nondisjoint_cap`] for `x`.
///
/// With `p = per(x)` write `x = y^f u`, `|y| = p`, `u` a nonempty prefix of
/// `y` and `y = uv`; the result is `(uv)^(2f) u`. For unbordered `x` this is
/// `f = 0` and the result is `x` itself.
pub fn occurrence_witness(x: &Word) -> Result<Word> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let s = x.symbols();
    let p = period_of(s);
    let f = s.len().div_ceil(p) - 1;
    let u_len = s.len() - f * p;
    let mut out = Vec::with_capacity(2 * f * p + u_len);
    for _ in 0..2 * f {
        out.extend_from_slice(&s[..p]);
    }
    out.extend_from_slice(&s[..u_len]);
    Ok(Word::from_raw(out, x.k()))
}

/// `sum_{w in Sigma_k^n} ceil(n / per(w)) + n - 1`, evaluated exactly without
/// enumeration: periods `p <= n/2` are counted by `psi_k(p)`, period `n` by
/// `u_k(n)`, and every remaining word has `ceil(n/p) = 2`.
pub fn theorem_sum_bound(k: usize, n: usize) -> Result<BigUint> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("need k >= 1 and n >= 1".into()));
    }
    let total = pow(k, n);
    let unbordered = unbordered_count(k, n);
    let mut short_words = BigUint::zero();
    let mut short_sum = BigUint::zero();
    for p in 1..=n / 2 {
        let c = primitive_count(k, p);
        short_sum += &c * BigUint::from(n.div_ceil(p));
        short_words += c;
    }
    let middle = total - &short_words - &unbordered;
    Ok(short_sum + middle * 2u32 + unbordered + BigUint::from(n - 1))
}

/// The same sum computed from an enumerated census.
pub fn theorem_sum_bound_enumerated(k: usize, n: usize) -> Result<BigUint> {
    let census = period_census(k, n)?;
    let mut sum = BigUint::from(n - 1);
    for (p, count) in census {
        sum += count * BigUint::from(n.div_ceil(p));
    }
    Ok(sum)
}

/// `k^n (1 + 1/k + 1/k^2) + n (k^(floor(n/2)+1) - 1)/(k-1) + n - 1`.
pub fn corollary_bound(k: usize, n: usize) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::InvalidParameter("the corollary bound needs k >= 2".into()));
    }
    let int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    let kr = int(BigUint::from(k));
    let one = BigRational::one();
    let head = int(pow(k, n)) * (&one + one.clone() / &kr + one.clone() / (&kr * &kr));
    let geometric = (int(pow(k, n / 2 + 1)) - &one) / int(BigUint::from(k - 1));
    let nr = int(BigUint::from(n));
    Ok(head + &nr * geometric + nr - one)
}

/// `n (k^n + 1) - 1`, the largest length the strict pigeonhole bound allows.
pub fn pigeonhole_bound(k: usize, n: usize) -> BigUint {
    BigUint::from(n) * (pow(k, n) + 1u32) - 1u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `C(k,n)`: no two disjoint occurrences of a length-`n` factor.
    C,
    /// `S(k,t)`: no split occurrence of a t-overlap.
    S,
    /// `R(k,t)`: no reversed split occurrence of a t-overlap.
    R,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::C => "C",
            Family::S => "S",
            Family::R => "R",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundSource {
    Pigeonhole,
    TheoremSum,
    Corollary,
    /// `C(1,n) = 2n-1`, `C(k,1) = k`, `C(k,2) = k^2+k+1`, `C(k,3) = k^3+k^2+k+2`.
    ClosedForm,
    /// `S(k,t) <= C(k, C(k,t) + 1)`.
    Composition,
    /// `S(k,0) = k`.
    SquareCase,
    /// `S(k,1) <= k^(k+1) + k - 1` for `k >= 2`. At that length either a
    /// length-`k+1` factor repeats, or every one occurs once, `a^(k+1)`
    /// included, and `aaa` is already an overlap. It fails for `k = 1`
    /// (`S(1,1) = 2`), so it is not reported there.
    OverlapCase,
    /// `S(1,t) = 3t - 1`.
    Unary,
}

impl BoundSource {
    pub fn label(self) -> &'static str {
        match self {
            BoundSource::Pigeonhole => "pigeonhole: n(k^n+1)-1",
            BoundSource::TheoremSum => "period sum: sum ceil(n/per(w)) + n-1",
            BoundSource::Corollary => "corollary: k^n(1+1/k+1/k^2) + n(k^(n/2+1)-1)/(k-1) + n-1",
            BoundSource::ClosedForm => "closed form for n <= 3 or k = 1",
            BoundSource::Composition => "composition: C(k, C(k,t)+1)",
            BoundSource::SquareCase => "t = 0: exactly k",
            BoundSource::OverlapCase => "t = 1, k >= 2: k^(k+1)+k-1",
            BoundSource::Unary => "k = 1: exactly 3t-1",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            BoundSource::Pigeonhole => "pigeonhole",
            BoundSource::TheoremSum => "theorem_sum",
            BoundSource::Corollary => "corollary",
            BoundSource::ClosedForm => "closed_form",
            BoundSource::Composition => "composition",
            BoundSource::SquareCase => "square_case",
            BoundSource::OverlapCase => "overlap_case",
            BoundSource::Unary => "unary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Exact,
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub source: BoundSource,
    pub relation: Relation,
    pub value: BigRational,
}

impl Bound {
    fn integer(source: BoundSource, relation: Relation, value: BigUint) -> Self {
        Bound { source, relation, value: BigRational::from_integer(BigInt::from(value)) }
    }

    /// Largest integer length the bound permits.
    pub fn floor(&self) -> BigUint {
        self.value.floor().to_integer().to_biguint().unwrap_or_default()
    }
}

/// Every applicable bound for one `(family, k, n or t)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub family: Family,
    pub k: usize,
    pub param: usize,
    pub bounds: Vec<Bound>,
    /// Period census `p -> A_k(n,p)`, present for small `C` cells.
    pub period_census: Option<BTreeMap<usize, BigUint>>,
}

impl BoundReport {
    pub fn get(&self, source: BoundSource) -> Option<&Bound> {
        self.bounds.iter().find(|b| b.source == source)
    }

    pub fn exact(&self) -> Option<BigUint> {
        self.bounds.iter().find(|b| b.relation == Relation::Exact).map(Bound::floor)
    }

    /// The tightest bound reported (an exact value counts as one).
    pub fn best_upper(&self) -> BigUint {
        self.bounds.iter().map(Bound::floor).min().expect("reports are nonempty")
    }
}

/// Exact `C(k,n)` where a closed form is known.
pub fn c_closed_form(k: usize, n: usize) -> Option<BigUint> {
    let kb = BigUint::from(k);
    match (k, n) {
        (_, 0) | (0, _) => None,
        (1, n) => Some(BigUint::from(2 * n - 1)),
        (_, 1) => Some(kb),
        (_, 2) => Some(&kb * &kb + &kb + 1u32),
        (_, 3) => Some(&kb * &kb * &kb + &kb * &kb + &kb + 2u32),
        _ => None,
    }
}

pub fn c_bounds(k: usize, n: usize) -> Result<BoundReport> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("need k >= 1 and n >= 1".into()));
    }
    let mut bounds = Vec::new();
    if let Some(v) = c_closed_form(k, n) {
        bounds.push(Bound::integer(BoundSource::ClosedForm, Relation::Exact, v));
    }
    bounds.push(Bound::integer(BoundSource::TheoremSum, Relation::AtMost, theorem_sum_bound(k, n)?));
    if k >= 2 {
        bounds.push(Bound {
            source: BoundSource::Corollary,
            relation: Relation::AtMost,
            value: corollary_bound(k, n)?,
        });
    }
    bounds.push(Bound::integer(BoundSource::Pigeonhole, Relation::AtMost, pigeonhole_bound(k, n)));
    let period_census = match census_size(k, n) {
        Some(size) if size <= 1 << 20 => Some(period_census(k, n)?),
        _ => None,
    };
    Ok(BoundReport { family: Family::C, k, param: n, bounds, period_census })
}

/// Best known value or upper bound for `C(k,n)`: a supplied exact value, a
/// closed form, or the period sum.
fn c_upper(k: usize, n: usize, known: Option<&BTreeMap<usize, BigUint>>) -> Result<(BigUint, bool)> {
    if let Some(v) = known.and_then(|m| m.get(&n)) {
        return Ok((v.clone(), true));
    }
    if let Some(v) = c_closed_form(k, n) {
        return Ok((v, true));
    }
    Ok((theorem_sum_bound(k, n)?, false))
}

/// Bounds on `S(k,t)`; the identical list holds for `R(k,t)`.
///
/// `known` maps `n` to exact `C(k,n)` values for this `k`. Missing values are
/// replaced by upper bounds, which keeps the composed bound valid because it
/// is monotone in the inner argument.
pub fn s_upper_bounds(
    k: usize,
    t: usize,
    known: Option<&BTreeMap<usize, BigUint>>,
) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("need k >= 1".into()));
    }
    let mut bounds = Vec::new();
    if t == 0 {
        bounds.push(Bound::integer(BoundSource::SquareCase, Relation::Exact, BigUint::from(k)));
    } else {
        if k == 1 {
            bounds.push(Bound::integer(BoundSource::Unary, Relation::Exact, BigUint::from(3 * t - 1)));
        }
        if t == 1 && k >= 2 {
            bounds.push(Bound::integer(
                BoundSource::OverlapCase,
                Relation::AtMost,
                pow(k, k + 1) + BigUint::from(k - 1),
            ));
        }
        let (inner, _) = c_upper(k, t, known)?;
        let outer_n = (inner + 1u32)
            .to_usize()
            .ok_or_else(|| Error::InvalidParameter("composed length overflows".into()))?;
        let (outer, _) = c_upper(k, outer_n, known)?;
        bounds.push(Bound::integer(BoundSource::Composition, Relation::AtMost, outer));
    }
    Ok(BoundReport { family: Family::S, k, param: t, bounds, period_census: None })
}

/// Lower bound `k^n (1 - 1/k - 1/k^2)` on unbordered words.
pub fn unbordered_lower_bound(k: usize, n: usize) -> BigRational {
    let kr = BigRational::from_integer(BigInt::from(k));
    let one = BigRational::one();
    BigRational::from_integer(BigInt::from(pow(k, n))) * (&one - one.clone() / &kr - one.clone() / (&kr * &kr))
}

/// Rounds a nonnegative rational up.
pub fn ceil_to_uint(r: &BigRational) -> BigUint {
    if r.is_negative() {
        return BigUint::zero();
    }
    let (q, rem) = r.numer().div_rem(r.denom());
    let q = q.to_biguint().unwrap_or_default();
    if rem.is_zero() {
        q
    } else {
        q + 1u32
    }
}
