//! Python bindings for `splitov`.
//!
//! Words can be passed as `Word` objects, digit strings (comma-separated
//! above ten letters) or lists of ints. Without an explicit `k` the alphabet
//! is the smallest one containing every letter.

use std::collections::BTreeMap;
use std::time::Duration;

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use splitov::combinatorics::{self as comb, BoundReport, Family};
use splitov::debruijn;
use splitov::detect::{self, SplitConvention, Violation};
use splitov::search::{self, Budget, FrontierOptions, SearchOptions, SearchProblem, Status};
use splitov::word as w;

fn err(e: splitov::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Word", module = "pysplitov", frozen, eq, ord, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyWord(splitov::Word);

impl std::fmt::Display for PyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn word_from(obj: &Bound<'_, PyAny>, k: Option<usize>) -> PyResult<splitov::Word> {
    if let Ok(pw) = obj.extract::<PyRef<'_, PyWord>>() {
        return match k {
            Some(k) if k != pw.0.k() => pw.0.with_alphabet(k).map_err(err),
            _ => Ok(pw.0.clone()),
        };
    }
    if let Ok(text) = obj.extract::<String>() {
        return match k {
            Some(k) => splitov::Word::parse(&text, k),
            None => splitov::Word::parse_minimal(&text),
        }
        .map_err(err);
    }
    let raw: Vec<usize> = obj
        .extract()
        .map_err(|_| PyValueError::new_err("expected a Word, a string or a list of ints"))?;
    let k = k.unwrap_or_else(|| raw.iter().max().map_or(1, |m| m + 1));
    if let Some(&s) = raw.iter().find(|&&s| s >= k) {
        return Err(err(splitov::Error::SymbolOutOfRange { symbol: s, k }));
    }
    splitov::Word::new(raw.into_iter().map(|s| s as u8).collect(), k).map_err(err)
}

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (letters, k=None))]
    fn new(letters: &Bound<'_, PyAny>, k: Option<usize>) -> PyResult<Self> {
        word_from(letters, k).map(PyWord)
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn symbols(&self) -> Vec<usize> {
        self.0.symbols().iter().map(|&s| s as usize).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', k={})", self.0, self.0.k())
    }

    fn period(&self) -> PyResult<usize> {
        w::period(&self.0).map_err(err)
    }

    /// Longest proper border length of every prefix.
    fn border_array(&self) -> PyResult<Vec<usize>> {
        Ok(w::border_array(&self.0).map_err(err)?.as_slice().to_vec())
    }

    fn is_primitive(&self) -> PyResult<bool> {
        w::is_primitive(&self.0).map_err(err)
    }

    fn is_unbordered(&self) -> PyResult<bool> {
        w::is_unbordered(&self.0).map_err(err)
    }

    fn occurrences(&self, x: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
        let x = word_from(x, Some(self.0.k()))?;
        w::occurrences(&self.0, &x).map_err(err)
    }

    fn factor(&self, start: usize, end: usize) -> PyResult<PyWord> {
        if start > end || end > self.0.len() {
            return Err(PyValueError::new_err("factor bounds out of range"));
        }
        Ok(PyWord(self.0.factor(start, end)))
    }
}

#[pyclass(name = "Violation", module = "pysplitov", frozen, get_all)]
struct PyViolation {
    kind: String,
    param: usize,
    x_span: (usize, usize),
    z_span: Option<(usize, usize)>,
    repetition: PyWord,
    /// `(i, j, j', l)`.
    tuple: (usize, usize, usize, usize),
}

#[pymethods]
impl PyViolation {
    fn __repr__(&self) -> String {
        format!("Violation({}, tuple={:?}, repetition='{}')", self.kind, self.tuple, self.repetition)
    }
}

fn violation(v: Option<Violation>) -> Option<PyViolation> {
    v.map(|v| PyViolation {
        kind: v.kind.to_string(),
        param: v.param,
        x_span: v.x_span,
        z_span: v.z_span,
        tuple: v.tuple(),
        repetition: PyWord(v.repetition),
    })
}

fn convention(name: Option<&str>) -> PyResult<SplitConvention> {
    match name {
        None => Ok(SplitConvention::default()),
        Some(n) => SplitConvention::from_name(n)
            .ok_or_else(|| PyValueError::new_err(format!("unknown convention {n:?}"))),
    }
}

fn family(name: &str) -> PyResult<Family> {
    match name {
        "C" | "c" => Ok(Family::C),
        "S" | "s" => Ok(Family::S),
        "R" | "r" => Ok(Family::R),
        _ => Err(PyValueError::new_err(format!("family must be C, S or R, not {name:?}"))),
    }
}

fn problem(fam: &str, k: usize, param: usize, conv: Option<&str>) -> PyResult<SearchProblem> {
    let kind = search::ProblemKind::from_family(family(fam)?, param);
    Ok(SearchProblem::new(kind, k).map_err(err)?.with_convention(convention(conv)?))
}

#[pyfunction]
fn is_t_overlap(word: &Bound<'_, PyAny>, t: usize) -> PyResult<bool> {
    Ok(detect::is_t_overlap(&word_from(word, None)?, t))
}

/// Leftmost-ending t-overlap factor.
#[pyfunction]
fn find_t_overlap(word: &Bound<'_, PyAny>, t: usize) -> PyResult<Option<PyViolation>> {
    Ok(violation(detect::find_t_overlap_factor(&word_from(word, None)?, t)))
}

#[pyfunction]
#[pyo3(signature = (word, t, convention=None))]
fn find_split_overlap(
    word: &Bound<'_, PyAny>,
    t: usize,
    convention: Option<&str>,
) -> PyResult<Option<PyViolation>> {
    let conv = self::convention(convention)?;
    Ok(violation(detect::find_split_t_overlap_with(&word_from(word, None)?, t, conv)))
}

#[pyfunction]
#[pyo3(signature = (word, t, convention=None))]
fn find_reversed_split_overlap(
    word: &Bound<'_, PyAny>,
    t: usize,
    convention: Option<&str>,
) -> PyResult<Option<PyViolation>> {
    let conv = self::convention(convention)?;
    Ok(violation(detect::find_reversed_split_t_overlap_with(&word_from(word, None)?, t, conv)))
}

#[pyfunction]
fn find_disjoint_pair(word: &Bound<'_, PyAny>, n: usize) -> PyResult<Option<PyViolation>> {
    Ok(violation(detect::find_disjoint_pair(&word_from(word, None)?, n)))
}

#[pyfunction]
fn count_nondisjoint_occurrences(word: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<usize> {
    let w = word_from(word, None)?;
    let x = word_from(x, Some(w.k()))?;
    detect::count_nondisjoint_occurrences(&w, &x).map_err(err)
}

/// `(u, v, e)` with `w[i..j+n] = (uv)^(e+2) u`.
#[pyfunction]
fn overlap_from_overlapping_pair(
    word: &Bound<'_, PyAny>,
    i: usize,
    j: usize,
    n: usize,
) -> PyResult<(PyWord, PyWord, usize)> {
    let d = w::overlap_from_overlapping_pair(&word_from(word, None)?, i, j, n).map_err(err)?;
    Ok((PyWord(d.u), PyWord(d.v), d.e))
}

#[pyclass(name = "SearchOutcome", module = "pysplitov", frozen, get_all)]
struct PyOutcome {
    problem: String,
    max_length: usize,
    /// `"exact"` or `"lower-bound"`.
    status: String,
    witnesses: Vec<PyWord>,
    nodes: u64,
    elapsed: f64,
    budget_used: String,
}

#[pymethods]
impl PyOutcome {
    #[getter]
    fn witness(&self) -> PyWord {
        self.witnesses[0].clone()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.status == Status::Exact.name()
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchOutcome({}, max_length={}, status={}, witness='{}')",
            self.problem, self.max_length, self.status, self.witnesses[0]
        )
    }
}

fn outcome(o: search::SearchOutcome) -> PyOutcome {
    PyOutcome {
        problem: o.problem.to_string(),
        max_length: o.max_length,
        status: o.status.name().into(),
        witnesses: o.witnesses.into_iter().map(PyWord).collect(),
        nodes: o.nodes_explored,
        elapsed: o.elapsed.as_secs_f64(),
        budget_used: o.budget_used.name().into(),
    }
}

/// Longest word over `k` letters avoiding the family's pattern. The GIL is
/// released while searching.
#[pyfunction]
#[pyo3(signature = (
    family, k, param, *, max_nodes=None, time_limit=None, threads=1, split_depth=0,
    min_length=None, all_witnesses=false, convention=None
))]
#[allow(clippy::too_many_arguments)]
fn longest_avoiding(
    py: Python<'_>,
    family: &str,
    k: usize,
    param: usize,
    max_nodes: Option<u64>,
    time_limit: Option<f64>,
    threads: usize,
    split_depth: usize,
    min_length: Option<usize>,
    all_witnesses: bool,
    convention: Option<&str>,
) -> PyResult<PyOutcome> {
    let p = problem(family, k, param, convention)?;
    let options = SearchOptions {
        budget: Budget { max_nodes, time_limit: time_limit.map(Duration::from_secs_f64) },
        threads: threads.max(1),
        split_depth,
        min_length,
        collect_all: all_witnesses,
        ..SearchOptions::default()
    };
    let out = py.detach(|| search::longest_avoiding_with(&p, &options)).map_err(err)?;
    Ok(outcome(out))
}

/// Randomized lower bound; always reported as `"lower-bound"`.
#[pyfunction]
#[pyo3(signature = (family, k, param, *, max_nodes, round_nodes=1000, seed=0, prefix=None, convention=None))]
#[allow(clippy::too_many_arguments)]
fn frontier_lower_bound(
    py: Python<'_>,
    family: &str,
    k: usize,
    param: usize,
    max_nodes: u64,
    round_nodes: u64,
    seed: u64,
    prefix: Option<&Bound<'_, PyAny>>,
    convention: Option<&str>,
) -> PyResult<PyOutcome> {
    let p = problem(family, k, param, convention)?;
    let prefix = prefix.map(|x| word_from(x, Some(k))).transpose()?;
    let options = FrontierOptions { max_nodes, round_nodes, seed, prefix, time_limit: None };
    let out = py.detach(|| search::frontier_lower_bound_with(&p, &options)).map_err(err)?;
    Ok(outcome(out))
}

#[pyfunction]
#[pyo3(signature = (family, k, param, word, convention=None))]
fn verify_witness(
    family: &str,
    k: usize,
    param: usize,
    word: &Bound<'_, PyAny>,
    convention: Option<&str>,
) -> PyResult<bool> {
    let p = problem(family, k, param, convention)?;
    Ok(search::verify_witness(&p, &word_from(word, None)?))
}

#[pyfunction]
fn primitive_count(k: usize, n: usize) -> BigUint {
    comb::primitive_count(k, n)
}

#[pyfunction]
fn unbordered_count(k: usize, n: usize) -> BigUint {
    comb::unbordered_count(k, n)
}

/// `{p: number of length-n words with period p}` by enumeration.
#[pyfunction]
fn period_census(k: usize, n: usize) -> PyResult<BTreeMap<usize, BigUint>> {
    comb::period_census(k, n).map_err(err)
}

#[pyfunction]
fn theorem_sum_bound(k: usize, n: usize) -> PyResult<BigUint> {
    comb::theorem_sum_bound(k, n).map_err(err)
}

#[pyfunction]
fn corollary_bound(k: usize, n: usize) -> PyResult<BigRational> {
    comb::corollary_bound(k, n).map_err(err)
}

#[pyfunction]
fn pigeonhole_bound(k: usize, n: usize) -> BigUint {
    comb::pigeonhole_bound(k, n)
}

fn report_dict<'py>(py: Python<'py>, r: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("family", r.family.to_string())?;
    d.set_item("k", r.k)?;
    d.set_item("param", r.param)?;
    let entries = PyDict::new(py);
    for b in &r.bounds {
        let e = PyDict::new(py);
        e.set_item("label", b.source.label())?;
        e.set_item("exact", b.relation == comb::Relation::Exact)?;
        e.set_item("value", b.value.clone())?;
        e.set_item("floor", b.floor())?;
        entries.set_item(b.source.key(), e)?;
    }
    d.set_item("bounds", entries)?;
    d.set_item("exact", r.exact())?;
    d.set_item("best_upper", r.best_upper())?;
    d.set_item("period_census", r.period_census.clone())?;
    Ok(d)
}

/// Every applicable upper bound for one cell, keyed by source. For S and R,
/// `known` maps `n` to exact `C(k,n)` values to compose with.
#[pyfunction]
#[pyo3(signature = (family, k, param, known=None))]
fn bounds<'py>(
    py: Python<'py>,
    family: &str,
    k: usize,
    param: usize,
    known: Option<BTreeMap<usize, BigUint>>,
) -> PyResult<Bound<'py, PyDict>> {
    let fam = self::family(family)?;
    let mut r = match fam {
        Family::C => comb::c_bounds(k, param),
        _ => comb::s_upper_bounds(k, param, known.as_ref()),
    }
    .map_err(err)?;
    r.family = fam;
    report_dict(py, &r)
}

#[pyfunction]
fn max_nondisjoint_cap(x: &Bound<'_, PyAny>) -> PyResult<usize> {
    comb::max_nondisjoint_cap(&word_from(x, None)?).map_err(err)
}

#[pyfunction]
fn occurrence_witness(x: &Bound<'_, PyAny>) -> PyResult<PyWord> {
    comb::occurrence_witness(&word_from(x, None)?).map(PyWord).map_err(err)
}

#[pyfunction]
fn successor_g(k: usize, a1: u8, a2: u8, a3: u8) -> PyResult<u8> {
    if [a1, a2, a3].iter().any(|&a| a as usize >= k) {
        return Err(PyValueError::new_err("letter out of range"));
    }
    debruijn::successor_g(k, a1, a2, a3).map_err(err)
}

/// Linear de Bruijn word of order `n`.
#[pyfunction]
fn debruijn_word(k: usize, n: usize) -> PyResult<PyWord> {
    debruijn::debruijn_order_n(k, n).map(PyWord).map_err(err)
}

/// Order-3 de Bruijn word of length `k^3 + 2` containing `abab` or `baba`
/// for every pair of letters.
#[pyfunction]
fn debruijn_order3_special(k: usize) -> PyResult<PyWord> {
    debruijn::debruijn_order3_special(k).map(PyWord).map_err(err)
}

#[pyfunction]
fn construct_c2_lower(k: usize) -> PyResult<PyWord> {
    debruijn::construct_c2_lower(k).map(PyWord).map_err(err)
}

#[pyfunction]
fn construct_c3_lower(k: usize) -> PyResult<PyWord> {
    debruijn::construct_c3_lower(k).map(PyWord).map_err(err)
}

#[pyfunction]
fn windows_exactly_once(word: &Bound<'_, PyAny>, k: usize, n: usize) -> PyResult<bool> {
    Ok(debruijn::windows_exactly_once(word_from(word, Some(k))?.symbols(), k, n))
}

#[pymodule]
fn pysplitov(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyViolation>()?;
    m.add_class::<PyOutcome>()?;
    m.add_function(wrap_pyfunction!(is_t_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(find_t_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(find_split_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(find_reversed_split_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(find_disjoint_pair, m)?)?;
    m.add_function(wrap_pyfunction!(count_nondisjoint_occurrences, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_from_overlapping_pair, m)?)?;
    m.add_function(wrap_pyfunction!(longest_avoiding, m)?)?;
    m.add_function(wrap_pyfunction!(frontier_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_count, m)?)?;
    m.add_function(wrap_pyfunction!(unbordered_count, m)?)?;
    m.add_function(wrap_pyfunction!(period_census, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_sum_bound, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_bound, m)?)?;
    m.add_function(wrap_pyfunction!(pigeonhole_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(max_nondisjoint_cap, m)?)?;
    m.add_function(wrap_pyfunction!(occurrence_witness, m)?)?;
    m.add_function(wrap_pyfunction!(successor_g, m)?)?;
    m.add_function(wrap_pyfunction!(debruijn_word, m)?)?;
    m.add_function(wrap_pyfunction!(debruijn_order3_special, m)?)?;
    m.add_function(wrap_pyfunction!(construct_c2_lower, m)?)?;
    m.add_function(wrap_pyfunction!(construct_c3_lower, m)?)?;
    m.add_function(wrap_pyfunction!(windows_exactly_once, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
