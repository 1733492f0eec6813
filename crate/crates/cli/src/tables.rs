//! Reference table values, loaded from the checked-in TSV file.

use splitov::combinatorics::Family;
use splitov::search::{ProblemKind, SearchProblem};
use splitov::Word;

const DATA: &str = include_str!("../data/reference_tables.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtLeast,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub table: u8,
    pub k: usize,
    pub param: usize,
    pub relation: Relation,
    pub value: usize,
    pub witness: Option<String>,
    /// The witness is the lexicographically least optimal word.
    pub least: bool,
}

impl Entry {
    pub fn family(&self) -> Family {
        family_of(self.table)
    }

    pub fn problem(&self) -> splitov::Result<SearchProblem> {
        SearchProblem::new(ProblemKind::from_family(self.family(), self.param), self.k)
    }

    pub fn witness_word(&self) -> Option<splitov::Result<Word>> {
        self.witness.as_deref().map(|w| Word::parse(w, self.k))
    }
}

pub fn family_of(table: u8) -> Family {
    match table {
        1 => Family::C,
        2 => Family::S,
        _ => Family::R,
    }
}

fn parse_line(line: &str) -> Entry {
    let f: Vec<&str> = line.split('\t').collect();
    assert_eq!(f.len(), 7, "bad reference row {line:?}");
    let num = |s: &str| s.parse::<usize>().unwrap_or_else(|_| panic!("bad number in {line:?}"));
    Entry {
        table: num(f[0]) as u8,
        k: num(f[1]),
        param: num(f[2]),
        relation: match f[3] {
            "=" => Relation::Equal,
            ">=" => Relation::AtLeast,
            other => panic!("bad relation {other:?}"),
        },
        value: num(f[4]),
        witness: (f[5] != "-").then(|| f[5].to_string()),
        least: f[6] == "yes",
    }
}

/// Every row of the reference file.
pub fn entries() -> Vec<Entry> {
    DATA.lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(parse_line)
        .collect()
}

pub fn table(table: u8) -> Vec<Entry> {
    entries().into_iter().filter(|e| e.table == table).collect()
}

pub fn lookup(table: u8, k: usize, param: usize) -> Option<Entry> {
    entries().into_iter().find(|e| e.table == table && e.k == k && e.param == param)
}

/// Exact `C(k, n)` values listed for this `k`, keyed by `n`.
pub fn known_c(k: usize) -> std::collections::BTreeMap<usize, num_bigint::BigUint> {
    table(1)
        .into_iter()
        .filter(|e| e.k == k && e.relation == Relation::Equal)
        .map(|e| (e.param, e.value.into()))
        .collect()
}

/// Cells recomputed by default: small enough for a few seconds each.
pub fn default_cell(table: u8, k: usize, param: usize) -> bool {
    match table {
        1 => k == 1 || param == 1 || matches!((k, param), (2, 2..=5) | (3, 2..=3) | (4, 2) | (5, 2)),
        _ => k == 1 || param == 0 || matches!((k, param), (2, 1..=2) | (3, 1) | (4, 1)),
    }
}

/// Exact cells that need a longer budget.
pub fn stretch_cell(table: u8, k: usize, param: usize) -> bool {
    matches!((table, k, param), (1, 4, 3) | (2, 2, 3) | (3, 2, 3))
}
