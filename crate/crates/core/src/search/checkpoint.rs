use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::detect::SplitConvention;
use crate::error::{Error, Result};
use crate::word::Word;

use super::{ProblemKind, SearchProblem};

const MAGIC: &str = "splitov-checkpoint v1";

/// Resumable position of a serial search.
///
/// Text form, one `key=value` per line:
///
/// ```text
/// splitov-checkpoint v1
/// problem=C k=2 n=4 convention=empty-gap/empty-piece
/// prefix=0101
/// cursor=1
/// nodes=1234
/// best=0101010010011011
/// ```
///
/// `best` repeats once per kept witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub problem: SearchProblem,
    /// Word on the search path when the run stopped.
    pub prefix: Word,
    /// Next letter to try below `prefix`.
    pub cursor: u16,
    pub nodes: u64,
    pub best: Vec<Word>,
}

impl Checkpoint {
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|e| Error::Checkpoint(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Checkpoint(e.to_string()))?;
        text.parse()
    }
}

impl fmt::Display for Checkpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.problem;
        writeln!(f, "{MAGIC}")?;
        writeln!(
            f,
            "problem={} k={} {}={} convention={}",
            p.kind.family(),
            p.k,
            p.kind.param_name(),
            p.kind.param(),
            p.convention.name()
        )?;
        writeln!(f, "prefix={}", self.prefix)?;
        writeln!(f, "cursor={}", self.cursor)?;
        writeln!(f, "nodes={}", self.nodes)?;
        for w in &self.best {
            writeln!(f, "best={w}")?;
        }
        Ok(())
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| bad(format!("bad {what}: {s:?}")))
}

fn parse_problem(line: &str) -> Result<SearchProblem> {
    let mut family = None;
    let mut k = None;
    let mut param = None;
    let mut convention = None;
    for field in line.split(' ') {
        let (key, value) = field.split_once('=').ok_or_else(|| bad(format!("bad field {field:?}")))?;
        match key {
            "problem" => family = Some(value.to_string()),
            "k" => k = Some(num::<usize>(value, "k")?),
            "n" | "t" => param = Some((key.to_string(), num::<usize>(value, key)?)),
            "convention" => {
                convention = Some(
                    SplitConvention::from_name(value)
                        .ok_or_else(|| bad(format!("unknown convention {value:?}")))?,
                )
            }
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
    }
    let (pname, pval) = param.ok_or_else(|| bad("missing parameter"))?;
    let kind = match (family.as_deref(), pname.as_str()) {
        (Some("C"), "n") => ProblemKind::DisjointFactors(pval),
        (Some("S"), "t") => ProblemKind::SplitOverlap(pval),
        (Some("R"), "t") => ProblemKind::ReversedSplitOverlap(pval),
        _ => return Err(bad("bad problem line")),
    };
    let k = k.ok_or_else(|| bad("missing k"))?;
    let convention = convention.ok_or_else(|| bad("missing convention"))?;
    Ok(SearchProblem::new(kind, k)?.with_convention(convention))
}

impl FromStr for Checkpoint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err(bad("missing header"));
        }
        let mut problem = None;
        let mut prefix = None;
        let mut cursor = None;
        let mut nodes = None;
        let mut best = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if line.starts_with("problem=") {
                problem = Some(parse_problem(line)?);
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("bad line {line:?}")))?;
            let k = problem.as_ref().map(|p: &SearchProblem| p.k).ok_or_else(|| bad("problem must come first"))?;
            match key {
                "prefix" => prefix = Some(Word::parse(value, k)?),
                "cursor" => cursor = Some(num(value, "cursor")?),
                "nodes" => nodes = Some(num(value, "nodes")?),
                "best" => best.push(Word::parse(value, k)?),
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        Ok(Checkpoint {
            problem: problem.ok_or_else(|| bad("missing problem"))?,
            prefix: prefix.ok_or_else(|| bad("missing prefix"))?,
            cursor: cursor.ok_or_else(|| bad("missing cursor"))?,
            nodes: nodes.ok_or_else(|| bad("missing nodes"))?,
            best,
        })
    }
}
