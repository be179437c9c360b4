//! Text and JSON formats: `.qnd` tables, `{"n", "op"}` objects, groups as
//! Cayley tables or permutation generators, integer matrices, built-in
//! names, and tower descriptors.

mod descriptor;

pub use descriptor::{
    build_tower, parse_tower_descriptor, GroupRef, GroupTowerDescriptor, QuandleRef, TowerDescriptor,
};

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::Matrix;
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup};
use crate::inner::two_cycle_quandle;
use crate::permgroup::{PermGroup, Permutation};
use crate::quandle::FiniteQuandle;

/// `{"n": int, "op": [[int]]}`, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuandleJson {
    pub n: usize,
    pub op: Vec<Vec<usize>>,
}

impl QuandleJson {
    pub fn into_quandle(self) -> Result<FiniteQuandle> {
        if self.op.len() != self.n {
            return Err(Error::Malformed(format!("declared n = {} but table has {} rows", self.n, self.op.len())));
        }
        FiniteQuandle::from_table(self.op)
    }

    pub fn from_quandle(q: &FiniteQuandle) -> QuandleJson {
        QuandleJson { n: q.len(), op: q.table().to_vec() }
    }
}

/// Parses the `.qnd` format: a `quandle <n>` header, then `n` rows of `n`
/// 0-indexed entries. `#` starts a comment.
pub fn parse_qnd(text: &str) -> Result<FiniteQuandle> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["quandle", n] => n.parse::<usize>().map_err(|_| Error::Parse(format!("line {ln}: bad order {n:?}")))?,
        _ => return Err(Error::Parse(format!("line {ln}: expected `quandle <n>`"))),
    };
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("line {ln}: bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("line {ln}: expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
    }
    FiniteQuandle::from_table(rows)
}

pub fn to_qnd(q: &FiniteQuandle) -> String {
    let mut out = format!("quandle {}\n", q.len());
    for row in q.table() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Either format, told apart by a leading `{`.
pub fn parse_quandle(text: &str) -> Result<FiniteQuandle> {
    if text.trim_start().starts_with('{') {
        let j: QuandleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.into_quandle()
    } else {
        parse_qnd(text)
    }
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_arg(name: &str, arg: &str) -> Result<usize> {
    arg.parse().map_err(|_| Error::Parse(format!("{name}: bad size {arg:?}")))
}

/// `tait`, `trivial:<n>`, `tak:<n>` (on `ℤ/n`), `core-dihedral:<n>`,
/// `conj-sym:<n>`, `davis:<n>`, `two-cycles:<n>`.
pub fn builtin_quandle(name: &str) -> Result<FiniteQuandle> {
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    match head {
        "tait" if arg.is_empty() => Ok(FiniteQuandle::tait()),
        "trivial" => Ok(FiniteQuandle::trivial(parse_arg(name, arg)?)),
        "tak" => FiniteQuandle::tak(&FiniteGroup::cyclic(parse_arg(name, arg)?.max(1))),
        "core-dihedral" => Ok(FiniteQuandle::core(&FiniteGroup::dihedral(parse_arg(name, arg)?.max(1)))),
        "conj-sym" => Ok(FiniteQuandle::conj(&FiniteGroup::symmetric(parse_arg(name, arg)?))),
        "davis" => FiniteQuandle::davis_quotient(parse_arg(name, arg)?),
        "two-cycles" => two_cycle_quandle(parse_arg(name, arg)?),
        _ => Err(Error::Parse(format!("unknown built-in quandle {name:?}"))),
    }
}

/// A file path, or `builtin:<name>`.
pub fn load_quandle(spec: &str) -> Result<FiniteQuandle> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_quandle(name),
        None => parse_quandle(&read(Path::new(spec))?),
    }
}

/// `{"degree": m, "generators": ["(0 1)", ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermGenerators {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// A group read from input. Cayley tables are turned into their
/// right-regular representation, and their elements are then named by
/// table index.
#[derive(Debug, Clone)]
pub struct GroupInput {
    pub group: PermGroup,
    pub cayley: Option<FiniteGroup>,
}

impl GroupInput {
    pub fn from_cayley(g: FiniteGroup, bound: usize) -> Result<GroupInput> {
        if g.order() > bound {
            return Err(Error::OrderBoundExceeded(bound));
        }
        Ok(GroupInput { group: PermGroup::regular_representation(&g), cayley: Some(g) })
    }

    pub fn from_generators(p: &PermGenerators, bound: usize) -> Result<GroupInput> {
        let gens = p.generators.iter().map(|s| Permutation::parse(s, p.degree)).collect::<Result<Vec<_>>>()?;
        Ok(GroupInput { group: PermGroup::generate(p.degree, &gens, bound)?, cayley: None })
    }

    /// A table index for Cayley-table groups, cycle notation otherwise.
    pub fn element(&self, s: &str) -> Result<Permutation> {
        let p = match &self.cayley {
            Some(g) => {
                let a: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad element index {s:?}")))?;
                if a >= g.order() {
                    return Err(Error::IndexOutOfRange(format!("element {a}")));
                }
                Permutation::from_images_unchecked((0..g.order()).map(|x| g.mul(x, a)).collect())
            }
            None => Permutation::parse(s, self.group.degree())?,
        };
        if !self.group.contains(&p) {
            return Err(Error::NotSubgroup(format!("{s} is not in the group")));
        }
        Ok(p)
    }
}

/// `sym:<n>`, `alt:<n>`, `cyclic:<n>`, `dihedral:<n>` (order `2n`), as
/// permutation groups on their natural points (the regular representation
/// for `cyclic`).
pub fn builtin_group(name: &str, bound: usize) -> Result<GroupInput> {
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    let n = parse_arg(name, arg)?;
    let perm = |degree: usize, gens: Vec<Vec<Vec<usize>>>| -> Result<GroupInput> {
        let gens = gens.iter().map(|c| Permutation::from_cycles(degree, c)).collect::<Result<Vec<_>>>()?;
        Ok(GroupInput { group: PermGroup::generate(degree, &gens, bound)?, cayley: None })
    };
    match head {
        "sym" | "alt" | "cyclic" if n == 1 => perm(1, Vec::new()),
        "sym" if n >= 2 => perm(n, vec![vec![(0..n).collect()], vec![vec![0, 1]]]),
        "alt" if n >= 1 => perm(n, (2..n).map(|k| vec![vec![0, 1, k]]).collect()),
        "cyclic" if n >= 1 => perm(n, vec![vec![(0..n).collect()]]),
        "dihedral" if n >= 3 => {
            perm(n, vec![vec![(0..n).collect()], (1..=(n - 1) / 2).map(|i| vec![i, n - i]).collect()])
        }
        _ => Err(Error::Parse(format!("unknown built-in group {name:?}"))),
    }
}

pub fn parse_group(text: &str, bound: usize) -> Result<GroupInput> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("mul").is_some() {
        let t: CayleyTable = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        GroupInput::from_cayley(FiniteGroup::from_table(t)?, bound)
    } else {
        let p: PermGenerators = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        GroupInput::from_generators(&p, bound)
    }
}

/// A file path, or `builtin:<name>`.
pub fn load_group(spec: &str, bound: usize) -> Result<GroupInput> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_group(name, bound),
        None => parse_group(&read(Path::new(spec))?, bound),
    }
}

/// `{"rows": int, "cols": int, "entries": [[int]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn into_matrix(self) -> Result<Matrix<BigInt>> {
        let entries = self.entries.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Matrix::with_shape(self.rows, self.cols, entries)
    }
}
