//! Finite quandles as operation tables.
//!
//! Elements are `0..order`. The operation `a * b` is stored row-major, row
//! `a`, column `b`. Every [`FiniteQuandle`] has passed the three axiom scans;
//! raw tables that may be invalid go through [`verify_quandle_axioms`].

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{lcm, PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry ({row},{col}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("quandle order must be positive")]
    Empty,
    #[error("dihedral quandle needs p >= 2, got {0}")]
    DihedralOrder(usize),
    #[error("quandle axioms fail: {0}")]
    Axioms(AxiomReport),
    #[error("conjugate of {g} by {h} is not in the set")]
    NotClosed { g: String, h: String },
    #[error("permutations must all have degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("permutation {0} listed twice")]
    Duplicate(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("quandle file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Outcome of the axiom scans. Each field holds the first violation found in
/// lexicographic order, or `None` when the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `a` with `a * a != a`.
    pub idempotency: Option<usize>,
    /// Column `b` and two rows `a1 < a2` with `a1 * b == a2 * b`.
    pub right_invertibility: Option<ColumnCollision>,
    /// `(a, b, c)` with `(a*b)*c != (a*c)*(b*c)`.
    pub self_distributivity: Option<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnCollision {
    pub column: usize,
    pub rows: (usize, usize),
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.idempotency.is_none()
            && self.right_invertibility.is_none()
            && self.self_distributivity.is_none()
    }

    /// `"pass"`/`"fail"` for idempotency, right-invertibility and
    /// self-distributivity, in that order.
    pub fn summary(&self) -> [&'static str; 3] {
        let word = |ok: bool| if ok { "pass" } else { "fail" };
        [
            word(self.idempotency.is_none()),
            word(self.right_invertibility.is_none()),
            word(self.self_distributivity.is_none()),
        ]
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [i, r, s] = self.summary();
        write!(
            f,
            "idempotency {i}, right-invertibility {r}, self-distributivity {s}"
        )
    }
}

fn check_shape(rows: &[Vec<usize>]) -> Result<usize, QuandleError> {
    let order = rows.len();
    if order == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != order {
            return Err(QuandleError::NotSquare {
                row,
                len: r.len(),
                order,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(QuandleError::EntryOutOfRange {
                row,
                col,
                value,
                order,
            });
        }
    }
    Ok(order)
}

/// Scans a raw table for the three quandle axioms.
///
/// Malformed tables (non-square, entries out of range) are an input error,
/// distinct from an axiom failure.
pub fn verify_quandle_axioms(rows: &[Vec<usize>]) -> Result<AxiomReport, QuandleError> {
    let n = check_shape(rows)?;
    let op = |a: usize, b: usize| rows[a][b];

    let idempotency = (0..n).find(|&a| op(a, a) != a);

    let right_invertibility = (0..n).find_map(|b| {
        let mut first_row = vec![usize::MAX; n];
        for a in 0..n {
            let c = op(a, b);
            if first_row[c] != usize::MAX {
                return Some(ColumnCollision {
                    column: b,
                    rows: (first_row[c], a),
                });
            }
            first_row[c] = a;
        }
        None
    });

    let self_distributivity = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(op(a, c), op(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
        None
    });

    Ok(AxiomReport {
        idempotency,
        right_invertibility,
        self_distributivity,
    })
}

/// The least `s >= 1` with `x (*y)^s = x` for all `x, y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuandleType {
    Finite(u64),
    /// Some right translation is not a permutation, so no power returns to
    /// the identity.
    Unbounded,
}

impl std::fmt::Display for QuandleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuandleType::Finite(s) => write!(f, "{s}"),
            QuandleType::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Type of a raw, possibly invalid, table.
pub fn table_type(rows: &[Vec<usize>]) -> Result<QuandleType, QuandleError> {
    let n = check_shape(rows)?;
    let mut s = 1u64;
    for b in 0..n {
        let column: Vec<usize> = rows.iter().map(|row| row[b]).collect();
        let Some(p) = Permutation::from_images(column) else {
            return Ok(QuandleType::Unbounded);
        };
        for len in p.cycle_lengths() {
            s = lcm(s, len as u64);
        }
    }
    Ok(QuandleType::Finite(s))
}

/// A finite quandle with verified axioms.
#[derive(Clone, Debug)]
pub struct FiniteQuandle {
    order: usize,
    table: Vec<usize>,
    // right_div[a * order + b] is the unique z with z * b = a
    right_div: Vec<usize>,
    labels: Option<Vec<String>>,
    inverse_map: Option<Vec<usize>>,
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteQuandle {}

impl FiniteQuandle {
    /// Builds a quandle from its rows, rejecting tables that fail an axiom.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let report = verify_quandle_axioms(rows)?;
        if !report.passes() {
            return Err(QuandleError::Axioms(report));
        }
        let order = rows.len();
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let mut right_div = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                right_div[table[a * order + b] * order + b] = a;
            }
        }
        Ok(FiniteQuandle {
            order,
            table,
            right_div,
            labels: None,
            inverse_map: None,
        })
    }

    /// Attaches display names, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a * b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// The unique `z` with `z * b = a`.
    #[inline]
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        self.right_div[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `a`, falling back to its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Element carrying the given label.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Group inverse, only known for conjugation quandles closed under it.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverse_map.as_ref().map(|m| m[a])
    }

    pub fn inverse_map(&self) -> Option<&[usize]> {
        self.inverse_map.as_deref()
    }

    /// `x (*y)^times`.
    pub fn act_repeatedly(&self, x: usize, y: usize, times: u64) -> usize {
        let mut z = x;
        for _ in 0..times {
            z = self.op(z, y);
        }
        z
    }

    pub fn quandle_type(&self) -> u64 {
        match table_type(&self.rows()) {
            Ok(QuandleType::Finite(s)) => s,
            _ => unreachable!("a verified quandle has permutation columns"),
        }
    }
}

/// `quandle_type` as an operation over any verified quandle.
pub fn quandle_type(x: &FiniteQuandle) -> QuandleType {
    QuandleType::Finite(x.quandle_type())
}

/// The dihedral quandle `R_p`: `a * b = 2b − a mod p`.
pub fn make_dihedral(p: usize) -> Result<FiniteQuandle, QuandleError> {
    if p < 2 {
        return Err(QuandleError::DihedralOrder(p));
    }
    let rows: Vec<Vec<usize>> = (0..p)
        .map(|a| (0..p).map(|b| (2 * b + p - a) % p).collect())
        .collect();
    FiniteQuandle::from_rows(&rows)
}

/// Conjugation quandle `g * h = h⁻¹ g h` on a set of permutations closed
/// under mutual conjugation. Element `i` is `permutations[i]`.
pub fn make_conjugation_quandle(
    permutations: &[Permutation],
) -> Result<FiniteQuandle, QuandleError> {
    let Some(first) = permutations.first() else {
        return Err(QuandleError::Empty);
    };
    let degree = first.degree();
    for (i, p) in permutations.iter().enumerate() {
        if p.degree() != degree {
            return Err(QuandleError::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        if permutations[..i].contains(p) {
            return Err(QuandleError::Duplicate(p.to_string()));
        }
    }
    let index_of = |p: &Permutation| permutations.iter().position(|q| q == p);
    let mut rows = Vec::with_capacity(permutations.len());
    for g in permutations {
        let mut row = Vec::with_capacity(permutations.len());
        for h in permutations {
            let c = g.conjugate_by(h);
            match index_of(&c) {
                Some(i) => row.push(i),
                None => {
                    return Err(QuandleError::NotClosed {
                        g: g.to_string(),
                        h: h.to_string(),
                    })
                }
            }
        }
        rows.push(row);
    }
    let mut q = FiniteQuandle::from_rows(&rows)?
        .with_labels(permutations.iter().map(ToString::to_string).collect());
    let inverses: Option<Vec<usize>> = permutations
        .iter()
        .map(|p| index_of(&p.inverse()))
        .collect();
    q.inverse_map = inverses;
    Ok(q)
}

/// The six 4-cycles of `S_4`, in the order used throughout the crate:
/// `(1234), (1423), (1342), (1432), (1324), (1243)`.
///
/// With this order, elements `0,1,2` have inverses `3,4,5`.
pub const Q6_CYCLES: [&str; 6] = ["(1234)", "(1423)", "(1342)", "(1432)", "(1324)", "(1243)"];

/// The order-6 conjugation quandle on the 4-cycles of `S_4`, a quandle of
/// type 4. Labels are in cycle notation; [`FiniteQuandle::inverse`] pairs each
/// cycle with its inverse.
pub fn make_q6() -> FiniteQuandle {
    let perms: Vec<Permutation> = Q6_CYCLES
        .iter()
        .map(|c| Permutation::parse_cycles(c, 4).expect("valid cycle"))
        .collect();
    make_conjugation_quandle(&perms).expect("4-cycles form a conjugacy class")
}

/// Serializes to the text quandle format: the order, then one row per line
/// with an optional `# label` suffix.
pub fn write_quandle(q: &FiniteQuandle) -> String {
    let mut out = format!("{}\n", q.order);
    for a in 0..q.order {
        let row: Vec<String> = (0..q.order).map(|b| q.op(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        if let Some(labels) = &q.labels {
            let _ = write!(out, " # {}", labels[a]);
        }
        out.push('\n');
    }
    out
}

/// Parses the text quandle format and verifies the axioms.
///
/// Labels are kept only when every row carries one.
pub fn parse_quandle(text: &str) -> Result<FiniteQuandle, QuandleError> {
    let (rows, labels) = parse_table(text)?;
    let q = FiniteQuandle::from_rows(&rows)?;
    match labels.into_iter().collect::<Option<Vec<String>>>() {
        Some(l) => Ok(q.with_labels(l)),
        None => Ok(q),
    }
}

/// Rows of a quandle file without checking the axioms, so that invalid tables
/// can still be reported on.
pub fn parse_quandle_rows(text: &str) -> Result<Vec<Vec<usize>>, QuandleError> {
    Ok(parse_table(text)?.0)
}

type Table = (Vec<Vec<usize>>, Vec<Option<String>>);

fn parse_table(text: &str) -> Result<Table, QuandleError> {
    let parse_err = |line: usize, msg: &str| QuandleError::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };
    // blank lines and whole-line comments are skipped
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let l = l.trim();
        !l.is_empty() && !l.starts_with('#')
    });
    let (first_no, first) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let order: usize = first
        .split('#')
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| parse_err(first_no, "expected the quandle order"))?;
    if order == 0 {
        return Err(QuandleError::Empty);
    }
    let mut rows = Vec::with_capacity(order);
    let mut labels = Vec::with_capacity(order);
    for (no, line) in lines {
        if rows.len() == order {
            return Err(parse_err(no, "trailing content after the last row"));
        }
        let (entries, label) = match line.split_once('#') {
            Some((e, l)) => (e, Some(l.trim().to_string())),
            None => (line, None),
        };
        let row: Vec<usize> = entries
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(no, "non-numeric entry"))?;
        rows.push(row);
        labels.push(label);
    }
    if rows.len() != order {
        return Err(parse_err(
            text.lines().count(),
            &format!("expected {order} rows, found {}", rows.len()),
        ));
    }
    Ok((rows, labels))
}
