//! Quandle 2- and 3-cocycles with coefficients in `ℤ/nℤ`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::quandle::{make_dihedral, make_q6, FiniteQuandle};
use crate::zn::{kernel, KernelBasis, ZnMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("coefficient modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("table has {found} entries, expected {expected} for quandle order {order}")]
    Dimension {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("table value {value} at index {index} is not reduced mod {modulus}")]
    Unreduced {
        index: usize,
        value: u64,
        modulus: u64,
    },
    #[error("cocycle conditions fail: {0}")]
    NotACocycle(CocycleReport),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bracket {bracket} is not divisible by {p} at {tuple:?}")]
    Indivisible {
        p: u64,
        tuple: (u64, u64, u64),
        bracket: String,
    },
    #[error("quandle order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("solution count {count} exceeds the cap {cap}")]
    CapExceeded { count: String, cap: u64 },
    #[error("linear system has no solutions; the zero cocycle should always solve it")]
    NoSolutions,
    #[error("cocycle belongs to a different quandle")]
    QuandleMismatch,
    #[error("cocycle file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The coefficient group `ℤ/nℤ`, written additively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coefficients {
    modulus: u64,
}

impl Coefficients {
    pub fn new(modulus: u64) -> Result<Self, CocycleError> {
        if modulus < 2 {
            return Err(CocycleError::Modulus(modulus));
        }
        Ok(Coefficients { modulus })
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    pub fn scale(self, k: i64, a: u64) -> u64 {
        let n = self.modulus as i128;
        (k as i128 * a as i128).rem_euclid(n) as u64
    }
}

/// A failed identity: the first offending tuple and both sides' values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub tuple: Vec<usize>,
    pub lhs: u64,
    pub rhs: u64,
}

/// Outcome of a cocycle scan. Witnesses are lexicographically least.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    /// A degenerate tuple whose value is non-zero.
    pub degeneracy: Option<Vec<usize>>,
    pub identity: Option<IdentityViolation>,
}

impl CocycleReport {
    pub fn passes(&self) -> bool {
        self.degeneracy.is_none() && self.identity.is_none()
    }
}

impl std::fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.degeneracy {
            None => write!(f, "degeneracy pass")?,
            Some(t) => write!(f, "degeneracy fail at {t:?}")?,
        }
        match &self.identity {
            None => write!(f, ", identity pass"),
            Some(v) => write!(
                f,
                ", identity fail at {:?} (lhs {}, rhs {})",
                v.tuple, v.lhs, v.rhs
            ),
        }
    }
}

fn check_table(
    quandle: &FiniteQuandle,
    coeff: Coefficients,
    table: &[u64],
    arity: u32,
) -> Result<(), CocycleError> {
    let order = quandle.order();
    let expected = order.pow(arity);
    if table.len() != expected {
        return Err(CocycleError::Dimension {
            order,
            expected,
            found: table.len(),
        });
    }
    if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= coeff.modulus) {
        return Err(CocycleError::Unreduced {
            index,
            value,
            modulus: coeff.modulus,
        });
    }
    Ok(())
}

/// Full scan of the 2-cocycle conditions on a row-major `m × m` table:
/// `φ(x,x) = 0` and
/// `φ(x₁,x₃) − φ(x₁,x₂) = φ(x₁*x₂, x₃) − φ(x₁*x₃, x₂*x₃)`.
pub fn verify_2cocycle(
    quandle: &FiniteQuandle,
    coeff: Coefficients,
    table: &[u64],
) -> Result<CocycleReport, CocycleError> {
    check_table(quandle, coeff, table, 2)?;
    let m = quandle.order();
    let phi = |a: usize, b: usize| table[a * m + b];
    let c = coeff;

    let degeneracy = (0..m).find(|&x| phi(x, x) != 0).map(|x| vec![x, x]);
    let identity = (0..m).into_par_iter().find_map_first(|x1| {
        for x2 in 0..m {
            for x3 in 0..m {
                let lhs = c.sub(phi(x1, x3), phi(x1, x2));
                let rhs = c.sub(
                    phi(quandle.op(x1, x2), x3),
                    phi(quandle.op(x1, x3), quandle.op(x2, x3)),
                );
                if lhs != rhs {
                    return Some(IdentityViolation {
                        tuple: vec![x1, x2, x3],
                        lhs,
                        rhs,
                    });
                }
            }
        }
        None
    });
    Ok(CocycleReport {
        degeneracy,
        identity,
    })
}

/// Full scan of the 3-cocycle conditions on a row-major `m × m × m` table:
/// `θ(x₁,x₂,x₃) = 0` when `x₁ = x₂` or `x₂ = x₃`, and
/// `θ(x₁,x₃,x₄) − θ(x₁,x₂,x₄) + θ(x₁,x₂,x₃)
///  = θ(x₁*x₂,x₃,x₄) − θ(x₁*x₃,x₂*x₃,x₄) + θ(x₁*x₄,x₂*x₄,x₃*x₄)`.
pub fn verify_3cocycle(
    quandle: &FiniteQuandle,
    coeff: Coefficients,
    table: &[u64],
) -> Result<CocycleReport, CocycleError> {
    check_table(quandle, coeff, table, 3)?;
    let m = quandle.order();
    let theta = |a: usize, b: usize, d: usize| table[(a * m + b) * m + d];
    let op = |a: usize, b: usize| quandle.op(a, b);
    let c = coeff;

    let mut degeneracy = None;
    'outer: for x1 in 0..m {
        for x2 in 0..m {
            for x3 in 0..m {
                if (x1 == x2 || x2 == x3) && theta(x1, x2, x3) != 0 {
                    degeneracy = Some(vec![x1, x2, x3]);
                    break 'outer;
                }
            }
        }
    }

    let identity = (0..m).into_par_iter().find_map_first(|x1| {
        for x2 in 0..m {
            for x3 in 0..m {
                for x4 in 0..m {
                    let lhs = c.add(
                        c.sub(theta(x1, x3, x4), theta(x1, x2, x4)),
                        theta(x1, x2, x3),
                    );
                    let rhs = c.add(
                        c.sub(theta(op(x1, x2), x3, x4), theta(op(x1, x3), op(x2, x3), x4)),
                        theta(op(x1, x4), op(x2, x4), op(x3, x4)),
                    );
                    if lhs != rhs {
                        return Some(IdentityViolation {
                            tuple: vec![x1, x2, x3, x4],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    });
    Ok(CocycleReport {
        degeneracy,
        identity,
    })
}

/// A verified 2-cocycle `φ: X² → ℤ/nℤ`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    quandle: Arc<FiniteQuandle>,
    coeff: Coefficients,
    table: Vec<u64>,
}

impl Cocycle2 {
    pub fn new(
        quandle: Arc<FiniteQuandle>,
        coeff: Coefficients,
        table: Vec<u64>,
    ) -> Result<Self, CocycleError> {
        let report = verify_2cocycle(&quandle, coeff, &table)?;
        if !report.passes() {
            return Err(CocycleError::NotACocycle(report));
        }
        Ok(Cocycle2 {
            quandle,
            coeff,
            table,
        })
    }

    pub fn zero(quandle: Arc<FiniteQuandle>, coeff: Coefficients) -> Self {
        let m = quandle.order();
        Cocycle2 {
            quandle,
            coeff,
            table: vec![0; m * m],
        }
    }

    pub fn quandle(&self) -> &Arc<FiniteQuandle> {
        &self.quandle
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.table[a * self.quandle.order() + b]
    }

    /// Whether this cocycle is defined on `x`.
    pub fn is_on(&self, x: &FiniteQuandle) -> bool {
        std::ptr::eq(self.quandle.as_ref(), x) || *self.quandle == *x
    }
}

/// A verified 3-cocycle `θ: X³ → ℤ/nℤ`.
#[derive(Clone, Debug)]
pub struct Cocycle3 {
    quandle: Arc<FiniteQuandle>,
    coeff: Coefficients,
    table: Vec<u64>,
}

impl Cocycle3 {
    pub fn new(
        quandle: Arc<FiniteQuandle>,
        coeff: Coefficients,
        table: Vec<u64>,
    ) -> Result<Self, CocycleError> {
        let report = verify_3cocycle(&quandle, coeff, &table)?;
        if !report.passes() {
            return Err(CocycleError::NotACocycle(report));
        }
        Ok(Cocycle3 {
            quandle,
            coeff,
            table,
        })
    }

    pub fn quandle(&self) -> &Arc<FiniteQuandle> {
        &self.quandle
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        let m = self.quandle.order();
        self.table[(a * m + b) * m + c]
    }
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// One entry of the Mochizuki cocycle,
/// `(x₁ − x₂)·((2x₃ − x₂)^p + x₂^p − 2x₃^p)/p mod p`, evaluated exactly on
/// the representatives `0..p`.
pub fn mochizuki_value(p: u64, x1: u64, x2: u64, x3: u64) -> Result<u64, CocycleError> {
    let big = |v: i64| BigInt::from(v);
    let exp = p as u32;
    let (x1, x2, x3) = (x1 as i64, x2 as i64, x3 as i64);
    let bracket = big(2 * x3 - x2).pow(exp) + big(x2).pow(exp) - big(2) * big(x3).pow(exp);
    let pb = big(p as i64);
    if !(&bracket % &pb).is_zero() {
        return Err(CocycleError::Indivisible {
            p,
            tuple: (x1 as u64, x2 as u64, x3 as u64),
            bracket: bracket.to_string(),
        });
    }
    let value = big(x1 - x2) * (bracket / &pb);
    let mut r = value % &pb;
    if r.is_negative() {
        r += &pb;
    }
    Ok(r.iter_u64_digits().next().unwrap_or(0))
}

/// The Mochizuki 3-cocycle of the dihedral quandle `R_p` with `ℤ_p`
/// coefficients.
pub fn mochizuki_cocycle(p: u64) -> Result<Cocycle3, CocycleError> {
    if !is_odd_prime(p) {
        return Err(CocycleError::NotOddPrime(p));
    }
    let rp = Arc::new(make_dihedral(p as usize).expect("p >= 3"));
    let coeff = Coefficients::new(p)?;
    let mut table = Vec::with_capacity((p * p * p) as usize);
    for x1 in 0..p {
        for x2 in 0..p {
            for x3 in 0..p {
                table.push(mochizuki_value(p, x1, x2, x3)?);
            }
        }
    }
    Cocycle3::new(rp, coeff, table)
}

/// Non-zero values of the ℤ₄-valued cocycle on Q₆, in one-based element
/// numbering `1 = (1234), 2 = (1423), 3 = (1342), 4 = (1432), 5 = (1324),
/// 6 = (1243)` (see [`crate::quandle::Q6_CYCLES`]).
const Q6_Z4_ENTRIES: [((usize, usize), u64); 20] = [
    // φ(a, a⁻¹) = 1
    ((1, 4), 1),
    ((4, 1), 1),
    ((2, 5), 1),
    ((5, 2), 1),
    ((3, 6), 1),
    ((6, 3), 1),
    ((1, 3), 1),
    ((2, 1), 1),
    ((2, 3), 1),
    ((3, 1), 1),
    ((3, 5), 1),
    ((5, 1), 1),
    ((5, 6), 1),
    ((6, 1), 1),
    ((6, 2), 1),
    ((6, 5), 1),
    ((1, 5), 2),
    ((5, 3), 2),
    ((1, 6), 3),
    ((3, 2), 3),
];

/// The explicit 2-cocycle of Q₆ with `ℤ₄` coefficients.
pub fn q6_appendix_cocycle() -> Cocycle2 {
    let q6 = Arc::new(make_q6());
    let mut table = vec![0u64; 36];
    for ((a, b), v) in Q6_Z4_ENTRIES {
        table[(a - 1) * 6 + (b - 1)] = v;
    }
    Cocycle2::new(q6, Coefficients::new(4).expect("4 >= 2"), table)
        .expect("the Q6 table satisfies the 2-cocycle conditions")
}

/// Limits for [`enumerate_2cocycles`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Largest quandle order accepted; the system has `m³ + m` rows.
    pub max_order: usize,
    /// Largest solution count that may be listed.
    pub cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_order: 24,
            cap: 10_000,
        }
    }
}

/// The group `Z²(X; ℤ/nℤ)` as the kernel of the cocycle system.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    quandle: Arc<FiniteQuandle>,
    coeff: Coefficients,
    basis: KernelBasis,
    cap: u64,
}

impl CocycleSpace {
    /// Generators over the `m²` unknowns `φ(a, b)`, index `a·m + b`.
    pub fn basis(&self) -> &KernelBasis {
        &self.basis
    }

    pub fn count(&self) -> Option<u128> {
        self.basis.count()
    }

    /// Every cocycle, or [`CocycleError::CapExceeded`] when there are more
    /// than the configured cap.
    pub fn cocycles(&self) -> Result<impl Iterator<Item = Cocycle2> + '_, CocycleError> {
        match self.count() {
            Some(0) => return Err(CocycleError::NoSolutions),
            Some(c) if c <= self.cap as u128 => {}
            other => {
                return Err(CocycleError::CapExceeded {
                    count: other.map_or_else(|| "overflow".to_string(), |c| c.to_string()),
                    cap: self.cap,
                })
            }
        }
        Ok(self.basis.iter().map(move |table| Cocycle2 {
            quandle: Arc::clone(&self.quandle),
            coeff: self.coeff,
            table,
        }))
    }
}

/// Builds the linear system of the 2-cocycle conditions over `ℤ/nℤ` and
/// solves it.
pub fn enumerate_2cocycles(
    quandle: Arc<FiniteQuandle>,
    coeff: Coefficients,
    opts: EnumerateOptions,
) -> Result<CocycleSpace, CocycleError> {
    let m = quandle.order();
    if m > opts.max_order {
        return Err(CocycleError::TooLarge {
            order: m,
            limit: opts.max_order,
        });
    }
    let var = |a: usize, b: usize| a * m + b;
    let mut system = ZnMatrix::new(coeff.modulus(), m * m);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut push = |row: Vec<i64>, system: &mut ZnMatrix| {
        if row.iter().any(|&v| v != 0) && seen.insert(row.clone()) {
            system.push_row(&row);
        }
    };
    for a in 0..m {
        let mut row = vec![0i64; m * m];
        row[var(a, a)] = 1;
        push(row, &mut system);
    }
    for x1 in 0..m {
        for x2 in 0..m {
            for x3 in 0..m {
                // φ(x₁,x₃) − φ(x₁,x₂) − φ(x₁*x₂,x₃) + φ(x₁*x₃,x₂*x₃) = 0
                let mut row = vec![0i64; m * m];
                row[var(x1, x3)] += 1;
                row[var(x1, x2)] -= 1;
                row[var(quandle.op(x1, x2), x3)] -= 1;
                row[var(quandle.op(x1, x3), quandle.op(x2, x3))] += 1;
                let n = coeff.modulus() as i64;
                row.iter_mut().for_each(|v| *v = v.rem_euclid(n));
                push(row, &mut system);
            }
        }
    }
    let basis = kernel(&system);
    if basis.count() == Some(0) {
        return Err(CocycleError::NoSolutions);
    }
    Ok(CocycleSpace {
        quandle,
        coeff,
        basis,
        cap: opts.cap,
    })
}

/// A cocycle table read from text, not yet checked against a quandle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCocycle {
    /// 2 or 3.
    pub degree: u32,
    pub order: usize,
    pub modulus: u64,
    pub table: Vec<u64>,
}

impl RawCocycle {
    fn check_order(&self, quandle: &FiniteQuandle) -> Result<Coefficients, CocycleError> {
        if quandle.order() != self.order {
            return Err(CocycleError::QuandleMismatch);
        }
        Coefficients::new(self.modulus)
    }

    pub fn verify(&self, quandle: &FiniteQuandle) -> Result<CocycleReport, CocycleError> {
        let coeff = self.check_order(quandle)?;
        match self.degree {
            2 => verify_2cocycle(quandle, coeff, &self.table),
            _ => verify_3cocycle(quandle, coeff, &self.table),
        }
    }

    pub fn into_cocycle2(self, quandle: Arc<FiniteQuandle>) -> Result<Cocycle2, CocycleError> {
        let coeff = self.check_order(&quandle)?;
        if self.degree != 2 {
            return Err(CocycleError::Parse {
                line: 1,
                msg: "expected a cocycle2 file".into(),
            });
        }
        Cocycle2::new(quandle, coeff, self.table)
    }

    pub fn into_cocycle3(self, quandle: Arc<FiniteQuandle>) -> Result<Cocycle3, CocycleError> {
        let coeff = self.check_order(&quandle)?;
        if self.degree != 3 {
            return Err(CocycleError::Parse {
                line: 1,
                msg: "expected a cocycle3 file".into(),
            });
        }
        Cocycle3::new(quandle, coeff, self.table)
    }
}

fn write_table(degree: u32, order: usize, modulus: u64, table: &[u64]) -> String {
    let mut out = format!("cocycle{degree} {order} {modulus}\n");
    for (i, &v) in table.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if degree == 2 {
            let _ = writeln!(out, "{} {} {v}", i / order, i % order);
        } else {
            let _ = writeln!(
                out,
                "{} {} {} {v}",
                i / (order * order),
                i / order % order,
                i % order
            );
        }
    }
    out
}

/// Text form: header `cocycle2 <order> <modulus>`, then `x1 x2 value` per
/// non-zero entry in lexicographic order.
pub fn write_cocycle2(c: &Cocycle2) -> String {
    write_table(2, c.quandle.order(), c.coeff.modulus(), &c.table)
}

/// As [`write_cocycle2`] with `cocycle3` and `x1 x2 x3 value` lines.
pub fn write_cocycle3(c: &Cocycle3) -> String {
    write_table(3, c.quandle.order(), c.coeff.modulus(), &c.table)
}

/// Parses either cocycle file kind. Entries not listed are zero.
pub fn parse_cocycle(text: &str) -> Result<RawCocycle, CocycleError> {
    let err = |line: usize, msg: &str| CocycleError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let hl = header_no + 1;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let degree = match parts.first() {
        Some(&"cocycle2") => 2,
        Some(&"cocycle3") => 3,
        _ => return Err(err(hl, "header must start with cocycle2 or cocycle3")),
    };
    if parts.len() != 3 {
        return Err(err(
            hl,
            "header must be: cocycle2|cocycle3 <order> <modulus>",
        ));
    }
    let order: usize = parts[1].parse().map_err(|_| err(hl, "bad quandle order"))?;
    let modulus: u64 = parts[2].parse().map_err(|_| err(hl, "bad modulus"))?;
    if modulus < 2 {
        return Err(CocycleError::Modulus(modulus));
    }
    let mut table = vec![0u64; order.pow(degree)];
    for (no, line) in lines {
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err(no + 1, "non-numeric field"))?;
        if nums.len() != degree as usize + 1 {
            return Err(err(no + 1, "wrong number of fields"));
        }
        let (idx, value) = nums.split_at(degree as usize);
        if idx.iter().any(|&x| x as usize >= order) {
            return Err(err(no + 1, "element out of range"));
        }
        if value[0] >= modulus {
            return Err(err(no + 1, "value not reduced mod the modulus"));
        }
        let flat = idx.iter().fold(0usize, |acc, &x| acc * order + x as usize);
        table[flat] = value[0];
    }
    Ok(RawCocycle {
        degree,
        order,
        modulus,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q6_cocycle_spot_values() {
        let phi = q6_appendix_cocycle();
        // one-based (1,5), (2,2), (3,6)
        assert_eq!(phi.get(0, 4), 2);
        assert_eq!(phi.get(1, 1), 0);
        assert_eq!(phi.get(2, 5), 1);
    }

    #[test]
    fn q6_cocycle_edge_equations() {
        let phi = q6_appendix_cocycle();
        let q = phi.quandle().clone();
        let c = phi.coefficients();
        let inv = |a| q.inverse(a).unwrap();
        let delta = phi.get(0, inv(0));
        for a in 0..6 {
            assert_eq!(phi.get(a, inv(a)), delta);
            for b in 0..6 {
                if b == a || b == inv(a) {
                    continue;
                }
                let op = |x, y| q.op(x, y);
                let eq3 = c.sub(
                    c.add(phi.get(a, b), phi.get(op(a, b), a)),
                    phi.get(a, op(b, a)),
                );
                assert_eq!(eq3, 0, "(3) at {a},{b}");
                let eq4 = c.sub(
                    c.add(phi.get(a, inv(b)), phi.get(op(a, inv(b)), b)),
                    c.add(phi.get(a, b), phi.get(op(a, b), inv(b))),
                );
                assert_eq!(eq4, 0, "(4) at {a},{b}");
                let eq5 = c.sub(
                    c.add(phi.get(a, b), phi.get(op(a, b), inv(a))),
                    phi.get(a, op(b, inv(a))),
                );
                assert_eq!(eq5, delta, "(5) at {a},{b}");
            }
        }
    }

    #[test]
    fn perturbed_q6_cocycle_fails() {
        let phi = q6_appendix_cocycle();
        let mut table = phi.table().to_vec();
        table[4] = 3;
        let report = verify_2cocycle(phi.quandle(), phi.coefficients(), &table).unwrap();
        assert!(report.degeneracy.is_none());
        let v = report.identity.expect("violation");
        assert_ne!(v.lhs, v.rhs);
    }

    #[test]
    fn zero_tables_pass() {
        let q = make_q6();
        let c = Coefficients::new(5).unwrap();
        assert!(verify_2cocycle(&q, c, &[0; 36]).unwrap().passes());
        assert!(verify_3cocycle(&q, c, &[0; 216]).unwrap().passes());
    }

    #[test]
    fn dimension_and_range_errors() {
        let q = make_q6();
        let c = Coefficients::new(4).unwrap();
        assert!(matches!(
            verify_2cocycle(&q, c, &[0; 35]),
            Err(CocycleError::Dimension { expected: 36, .. })
        ));
        let mut t = vec![0; 36];
        t[1] = 4;
        assert!(matches!(
            verify_2cocycle(&q, c, &t),
            Err(CocycleError::Unreduced { index: 1, .. })
        ));
        assert_eq!(Coefficients::new(1), Err(CocycleError::Modulus(1)));
    }

    #[test]
    fn mochizuki_values() {
        assert_eq!(mochizuki_value(3, 0, 1, 2).unwrap(), 2);
        let t3 = mochizuki_cocycle(3).unwrap();
        assert_eq!(t3.get(1, 1, 2), 0);
        for p in [3u64, 5, 7] {
            let t = mochizuki_cocycle(p).unwrap();
            let p = p as usize;
            for x in 0..p {
                for y in 0..p {
                    assert_eq!(t.get(x, x, y), 0);
                    assert_eq!(t.get(x, y, y), 0);
                }
            }
        }
    }

    #[test]
    fn mochizuki_rejects_bad_p() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert_eq!(
                mochizuki_cocycle(p).unwrap_err(),
                CocycleError::NotOddPrime(p)
            );
        }
    }

    #[test]
    fn perturbed_mochizuki_fails() {
        let t = mochizuki_cocycle(5).unwrap();
        let mut table = t.table().to_vec();
        // (0,1,2) is non-degenerate
        let i = 5 + 2;
        table[i] = (table[i] + 1) % 5;
        let report = verify_3cocycle(t.quandle(), t.coefficients(), &table).unwrap();
        assert!(report.degeneracy.is_none());
        assert!(report.identity.is_some());
    }

    #[test]
    fn enumeration_contains_known_cocycles() {
        let r3 = Arc::new(make_dihedral(3).unwrap());
        let space = enumerate_2cocycles(
            r3,
            Coefficients::new(3).unwrap(),
            EnumerateOptions::default(),
        )
        .unwrap();
        let all: Vec<Cocycle2> = space.cocycles().unwrap().collect();
        assert!(all.iter().any(|c| c.table().iter().all(|&v| v == 0)));
        for c in &all {
            assert!(verify_2cocycle(c.quandle(), c.coefficients(), c.table())
                .unwrap()
                .passes());
        }

        let phi = q6_appendix_cocycle();
        let space = enumerate_2cocycles(
            phi.quandle().clone(),
            phi.coefficients(),
            EnumerateOptions::default(),
        )
        .unwrap();
        assert!(space.cocycles().unwrap().any(|c| c.table() == phi.table()));
    }

    #[test]
    fn cap_and_size_limits() {
        let r5 = Arc::new(make_dihedral(5).unwrap());
        let c5 = Coefficients::new(5).unwrap();
        let opts = EnumerateOptions {
            cap: 3,
            ..Default::default()
        };
        let space = enumerate_2cocycles(r5.clone(), c5, opts).unwrap();
        assert!(matches!(
            space.cocycles().err(),
            Some(CocycleError::CapExceeded { cap: 3, .. })
        ));
        let opts = EnumerateOptions {
            max_order: 4,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_2cocycles(r5, c5, opts),
            Err(CocycleError::TooLarge { order: 5, limit: 4 })
        ));
    }

    #[test]
    fn file_round_trip() {
        let phi = q6_appendix_cocycle();
        let text = write_cocycle2(&phi);
        assert!(text.starts_with("cocycle2 6 4\n0 2 1\n"));
        let raw = parse_cocycle(&text).unwrap();
        assert!(raw.verify(phi.quandle()).unwrap().passes());
        let back = raw.into_cocycle2(phi.quandle().clone()).unwrap();
        assert_eq!(back.table(), phi.table());
        assert_eq!(write_cocycle2(&back), text);

        let theta = mochizuki_cocycle(3).unwrap();
        let text3 = write_cocycle3(&theta);
        let back3 = parse_cocycle(&text3)
            .unwrap()
            .into_cocycle3(theta.quandle().clone())
            .unwrap();
        assert_eq!(back3.table(), theta.table());
    }

    #[test]
    fn file_errors() {
        assert!(parse_cocycle("cocycle4 3 3\n").is_err());
        assert!(parse_cocycle("cocycle2 3 3\n0 3 1\n").is_err());
        assert!(parse_cocycle("cocycle2 3 3\n0 1 3\n").is_err());
        let raw = parse_cocycle("cocycle2 3 3\n0 1 1\n").unwrap();
        assert_eq!(
            raw.verify(&make_q6()).unwrap_err(),
            CocycleError::QuandleMismatch
        );
    }

    #[test]
    fn cocycle_file_comments() {
        let raw = parse_cocycle("# from R_3\n\ncocycle2 3 3 # header\n0 1 2 # phi(0,1)\n").unwrap();
        assert_eq!(raw.table[1], 2);
        let err = parse_cocycle("# c\ncocycle4 3 3\n").unwrap_err();
        assert!(matches!(err, CocycleError::Parse { line: 2, .. }));
    }
}
