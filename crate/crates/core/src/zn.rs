//! Homogeneous linear systems over `ℤ/nℤ`.
//!
//! The matrix is diagonalized with unimodular row and column operations
//! (Smith-form style, without enforcing the divisibility chain). Column
//! operations are recorded in `Q`, so that `P·A·Q = D` and the solutions of
//! `A·x = 0` are exactly `x = Q·y` with `dᵢ·yᵢ ≡ 0 (mod n)`. Pivots that are
//! zero divisors in `ℤ/nℤ` are handled by the extended-gcd step rather than
//! by division.

use serde::Serialize;

use crate::perm::gcd;

/// Dense matrix with entries reduced mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnMatrix {
    modulus: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl ZnMatrix {
    pub fn new(modulus: u64, cols: usize) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        ZnMatrix {
            modulus,
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as signed coefficients; they are reduced mod n.
    pub fn push_row(&mut self, coeffs: &[i64]) {
        assert_eq!(coeffs.len(), self.cols);
        let n = self.modulus as i64;
        self.rows
            .push(coeffs.iter().map(|&c| c.rem_euclid(n) as u64).collect());
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    /// `A·x mod n`.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let n = self.modulus as u128;
        self.rows
            .iter()
            .map(|r| {
                (r.iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u128 * b as u128 % n)
                    .sum::<u128>()
                    % n) as u64
            })
            .collect()
    }
}

/// One cyclic factor of the solution group: all multiples `k·vector` for
/// `k` in `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub vector: Vec<u64>,
    pub order: u64,
}

/// The solution group of `A·x = 0` as a direct sum of cyclic subgroups.
///
/// Every solution has a unique expression `Σ cⱼ·gⱼ` with `0 <= cⱼ < orderⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelBasis {
    pub modulus: u64,
    pub dimension: usize,
    pub generators: Vec<Generator>,
}

impl KernelBasis {
    /// Number of solutions, `None` on overflow.
    pub fn count(&self) -> Option<u128> {
        self.generators
            .iter()
            .try_fold(1u128, |acc, g| acc.checked_mul(g.order as u128))
    }

    /// All solutions, with the last generator's coefficient varying fastest.
    pub fn iter(&self) -> KernelIter<'_> {
        KernelIter {
            basis: self,
            coeffs: vec![0; self.generators.len()],
            done: false,
        }
    }
}

pub struct KernelIter<'a> {
    basis: &'a KernelBasis,
    coeffs: Vec<u64>,
    done: bool,
}

impl Iterator for KernelIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let n = self.basis.modulus;
        let mut x = vec![0u64; self.basis.dimension];
        for (c, g) in self.coeffs.iter().zip(&self.basis.generators) {
            if *c == 0 {
                continue;
            }
            for (xi, &vi) in x.iter_mut().zip(&g.vector) {
                *xi = (*xi + c * vi) % n;
            }
        }
        // odometer step
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < self.basis.generators[i].order {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(x)
    }
}

/// Extended Euclid on non-negative integers: `(g, s, t)` with `s·a + t·b = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Replaces `(u, v)` by `(s·u + t·v, p·u + q·v)` entrywise mod n.
fn combine(u: &mut [u64], v: &mut [u64], [s, t, p, q]: [i128; 4], n: u64) {
    let n = n as i128;
    for (x, y) in u.iter_mut().zip(v.iter_mut()) {
        let (a, b) = (*x as i128, *y as i128);
        *x = (s * a + t * b).rem_euclid(n) as u64;
        *y = (p * a + q * b).rem_euclid(n) as u64;
    }
}

/// Unimodular 2×2 transform sending `(a, b)` to `(gcd, 0)`, for `a != 0`.
fn reducer(a: u64, b: u64) -> [i128; 4] {
    if b.is_multiple_of(a) {
        [1, 0, -((b / a) as i128), 1]
    } else {
        let (g, s, t) = ext_gcd(a as i128, b as i128);
        [s, t, -(b as i128) / g, a as i128 / g]
    }
}

/// Solves `A·x = 0` over `ℤ/nℤ`.
///
/// Pivots are chosen at the lowest remaining row index, then the lowest
/// column. Zero rows are dropped as elimination proceeds.
pub fn kernel(matrix: &ZnMatrix) -> KernelBasis {
    let n = matrix.modulus;
    let cols = matrix.cols;
    let mut rows: Vec<Vec<u64>> = matrix
        .rows
        .iter()
        .filter(|r| r.iter().any(|&v| v != 0))
        .cloned()
        .collect();
    // columns of Q stored as rows of qt
    let mut qt: Vec<Vec<u64>> = (0..cols)
        .map(|i| {
            let mut e = vec![0; cols];
            e[i] = 1;
            e
        })
        .collect();
    let mut pivots: Vec<u64> = Vec::new();

    let mut t = 0;
    while t < cols && !rows.is_empty() {
        // lowest row with a non-zero entry at or after column t
        let Some((ri, cj)) = rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| (t..cols).find(|&j| r[j] != 0).map(|j| (i, j)))
        else {
            break;
        };
        rows.swap(0, ri);
        if cj != t {
            for r in rows.iter_mut() {
                r.swap(t, cj);
            }
            qt.swap(t, cj);
        }

        loop {
            // clear column t below the pivot row
            for i in 1..rows.len() {
                let b = rows[i][t];
                if b == 0 {
                    continue;
                }
                let m = reducer(rows[0][t], b);
                let (head, tail) = rows.split_at_mut(i);
                combine(&mut head[0], &mut tail[0], m, n);
            }
            // clear row t right of the pivot, recording the column ops
            let mut touched_column = false;
            for j in t + 1..cols {
                let b = rows[0][j];
                if b == 0 {
                    continue;
                }
                let m = reducer(rows[0][t], b);
                let (mut ct, mut cj): (Vec<u64>, Vec<u64>) =
                    rows.iter().map(|r| (r[t], r[j])).unzip();
                combine(&mut ct, &mut cj, m, n);
                for (r, (a, b)) in rows.iter_mut().zip(ct.into_iter().zip(cj)) {
                    r[t] = a;
                    r[j] = b;
                }
                let (head, tail) = qt.split_at_mut(j);
                combine(&mut head[t], &mut tail[0], m, n);
                touched_column = true;
            }
            if !touched_column || rows[1..].iter().all(|r| r[t] == 0) {
                break;
            }
        }

        pivots.push(rows[0][t]);
        rows.remove(0);
        rows.retain(|r| r.iter().any(|&v| v != 0));
        t += 1;
    }

    let mut generators = Vec::new();
    for (i, q) in qt.into_iter().enumerate() {
        let d = pivots.get(i).copied().unwrap_or(0);
        let order = if d == 0 { n } else { gcd(d, n) };
        if order == 1 {
            continue;
        }
        let step = n / order;
        let vector = q.into_iter().map(|v| v * step % n).collect();
        generators.push(Generator { vector, order });
    }
    KernelBasis {
        modulus: n,
        dimension: cols,
        generators,
    }
}
