//! Permutations of `{1, …, m}` stored zero-based, with cycle-notation I/O.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation {0:?}")]
    Malformed(String),
    #[error("letter {letter} out of range 1..={degree}")]
    LetterOutOfRange { letter: usize, degree: usize },
    #[error("letter {0} repeated")]
    Repeated(usize),
}

/// A permutation `x ↦ images[x]` of `{0, …, m−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Parses cycle notation over the letters `1..=degree`, e.g. `"(1342)"` or
    /// `"(12)(34)"`. Letters are single digits when no separator is used;
    /// commas or spaces inside a cycle allow multi-digit letters.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() || rest == "()" || rest == "e" {
            return Ok(Permutation { images });
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let letters: Vec<usize> = if body.contains(',') || body.contains(' ') {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| PermError::Malformed(text.to_string()))?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| PermError::Malformed(text.to_string()))?
            };
            for &l in &letters {
                if l == 0 || l > degree {
                    return Err(PermError::LetterOutOfRange { letter: l, degree });
                }
                if std::mem::replace(&mut used[l - 1], true) {
                    return Err(PermError::Repeated(l));
                }
            }
            for (i, &l) in letters.iter().enumerate() {
                images[l - 1] = letters[(i + 1) % letters.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `h⁻¹ g h` read left to right (apply `h⁻¹`, then `g`, then `h`), which
    /// is `g` with its letters renamed by `h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Self {
        let h_inv = h.inverse();
        let images = (0..self.degree())
            .map(|x| h.apply(self.apply(h_inv.apply(x))))
            .collect();
        Permutation { images }
    }

    /// Lengths of the cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }
}

/// Cycle notation with 1-based letters; each cycle starts at its smallest
/// letter and fixed points are omitted.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        let sep = if self.images.len() > 9 { "," } else { "" };
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.images[x];
            }
            write!(f, "({})", cycle.join(sep))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = Permutation::parse_cycles("(1342)", 4).unwrap();
        assert_eq!(g.images(), &[2, 0, 3, 1]);
        assert_eq!(g.to_string(), "(1342)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(
            Permutation::parse_cycles("(12)(34)", 4)
                .unwrap()
                .to_string(),
            "(12)(34)"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse_cycles("(15)", 4),
            Err(PermError::LetterOutOfRange { letter: 5, .. })
        ));
        assert_eq!(
            Permutation::parse_cycles("(121)", 4),
            Err(PermError::Repeated(1))
        );
        assert!(Permutation::parse_cycles("12", 4).is_err());
    }

    #[test]
    fn conjugation_renames_letters() {
        let g = Permutation::parse_cycles("(1342)", 4).unwrap();
        let h = Permutation::parse_cycles("(1234)", 4).unwrap();
        assert_eq!(g.conjugate_by(&h).to_string(), "(1324)");
    }

    #[test]
    fn cycles_and_inverse() {
        let g = Permutation::parse_cycles("(123)", 4).unwrap();
        let mut lens = g.cycle_lengths();
        lens.sort();
        assert_eq!(lens, vec![1, 3]);
        assert_eq!(g.inverse().to_string(), "(132)");
        assert_eq!(lcm(4, 6), 12);
    }
}
