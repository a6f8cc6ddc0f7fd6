//! Knots as braid closures and their quandle colorings.
//!
//! A coloring is fixed by the colors of the `k` top strands. Each letter
//! updates two adjacent strand colors:
//!
//! * `σᵢ`   sends `(a, b)` to `(b, a*b)`; the crossing color is `(a, b)`.
//! * `σᵢ⁻¹` sends `(a, b)` to `(b ∖ a, a)` where `z ∖ y` is the unique `w`
//!   with `w*y = z`; the crossing color is `(b ∖ a, a)`.
//!
//! In both cases the first component of the crossing color is the under-arc
//! that gets acted on and the second is the over-arc. The closure joins
//! bottom strand `i` to top strand `i`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::quandle::FiniteQuandle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid text must look like \"<strands>: s1 s2^-1 ...\"")]
    MissingStrands,
    #[error("strand count must be at least 1")]
    NoStrands,
    #[error("malformed token {token:?} at byte {position}")]
    Token { position: usize, token: String },
    #[error("generator s{generator} at byte {position} needs 1 <= i < {strands}")]
    OutOfRange {
        position: usize,
        generator: usize,
        strands: usize,
    },
    #[error("closure has {components} components; only knots are supported")]
    NotAKnot { components: usize },
    #[error("{what} must be odd and positive, got {value}")]
    NotOdd { what: &'static str, value: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn epsilon(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// `σᵢ` or `σᵢ⁻¹`, with `generator = i` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Positive,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Negative,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some((position, l)) = word
            .iter()
            .enumerate()
            .find(|(_, l)| l.generator == 0 || l.generator >= strands)
        {
            return Err(BraidError::OutOfRange {
                position,
                generator: l.generator,
                strands,
            });
        }
        Ok(BraidWord { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Strand permutation: top position `i` ends at bottom position `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.word {
            at.swap(l.generator - 1, l.generator);
        }
        // at[p] = top strand now at bottom position p
        let mut perm = vec![0; self.strands];
        for (p, &top) in at.iter().enumerate() {
            perm[top] = p;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        count
    }

    /// Every letter inverted; the closure is the mirror image.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().map(|l| l.inverse()).collect(),
        }
    }

    /// `l · w · l⁻¹`, which closes up to the same knot.
    pub fn conjugate(&self, l: Letter) -> Result<Self, BraidError> {
        let mut word = Vec::with_capacity(self.word.len() + 2);
        word.push(l);
        word.extend_from_slice(&self.word);
        word.push(l.inverse());
        BraidWord::new(self.strands, word)
    }
}

/// Canonical text form, with runs written as powers.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        let mut i = 0;
        while i < self.word.len() {
            let l = self.word[i];
            let run = self.word[i..].iter().take_while(|&&m| m == l).count();
            let exp = run as i64 * l.sign.epsilon();
            if exp == 1 {
                write!(f, " s{}", l.generator)?;
            } else {
                write!(f, " s{}^{}", l.generator, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parses `"<strands>: s1 s2^-1 s1^3"`. Powers expand to repeated letters;
/// negative powers give inverse letters and `s1^0` is dropped.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let (head, body) = text.split_once(':').ok_or(BraidError::MissingStrands)?;
    let strands: usize = head
        .trim()
        .parse()
        .map_err(|_| BraidError::MissingStrands)?;
    if strands == 0 {
        return Err(BraidError::NoStrands);
    }
    let offset = head.len() + 1;
    let mut word = Vec::new();
    let mut cursor = 0;
    for token in body.split_whitespace() {
        let rel = body[cursor..].find(token).expect("token comes from body") + cursor;
        cursor = rel + token.len();
        let position = offset + rel;
        let bad = || BraidError::Token {
            position,
            token: token.to_string(),
        };
        let rest = token.strip_prefix('s').ok_or_else(bad)?;
        let (gen, exp) = match rest.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let generator: usize = gen.parse().map_err(|_| bad())?;
        if generator == 0 || generator >= strands {
            return Err(BraidError::OutOfRange {
                position,
                generator,
                strands,
            });
        }
        let letter = if exp > 0 {
            Letter::pos(generator)
        } else {
            Letter::neg(generator)
        };
        word.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    BraidWord::new(strands, word)
}

fn require_odd(what: &'static str, value: i64) -> Result<(), BraidError> {
    if value < 1 || value % 2 == 0 {
        return Err(BraidError::NotOdd { what, value });
    }
    Ok(())
}

/// `σ₁^l` on two strands, closing to the torus knot `T(2, l)`.
pub fn torus_braid(l: i64) -> Result<BraidWord, BraidError> {
    require_odd("l", l)?;
    BraidWord::new(2, vec![Letter::pos(1); l as usize])
}

/// `σ₁^m σ₂⁻¹ σ₁^n σ₂⁻¹` on three strands, closing to `S(m, n)`.
pub fn s_knot_braid(m: i64, n: i64) -> Result<BraidWord, BraidError> {
    require_odd("m", m)?;
    require_odd("n", n)?;
    let mut word = vec![Letter::pos(1); m as usize];
    word.push(Letter::neg(2));
    word.extend(std::iter::repeat_n(Letter::pos(1), n as usize));
    word.push(Letter::neg(2));
    let b = BraidWord::new(3, word)?;
    match b.components() {
        1 => Ok(b),
        components => Err(BraidError::NotAKnot { components }),
    }
}

/// `σ₁σ₂⁻¹σ₁σ₂⁻¹`, the figure-eight knot.
pub fn figure_eight_braid() -> BraidWord {
    BraidWord::new(
        3,
        vec![
            Letter::pos(1),
            Letter::neg(2),
            Letter::pos(1),
            Letter::neg(2),
        ],
    )
    .expect("valid word")
}

/// The one-strand empty braid.
pub fn unknot_braid() -> BraidWord {
    BraidWord::new(1, Vec::new()).expect("valid word")
}

/// A crossing of the closed diagram: one letter of the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Index of the letter in the word.
    pub position: usize,
    pub generator: usize,
    pub sign: Sign,
}

/// The closure of a braid whose strand permutation is a single cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedDiagram {
    braid: BraidWord,
}

impl ClosedDiagram {
    pub fn new(braid: BraidWord) -> Result<Self, BraidError> {
        match braid.components() {
            1 => Ok(ClosedDiagram { braid }),
            components => Err(BraidError::NotAKnot { components }),
        }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn crossings(&self) -> impl Iterator<Item = Crossing> + '_ {
        self.braid
            .word
            .iter()
            .enumerate()
            .map(|(position, l)| Crossing {
                position,
                generator: l.generator,
                sign: l.sign,
            })
    }

    /// Pushes the top colors through the word, calling `at_crossing` with
    /// each crossing's `(under, over)` color pair. Returns the bottom colors.
    pub fn propagate_with(
        &self,
        quandle: &FiniteQuandle,
        top: &[usize],
        mut at_crossing: impl FnMut(Crossing, (usize, usize)),
    ) -> Vec<usize> {
        let mut state = top.to_vec();
        for c in self.crossings() {
            let i = c.generator - 1;
            let (a, b) = (state[i], state[i + 1]);
            let (out, pair) = match c.sign {
                Sign::Positive => ((b, quandle.op(a, b)), (a, b)),
                Sign::Negative => {
                    let under = quandle.right_div(b, a);
                    ((under, a), (under, a))
                }
            };
            at_crossing(c, pair);
            state[i] = out.0;
            state[i + 1] = out.1;
        }
        state
    }

    pub fn propagate(&self, quandle: &FiniteQuandle, top: &[usize]) -> Vec<usize> {
        self.propagate_with(quandle, top, |_, _| {})
    }

    fn is_coloring(&self, quandle: &FiniteQuandle, top: &[usize], scratch: &mut [usize]) -> bool {
        scratch.copy_from_slice(top);
        for l in &self.braid.word {
            let i = l.generator - 1;
            let (a, b) = (scratch[i], scratch[i + 1]);
            match l.sign {
                Sign::Positive => {
                    scratch[i] = b;
                    scratch[i + 1] = quandle.op(a, b);
                }
                Sign::Negative => {
                    scratch[i] = quandle.right_div(b, a);
                    scratch[i + 1] = a;
                }
            }
        }
        scratch == top
    }
}

/// An X-coloring, recorded by the colors of the top strands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring {
    pub top: Vec<usize>,
}

impl Coloring {
    /// `(under, over)` color of each crossing, in word order.
    pub fn crossing_colors(
        &self,
        diagram: &ClosedDiagram,
        quandle: &FiniteQuandle,
    ) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(diagram.braid.len());
        diagram.propagate_with(quandle, &self.top, |_, pair| out.push(pair));
        out
    }

    /// Every color carried by some arc.
    pub fn colors_used(&self, diagram: &ClosedDiagram, quandle: &FiniteQuandle) -> BTreeSet<usize> {
        let mut used: BTreeSet<usize> = self.top.iter().copied().collect();
        diagram.propagate_with(quandle, &self.top, |_, (a, b)| {
            used.insert(a);
            used.insert(b);
        });
        used
    }

    /// Whether all strand colors agree.
    pub fn is_trivial(&self) -> bool {
        self.top.windows(2).all(|w| w[0] == w[1])
    }
}

fn decode(mut code: usize, n: usize, k: usize) -> Vec<usize> {
    let mut top = vec![0; k];
    for slot in top.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    top
}

/// All colorings, in lexicographic order of top colors.
pub fn enumerate_colorings(diagram: &ClosedDiagram, quandle: &FiniteQuandle) -> Vec<Coloring> {
    let n = quandle.order();
    let k = diagram.braid.strands;
    let total = n.pow(k as u32);
    (0..total)
        .into_par_iter()
        .map_init(
            || vec![0usize; k],
            |scratch, code| {
                let top = decode(code, n, k);
                diagram
                    .is_coloring(quandle, &top, scratch)
                    .then_some(Coloring { top })
            },
        )
        .flatten()
        .collect()
}

/// Whether the coloring extends over the `r`-fold twisting: `x (*y)^r = x`
/// for every ordered pair of colors `x, y` on the diagram.
pub fn check_type_r_extension(
    coloring: &Coloring,
    diagram: &ClosedDiagram,
    quandle: &FiniteQuandle,
    r: u64,
) -> bool {
    let used = coloring.colors_used(diagram, quandle);
    used.iter()
        .all(|&x| used.iter().all(|&y| quandle.act_repeatedly(x, y, r) == x))
}
