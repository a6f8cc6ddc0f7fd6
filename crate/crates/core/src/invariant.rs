//! State-sum cocycle invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cocycle::{is_odd_prime, Cocycle2, Coefficients};
use crate::diagram::{
    enumerate_colorings, BraidError, BraidWord, ClosedDiagram, Coloring, Crossing,
};
use crate::quandle::FiniteQuandle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("cocycle is defined on a different quandle")]
    QuandleMismatch,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(
        "r = {r} is not a multiple of the quandle type {quandle_type}; no closed form is known"
    )]
    UnsupportedTwist { r: u64, quandle_type: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("malformed multiset entry {0:?}, expected value:count")]
    MultisetSyntax(String),
}

/// A finite multiset over `ℤ/nℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightMultiset {
    modulus: u64,
    counts: BTreeMap<u64, u64>,
}

impl WeightMultiset {
    pub fn new(modulus: u64) -> Self {
        WeightMultiset {
            modulus,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_values(modulus: u64, values: impl IntoIterator<Item = u64>) -> Self {
        let mut m = WeightMultiset::new(modulus);
        for v in values {
            m.insert(v, 1);
        }
        m
    }

    /// `count` copies of zero.
    pub fn zeros(modulus: u64, count: u64) -> Self {
        let mut m = WeightMultiset::new(modulus);
        m.insert(0, count);
        m
    }

    pub fn insert(&mut self, value: u64, multiplicity: u64) {
        if multiplicity > 0 {
            *self.counts.entry(value % self.modulus).or_default() += multiplicity;
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn multiplicity(&self, value: u64) -> u64 {
        self.counts
            .get(&(value % self.modulus))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.counts.keys().copied().collect()
    }

    /// `(value, multiplicity)` in increasing value order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    /// Whether every element is zero (the empty multiset included).
    pub fn is_all_zero(&self) -> bool {
        self.counts.keys().all(|&v| v == 0)
    }
}

/// `value:count` pairs separated by spaces, e.g. `0:6 1:24`.
impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses the `value:count` form written by `Display`. Values are reduced
/// mod `modulus`; a bare value counts once.
pub fn parse_multiset(modulus: u64, text: &str) -> Result<WeightMultiset, InvariantError> {
    let mut m = WeightMultiset::new(modulus);
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        if token.is_empty() {
            continue;
        }
        let bad = || InvariantError::MultisetSyntax(token.to_string());
        let (v, c) = match token.split_once(':') {
            Some((v, c)) => (v, c.parse::<u64>().map_err(|_| bad())?),
            None => (token, 1),
        };
        let v: i64 = v.parse().map_err(|_| bad())?;
        m.insert(v.rem_euclid(modulus as i64) as u64, c);
    }
    Ok(m)
}

pub fn scale_multiset(k: i64, m: &WeightMultiset) -> WeightMultiset {
    let n = m.modulus as i128;
    let mut out = WeightMultiset::new(m.modulus);
    for (v, c) in m.iter() {
        out.insert((k as i128 * v as i128).rem_euclid(n) as u64, c);
    }
    out
}

pub fn negate_multiset(m: &WeightMultiset) -> WeightMultiset {
    scale_multiset(-1, m)
}

/// `ε(x)·φ(a, b)` for a crossing colored `(a, b)`.
pub fn crossing_weight(crossing: Crossing, colors: (usize, usize), phi: &Cocycle2) -> u64 {
    let v = phi.get(colors.0, colors.1);
    let coeff = phi.coefficients();
    coeff.scale(crossing.sign.epsilon(), v)
}

/// Sum of the crossing weights of one coloring.
pub fn coloring_weight(diagram: &ClosedDiagram, coloring: &Coloring, phi: &Cocycle2) -> u64 {
    let coeff = phi.coefficients();
    let mut total = 0;
    diagram.propagate_with(phi.quandle(), &coloring.top, |c, pair| {
        total = coeff.add(total, crossing_weight(c, pair, phi));
    });
    total
}

/// `Φ_φ(K)`: the multiset of `W_φ(C)` over all colorings `C`.
pub fn phi_invariant(
    braid: &BraidWord,
    quandle: &FiniteQuandle,
    phi: &Cocycle2,
) -> Result<WeightMultiset, InvariantError> {
    if !phi.is_on(quandle) {
        return Err(InvariantError::QuandleMismatch);
    }
    let diagram = ClosedDiagram::new(braid.clone())?;
    let colorings = enumerate_colorings(&diagram, quandle);
    let n = phi.coefficients().modulus();
    let weights: Vec<u64> = colorings
        .par_iter()
        .map(|c| coloring_weight(&diagram, c, phi))
        .collect();
    Ok(WeightMultiset::from_values(n, weights))
}

/// The family `{k·Φ_φ(K) : k ∈ ℤ}` of cocycle invariants of the torus-knot
/// `σʳK`, indexed by `k mod n` since `k` and `k + n` give the same multiset.
/// Each member occurs infinitely often in the full invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaFamily {
    pub modulus: u64,
    pub r: u64,
    pub base: WeightMultiset,
    /// `members[k] = k·base`.
    pub members: Vec<WeightMultiset>,
    pub infinite_multiplicity: bool,
}

impl OmegaFamily {
    pub fn from_base(base: WeightMultiset, r: u64) -> Self {
        let n = base.modulus();
        let members = (0..n).map(|k| scale_multiset(k as i64, &base)).collect();
        OmegaFamily {
            modulus: n,
            r,
            base,
            members,
            infinite_multiplicity: true,
        }
    }

    pub fn member(&self, k: i64) -> &WeightMultiset {
        &self.members[k.rem_euclid(self.modulus as i64) as usize]
    }
}

/// Cocycle invariant of `σʳK` for `r` a non-negative multiple of the type of
/// `X`. Colorings of the torus-knot diagram restrict bijectively to the
/// classical diagram in that case, and the longitude misses every double
/// point curve, so the class `k[α] + l[β]` contributes `k·Φ_φ(K)`.
pub fn omega_family(
    braid: &BraidWord,
    quandle: &FiniteQuandle,
    phi: &Cocycle2,
    r: u64,
) -> Result<OmegaFamily, InvariantError> {
    let s = quandle.quandle_type();
    if !r.is_multiple_of(s) {
        return Err(InvariantError::UnsupportedTwist { r, quandle_type: s });
    }
    let base = phi_invariant(braid, quandle, phi)?;
    Ok(OmegaFamily::from_base(base, r))
}

/// Reference data: the 3-cocycle invariant of the 2-twist-spun `T(2, q)`
/// with the Mochizuki cocycle `θ_q`, i.e. each `−2k² mod q` for
/// `k = 0, …, q−1`, each with multiplicity `q`. Not computed from a surface
/// diagram.
pub fn twist_spun_reference(q: u64) -> Result<WeightMultiset, InvariantError> {
    if !is_odd_prime(q) {
        return Err(InvariantError::NotOddPrime(q));
    }
    let c = Coefficients::new(q).expect("q >= 3");
    let mut m = WeightMultiset::new(q);
    for k in 0..q {
        m.insert(c.scale(-2, k * k % q), q);
    }
    Ok(m)
}

/// Reference data: the invariant of the 2-twist-spun `T(2, q)` with `θ_p`
/// for a different odd prime `p`, which is all zeros (one entry per trivial
/// `R_p`-coloring).
pub fn twist_spun_cross_reference(p: u64, q: u64) -> Result<WeightMultiset, InvariantError> {
    for x in [p, q] {
        if !is_odd_prime(x) {
            return Err(InvariantError::NotOddPrime(x));
        }
    }
    if p == q {
        return twist_spun_reference(q);
    }
    Ok(WeightMultiset::zeros(p, p))
}

/// Support of [`twist_spun_reference`]: `{−2k² mod q : k = 0, …, (q−1)/2}`.
pub fn residue_support(q: u64) -> Result<BTreeSet<u64>, InvariantError> {
    Ok(twist_spun_reference(q)?.support())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::q6_appendix_cocycle;
    use crate::diagram::{s_knot_braid, torus_braid, unknot_braid, Sign};
    use crate::quandle::make_dihedral;
    use std::sync::Arc;

    fn ms(n: u64, pairs: &[(u64, u64)]) -> WeightMultiset {
        let mut m = WeightMultiset::new(n);
        for &(v, c) in pairs {
            m.insert(v, c);
        }
        m
    }

    #[test]
    fn torus_knots_on_q6() {
        let phi = q6_appendix_cocycle();
        let q = phi.quandle().clone();
        let t3 = phi_invariant(&torus_braid(3).unwrap(), &q, &phi).unwrap();
        assert_eq!(t3, ms(4, &[(0, 6), (1, 24)]));
        let t9 = phi_invariant(&torus_braid(9).unwrap(), &q, &phi).unwrap();
        assert_eq!(t9, ms(4, &[(0, 6), (3, 24)]));
        let s33 = phi_invariant(&s_knot_braid(3, 3).unwrap(), &q, &phi).unwrap();
        assert_eq!(s33, ms(4, &[(0, 30), (2, 24)]));
    }

    #[test]
    fn edge_cycle_sums_to_one() {
        let phi = q6_appendix_cocycle();
        let q = phi.quandle().clone();
        let d = ClosedDiagram::new(torus_braid(3).unwrap()).unwrap();
        for c in enumerate_colorings(&d, &q) {
            let w = coloring_weight(&d, &c, &phi);
            assert_eq!(w, if c.is_trivial() { 0 } else { 1 });
        }
    }

    #[test]
    fn crossing_weight_signs() {
        let phi = q6_appendix_cocycle();
        let pos = Crossing {
            position: 0,
            generator: 1,
            sign: Sign::Positive,
        };
        let neg = Crossing {
            sign: Sign::Negative,
            ..pos
        };
        assert_eq!(crossing_weight(pos, (2, 2), &phi), 0);
        assert_eq!(crossing_weight(pos, (0, 4), &phi), 2);
        assert_eq!(crossing_weight(neg, (0, 5), &phi), 1); // −3 mod 4
    }

    #[test]
    fn unknot_and_zero_cocycle() {
        let phi = q6_appendix_cocycle();
        let q = phi.quandle().clone();
        assert_eq!(
            phi_invariant(&unknot_braid(), &q, &phi).unwrap(),
            WeightMultiset::zeros(4, 6)
        );
        let zero = Cocycle2::zero(q.clone(), phi.coefficients());
        assert_eq!(
            phi_invariant(&s_knot_braid(3, 3).unwrap(), &q, &zero).unwrap(),
            WeightMultiset::zeros(4, 54)
        );
    }

    #[test]
    fn mismatched_quandle() {
        let phi = q6_appendix_cocycle();
        let r3 = make_dihedral(3).unwrap();
        assert_eq!(
            phi_invariant(&torus_braid(3).unwrap(), &r3, &phi),
            Err(InvariantError::QuandleMismatch)
        );
    }

    #[test]
    fn omega_members() {
        let phi = q6_appendix_cocycle();
        let q = phi.quandle().clone();
        let fam = omega_family(&torus_braid(3).unwrap(), &q, &phi, 4).unwrap();
        assert_eq!(fam.member(1), &ms(4, &[(0, 6), (1, 24)]));
        assert_eq!(fam.member(2), &ms(4, &[(0, 6), (2, 24)]));
        assert_eq!(fam.member(0), &WeightMultiset::zeros(4, 30));
        assert_eq!(fam.member(-1), fam.member(3));
        assert!(fam.infinite_multiplicity);

        let s = omega_family(&s_knot_braid(3, 3).unwrap(), &q, &phi, 0).unwrap();
        for k in 0..4u64 {
            assert_eq!(s.member(k as i64), &ms(4, &[(0, 30), (2 * k % 4, 24)]));
        }
        assert_eq!(
            omega_family(&torus_braid(3).unwrap(), &q, &phi, 2),
            Err(InvariantError::UnsupportedTwist {
                r: 2,
                quandle_type: 4
            })
        );
    }

    #[test]
    fn multiset_maps() {
        let m = ms(3, &[(0, 3), (1, 6)]);
        assert_eq!(negate_multiset(&m), ms(3, &[(0, 3), (2, 6)]));
        assert_eq!(scale_multiset(0, &m), WeightMultiset::zeros(3, 9));
        assert_eq!(negate_multiset(&negate_multiset(&m)), m);
        assert_eq!(m.to_string(), "0:3 1:6");
        assert_eq!(parse_multiset(3, "0:3 1:6").unwrap(), m);
        assert_eq!(parse_multiset(3, "0:3, -2:6").unwrap(), m);
        assert!(parse_multiset(3, "1:x").is_err());
    }

    #[test]
    fn twist_spun_data() {
        assert_eq!(twist_spun_reference(3).unwrap(), ms(3, &[(0, 3), (1, 6)]));
        assert_eq!(
            twist_spun_reference(5).unwrap(),
            ms(5, &[(0, 5), (2, 10), (3, 10)])
        );
        assert!(twist_spun_cross_reference(3, 5).unwrap().is_all_zero());
        assert_eq!(residue_support(3).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(residue_support(7).unwrap(), BTreeSet::from([0, 3, 5, 6]));
        for q in [3, 5, 7, 11, 13] {
            assert!(residue_support(q).unwrap().contains(&0));
        }
        assert_eq!(twist_spun_reference(9), Err(InvariantError::NotOddPrime(9)));
    }

    #[test]
    fn dihedral_invariants_are_trivial_with_zero_cocycle() {
        let r3 = Arc::new(make_dihedral(3).unwrap());
        let zero = Cocycle2::zero(r3.clone(), Coefficients::new(3).unwrap());
        let m = phi_invariant(&torus_braid(3).unwrap(), &r3, &zero).unwrap();
        assert_eq!(m, WeightMultiset::zeros(3, 9));
    }
}
