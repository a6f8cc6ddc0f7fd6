//! Ribbon-concordance obstructions from cocycle invariants.
//!
//! Both checks are necessary conditions for `F₁ ≥ F₀`. An obstructed verdict
//! rules the ribbon concordance out; a verdict that is not obstructed says
//! nothing either way.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cocycle::{is_odd_prime, q6_appendix_cocycle};
use crate::diagram::{s_knot_braid, torus_braid};
use crate::invariant::{
    negate_multiset, omega_family, twist_spun_cross_reference, twist_spun_reference,
    InvariantError, OmegaFamily, WeightMultiset,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConcordanceError {
    #[error("multiset moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("the two primes must differ, both are {0}")]
    SamePrime(u64),
    #[error("{name} = {value} must be {requirement}")]
    Congruence {
        name: &'static str,
        value: i64,
        requirement: &'static str,
    },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `A′ m⊂ A″`: every element of `A′` occurs in `A″`, multiplicities ignored.
pub fn m_subset(a1: &WeightMultiset, a2: &WeightMultiset) -> Result<bool, ConcordanceError> {
    check_moduli(a1.modulus(), a2.modulus())?;
    Ok(a1.support().is_subset(&a2.support()))
}

fn check_moduli(a: u64, b: u64) -> Result<(), ConcordanceError> {
    if a != b {
        return Err(ConcordanceError::ModulusMismatch(a, b));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Inclusion of 3-cocycle invariants.
    #[serde(rename = "1.1")]
    Thm11,
    /// Inclusion between members of the 2-cocycle families.
    #[serde(rename = "1.2")]
    Thm12,
}

/// What failed the inclusion test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The multiset on the `F₁` side that is not `m⊂` the other side.
    pub multiset: WeightMultiset,
    /// For [`Theorem::Thm12`], the index `k` with `multiset = k·Φ`.
    pub member: Option<u64>,
    /// Smallest value of `multiset` missing from the comparison multiset
    /// (for [`Theorem::Thm11`]) or from member `0` of `Ω(F₀)`.
    pub missing: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub obstructed: bool,
    pub theorem: Theorem,
    /// `(F₁, F₀)`: the concordance `F₁ ≥ F₀` under test.
    pub direction: (String, String),
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn with_direction(mut self, f1: impl Into<String>, f0: impl Into<String>) -> Self {
        self.direction = (f1.into(), f0.into());
        self
    }
}

fn default_direction() -> (String, String) {
    ("F1".to_string(), "F0".to_string())
}

fn first_missing(a1: &WeightMultiset, a2: &WeightMultiset) -> Option<u64> {
    let target = a2.support();
    a1.support().into_iter().find(|v| !target.contains(v))
}

/// Obstruction from 3-cocycle invariants: `F₁ ≥ F₀` forces `Φ₁ m⊂ Φ₀`.
pub fn theorem11_check(
    phi1: &WeightMultiset,
    phi0: &WeightMultiset,
) -> Result<Verdict, ConcordanceError> {
    check_moduli(phi1.modulus(), phi0.modulus())?;
    let witness = first_missing(phi1, phi0).map(|missing| Witness {
        multiset: phi1.clone(),
        member: None,
        missing,
    });
    Ok(Verdict {
        obstructed: witness.is_some(),
        theorem: Theorem::Thm11,
        direction: default_direction(),
        witness,
    })
}

/// Obstruction from 2-cocycle families: `F₁ ≥ F₀` forces every member of
/// `Ω₁` to be `m⊂` some member of `Ω₀`. Members are scanned by increasing
/// `k`; the first one without a partner is the witness.
pub fn theorem12_check(
    omega1: &OmegaFamily,
    omega0: &OmegaFamily,
) -> Result<Verdict, ConcordanceError> {
    check_moduli(omega1.modulus, omega0.modulus)?;
    let mut witness = None;
    for (k, a1) in omega1.members.iter().enumerate() {
        let covered = omega0
            .members
            .iter()
            .any(|a0| a1.support().is_subset(&a0.support()));
        if !covered {
            witness = Some(Witness {
                multiset: a1.clone(),
                member: Some(k as u64),
                missing: first_missing(a1, &omega0.members[0]).unwrap_or(0),
            });
            break;
        }
    }
    Ok(Verdict {
        obstructed: witness.is_some(),
        theorem: Theorem::Thm12,
        direction: default_direction(),
        witness,
    })
}

fn require_odd_prime(p: u64) -> Result<(), ConcordanceError> {
    if !is_odd_prime(p) {
        return Err(ConcordanceError::NotOddPrime(p));
    }
    Ok(())
}

fn twist_spun_name(q: u64) -> String {
    format!("tau^2 T(2,{q})")
}

/// Both directions between the 2-twist-spun `T(2, q)` and `T(2, q′)`, each
/// tested with the Mochizuki cocycle of the knot on the left.
pub fn corollary21_pair(q: u64, q2: u64) -> Result<(Verdict, Verdict), ConcordanceError> {
    require_odd_prime(q)?;
    require_odd_prime(q2)?;
    if q == q2 {
        return Err(ConcordanceError::SamePrime(q));
    }
    let forward = theorem11_check(
        &twist_spun_reference(q)?,
        &twist_spun_cross_reference(q, q2)?,
    )?
    .with_direction(twist_spun_name(q), twist_spun_name(q2));
    let backward = theorem11_check(
        &twist_spun_reference(q2)?,
        &twist_spun_cross_reference(q2, q)?,
    )?
    .with_direction(twist_spun_name(q2), twist_spun_name(q));
    Ok((forward, backward))
}

/// Both directions between the 2-twist-spun `T(2, q)` and its orientation
/// reverse, using `Φ(−F) = −Φ(F)`. Obstructed exactly when `q ≡ 3 (mod 4)`.
pub fn corollary21_mirror(q: u64) -> Result<(Verdict, Verdict), ConcordanceError> {
    require_odd_prime(q)?;
    let phi = twist_spun_reference(q)?;
    let neg = negate_multiset(&phi);
    let name = twist_spun_name(q);
    let forward = theorem11_check(&phi, &neg)?.with_direction(name.clone(), format!("-{name}"));
    let backward = theorem11_check(&neg, &phi)?.with_direction(format!("-{name}"), name);
    Ok((forward, backward))
}

/// [`corollary21_pair`] when `q2` is given, otherwise [`corollary21_mirror`].
pub fn corollary21_report(q: u64, q2: Option<u64>) -> Result<(Verdict, Verdict), ConcordanceError> {
    match q2 {
        Some(q2) => corollary21_pair(q, q2),
        None => corollary21_mirror(q),
    }
}

/// Largest `l, m, n` accepted by [`corollary43_report`].
pub const COROLLARY43_MAX: i64 = 21;

fn require_congruence(
    name: &'static str,
    value: i64,
    modulus: i64,
    residue: i64,
    requirement: &'static str,
) -> Result<(), ConcordanceError> {
    if value.rem_euclid(modulus) != residue {
        return Err(ConcordanceError::Congruence {
            name,
            value,
            requirement,
        });
    }
    Ok(())
}

/// `σʳT(2,l) ≥ σˢS(m,n)` tested with Q₆ and its ℤ₄ cocycle.
pub fn corollary43_report(
    l: i64,
    m: i64,
    n: i64,
    r: i64,
    s: i64,
) -> Result<Verdict, ConcordanceError> {
    for (name, v) in [("l", l), ("m", m), ("n", n)] {
        require_congruence(name, v, 6, 3, "congruent to 3 mod 6")?;
        if !(1..=COROLLARY43_MAX).contains(&v) {
            return Err(ConcordanceError::Congruence {
                name,
                value: v,
                requirement: "between 3 and 21",
            });
        }
    }
    for (name, v) in [("r", r), ("s", s)] {
        if v < 0 {
            return Err(ConcordanceError::Congruence {
                name,
                value: v,
                requirement: "non-negative",
            });
        }
        require_congruence(name, v, 4, 0, "congruent to 0 mod 4")?;
    }
    let phi = q6_appendix_cocycle();
    let q6 = Arc::clone(phi.quandle());
    let omega1 = omega_family(&torus_braid(l).expect("odd l"), &q6, &phi, r as u64)?;
    let omega0 = omega_family(&s_knot_braid(m, n).expect("odd m, n"), &q6, &phi, s as u64)?;
    Ok(theorem12_check(&omega1, &omega0)?.with_direction(
        format!("sigma^{r} T(2,{l})"),
        format!("sigma^{s} S({m},{n})"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ms(n: u64, pairs: &[(u64, u64)]) -> WeightMultiset {
        let mut m = WeightMultiset::new(n);
        for &(v, c) in pairs {
            m.insert(v, c);
        }
        m
    }

    #[test]
    fn subset_examples() {
        let a = ms(3, &[(0, 2), (1, 1)]);
        assert!(m_subset(&a, &ms(3, &[(0, 1), (1, 5), (2, 1)])).unwrap());
        assert!(!m_subset(&ms(3, &[(0, 1), (2, 1)]), &ms(3, &[(0, 9), (1, 9)])).unwrap());
        assert!(m_subset(&a, &a).unwrap());
        assert_eq!(
            m_subset(&a, &ms(4, &[(0, 1)])),
            Err(ConcordanceError::ModulusMismatch(3, 4))
        );
    }

    #[test]
    fn theorem11_examples() {
        let v = theorem11_check(
            &twist_spun_reference(3).unwrap(),
            &WeightMultiset::zeros(3, 3),
        )
        .unwrap();
        assert!(v.obstructed);
        assert_eq!(v.witness.as_ref().unwrap().missing, 1);

        let v = theorem11_check(&WeightMultiset::zeros(5, 5), &ms(5, &[(0, 1), (3, 2)])).unwrap();
        assert!(!v.obstructed);
        assert!(v.witness.is_none());

        let t7 = twist_spun_reference(7).unwrap();
        assert!(
            theorem11_check(&t7, &negate_multiset(&t7))
                .unwrap()
                .obstructed
        );
    }

    #[test]
    fn theorem12_examples() {
        let v = corollary43_report(3, 3, 3, 0, 0).unwrap();
        assert!(v.obstructed);
        let w = v.witness.unwrap();
        assert_eq!(w.member, Some(1));
        assert_eq!(w.multiset.support(), BTreeSet::from([0, 1]));

        let fam = OmegaFamily::from_base(ms(4, &[(0, 6), (1, 24)]), 4);
        assert!(!theorem12_check(&fam, &fam).unwrap().obstructed);
        let zero = OmegaFamily::from_base(WeightMultiset::zeros(4, 6), 0);
        assert!(!theorem12_check(&zero, &fam).unwrap().obstructed);
    }

    #[test]
    fn corollary21_examples() {
        let (a, b) = corollary21_pair(3, 5).unwrap();
        assert!(a.obstructed && b.obstructed);
        assert_eq!(a.direction.0, "tau^2 T(2,3)");
        let (a, b) = corollary21_mirror(3).unwrap();
        assert!(a.obstructed && b.obstructed);
        let (a, b) = corollary21_mirror(5).unwrap();
        assert!(!a.obstructed && !b.obstructed);
        assert_eq!(corollary21_pair(3, 3), Err(ConcordanceError::SamePrime(3)));
        assert_eq!(corollary21_mirror(9), Err(ConcordanceError::NotOddPrime(9)));
        assert_eq!(corollary21_report(3, None), corollary21_mirror(3));
        assert_eq!(corollary21_report(3, Some(7)), corollary21_pair(3, 7));
    }

    #[test]
    fn corollary43_preconditions() {
        assert!(matches!(
            corollary43_report(3, 3, 3, 2, 0),
            Err(ConcordanceError::Congruence { name: "r", .. })
        ));
        assert!(matches!(
            corollary43_report(5, 3, 3, 0, 0),
            Err(ConcordanceError::Congruence { name: "l", .. })
        ));
        assert!(matches!(
            corollary43_report(27, 3, 3, 0, 0),
            Err(ConcordanceError::Congruence { name: "l", .. })
        ));
        let v = corollary43_report(9, 3, 3, 4, 4).unwrap();
        assert!(v.obstructed);
        assert_eq!(
            v.witness.unwrap().multiset.support(),
            BTreeSet::from([0, 3])
        );
    }
}
