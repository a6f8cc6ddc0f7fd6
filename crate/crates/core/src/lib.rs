//! Quandle cocycle invariants of knots presented as braid closures.
//!
//! * [`quandle`]: finite quandles, axiom scans, the dihedral quandles `R_p`
//!   and the conjugation quandle `Q₆`.
//! * [`cocycle`]: 2- and 3-cocycles over `ℤ/nℤ`, their verifiers, explicit
//!   cocycles and enumeration of `Z²(X; ℤ/nℤ)`.
//! * [`diagram`]: braid words, closures and coloring enumeration.
//! * [`invariant`]: the state sum `Φ_φ(K)` and the family `Ω_φ(σʳK)`.
//! * [`concordance`]: `m⊂` and the ribbon-concordance obstructions.

pub mod cocycle;
pub mod concordance;
pub mod diagram;
pub mod invariant;
pub mod perm;
pub mod quandle;
pub mod zn;

pub use cocycle::{Cocycle2, Cocycle3, Coefficients};
pub use concordance::Verdict;
pub use diagram::{BraidWord, ClosedDiagram, Coloring};
pub use invariant::{OmegaFamily, WeightMultiset};
pub use quandle::FiniteQuandle;
