//! Exact obstructions to spherical 3-manifolds bounding rational homology
//! balls, and their orders in the rational homology cobordism group.
//!
//! The crate is layered bottom-up:
//!
//! * [`numtheory`]: continued fractions, modular inverses, Dedekind–Rademacher sums;
//! * [`seifert`]: Seifert invariants, the spherical catalog, canonical plumbings;
//! * [`surgery`]: torus-knot surgery descriptions and spin^c labels;
//! * [`dinv`]: correction terms of lens spaces and trefoil surgeries;
//! * [`lattice`]: Gram lattices and exhaustive diagonal embedding search;
//! * [`obstruct`]: the individual obstructions and the order classification.
//!
//! All invariants are exact. The number-theoretic core is generic over
//! [`numtheory::ExactInt`]; the rest of the crate uses the aliases below.

pub mod dinv;
pub mod error;
pub mod lattice;
pub mod numtheory;
pub mod obstruct;
pub mod report;
pub mod seifert;
pub mod surgery;
pub mod text;

pub use error::Error;

/// Arbitrary-precision integer used throughout.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::Ratio<Integer>;

pub use dinv::{d_lens, d_lens_closed, d_neg_lens_recursive, d_surgery, DInvariantTable};
pub use lattice::{DiagonalEmbedding, EmbeddingOutcome, GramLattice, SearchBudget};
pub use obstruct::{classify_order, Caps, ObstructionId, ObstructionReport, OrderVerdict, Verdict};
pub use seifert::{Family, Lens, PlumbingGraph, SeifertInvariant, SphericalName};
pub use surgery::{SurgeryDescription, TorusKnot};

pub(crate) fn int(v: i64) -> Integer {
    Integer::from(v)
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}
