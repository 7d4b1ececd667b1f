//! Projective line candidates.
//!
//! A candidate is a finite groupoid whose objects are points, with the
//! arrows between two distinct points labelled by the remaining points.
//! The concrete model is `P(K²)` over an exact field `K`; the crate checks
//! candidates against the equational axioms, rebuilds `K` from the scalars
//! at one object, and coordinatizes candidates of prime order.

pub mod candidate;
pub mod coordinatization;
pub mod model;
pub mod reconstruction;
pub mod report;
pub mod scalar;

pub use candidate::{check_axioms, validate_structure, Axiom, CandidateError, CandidateTable};
pub use coordinatization::{
    coordinatize, verify_iso, verify_uniqueness, CandidateIso, CoordError, Frame,
};
pub use model::{ModelArrow, ModelError, Point, ProjectiveLine};
pub use reconstruction::{
    build_field, classify_prime, verify_field, Classification, FieldTable, ReconstructError,
};
pub use report::{CheckOutcome, Report, Status, DEFAULT_WITNESSES};
pub use scalar::{FieldElement, FieldId, Fp, PrimeField, Rationals, ScalarError};

/// `P(F_p²)` with the modulus chosen at run time.
pub type PrimeLine = ProjectiveLine<PrimeField>;
/// `P(Q²)` over exact rationals.
pub type RationalLine = ProjectiveLine<Rationals>;
/// `P(F_P²)` with the modulus fixed at compile time.
pub type ConstPrimeLine<const P: u64> = ProjectiveLine<scalar::NumField<Fp<P>>>;
