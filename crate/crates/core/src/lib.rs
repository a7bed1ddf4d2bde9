//! Effective nonvanishing arithmetic for quasismooth weighted complete
//! intersections of codimension two.
//!
//! The crate is layered bottom-up:
//!
//! - [`arith`]: exact gcd/lcm arithmetic on weight sequences.
//! - [`semigroup`]: coin-problem membership and the two- and three-generator
//!   sufficiency bounds.
//! - [`nonvanish`]: split profiles `(Σ₁, Σ₂, h₁, h₂, f₁, f₂)` and the search for
//!   the couple/triple certificate.
//! - [`wci`]: codimension-two instances, their divisibility hypotheses and the
//!   extraction of an explicit monomial section.
//! - [`verify`]: exhaustive sweeps that re-check all of the above at desk
//!   scale and produce deterministic JSON reports.
//!
//! All arithmetic is exact over [`Int`] (`i128`); any result leaving that
//! range is reported as [`Error::Overflow`], never wrapped.

pub mod arith;
pub mod error;
pub mod nonvanish;
pub mod semigroup;
pub mod verify;
pub mod wci;

pub use arith::{gcd, gcd_of_lcms, gcd_subset, lcm, lcm_list, IndexSubset, Int, WeightSequence};
pub use error::{Error, Result};
pub use nonvanish::{
    compute_profile, find_certificate, hypotheses_hold, star_condition, CertificateKind,
    NonvanishingCertificate, SplitProfile,
};
pub use semigroup::{
    find_representation, frobenius_bound_three, frobenius_bound_two, guaranteed_representable,
    is_representable, CoinSystem, Representation,
};
pub use wci::{
    canonical_degree, cartier_conditions, choose_split, find_section_witness, validate_instance,
    SectionProof, SectionWitness, Split, ValidationReport, WciInstance, WitnessRoute,
};
