//! Automorphisms of root data and of their torus normalizer extensions.
//!
//! `Out(N)` is never built abstractly. Automorphisms of `ν̆(D)` are stored as
//! `(t, w) ↦ (φ t + μ(w), φ w φ⁻¹)` and every statement about outer classes
//! goes through [`is_inner`].

mod datum_aut;
mod normalizer_aut;
mod sequence;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::datum::DatumError;
use crate::ext::ExtError;
use crate::groups::GroupError;
use crate::linalg::LinalgError;

pub use datum_aut::{membership, out_datum, DatumAutomorphism, OutDatum};
pub use normalizer_aut::{
    derivation_automorphism, is_inner, lift_to_normalizer, lift_unconstrained, preserves_root_subgroups, transports_extension,
    NormalizerAutomorphism,
};
pub use sequence::{
    canonical_splitting, derivation_space, exact_sequence_report, h1calc_check, truncated_nonprincipal, DerivationSpace,
    ExactSequenceReport, H1CalcCertificate,
};

#[derive(Debug, Error)]
pub enum AutError {
    #[error("datum has central directions")]
    NotSemisimple,
    #[error("datum is not of Coxeter type")]
    NotCoxeterType,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("not an automorphism: {0}")]
    Invalid(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("computation exceeds budget: {0}")]
    Budget(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
