//! Extensions of reflection groups given by explicit normalized 2-cocycles.
//!
//! [`ReflectionExtension`] is the extension of `W` by the permutation module
//! `Z[Σ]` on its reflections, built by transferring a rank-one cocycle from
//! each reflection centralizer. [`NormalizerExtension`] pushes it forward
//! along `e_σ ↦ h_σ` to get the torus normalizer. Equivalence of
//! extensions is decided by solving the coboundary equations exactly.

mod gen210;
pub mod module;
mod normalizer;
mod pullback;
mod reflection;
mod roots;
mod tits;

use thiserror::Error;

use crate::datum::DatumError;
use crate::groups::GroupError;
use crate::linalg::{LinalgError, RationalModZVector};

pub use gen210::{gen210, same_lattice, Gen210Report};
pub use module::{solve_lattice_coboundary, solve_torus_coboundary, Action, CoboundaryTree, DerivationCoefficients, SpanningTree};
pub use normalizer::{ExtElement, NormalizerExtension};
pub use pullback::{product as product_report, pullback, ProductReport, PullbackReport, ReflectionSubgroup};
pub use reflection::{
    default_representatives, last_representatives, reflection_line, test_triples, CocycleDump, CocycleEntry, ReflectionExtension,
    ShapiroCocycle,
};
pub use roots::{
    conjugation_covariant, minimal_lift_order, on_line, recover_marking, root_subgroup, root_subgroups, square_set, torsor, RootSubgroup,
    Torsor,
};
pub use tits::{TitsExtension, TitsReport};

#[derive(Debug, Error)]
pub enum ExtError {
    #[error("invalid coset representatives: {0}")]
    InvalidRepresentatives(String),
    #[error("no root subgroup representative for reflection {0}")]
    NoRootSubgroup(usize),
    #[error("no marking candidate for reflection {0}")]
    NoMarking(usize),
    #[error("ambiguous marking for reflection {0}: {1:?}")]
    AmbiguousMarking(usize, Vec<RationalModZVector>),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("inconsistent extension data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
