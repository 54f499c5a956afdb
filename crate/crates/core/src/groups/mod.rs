//! Finite reflection groups as enumerated matrix groups.

pub mod coxeter;
pub mod di4;
pub mod presentation;
mod reflections;
mod weyl;

use thiserror::Error;

pub use coxeter::CoxeterSystem;
pub use presentation::{Letter, Presentation, Word};
pub use reflections::{Reflection, ReflectionSet};
pub use weyl::WeylGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("more than {0} elements; group infinite or too large")]
    BoundExceeded(usize),
    #[error("invalid generators: {0}")]
    BadGenerators(String),
    #[error("not of Coxeter type: {0}")]
    NotCoxeterType(String),
    #[error("relator {0} does not evaluate to the identity")]
    RelatorFails(usize),
    #[error("verification failed: {0}")]
    Verification(String),
}
