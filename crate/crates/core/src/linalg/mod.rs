//! Exact linear algebra over `Z`, `Z/m` and `Q/Z`.

pub mod echelon;
pub mod finab;
pub mod int;
mod matrix;
pub mod modular;
pub mod qz;
pub mod rat;
pub mod snf;
pub mod solve;
pub mod torus;

use thiserror::Error;

pub use finab::{finite_cokernel, quotient_structure, FinAbGroup};
pub use matrix::IntMatrix;
pub use qz::{Qz, RationalModZVector};
pub use snf::{cokernel, elementary_divisors, hermite_basis, kernel_basis, rank, smith_normal_form, SmithForm};
pub use solve::{solve_linear, solve_qz, solve_z, solve_zmod, IntSolution, RightHandSide, Ring, Solution, TorusSolution};
pub use torus::{subgroup_intersect, TorusSubgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("right-hand side does not match the coefficient ring")]
    RingMismatch,
    #[error("group is not finite")]
    NotTorsion,
    #[error("no stabilization after {rounds} doubling rounds")]
    Stabilization { rounds: usize },
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}
