//! Group cohomology of finite groups in degrees at most two.
//!
//! Three routes are available and cross-checked against each other:
//! normalized bar cochains (with the Bockstein identification
//! `H^i(W; L ⊗ Q/Z) = H^{i+1}(W; L)`), Fox calculus on a presentation, and
//! crossed-homomorphism equations over `Z/p^k` with a stabilization check.

mod bar;
mod fox;
mod torus;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::datum::DatumError;
use crate::groups::GroupError;
use crate::linalg::LinalgError;

pub use bar::{BarComplex, LatticeClasses, SparseRow};
pub use fox::{fox_matrix, h1_bar_finite, h1_fox_finite, h1_fox_torus, h1_truncated, principal_matrix, TruncatedH1};
pub use torus::{
    finite_group_h2, h1_reflection, h1_torus, h1_torus_all_methods, h1_torus_at, h2_torus, restriction_torus, shapiro_class_order,
    transfer_injective, truncation_levels, tsurj_check, RestrictionMap, TsurjCertificate,
};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("computation exceeds budget: {0}")]
    Budget(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("truncation did not stabilize: k={k} gives {first:?}, k={next} gives {second:?}")]
    Unstable { k: u32, next: u32, first: Vec<i64>, second: Vec<i64> },
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("method not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Bar cochains over `Z` and the Bockstein shift.
    Bockstein,
    /// Fox calculus on a presentation.
    Fox,
    /// All crossed-homomorphism equations over `Z/p^k`.
    Bar,
    /// Image of `p^k`-torsion coefficients in `p^{2k}`-torsion coefficients.
    Truncated,
    /// `T̆⁻(σ) / T̆₀⁻(σ)`.
    Direct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bockstein => "bockstein",
            Method::Fox => "fox",
            Method::Bar => "bar",
            Method::Truncated => "truncated",
            Method::Direct => "direct",
        })
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One report row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub group: String,
    pub coefficients: String,
    pub degree: usize,
    pub invariant_factors: Vec<i64>,
    pub method: Method,
    pub stabilization_k: Option<u32>,
}

impl CohomologyResult {
    pub fn order(&self) -> i128 {
        self.invariant_factors.iter().map(|&x| x as i128).product()
    }
}

impl fmt::Display for CohomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = if self.invariant_factors.is_empty() {
            "0".to_string()
        } else {
            self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
        };
        write!(f, "H^{}({}; {}) = {} [{}]", self.degree, self.group, self.coefficients, g, self.method)
    }
}
