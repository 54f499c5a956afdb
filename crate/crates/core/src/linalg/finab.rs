use std::fmt;

use serde::{Deserialize, Serialize};

use super::int;
use super::qz::RationalModZVector;
use super::snf::{cokernel, kernel_basis};
use super::{IntMatrix, LinalgError};

/// A finite abelian group `Z/d1 x Z/d2 x ...` with `d1 | d2 | ...`, all `> 1`.
/// Equality compares the isomorphism type only.
#[derive(Clone, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariant_factors: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    generators: Option<Vec<RationalModZVector>>,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FinAbGroup {}

impl std::hash::Hash for FinAbGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.invariant_factors.hash(state);
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: Vec::new(), generators: None }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_orders(&[n])
    }

    /// Normalize an arbitrary product of cyclic groups.
    pub fn from_orders(orders: &[i64]) -> Self {
        assert!(orders.iter().all(|&d| d > 0), "cyclic orders must be positive");
        let m = IntMatrix::diagonal(orders);
        let (tors, free) = cokernel(&m).expect("diagonal of machine integers");
        debug_assert_eq!(free, 0);
        FinAbGroup { invariant_factors: tors.into_iter().map(|d| d as i64).collect(), generators: None }
    }

    pub fn with_generators(mut self, gens: Vec<RationalModZVector>) -> Self {
        self.generators = Some(gens);
        self
    }

    pub fn generators(&self) -> Option<&[RationalModZVector]> {
        self.generators.as_deref()
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> i128 {
        self.invariant_factors.iter().map(|&d| d as i128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of cyclic factors of order divisible by `p`.
    pub fn p_rank(&self, p: i64) -> usize {
        self.invariant_factors.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn p_primary(&self, p: i64) -> FinAbGroup {
        let parts: Vec<i64> = self.invariant_factors.iter().map(|&d| int::p_part(d as i128, p as i128) as i64).collect();
        FinAbGroup::from_orders(&parts)
    }

    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut v = self.invariant_factors.clone();
        v.extend_from_slice(&other.invariant_factors);
        FinAbGroup::from_orders(&v)
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Structure of `<generators, relations> / <relations>` inside `(Q/Z)^n`.
pub fn quotient_structure(generators: &[RationalModZVector], relations: &[RationalModZVector]) -> Result<FinAbGroup, LinalgError> {
    let n = generators.first().or(relations.first()).map_or(0, |v| v.len());
    if generators.iter().chain(relations).any(|v| v.len() != n) {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: generators.iter().chain(relations).map(|v| v.len()).find(|&l| l != n).unwrap_or(n),
        });
    }
    let g = generators.len();
    if g == 0 || n == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let den = generators.iter().chain(relations).fold(1i128, |acc, v| int::lcm(acc, v.order() as i128));
    let den = i64::try_from(den).map_err(|_| LinalgError::Overflow)?;
    // columns: generators, relations, den * e_i; the kernel projected to the
    // generator block is the relation lattice of the quotient.
    let k = relations.len();
    let mut m = IntMatrix::zeros(n, g + k + n);
    for (j, v) in generators.iter().chain(relations).enumerate() {
        for (i, x) in v.numerators(den).into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    for i in 0..n {
        m.set(i, g + k + i, den);
    }
    let ker = kernel_basis(&m)?;
    let rel = IntMatrix::from_rows(&(0..ker.cols()).map(|c| (0..g).map(|r| ker.get(r, c)).collect::<Vec<_>>()).collect::<Vec<_>>());
    let rel = if rel.rows() == 0 { IntMatrix::zeros(0, g) } else { rel };
    let (tors, free) = cokernel(&rel)?;
    if free != 0 {
        return Err(LinalgError::NotTorsion);
    }
    Ok(FinAbGroup::from_orders(&tors.into_iter().map(|d| d as i64).collect::<Vec<_>>()).with_generators(generators.to_vec()))
}

/// Structure of the cokernel of an integer matrix when it is finite.
pub fn finite_cokernel(m: &IntMatrix) -> Result<FinAbGroup, LinalgError> {
    let (tors, free) = cokernel(m)?;
    if free != 0 {
        return Err(LinalgError::NotTorsion);
    }
    Ok(FinAbGroup::from_orders(&tors.into_iter().map(|d| d as i64).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &[&str]) -> RationalModZVector {
        RationalModZVector::parse(s).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(FinAbGroup::from_orders(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(FinAbGroup::from_orders(&[4, 2, 1]).invariant_factors(), &[2, 4]);
        assert_eq!(FinAbGroup::from_orders(&[12, 2]).p_primary(2).invariant_factors(), &[2, 4]);
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn generated_subgroups() {
        let g = quotient_structure(&[v(&["1/2", "0"]), v(&["0", "1/2"])], &[]).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 2]);
        let g = quotient_structure(&[v(&["1/2", "1/2"])], &[]).unwrap();
        assert_eq!(g.invariant_factors(), &[2]);
        let g = quotient_structure(&[v(&["1/4"]), v(&["1/2"])], &[]).unwrap();
        assert_eq!(g.invariant_factors(), &[4]);
        let q = quotient_structure(&[v(&["1/4"])], &[v(&["1/2"])]).unwrap();
        assert_eq!(q.invariant_factors(), &[2]);
    }
}
