//! Subgroups of the discrete torus `(Q/Z)^n` of the form
//! (divisible subtorus) + (finite group).
//!
//! Every such subgroup is cut out by integer characters: it equals
//! `{t : A t ∈ Z^k}` for an integer matrix `A`, its annihilator. The
//! annihilator is the canonical internal form and intersections stack them.

use serde::Serialize;

use super::finab::{quotient_structure, FinAbGroup};
use super::int;
use super::qz::RationalModZVector;
use super::snf::kernel_basis;
use super::solve::solve_qz;
use super::{IntMatrix, LinalgError};

#[derive(Clone, Debug, Serialize)]
pub struct TorusSubgroup {
    dim: usize,
    #[serde(skip)]
    annihilator: IntMatrix,
    /// Columns spanning the saturated lattice `V` with `V ⊗ Q/Z` the identity component.
    divisible: IntMatrix,
    /// Generators of a finite complement of the identity component.
    finite: Vec<RationalModZVector>,
    finite_structure: FinAbGroup,
}

impl PartialEq for TorusSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }
}

impl Eq for TorusSubgroup {}

impl TorusSubgroup {
    /// `{t : A t ∈ Z^k}`.
    pub fn from_annihilator(a: &IntMatrix) -> Result<Self, LinalgError> {
        let n = a.cols();
        let zero = RationalModZVector::zero(a.rows());
        let sol = solve_qz(a, &zero)?.expect("homogeneous system is soluble");
        let finite_structure = if sol.finite.is_empty() { FinAbGroup::trivial() } else { quotient_structure(&sol.finite, &[])? };
        Ok(TorusSubgroup { dim: n, annihilator: a.clone(), divisible: sol.divisible, finite: sol.finite, finite_structure })
    }

    pub fn whole(n: usize) -> Self {
        Self::from_annihilator(&IntMatrix::zeros(0, n)).expect("trivial system")
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_annihilator(&IntMatrix::identity(n)).expect("identity system")
    }

    /// Subgroup `V ⊗ Q/Z + <finite>` for `V` spanned by the columns of `divisible`.
    pub fn from_generators(n: usize, divisible: &IntMatrix, finite: &[RationalModZVector]) -> Result<Self, LinalgError> {
        if divisible.rows() != n && divisible.cols() != 0 {
            return Err(LinalgError::DimensionMismatch { expected: n, found: divisible.rows() });
        }
        // characters vanishing on V
        let chars = if divisible.cols() == 0 { IntMatrix::identity(n) } else { kernel_basis(&divisible.transpose())? };
        if finite.is_empty() || chars.cols() == 0 {
            return Self::from_annihilator(&chars.transpose());
        }
        let den = finite.iter().fold(1i128, |acc, f| int::lcm(acc, f.order() as i128));
        let den = i64::try_from(den).map_err(|_| LinalgError::Overflow)?;
        // c with sum_j c_j <chars_j, f> ∈ Z for every f.
        let k = chars.cols();
        let mut m = IntMatrix::zeros(finite.len(), k + finite.len());
        for (i, f) in finite.iter().enumerate() {
            if f.len() != n {
                return Err(LinalgError::DimensionMismatch { expected: n, found: f.len() });
            }
            let num = f.numerators(den);
            for j in 0..k {
                let mut acc: i128 = 0;
                for r in 0..n {
                    acc += chars.get(r, j) as i128 * num[r] as i128;
                }
                m.set(i, j, acc.rem_euclid(den as i128) as i64);
            }
            m.set(i, k + i, den);
        }
        let ker = kernel_basis(&m)?;
        let coeffs = ker.submatrix(&(0..k).collect::<Vec<_>>(), &(0..ker.cols()).collect::<Vec<_>>());
        let ann = chars.mul(&coeffs).transpose();
        Self::from_annihilator(&ann)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn annihilator(&self) -> &IntMatrix {
        &self.annihilator
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible.cols()
    }

    pub fn divisible_basis(&self) -> &IntMatrix {
        &self.divisible
    }

    pub fn finite_generators(&self) -> &[RationalModZVector] {
        &self.finite
    }

    /// Structure of the component group (subgroup modulo its identity component).
    pub fn component_group(&self) -> &FinAbGroup {
        &self.finite_structure
    }

    pub fn is_finite(&self) -> bool {
        self.divisible.cols() == 0
    }

    pub fn contains(&self, t: &RationalModZVector) -> bool {
        assert_eq!(t.len(), self.dim);
        t.apply(&self.annihilator, None).is_zero()
    }

    pub fn is_subgroup_of(&self, other: &TorusSubgroup) -> bool {
        if self.dim != other.dim {
            return false;
        }
        // divisible directions must be killed by other's characters
        let prod = other.annihilator.mul(&self.divisible);
        prod.is_zero() && self.finite.iter().all(|f| other.contains(f))
    }

    /// Exact intersection by stacking annihilators.
    pub fn intersect_exact(&self, other: &TorusSubgroup) -> Result<TorusSubgroup, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Self::from_annihilator(&self.annihilator.vstack(&other.annihilator))
    }

    /// Structure of `self / sub` when both have the same identity component.
    pub fn quotient_by(&self, sub: &TorusSubgroup) -> Result<FinAbGroup, LinalgError> {
        if !sub.is_subgroup_of(self) || sub.divisible_rank() != self.divisible_rank() {
            return Err(LinalgError::Inconsistent("quotient needs a subgroup with the same identity component".into()));
        }
        // characters vanishing on the identity component identify self/T_0 inside a torus
        let chars =
            if self.divisible.cols() == 0 { IntMatrix::identity(self.dim) } else { kernel_basis(&self.divisible.transpose())?.transpose() };
        let project = |v: &[RationalModZVector]| -> Vec<RationalModZVector> {
            v.iter().map(|t| t.apply(&chars, None)).filter(|t| !t.is_zero()).collect()
        };
        let gens = project(&self.finite);
        if gens.is_empty() {
            return Ok(FinAbGroup::trivial());
        }
        quotient_structure(&gens, &project(&sub.finite))
    }

    /// Invariant factors of the `N`-torsion `{t : N t = 0}`.
    pub fn torsion_structure(&self, n_bound: i64) -> Result<FinAbGroup, LinalgError> {
        torsion_structure(&self.annihilator, n_bound)
    }
}

/// `{x ∈ (Z/N)^n : A x ≡ 0}` as a finite abelian group.
fn torsion_structure(a: &IntMatrix, n_bound: i64) -> Result<FinAbGroup, LinalgError> {
    let n = a.cols();
    let k = a.rows();
    if n == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let aug = a.hstack(&IntMatrix::scalar(k, n_bound));
    let ker = kernel_basis(&aug)?;
    let mut gens: Vec<RationalModZVector> =
        (0..ker.cols()).map(|c| RationalModZVector::from_ints(&(0..n).map(|r| ker.get(r, c)).collect::<Vec<_>>(), n_bound)).collect();
    gens.retain(|g| !g.is_zero());
    if gens.is_empty() {
        return Ok(FinAbGroup::trivial());
    }
    quotient_structure(&gens, &[])
}

/// Split `(Z/N)^d + F` into `(d, F)` by peeling off factors equal to `N`.
fn split_torsion(g: &FinAbGroup, n_bound: i64) -> (usize, Vec<i64>) {
    let d = g.invariant_factors().iter().filter(|&&x| x == n_bound).count();
    let rest = g.invariant_factors().iter().copied().filter(|&x| x != n_bound).collect();
    (d, rest)
}

/// Intersection of torus subgroups computed on `N`-torsion for `N = N0, 2 N0, ...`
/// until two successive rounds agree, then cross-checked against the exact
/// annihilator intersection.
pub fn subgroup_intersect(a: &TorusSubgroup, b: &TorusSubgroup, start_bound: i64, max_rounds: usize) -> Result<TorusSubgroup, LinalgError> {
    if a.dim != b.dim {
        return Err(LinalgError::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let stacked = a.annihilator.vstack(&b.annihilator);
    let mut bound = start_bound.max(1);
    let mut prev = split_torsion(&torsion_structure(&stacked, bound)?, bound);
    let mut stable = None;
    for _ in 0..max_rounds {
        bound = bound.checked_mul(2).ok_or(LinalgError::Overflow)?;
        let cur = split_torsion(&torsion_structure(&stacked, bound)?, bound);
        if cur == prev {
            stable = Some(cur);
            break;
        }
        prev = cur;
    }
    let Some((d, finite)) = stable else {
        return Err(LinalgError::Stabilization { rounds: max_rounds });
    };
    let exact = TorusSubgroup::from_annihilator(&stacked)?;
    if exact.divisible_rank() != d || exact.component_group() != &FinAbGroup::from_orders(&finite) {
        return Err(LinalgError::Inconsistent(format!(
            "bounded intersection gives rank {d} and {:?}, exact gives rank {} and {}",
            finite,
            exact.divisible_rank(),
            exact.component_group()
        )));
    }
    Ok(exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &[&str]) -> RationalModZVector {
        RationalModZVector::parse(s).unwrap()
    }

    #[test]
    fn kernel_of_character() {
        // ker of (2) on Q/Z is Z/2
        let s = TorusSubgroup::from_annihilator(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(s.is_finite());
        assert_eq!(s.component_group().invariant_factors(), &[2]);
        assert!(s.contains(&v(&["1/2"])));
        assert!(!s.contains(&v(&["1/4"])));
    }

    #[test]
    fn generated_subgroup_round_trip() {
        let s = TorusSubgroup::from_generators(2, &IntMatrix::from_cols(&[[1, 1]]), &[v(&["1/2", "0"])]).unwrap();
        assert_eq!(s.divisible_rank(), 1);
        assert_eq!(s.component_group().invariant_factors(), &[2]);
        assert!(s.contains(&v(&["1/3", "1/3"])));
        assert!(s.contains(&v(&["1/2", "0"])));
        assert!(!s.contains(&v(&["1/4", "0"])));
    }

    #[test]
    fn intersections() {
        let half = TorusSubgroup::from_generators(1, &IntMatrix::zeros(1, 0), &[v(&["1/2"])]).unwrap();
        let zero = TorusSubgroup::trivial(1);
        let i = subgroup_intersect(&half, &zero, 2, 8).unwrap();
        assert_eq!(i, zero);
        assert_eq!(subgroup_intersect(&half, &half, 2, 8).unwrap(), half);
    }
}
