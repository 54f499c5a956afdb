//! Linear systems over `Z`, `Z/m` and `Q/Z`.

use super::echelon::{ExactEchelon, Rhs};
use super::qz::{Qz, RationalModZVector};
use super::snf::{smith_mat, Mat};
use super::{int, IntMatrix, LinalgError};

/// Coefficient ring of a linear system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z,
    Zmod(i64),
    QmodZ,
}

/// Right-hand side of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightHandSide {
    Int(Vec<i64>),
    Torus(RationalModZVector),
}

/// A particular integral (or mod `m`) solution plus generators of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSolution {
    pub x: Vec<i64>,
    /// Columns generate the homogeneous solutions (together with `m Z^n` over `Z/m`).
    pub kernel: IntMatrix,
}

/// A particular `Q/Z` solution plus a description of all solutions:
/// `x + span_Q/Z(divisible) + <finite>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSolution {
    pub x: RationalModZVector,
    /// Columns `v` with `v ⊗ Q/Z` in the kernel.
    pub divisible: IntMatrix,
    pub finite: Vec<RationalModZVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Int(IntSolution),
    Torus(TorusSolution),
}

/// Solve `A x = b` over the given ring. Returns `Ok(None)` when insoluble.
pub fn solve_linear(a: &IntMatrix, b: &RightHandSide, ring: Ring) -> Result<Option<Solution>, LinalgError> {
    match (ring, b) {
        (Ring::Z, RightHandSide::Int(v)) => Ok(solve_z(a, v)?.map(Solution::Int)),
        (Ring::Zmod(m), RightHandSide::Int(v)) => Ok(solve_zmod(a, v, m)?.map(Solution::Int)),
        (Ring::QmodZ, RightHandSide::Torus(v)) => Ok(solve_qz(a, v)?.map(Solution::Torus)),
        (Ring::QmodZ, RightHandSide::Int(v)) => {
            let t = RationalModZVector::from_ints(v, 1);
            Ok(solve_qz(a, &t)?.map(Solution::Torus))
        }
        _ => Err(LinalgError::RingMismatch),
    }
}

fn check_dims(a: &IntMatrix, len: usize) -> Result<(), LinalgError> {
    if a.rows() != len {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), found: len });
    }
    Ok(())
}

/// Reduce a streamed system to an equivalent square-ish one. `None` if inconsistent.
pub(crate) fn reduce_system<R: Rhs>(
    ncols: usize,
    rows: impl IntoIterator<Item = (Vec<i128>, R)>,
) -> Result<Option<(Mat, Vec<R>)>, LinalgError> {
    let mut e = ExactEchelon::<R>::new(ncols);
    for (r, b) in rows {
        e.insert(r, b)?;
        if !e.is_consistent() {
            return Ok(None);
        }
    }
    let (m, rhs): (Vec<_>, Vec<_>) = e.basis().into_iter().unzip();
    Ok(Some((m, rhs)))
}

fn narrow(x: i128) -> Result<i64, LinalgError> {
    i64::try_from(x).map_err(|_| LinalgError::Overflow)
}

/// Solve over `Z` from an already reduced system.
pub(crate) fn solve_reduced_z(m: &Mat, rhs: &[i128], ncols: usize) -> Result<Option<(Vec<i128>, Mat)>, LinalgError> {
    let s = smith_mat(m, ncols, true)?;
    let k = m.len();
    let mut c = vec![0i128; k];
    for i in 0..k {
        let mut acc = 0i128;
        for j in 0..k {
            acc = int::add(acc, int::mul(s.u[i][j], rhs[j])?)?;
        }
        c[i] = acc;
    }
    let r = s.rank();
    let mut y = vec![0i128; ncols];
    for i in 0..k {
        if i < r {
            if c[i] % s.diag[i] != 0 {
                return Ok(None);
            }
            y[i] = c[i] / s.diag[i];
        } else if c[i] != 0 {
            return Ok(None);
        }
    }
    let mut x = vec![0i128; ncols];
    for i in 0..ncols {
        let mut acc = 0i128;
        for j in 0..r {
            acc = int::add(acc, int::mul(s.v[i][j], y[j])?)?;
        }
        x[i] = acc;
    }
    let kernel: Mat = (0..ncols).map(|i| (r..ncols).map(|j| s.v[i][j]).collect()).collect();
    Ok(Some((x, kernel)))
}

pub fn solve_z(a: &IntMatrix, b: &[i64]) -> Result<Option<IntSolution>, LinalgError> {
    check_dims(a, b.len())?;
    let rows = (0..a.rows()).map(|i| (a.row(i).iter().map(|&x| x as i128).collect(), b[i] as i128));
    let Some((m, rhs)) = reduce_system(a.cols(), rows)? else { return Ok(None) };
    let Some((x, ker)) = solve_reduced_z(&m, &rhs, a.cols())? else { return Ok(None) };
    let x = x.into_iter().map(narrow).collect::<Result<Vec<_>, _>>()?;
    let kcols = ker.first().map_or(0, |r| r.len());
    let mut kernel = IntMatrix::zeros(a.cols(), kcols);
    for (i, r) in ker.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            kernel.set(i, j, narrow(v)?);
        }
    }
    Ok(Some(IntSolution { x, kernel }))
}

/// Solve `A x ≡ b (mod m)`.
pub fn solve_zmod(a: &IntMatrix, b: &[i64], m: i64) -> Result<Option<IntSolution>, LinalgError> {
    check_dims(a, b.len())?;
    if m <= 0 {
        return Err(LinalgError::RingMismatch);
    }
    let n = a.cols();
    let rows_n = a.rows();
    let aug = a.hstack(&IntMatrix::scalar(rows_n, m));
    let Some(sol) = solve_z(&aug, b)? else { return Ok(None) };
    let x: Vec<i64> = sol.x[..n].iter().map(|v| v.rem_euclid(m)).collect();
    let kernel = sol.kernel.submatrix(&(0..n).collect::<Vec<_>>(), &(0..sol.kernel.cols()).collect::<Vec<_>>());
    Ok(Some(IntSolution { x, kernel: kernel.reduce_mod(m) }))
}

/// Solve a reduced system over `Q/Z`.
pub(crate) fn solve_reduced_qz(m: &Mat, rhs: &[Qz], ncols: usize) -> Result<Option<TorusSolution>, LinalgError> {
    let s = smith_mat(m, ncols, true)?;
    let k = m.len();
    let r = s.rank();
    let mut y = vec![Qz::ZERO; ncols];
    for i in 0..k {
        let mut c = Qz::ZERO;
        for j in 0..k {
            c = c.add(rhs[j].mul_int(s.u[i][j]));
        }
        if i < r {
            y[i] = c.div_int(s.diag[i]);
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    let apply_v = |y: &[Qz]| -> RationalModZVector {
        RationalModZVector((0..ncols).map(|i| (0..ncols).fold(Qz::ZERO, |acc, j| acc.add(y[j].mul_int(s.v[i][j])))).collect())
    };
    let x = apply_v(&y);
    let mut finite = Vec::new();
    for i in 0..r {
        if s.diag[i] > 1 {
            let mut e = vec![Qz::ZERO; ncols];
            e[i] = Qz::new(1, s.diag[i]);
            finite.push(apply_v(&e));
        }
    }
    let mut divisible = IntMatrix::zeros(ncols, ncols - r);
    for i in 0..ncols {
        for j in r..ncols {
            divisible.set(i, j - r, narrow(s.v[i][j])?);
        }
    }
    Ok(Some(TorusSolution { x, divisible, finite }))
}

pub fn solve_qz(a: &IntMatrix, b: &RationalModZVector) -> Result<Option<TorusSolution>, LinalgError> {
    check_dims(a, b.len())?;
    let rows = (0..a.rows()).map(|i| (a.row(i).iter().map(|&x| x as i128).collect(), b.0[i]));
    let Some((m, rhs)) = reduce_system(a.cols(), rows)? else { return Ok(None) };
    solve_reduced_qz(&m, &rhs, a.cols())
}

/// Solve a system given as streamed sparse rows over `Q/Z`.
pub fn solve_qz_rows(ncols: usize, rows: impl IntoIterator<Item = (Vec<i128>, Qz)>) -> Result<Option<TorusSolution>, LinalgError> {
    let Some((m, rhs)) = reduce_system(ncols, rows)? else { return Ok(None) };
    solve_reduced_qz(&m, &rhs, ncols)
}

/// Solve a system given as streamed rows over `Z`; returns one solution.
pub fn solve_z_rows(ncols: usize, rows: impl IntoIterator<Item = (Vec<i128>, i128)>) -> Result<Option<Vec<i128>>, LinalgError> {
    let Some((m, rhs)) = reduce_system(ncols, rows)? else { return Ok(None) };
    Ok(solve_reduced_z(&m, &rhs, ncols)?.map(|(x, _)| x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qz(s: &[&str]) -> RationalModZVector {
        RationalModZVector::parse(s).unwrap()
    }

    #[test]
    fn halving_in_q_mod_z() {
        let a = IntMatrix::from_rows(&[[2]]);
        let sol = solve_qz(&a, &qz(&["1/2"])).unwrap().unwrap();
        assert_eq!(sol.x.apply(&a, None), qz(&["1/2"]));
        assert_eq!(sol.finite, vec![qz(&["1/2"])]);
        assert!(solve_qz(&IntMatrix::from_rows(&[[0]]), &qz(&["1/2"])).unwrap().is_none());
    }

    #[test]
    fn identity_returns_rhs() {
        let b = qz(&["1/3", "2/5", "0"]);
        let sol = solve_qz(&IntMatrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(sol.x, b);
        let z = solve_z(&IntMatrix::identity(2), &[4, -7]).unwrap().unwrap();
        assert_eq!(z.x, vec![4, -7]);
    }

    #[test]
    fn integer_and_modular() {
        let a = IntMatrix::from_rows(&[[2, 4]]);
        assert!(solve_z(&a, &[3]).unwrap().is_none());
        let s = solve_zmod(&a, &[3], 5).unwrap().unwrap();
        assert_eq!((2 * s.x[0] + 4 * s.x[1]).rem_euclid(5), 3);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(solve_z(&IntMatrix::identity(2), &[1]), Err(LinalgError::DimensionMismatch { .. })));
    }
}
