//! Smith and Hermite normal forms over `Z`.

use super::echelon::ExactEchelon;
use super::int::{self, xgcd};
use super::{IntMatrix, LinalgError};

pub(crate) type Mat = Vec<Vec<i128>>;

/// `u * m * v = diag`, with `u`, `v` unimodular and `diag[i] | diag[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Mat,
    pub v: Mat,
    pub diag: Vec<i128>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

pub(crate) fn to_mat(m: &IntMatrix) -> Mat {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect()
}

pub(crate) fn to_int_matrix(m: &Mat, cols: usize) -> Result<IntMatrix, LinalgError> {
    let mut data = Vec::with_capacity(m.len() * cols);
    for r in m {
        for &x in r {
            data.push(i64::try_from(x).map_err(|_| LinalgError::Overflow)?);
        }
    }
    Ok(IntMatrix::from_vec(m.len(), cols, data))
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Replace rows `i`, `j` by `(a r_i + b r_j, c r_i + d r_j)`.
fn row_op(m: &mut Mat, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<(), LinalgError> {
    for k in 0..m[i].len() {
        let x = m[i][k];
        let y = m[j][k];
        m[i][k] = int::add(int::mul(a, x)?, int::mul(b, y)?)?;
        m[j][k] = int::add(int::mul(c, x)?, int::mul(d, y)?)?;
    }
    Ok(())
}

fn col_op(m: &mut Mat, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<(), LinalgError> {
    for row in m.iter_mut() {
        let x = row[i];
        let y = row[j];
        row[i] = int::add(int::mul(a, x)?, int::mul(b, y)?)?;
        row[j] = int::add(int::mul(c, x)?, int::mul(d, y)?)?;
    }
    Ok(())
}

/// Smith normal form with transforms of a dense integer matrix.
pub fn smith_mat(m: &Mat, cols: usize, track: bool) -> Result<SmithForm, LinalgError> {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = if track { identity(rows) } else { Vec::new() };
    let mut v = if track { identity(cols) } else { Vec::new() };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != t {
            a.swap(bi, t);
            if track {
                u.swap(bi, t);
            }
        }
        if bj != t {
            for r in a.iter_mut() {
                r.swap(bj, t);
            }
            if track {
                for r in v.iter_mut() {
                    r.swap(bj, t);
                }
            }
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let p = a[t][t];
                let x = a[i][t];
                if x % p == 0 {
                    let q = x / p;
                    row_op(&mut a, t, i, 1, 0, -q, 1)?;
                    if track {
                        row_op(&mut u, t, i, 1, 0, -q, 1)?;
                    }
                } else {
                    let (g, s, r) = xgcd(p, x);
                    let (c, d) = (-x / g, p / g);
                    row_op(&mut a, t, i, s, r, c, d)?;
                    if track {
                        row_op(&mut u, t, i, s, r, c, d)?;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let p = a[t][t];
                let x = a[t][j];
                if x % p == 0 {
                    let q = x / p;
                    col_op(&mut a, t, j, 1, 0, -q, 1)?;
                    if track {
                        col_op(&mut v, t, j, 1, 0, -q, 1)?;
                    }
                } else {
                    let (g, s, r) = xgcd(p, x);
                    let (c, d) = (-x / g, p / g);
                    col_op(&mut a, t, j, s, r, c, d)?;
                    if track {
                        col_op(&mut v, t, j, s, r, c, d)?;
                    }
                    dirty = true;
                }
            }
            if dirty || (t + 1..rows).any(|i| a[i][t] != 0) {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_op(&mut a, t, i, 1, 1, 0, 1)?;
                    if track {
                        row_op(&mut u, t, i, 1, 1, 0, 1)?;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for k in 0..cols {
                a[t][k] = -a[t][k];
            }
            if track {
                for k in 0..rows {
                    u[t][k] = -u[t][k];
                }
            }
        }
        t += 1;
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    Ok(SmithForm { u, v, diag, rows, cols })
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, LinalgError> {
    smith_mat(&to_mat(m), m.cols(), true)
}

/// Row lattice reduced to an echelon basis (at most `cols` rows).
pub(crate) fn row_reduce(m: &IntMatrix) -> Result<Mat, LinalgError> {
    let mut e = ExactEchelon::<()>::new(m.cols());
    for i in 0..m.rows() {
        e.insert_i64(m.row(i), ())?;
    }
    Ok(e.basis().into_iter().map(|(r, _)| r).collect())
}

/// Nonzero elementary divisors, ascending, including units.
pub fn elementary_divisors(m: &IntMatrix) -> Result<Vec<i128>, LinalgError> {
    let reduced = row_reduce(m)?;
    let s = smith_mat(&reduced, m.cols(), false)?;
    Ok(s.diag.into_iter().filter(|&d| d != 0).collect())
}

/// Rank over `Q`.
pub fn rank(m: &IntMatrix) -> Result<usize, LinalgError> {
    Ok(row_reduce(m)?.len())
}

/// Row-style Hermite basis of the row lattice.
pub fn hermite_basis(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let r = row_reduce(m)?;
    to_int_matrix(&r, m.cols())
}

/// Columns spanning the saturated integer kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let reduced = row_reduce(m)?;
    let s = smith_mat(&reduced, m.cols(), true)?;
    let r = s.rank();
    let cols: Vec<Vec<i128>> = (r..m.cols()).map(|j| s.v.iter().map(|row| row[j]).collect()).collect();
    let mut out = IntMatrix::zeros(m.cols(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            out.set(i, j, i64::try_from(x).map_err(|_| LinalgError::Overflow)?);
        }
    }
    Ok(out)
}

/// Orders of the finite cyclic factors of `Z^cols / rowspan(m)` together with
/// the free rank.
pub fn cokernel(m: &IntMatrix) -> Result<(Vec<i128>, usize), LinalgError> {
    let ed = elementary_divisors(m)?;
    let free = m.cols() - ed.len();
    Ok((ed.into_iter().filter(|&d| d > 1).collect(), free))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &Mat, b: &Mat) -> Mat {
        let n = b.first().map_or(0, |r| r.len());
        a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect()).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::diagonal(&[2, 3]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diag, vec![1, 6]);
        let prod = mat_mul(&mat_mul(&s.u, &to_mat(&m)), &s.v);
        assert_eq!(prod, vec![vec![1, 0], vec![0, 6]]);
    }

    #[test]
    fn kernel_and_cokernel() {
        let m = IntMatrix::from_rows(&[[1, 1, 1]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let (tors, free) = cokernel(&IntMatrix::from_rows(&[[2, 0], [0, 4], [2, 4]])).unwrap();
        assert_eq!((tors, free), (vec![2, 4], 0));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = IntMatrix::from_rows(&[[6, 4, 2], [3, 9, 12], [0, 5, 10], [1, 1, 1]]);
        let s = smith_normal_form(&m).unwrap();
        let prod = mat_mul(&mat_mul(&s.u, &to_mat(&m)), &s.v);
        for (i, r) in prod.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                let want = if i == j && i < s.diag.len() { s.diag[i] } else { 0 };
                assert_eq!(x, want);
            }
        }
        for w in s.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
