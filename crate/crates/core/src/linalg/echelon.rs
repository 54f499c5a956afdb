//! Incremental integer row echelon forms.
//!
//! [`ExactEchelon`] keeps an echelon basis of a row lattice in `Z^n` together
//! with a right-hand side attached to every row, so that inconsistent systems
//! are detected while the rows stream in. [`ModEchelon`] does the same for
//! submodules of `(Z/D)^n` and maintains the Howell property, which makes the
//! span order and membership tests exact.

use super::int::{self, xgcd};
use super::qz::Qz;
use super::LinalgError;

/// Right-hand side values carried through integer row operations.
pub trait Rhs: Clone {
    fn is_zero(&self) -> bool;
    /// `a * x + b * y`.
    fn combo(a: i128, x: &Self, b: i128, y: &Self) -> Result<Self, LinalgError>;
}

impl Rhs for () {
    fn is_zero(&self) -> bool {
        true
    }
    fn combo(_: i128, _: &(), _: i128, _: &()) -> Result<(), LinalgError> {
        Ok(())
    }
}

impl Rhs for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn combo(a: i128, x: &i128, b: i128, y: &i128) -> Result<i128, LinalgError> {
        int::add(int::mul(a, *x)?, int::mul(b, *y)?)
    }
}

impl Rhs for Qz {
    fn is_zero(&self) -> bool {
        Qz::is_zero(self)
    }
    fn combo(a: i128, x: &Qz, b: i128, y: &Qz) -> Result<Qz, LinalgError> {
        Ok(x.mul_int(a).add(y.mul_int(b)))
    }
}

impl<R: Rhs> Rhs for Vec<R> {
    fn is_zero(&self) -> bool {
        self.iter().all(R::is_zero)
    }
    fn combo(a: i128, x: &Self, b: i128, y: &Self) -> Result<Self, LinalgError> {
        x.iter().zip(y).map(|(u, v)| R::combo(a, u, b, v)).collect()
    }
}

fn combine(a: i128, x: &[i128], b: i128, y: &[i128]) -> Result<Vec<i128>, LinalgError> {
    x.iter().zip(y).map(|(&u, &v)| int::add(int::mul(a, u)?, int::mul(b, v)?)).collect()
}

/// Echelon basis of a row lattice in `Z^n`, with attached right-hand sides.
#[derive(Clone, Debug)]
pub struct ExactEchelon<R: Rhs> {
    ncols: usize,
    rows: Vec<(Vec<i128>, R)>,
    pivot_of_col: Vec<Option<usize>>,
    inconsistent: Option<R>,
}

impl<R: Rhs> ExactEchelon<R> {
    pub fn new(ncols: usize) -> Self {
        ExactEchelon { ncols, rows: Vec::new(), pivot_of_col: vec![None; ncols], inconsistent: None }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// A nonzero right-hand side that was reduced against a zero row, if any.
    pub fn inconsistency(&self) -> Option<&R> {
        self.inconsistent.as_ref()
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistent.is_none()
    }

    pub fn insert_i64(&mut self, row: &[i64], rhs: R) -> Result<(), LinalgError> {
        self.insert(row.iter().map(|&x| x as i128).collect(), rhs)
    }

    pub fn insert(&mut self, mut row: Vec<i128>, mut rhs: R) -> Result<(), LinalgError> {
        if row.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch { expected: self.ncols, found: row.len() });
        }
        loop {
            let Some(c) = row.iter().position(|&x| x != 0) else {
                if !rhs.is_zero() && self.inconsistent.is_none() {
                    self.inconsistent = Some(rhs);
                }
                return Ok(());
            };
            match self.pivot_of_col[c] {
                None => {
                    if row[c] < 0 {
                        row = row.into_iter().map(|x| -x).collect();
                        rhs = R::combo(-1, &rhs, 0, &rhs)?;
                    }
                    self.reduce_tail(&mut row, &mut rhs, c)?;
                    self.pivot_of_col[c] = Some(self.rows.len());
                    self.rows.push((row, rhs));
                    return Ok(());
                }
                Some(pi) => {
                    let a = self.rows[pi].0[c];
                    let v = row[c];
                    if v % a == 0 {
                        let q = v / a;
                        let (prow, prhs) = &self.rows[pi];
                        row = combine(1, &row, -q, prow)?;
                        rhs = R::combo(1, &rhs, -q, prhs)?;
                    } else {
                        let (g, s, t) = xgcd(a, v);
                        let (prow, prhs) = &self.rows[pi];
                        let mut new_row = combine(s, prow, t, &row)?;
                        let mut new_rhs = R::combo(s, prhs, t, &rhs)?;
                        let left = combine(-v / g, prow, a / g, &row)?;
                        let left_rhs = R::combo(-v / g, prhs, a / g, &rhs)?;
                        self.reduce_tail(&mut new_row, &mut new_rhs, c)?;
                        self.rows[pi] = (new_row, new_rhs);
                        row = left;
                        rhs = left_rhs;
                    }
                }
            }
        }
    }

    /// Reduce entries after the leading column modulo later pivots.
    fn reduce_tail(&self, row: &mut Vec<i128>, rhs: &mut R, lead: usize) -> Result<(), LinalgError> {
        for c in lead + 1..self.ncols {
            if let Some(pi) = self.pivot_of_col[c] {
                let (prow, prhs) = &self.rows[pi];
                let q = row[c].div_euclid(prow[c]);
                if q != 0 {
                    *row = combine(1, row, -q, prow)?;
                    *rhs = R::combo(1, rhs, -q, prhs)?;
                }
            }
        }
        Ok(())
    }

    /// Rows sorted by leading column.
    pub fn basis(&self) -> Vec<(Vec<i128>, R)> {
        let mut out = Vec::with_capacity(self.rows.len());
        for c in 0..self.ncols {
            if let Some(pi) = self.pivot_of_col[c] {
                out.push(self.rows[pi].clone());
            }
        }
        out
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_some()).collect()
    }

    /// Whether `v` lies in the row lattice.
    pub fn contains(&self, v: &[i128]) -> bool {
        let mut row = v.to_vec();
        for c in 0..self.ncols {
            if row[c] == 0 {
                continue;
            }
            let Some(pi) = self.pivot_of_col[c] else { return false };
            let prow = &self.rows[pi].0;
            if row[c] % prow[c] != 0 {
                return false;
            }
            let q = row[c] / prow[c];
            match combine(1, &row, -q, prow) {
                Ok(r) => row = r,
                Err(_) => return false,
            }
        }
        true
    }
}

/// Howell-form echelon basis of a submodule of `(Z/D)^n`.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    modulus: i128,
    ncols: usize,
    rows: Vec<Vec<i128>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl ModEchelon {
    pub fn new(ncols: usize, modulus: i128) -> Self {
        assert!(modulus > 0);
        ModEchelon { modulus, ncols, rows: Vec::new(), pivot_of_col: vec![None; ncols] }
    }

    pub fn modulus(&self) -> i128 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn lin(&self, a: i128, x: &[i128], b: i128, y: &[i128]) -> Vec<i128> {
        let m = self.modulus;
        x.iter().zip(y).map(|(&u, &v)| ((a.rem_euclid(m) * u).rem_euclid(m) + (b.rem_euclid(m) * v).rem_euclid(m)) % m).collect()
    }

    pub fn insert_i64(&mut self, row: &[i64]) {
        self.insert(row.iter().map(|&x| x as i128).collect());
    }

    pub fn insert(&mut self, row: Vec<i128>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let m = self.modulus;
        let mut queue = vec![row.into_iter().map(|x| x.rem_euclid(m)).collect::<Vec<_>>()];
        while let Some(mut row) = queue.pop() {
            loop {
                let Some(c) = row.iter().position(|&x| x != 0) else { break };
                let v = row[c];
                match self.pivot_of_col[c] {
                    None => {
                        let (g, s, _) = xgcd(v, m);
                        let mut new_row = self.lin(s, &row, 0, &row);
                        new_row[c] = g;
                        let left = self.lin(m / g, &row, 0, &row);
                        self.reduce_tail(&mut new_row, c);
                        let closure = self.lin(m / g, &new_row, 0, &new_row);
                        self.pivot_of_col[c] = Some(self.rows.len());
                        self.rows.push(new_row);
                        queue.push(closure);
                        queue.push(left);
                        break;
                    }
                    Some(pi) => {
                        let a = self.rows[pi][c];
                        if v % a == 0 {
                            row = self.lin(1, &row, -(v / a), &self.rows[pi]);
                        } else {
                            let (g, s, t) = xgcd(a, v);
                            let prow = self.rows[pi].clone();
                            let mut new_row = self.lin(s, &prow, t, &row);
                            let left = self.lin(-v / g, &prow, a / g, &row);
                            self.reduce_tail(&mut new_row, c);
                            let closure = self.lin(m / g, &new_row, 0, &new_row);
                            self.rows[pi] = new_row;
                            queue.push(closure);
                            row = left;
                        }
                    }
                }
            }
        }
    }

    fn reduce_tail(&self, row: &mut Vec<i128>, lead: usize) {
        for c in lead + 1..self.ncols {
            if let Some(pi) = self.pivot_of_col[c] {
                let p = self.rows[pi][c];
                let q = row[c] / p;
                if q != 0 {
                    *row = self.lin(1, row, -q, &self.rows[pi]);
                }
            }
        }
    }

    /// Leading entry per column (`D` for columns without a pivot).
    pub fn pivot_values(&self) -> Vec<i128> {
        (0..self.ncols).map(|c| self.pivot_of_col[c].map_or(self.modulus, |pi| self.rows[pi][c])).collect()
    }

    /// Order of the submodule spanned so far.
    pub fn order(&self) -> Result<i128, LinalgError> {
        let mut o: i128 = 1;
        for g in self.pivot_values() {
            o = int::mul(o, self.modulus / g)?;
        }
        Ok(o)
    }

    /// `log_p` of the order; avoids overflow for large elementary abelian spans.
    pub fn order_log(&self, p: i128) -> u32 {
        self.pivot_values().iter().map(|&g| int::valuation(self.modulus / g, p)).sum()
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let m = self.modulus;
        let mut row: Vec<i128> = v.iter().map(|x| x.rem_euclid(m)).collect();
        for c in 0..self.ncols {
            if row[c] == 0 {
                continue;
            }
            let Some(pi) = self.pivot_of_col[c] else { return false };
            let a = self.rows[pi][c];
            if row[c] % a != 0 {
                return false;
            }
            row = self.lin(1, &row, -(row[c] / a), &self.rows[pi]);
        }
        true
    }

    /// Rows sorted by leading column.
    pub fn basis(&self) -> Vec<Vec<i128>> {
        (0..self.ncols).filter_map(|c| self.pivot_of_col[c].map(|pi| self.rows[pi].clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_detects_inconsistency() {
        let mut e = ExactEchelon::<i128>::new(2);
        e.insert(vec![2, 0], 1).unwrap();
        e.insert(vec![4, 0], 3).unwrap();
        assert_eq!(e.inconsistency(), Some(&1));
        let mut e = ExactEchelon::<i128>::new(2);
        e.insert(vec![2, 0], 1).unwrap();
        e.insert(vec![4, 0], 2).unwrap();
        assert!(e.is_consistent());
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn exact_gcd_merge() {
        let mut e = ExactEchelon::<()>::new(2);
        e.insert(vec![4, 1], ()).unwrap();
        e.insert(vec![6, 0], ()).unwrap();
        assert!(e.contains(&[2, 2]));
        assert!(!e.contains(&[2, -3]));
        assert!(!e.contains(&[1, 0]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn howell_order() {
        // <(2,1)> in (Z/4)^2 has order 4 and contains (0,2).
        let mut e = ModEchelon::new(2, 4);
        e.insert(vec![2, 1]);
        assert_eq!(e.order().unwrap(), 4);
        assert!(e.contains(&[0, 2]));
        assert!(!e.contains(&[2, 0]));
        let mut f = ModEchelon::new(2, 4);
        f.insert(vec![1, 0]);
        f.insert(vec![0, 2]);
        assert_eq!(f.order().unwrap(), 8);
    }
}
