//! Small dense matrices over `Q`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

pub type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix { rows: m.rows(), cols: m.cols(), data: m.data().iter().map(|&x| Q::from_integer(x as i128)).collect() }
    }

    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, *x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = m.get(i, j) + a * o.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows).map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + self.get(i, j) * v[j])).collect()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    let (x, y) = (a.get(c, j), a.get(p, j));
                    a.set(c, j, y);
                    a.set(p, j, x);
                    let (x, y) = (inv.get(c, j), inv.get(p, j));
                    inv.set(c, j, y);
                    inv.set(p, j, x);
                }
            }
            let piv = a.get(c, c);
            for j in 0..n {
                a.set(c, j, a.get(c, j) / piv);
                inv.set(c, j, inv.get(c, j) / piv);
            }
            for r in 0..n {
                if r != c {
                    let f = a.get(r, c);
                    if !f.is_zero() {
                        for j in 0..n {
                            a.set(r, j, a.get(r, j) - f * a.get(c, j));
                            inv.set(r, j, inv.get(r, j) - f * inv.get(c, j));
                        }
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut d = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else { return Q::zero() };
            if p != c {
                for j in 0..n {
                    let (x, y) = (a.get(c, j), a.get(p, j));
                    a.set(c, j, y);
                    a.set(p, j, x);
                }
                d = -d;
            }
            let piv = a.get(c, c);
            d *= piv;
            for r in c + 1..n {
                let f = a.get(r, c) / piv;
                if !f.is_zero() {
                    for j in c..n {
                        a.set(r, j, a.get(r, j) - f * a.get(c, j));
                    }
                }
            }
        }
        d
    }

    /// Least common denominator of all entries.
    pub fn denominator(&self) -> i128 {
        self.data.iter().fold(1i128, |acc, q| super::int::lcm(acc, *q.denom()))
    }

    /// Integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self.get(i, j);
                if !q.is_integer() {
                    return None;
                }
                out.set(i, j, i64::try_from(q.to_integer()).ok()?);
            }
        }
        Some(out)
    }

    /// Whether all denominators are prime to `p` (entries in `Z_(p)`).
    pub fn is_p_integral(&self, p: i128) -> bool {
        self.data.iter().all(|q| q.denom() % p != 0)
    }

    /// Reduce a `p`-integral matrix modulo `m` (a power of `p`).
    pub fn reduce_p_integral(&self, m: i128) -> Option<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self.get(i, j);
                let inv = super::int::inv_mod(*q.denom(), m)?;
                out.set(i, j, (q.numer().rem_euclid(m) * inv).rem_euclid(m) as i64);
            }
        }
        Some(out)
    }

    pub fn max_abs_entry(&self) -> Q {
        self.data.iter().map(|q| q.abs()).max().unwrap_or_else(Q::zero)
    }
}

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_int(&IntMatrix::from_rows(&[[2, 1], [1, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert_eq!(m.det(), q(1));
        let s = RatMatrix::from_int(&IntMatrix::from_rows(&[[2, 0], [0, 1]]));
        assert_eq!(s.inverse().unwrap().denominator(), 2);
        assert!(s.inverse().unwrap().is_p_integral(3));
    }
}
