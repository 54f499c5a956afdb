use crate::ext::Action;
use crate::groups::WeylGroup;
use crate::linalg::echelon::ExactEchelon;
use crate::linalg::modular::{kernel_mod_prime_power, p_quotient_structure};
use crate::linalg::snf::smith_mat;
use crate::linalg::{FinAbGroup, LinalgError};

use super::CohomologyError;

/// Sparse row: `(column, coefficient)` pairs.
pub type SparseRow = Vec<(usize, i64)>;

/// Normalized bar cochains of a subgroup of `W` with values in `Z^n`.
///
/// `C^j` has one block of `n` coordinates per `j`-tuple of non-identity elements.
pub struct BarComplex<'a> {
    w: &'a WeylGroup,
    action: &'a Action,
    elems: Vec<usize>,
    pos: Vec<Option<usize>>,
}

/// Torsion classes of `H^j(G; L)` with cocycle representatives.
#[derive(Clone, Debug)]
pub struct LatticeClasses {
    pub degree: usize,
    pub orders: Vec<i64>,
    pub representatives: Vec<Vec<i64>>,
}

impl LatticeClasses {
    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::from_orders(&self.orders)
    }
}

fn tuples(n: usize, len: usize) -> usize {
    n.pow(len as u32)
}

impl<'a> BarComplex<'a> {
    /// `elems` must be closed under multiplication; the identity is skipped.
    pub fn new(w: &'a WeylGroup, action: &'a Action, elems: &[usize]) -> Self {
        let mut e: Vec<usize> = elems.iter().copied().filter(|&x| x != w.identity()).collect();
        e.sort_unstable();
        e.dedup();
        let mut pos = vec![None; w.order()];
        for (i, &x) in e.iter().enumerate() {
            pos[x] = Some(i);
        }
        BarComplex { w, action, elems: e, pos }
    }

    pub fn whole(w: &'a WeylGroup, action: &'a Action) -> Self {
        Self::new(w, action, &(0..w.order()).collect::<Vec<_>>())
    }

    pub fn group_order(&self) -> usize {
        self.elems.len() + 1
    }

    pub fn dim(&self, j: usize) -> usize {
        self.action.dim * tuples(self.elems.len(), j)
    }

    fn index(&self, t: &[usize]) -> Option<usize> {
        let mut k = 0;
        for &g in t {
            k = k * self.elems.len() + self.pos[g]?;
        }
        Some(k)
    }

    fn decode(&self, mut k: usize, len: usize) -> Vec<usize> {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = self.elems[k % self.elems.len()];
            k /= self.elems.len();
        }
        t
    }

    /// Rows of `d^j : C^j → C^{j+1}`.
    pub fn coboundary_rows(&self, j: usize) -> Vec<SparseRow> {
        let n = self.action.dim;
        let w = self.w;
        let mut out = Vec::with_capacity(self.dim(j + 1));
        for k in 0..tuples(self.elems.len(), j + 1) {
            let t = self.decode(k, j + 1);
            let mut terms: Vec<(Option<usize>, i64)> = Vec::new();
            // face 0 carries the action
            let first = self.index(&t[1..]);
            for (i, &g) in t.iter().enumerate().take(j) {
                let mut u: Vec<usize> = t[..i].to_vec();
                u.push(w.mul(g, t[i + 1]));
                u.extend_from_slice(&t[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                terms.push((self.index(&u), sign));
            }
            let last_sign = if (j + 1).is_multiple_of(2) { 1 } else { -1 };
            terms.push((self.index(&t[..j]), last_sign));
            let rho = &self.action.matrices[t[0]];
            for r in 0..n {
                let mut row: Vec<(usize, i64)> = Vec::new();
                if let Some(f) = first {
                    for c in 0..n {
                        let v = rho.get(r, c);
                        if v != 0 {
                            row.push((f * n + c, v));
                        }
                    }
                }
                for &(ix, s) in &terms {
                    if let Some(ix) = ix {
                        row.push((ix * n + r, s));
                    }
                }
                out.push(merge(row));
            }
        }
        out
    }

    /// `H^j(G; L)` for `j ≥ 1`: the torsion of `coker d^{j-1}`.
    pub fn lattice_cohomology(&self, j: usize) -> Result<LatticeClasses, CohomologyError> {
        assert!(j >= 1);
        let rows = self.coboundary_rows(j - 1);
        let ncols = self.dim(j - 1);
        let mut e = ExactEchelon::<()>::new(ncols);
        for r in &rows {
            e.insert(densify(r, ncols), ())?;
        }
        let reduced: Vec<Vec<i128>> = e.basis().into_iter().map(|(r, _)| r).collect();
        let s = smith_mat(&reduced, ncols, true)?;
        let mut orders = Vec::new();
        let mut reps = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d.abs() <= 1 {
                continue;
            }
            let v: Vec<i128> = s.v.iter().map(|row| row[i]).collect();
            let x: Vec<i64> = rows
                .iter()
                .map(|r| {
                    let dot: i128 = r.iter().map(|&(c, a)| a as i128 * v[c]).sum();
                    debug_assert_eq!(dot % d, 0);
                    i64::try_from(dot / d).map_err(|_| LinalgError::Overflow)
                })
                .collect::<Result<_, _>>()?;
            orders.push(i64::try_from(d.abs()).map_err(|_| LinalgError::Overflow)?);
            reps.push(x);
        }
        Ok(LatticeClasses { degree: j, orders, representatives: reps })
    }

    /// Column lattice of `d^{j-1}`, for membership tests in `B^j`.
    pub fn coboundaries(&self, j: usize) -> Result<ExactEchelon<()>, CohomologyError> {
        let rows = self.coboundary_rows(j - 1);
        let ncols = self.dim(j);
        let mut cols: Vec<Vec<i128>> = vec![vec![0; ncols]; self.dim(j - 1)];
        for (r, row) in rows.iter().enumerate() {
            for &(c, a) in row {
                cols[c][r] += a as i128;
            }
        }
        let mut e = ExactEchelon::<()>::new(ncols);
        for c in cols {
            e.insert(c, ())?;
        }
        Ok(e)
    }

    /// Restrict a `j`-cochain of the ambient complex to this (sub)complex.
    pub fn restrict_from(&self, ambient: &BarComplex<'_>, j: usize, x: &[i64]) -> Vec<i64> {
        let n = self.action.dim;
        let mut out = vec![0; self.dim(j)];
        for k in 0..tuples(self.elems.len(), j) {
            let t = self.decode(k, j);
            let a = ambient.index(&t).expect("subgroup element");
            out[k * n..(k + 1) * n].copy_from_slice(&x[a * n..(a + 1) * n]);
        }
        out
    }

    /// Cohomology `H^j(G; (Z/p^k)^n)` of the reduction of the module.
    pub fn finite_cohomology(&self, j: usize, p: i64, k: u32) -> Result<FinAbGroup, CohomologyError> {
        let m = (p as i128).pow(k);
        let ncols = self.dim(j);
        let rows: Vec<Vec<i128>> =
            self.coboundary_rows(j).iter().map(|r| densify(r, ncols).into_iter().map(|x| x.rem_euclid(m)).collect()).collect();
        let cycles = kernel_mod_prime_power(&rows, ncols, p as i128, k);
        let boundaries: Vec<Vec<i128>> = if j == 0 {
            vec![]
        } else {
            let prev = self.coboundary_rows(j - 1);
            let mut cols = vec![vec![0i128; ncols]; self.dim(j - 1)];
            for (r, row) in prev.iter().enumerate() {
                for &(c, a) in row {
                    cols[c][r] = (cols[c][r] + a as i128).rem_euclid(m);
                }
            }
            cols
        };
        Ok(p_quotient_structure(&cycles, &boundaries, ncols, p as i128, k)?)
    }
}

fn merge(mut row: Vec<(usize, i64)>) -> SparseRow {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, a) in row {
        match out.last_mut() {
            Some((lc, la)) if *lc == c => *la += a,
            _ => out.push((c, a)),
        }
    }
    out.retain(|&(_, a)| a != 0);
    out
}

pub(crate) fn densify(r: &SparseRow, ncols: usize) -> Vec<i128> {
    let mut v = vec![0i128; ncols];
    for &(c, a) in r {
        v[c] += a as i128;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn cyclic(m: &IntMatrix) -> WeylGroup {
        WeylGroup::generate(std::slice::from_ref(m), None, 16).unwrap()
    }

    #[test]
    fn sign_action_of_order_two() {
        let w = cyclic(&IntMatrix::from_rows(&[[-1]]));
        let a = Action::of_group(&w);
        let bar = BarComplex::whole(&w, &a);
        // H^1(Z/2; Z_-) = Z/2, H^2(Z/2; Z_-) = 0, H^3(Z/2; Z_-) = Z/2
        assert_eq!(bar.lattice_cohomology(1).unwrap().orders, vec![2]);
        assert!(bar.lattice_cohomology(2).unwrap().orders.is_empty());
        assert_eq!(bar.lattice_cohomology(3).unwrap().orders, vec![2]);
    }

    #[test]
    fn trivial_action_and_finite_coefficients() {
        let w = cyclic(&IntMatrix::from_rows(&[[1, 0], [0, 1]]).neg());
        let triv = Action { dim: 1, matrices: vec![IntMatrix::identity(1); 2], modulus: None };
        let bar = BarComplex::whole(&w, &triv);
        assert_eq!(bar.lattice_cohomology(2).unwrap().orders, vec![2]);
        assert_eq!(bar.finite_cohomology(2, 2, 1).unwrap().invariant_factors(), &[2]);
        assert_eq!(bar.finite_cohomology(1, 2, 1).unwrap().invariant_factors(), &[2]);
        assert!(bar.finite_cohomology(2, 3, 1).unwrap().is_trivial());
    }

    #[test]
    fn representatives_are_cocycles_but_not_coboundaries() {
        let s1 = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let s2 = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        let w = WeylGroup::generate(&[s1, s2], None, 16).unwrap();
        let a = Action::of_group(&w);
        let bar = BarComplex::whole(&w, &a);
        let cl = bar.lattice_cohomology(2).unwrap();
        let b = bar.coboundaries(2).unwrap();
        let d2 = bar.coboundary_rows(2);
        for (x, &o) in cl.representatives.iter().zip(&cl.orders) {
            assert!(d2.iter().all(|r| r.iter().map(|&(c, v)| v * x[c]).sum::<i64>() == 0));
            let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
            assert!(!b.contains(&xi));
            assert!(b.contains(&xi.iter().map(|v| v * o as i128).collect::<Vec<_>>()));
        }
    }
}
