use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::rat::{RatMatrix, Q};
use crate::linalg::{kernel_basis, IntMatrix};

use super::{DatumError, RootDatum};

/// A lattice isomorphism `φ : L → L'`, with entries in `Z` or `Z_(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: RatMatrix,
    /// Simple reflection `i` of the source goes to simple reflection `perm[i]` of the target.
    pub simple_permutation: Vec<usize>,
}

impl LatticeMap {
    pub fn to_int(&self) -> Option<IntMatrix> {
        self.matrix.to_int()
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.matrix.rows()).map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).to_string()).collect()).collect()
    }
}

impl Serialize for LatticeMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(m) => m.serialize(s),
            None => self.rows().serialize(s),
        }
    }
}

fn ring_unit(d: &RootDatum, x: Q) -> bool {
    !x.is_zero() && d.ring().is_unit(*x.numer()) && d.ring().is_unit(*x.denom())
}

fn rat_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x as i128)).collect()
}

fn central_basis(d: &RootDatum) -> Result<IntMatrix, DatumError> {
    let n = d.rank();
    let roots: Vec<Vec<i64>> = (0..d.reflections().len()).map(|r| d.root(r).to_vec()).collect();
    if roots.is_empty() {
        return Ok(IntMatrix::identity(n));
    }
    Ok(kernel_basis(&IntMatrix::from_rows(&roots))?)
}

/// Candidate automorphisms of the central lattice: entries in `{-1, 0, 1}`
/// with unit determinant.
fn central_candidates(z: usize) -> Vec<IntMatrix> {
    let cells = z * z;
    let mut out = Vec::new();
    let total = 3usize.pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        let mut m = IntMatrix::zeros(z, z);
        for k in 0..cells {
            m.set(k / z, k % z, (c % 3) as i64 - 1);
            c /= 3;
        }
        if m.det().abs() == 1 {
            out.push(m);
        }
    }
    out
}

pub(crate) fn bijections(m: &[Vec<usize>], m2: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let r = m.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn rec(m: &[Vec<usize>], m2: &[Vec<usize>], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == m.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..m.len() {
            if used[t] || (0..i).any(|j| m[i][j] != m2[t][cur[j]]) {
                continue;
            }
            used[t] = true;
            cur.push(t);
            rec(m, m2, cur, used, out);
            cur.pop();
            used[t] = false;
        }
    }
    rec(m, m2, &mut cur, &mut used, &mut out);
    out
}

impl RootDatum {
    /// Search for `φ` with `φ W φ⁻¹ = W'` and `φ(R b_σ) = R b'_{φσφ⁻¹}`.
    ///
    /// Exhaustive over simple-system bijections and `±1` component scalings
    /// for semisimple data. With central directions the central block is
    /// searched over small entries, and a negative answer is an error.
    pub fn is_isomorphic(&self, other: &RootDatum) -> Result<Option<LatticeMap>, DatumError> {
        if self.is_truncated() || other.is_truncated() {
            return Err(DatumError::Unsupported("isomorphism search needs exact data".into()));
        }
        if self.rank() != other.rank()
            || self.ring() != other.ring()
            || self.weyl().order() != other.weyl().order()
            || self.reflections().len() != other.reflections().len()
            || self.semisimple_rank() != other.semisimple_rank()
        {
            return Ok(None);
        }
        let cox = self.coxeter()?;
        let cox2 = other.coxeter()?;
        let simple = &cox.simple_reflections;
        let simple2 = &cox2.simple_reflections;
        let r = simple.len();
        if r != simple2.len() {
            return Ok(None);
        }
        let pairing = |d: &RootDatum, s: &[usize], i: usize, j: usize| Q::from_integer(d.pair(s[i], d.coroot(s[j])));
        let central = central_basis(self)?;
        let central2 = central_basis(other)?;
        let z = central.cols();
        if z != central2.cols() {
            return Ok(None);
        }
        if z > 3 {
            return Err(DatumError::Unsupported(format!("central rank {z} is beyond the bounded search")));
        }
        let source = RatMatrix::from_cols(
            &simple.iter().map(|&s| rat_vec(self.coroot(s))).chain((0..z).map(|k| rat_vec(&central.col(k)))).collect::<Vec<_>>(),
        );
        let source_inv = source.inverse().ok_or_else(|| DatumError::Invalid("coroots and center do not span".into()))?;
        let centrals = if z == 0 { vec![IntMatrix::zeros(0, 0)] } else { central_candidates(z) };
        let comps = coxeter_components(&cox.coxeter_matrix);

        for perm in bijections(&cox.coxeter_matrix, &cox2.coxeter_matrix) {
            // scalars u_i with φ(b_i) = u_i b'_{perm i}
            let mut ratio = vec![Q::zero(); r];
            let mut ok = true;
            for comp in &comps {
                ratio[comp[0]] = Q::one();
                let mut stack = vec![comp[0]];
                let mut seen = vec![comp[0]];
                while let Some(i) = stack.pop() {
                    for &j in comp {
                        let a = pairing(self, simple, i, j);
                        let b = pairing(other, simple2, perm[i], perm[j]);
                        if i == j || a.is_zero() && b.is_zero() {
                            continue;
                        }
                        if a.is_zero() || b.is_zero() {
                            ok = false;
                            continue;
                        }
                        let uj = ratio[i] * a / b;
                        if seen.contains(&j) {
                            ok &= ratio[j] == uj;
                        } else {
                            ratio[j] = uj;
                            seen.push(j);
                            stack.push(j);
                        }
                    }
                }
            }
            if !ok || ratio.iter().any(|&u| !ring_unit(self, u)) {
                continue;
            }
            for signs in 0..(1u64 << comps.len()) {
                let mut u = ratio.clone();
                for (c, comp) in comps.iter().enumerate() {
                    if signs >> c & 1 == 1 {
                        comp.iter().for_each(|&i| u[i] = -u[i]);
                    }
                }
                for cm in &centrals {
                    let target_central = central2.mul(cm);
                    let target = RatMatrix::from_cols(
                        &(0..r)
                            .map(|i| rat_vec(other.coroot(simple2[perm[i]])).into_iter().map(|x| x * u[i]).collect())
                            .chain((0..z).map(|k| rat_vec(&target_central.col(k))))
                            .collect::<Vec<_>>(),
                    );
                    let phi = target.mul(&source_inv);
                    if let Some(map) = self.check_isomorphism(other, &phi, &perm)? {
                        return Ok(Some(map));
                    }
                }
            }
        }
        if z >= 2 || (z == 1 && self.ring() != super::BaseRing::Integers) {
            return Err(DatumError::Unsupported("no isomorphism found; the search over central automorphisms is bounded".into()));
        }
        Ok(None)
    }

    /// Verify a candidate `φ` (columns: images of the basis of `L`).
    pub fn check_isomorphism(&self, other: &RootDatum, phi: &RatMatrix, perm: &[usize]) -> Result<Option<LatticeMap>, DatumError> {
        let integral = match self.ring().prime() {
            None => phi.to_int().is_some(),
            Some(p) => phi.is_p_integral(p as i128),
        };
        if !integral || !ring_unit(self, phi.det()) {
            return Ok(None);
        }
        let phi_inv = phi.inverse().expect("unit determinant");
        let w = self.weyl();
        let w2 = other.weyl();
        let mut images = Vec::with_capacity(w.generators().len());
        for m in w.generator_matrices() {
            let conj = phi.mul(&RatMatrix::from_int(&m)).mul(&phi_inv);
            let Some(e) = conj.to_int().and_then(|c| w2.index_of(&c)) else {
                return Ok(None);
            };
            images.push(e);
        }
        if w2.subgroup(&images).len() != w2.order() {
            return Ok(None);
        }
        for rf in 0..self.reflections().len() {
            let m = &self.reflections().get(rf).matrix;
            let conj = phi.mul(&RatMatrix::from_int(m)).mul(&phi_inv);
            let Some(r2) = conj.to_int().and_then(|c| w2.index_of(&c)).and_then(|e| other.reflection_of_element(e)) else {
                return Ok(None);
            };
            let img = phi.mul_vec(&rat_vec(self.coroot(rf)));
            let target = rat_vec(other.coroot(r2));
            let Some(k) = target.iter().position(|x| !x.is_zero()) else {
                return Ok(None);
            };
            let lam = img[k] / target[k];
            if !ring_unit(self, lam) || img.iter().zip(&target).any(|(a, b)| *a != lam * b) {
                return Ok(None);
            }
        }
        Ok(Some(LatticeMap { matrix: phi.clone(), simple_permutation: perm.to_vec() }))
    }
}

fn coxeter_components(m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let r = m.len();
    let mut comp = vec![usize::MAX; r];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..r {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        comp[s] = c;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for b in 0..r {
                if comp[b] == usize::MAX && m[a][b] != 2 {
                    comp[b] = c;
                    members.push(b);
                }
            }
            i += 1;
        }
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, BaseRing};

    #[test]
    fn small_isomorphisms() {
        let su2 = catalog::su(2).unwrap();
        let so3 = catalog::so(3).unwrap();
        assert!(su2.is_isomorphic(&su2).unwrap().is_some());
        assert!(su2.is_isomorphic(&so3).unwrap().is_none());
        let spin5 = catalog::spin(5).unwrap();
        let sp2 = catalog::sp(2).unwrap();
        assert!(spin5.is_isomorphic(&sp2).unwrap().is_some());
        assert!(spin5.is_isomorphic(&catalog::so(5).unwrap()).unwrap().is_none());
    }

    #[test]
    fn central_directions() {
        let a = catalog::product(&catalog::so(3).unwrap(), &catalog::torus(1)).unwrap();
        let b = catalog::product(&catalog::torus(1), &catalog::so(3).unwrap()).unwrap();
        assert!(a.is_isomorphic(&b).unwrap().is_some());
        let odd = a.base_change(BaseRing::Padic(3)).unwrap();
        assert!(odd.is_isomorphic(&odd).unwrap().is_some());
    }
}
