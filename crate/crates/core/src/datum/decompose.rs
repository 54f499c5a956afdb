use crate::linalg::{kernel_basis, solve_z, IntMatrix};

use super::{CorootSpec, DatumError, DatumSpec, RootDatum};

/// Direct-product decomposition `L = ⊕ L_i` compatible with `W` and the coroots.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<RootDatum>,
    /// Columns: a basis of `L_i` in the coordinates of `L`.
    pub embeddings: Vec<IntMatrix>,
    /// Every factor is a single irreducible component or the central torus.
    pub split: bool,
}

fn saturation(span: &IntMatrix) -> Result<IntMatrix, DatumError> {
    let n = span.rows();
    if span.cols() == 0 {
        return Ok(IntMatrix::zeros(n, 0));
    }
    let chars = kernel_basis(&span.transpose())?;
    if chars.cols() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    Ok(kernel_basis(&chars.transpose())?)
}

fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if m == 0 {
        return vec![vec![]];
    }
    cur[0] = 0;
    rec(1, 0, &mut cur, &mut out);
    out
}

impl RootDatum {
    /// Connected components of the graph on reflections joined when they do not commute.
    pub fn reflection_components(&self) -> Vec<Vec<usize>> {
        let refl = self.reflections();
        let w = self.weyl();
        let k = refl.len();
        let mut comp = vec![usize::MAX; k];
        let mut out = Vec::new();
        for start in 0..k {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![start];
            comp[start] = c;
            let mut i = 0;
            while i < members.len() {
                let a = refl.get(members[i]).element;
                for r in 0..k {
                    let b = refl.get(r).element;
                    if comp[r] == usize::MAX && w.mul(a, b) != w.mul(b, a) {
                        comp[r] = c;
                        members.push(r);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Finest splitting of `L` into `W`-stable saturated pieces spanned by
    /// reflection components and the central directions.
    pub fn decompose(&self) -> Result<Decomposition, DatumError> {
        let single = || Decomposition { factors: vec![self.clone()], embeddings: vec![IntMatrix::identity(self.rank())], split: true };
        if self.is_truncated() || self.rank() == 0 {
            return Ok(single());
        }
        let n = self.rank();
        let comps = self.reflection_components();
        let roots: Vec<Vec<i64>> = (0..self.reflections().len()).map(|r| self.root(r).to_vec()).collect();
        let central = if roots.is_empty() { IntMatrix::identity(n) } else { kernel_basis(&IntMatrix::from_rows(&roots))? };
        let mut items: Vec<IntMatrix> =
            comps.iter().map(|c| IntMatrix::from_cols(&c.iter().map(|&r| self.coroot(r).to_vec()).collect::<Vec<_>>())).collect();
        let has_central = central.cols() > 0;
        if has_central {
            items.push(central);
        }
        if items.len() <= 1 {
            return Ok(single());
        }
        let mut parts = if items.len() <= 9 { set_partitions(items.len()) } else { vec![(0..items.len()).collect(), vec![0; items.len()]] };
        parts.sort_by_key(|p| std::cmp::Reverse(p.iter().max().map_or(0, |m| m + 1)));
        for part in parts {
            let nblocks = part.iter().max().map_or(0, |m| m + 1);
            let mut bases = Vec::with_capacity(nblocks);
            for b in 0..nblocks {
                let span = (0..items.len()).filter(|&i| part[i] == b).fold(IntMatrix::zeros(n, 0), |acc, i| acc.hstack(&items[i]));
                bases.push(saturation(&span)?);
            }
            let all = bases.iter().fold(IntMatrix::zeros(n, 0), |acc, b| acc.hstack(b));
            if all.cols() != n || !self.ring().is_unit(all.det()) {
                continue;
            }
            if nblocks == 1 {
                let mut d = single();
                d.split = false;
                return Ok(d);
            }
            let mut factors = Vec::with_capacity(nblocks);
            for (b, basis) in bases.iter().enumerate() {
                let members: Vec<usize> = (0..comps.len()).filter(|&i| part[i] == b).flat_map(|i| comps[i].clone()).collect();
                factors.push(self.restrict_to(basis, &members, &format!("{}[{b}]", self.name()))?);
            }
            return Ok(Decomposition { factors, embeddings: bases, split: nblocks == items.len() });
        }
        unreachable!("the one-block partition always splits")
    }

    /// Datum on the saturated `W`-stable sublattice spanned by `basis`, with
    /// Weyl group generated by the given reflections.
    pub(crate) fn restrict_to(&self, basis: &IntMatrix, reflections: &[usize], name: &str) -> Result<RootDatum, DatumError> {
        let k = basis.cols();
        let coords = |v: &[i64]| -> Result<Vec<i64>, DatumError> {
            solve_z(basis, v)?.map(|s| s.x).ok_or_else(|| DatumError::Invalid("vector outside the sublattice".into()))
        };
        let w = self.weyl();
        let mut gens: Vec<usize> = Vec::new();
        let mut closure: Vec<usize> = vec![w.identity()];
        for &r in reflections {
            let e = self.reflections().get(r).element;
            if closure.binary_search(&e).is_err() {
                gens.push(e);
                closure = w.subgroup(&gens);
            }
        }
        let mut weyl_generators = Vec::new();
        let mut coroots = Vec::new();
        for (i, &e) in gens.iter().enumerate() {
            let m = w.matrix(e);
            let cols = (0..k).map(|j| coords(&m.mul_vec(&basis.col(j)))).collect::<Result<Vec<_>, _>>()?;
            weyl_generators.push(IntMatrix::from_cols(&cols));
            let r = self.reflection_of_element(e).expect("generator is a reflection");
            coroots.push(CorootSpec { reflection_index: Some(i), reflection_matrix: None, coroot: coords(self.coroot(r))? });
        }
        RootDatum::from_spec(DatumSpec { name: Some(name.into()), ring: self.ring(), rank: k, weyl_generators, coroots, precision: None })
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
    }

    #[test]
    fn products_split_and_so4_does_not() {
        let d = catalog::product(&catalog::su(2).unwrap(), &catalog::so(3).unwrap()).unwrap();
        let dec = d.decompose().unwrap();
        assert_eq!(dec.factors.len(), 2);
        assert!(dec.split);
        let so4 = catalog::so(4).unwrap();
        let dec = so4.decompose().unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert!(!dec.split);
        assert_eq!(catalog::su(2).unwrap().decompose().unwrap().factors.len(), 1);
    }
}
