use num_traits::Signed;
use serde::Serialize;

use crate::datum::RootDatum;
use crate::linalg::rat::{RatMatrix, Q};
use crate::linalg::{IntMatrix, RationalModZVector};

use super::AutError;

/// A lattice automorphism `φ` with `φ W φ⁻¹ = W` and `φ(R b_σ) = R b_{φσφ⁻¹}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumAutomorphism {
    pub matrix: RatMatrix,
    integral: Option<IntMatrix>,
    modulus: Option<i64>,
    /// `w ↦ φ w φ⁻¹` on element indices.
    pub weyl_map: Vec<usize>,
    /// `σ ↦ φ σ φ⁻¹` on reflection indices.
    pub reflection_map: Vec<usize>,
}

impl Serialize for DatumAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.integral {
            Some(m) => m.serialize(s),
            None => (0..self.matrix.rows())
                .map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

fn reflection_map(d: &RootDatum, weyl_map: &[usize]) -> Option<Vec<usize>> {
    let refl = d.reflections();
    (0..refl.len()).map(|r| d.reflection_of_element(weyl_map[refl.get(r).element])).collect()
}

fn weyl_map_by(d: &RootDatum, conj: impl Fn(&IntMatrix) -> Option<IntMatrix>) -> Option<Vec<usize>> {
    let w = d.weyl();
    w.elements().iter().map(|m| conj(m).and_then(|c| w.index_of(&c))).collect()
}

impl DatumAutomorphism {
    pub fn identity(d: &RootDatum) -> Self {
        Self::from_weyl(d, d.weyl().identity())
    }

    /// Conjugation action of `w ∈ W ⊆ Aut(D)`.
    pub fn from_weyl(d: &RootDatum, e: usize) -> Self {
        let w = d.weyl();
        let weyl_map: Vec<usize> = (0..w.order()).map(|x| w.conj(e, x)).collect();
        let reflection_map = reflection_map(d, &weyl_map).expect("W permutes its reflections");
        DatumAutomorphism {
            matrix: RatMatrix::from_int(w.matrix(e)),
            integral: Some(w.matrix(e).clone()),
            modulus: d.modulus(),
            weyl_map,
            reflection_map,
        }
    }

    /// Validate `φ` on an exact datum.
    pub fn new(d: &RootDatum, matrix: &RatMatrix) -> Result<Option<Self>, AutError> {
        if d.is_truncated() {
            return Err(AutError::NotApplicable("membership needs exact data".into()));
        }
        if d.check_isomorphism(d, matrix, &[])?.is_none() {
            return Ok(None);
        }
        let inv = matrix.inverse().expect("checked unit determinant");
        let weyl_map = weyl_map_by(d, |m| matrix.mul(&RatMatrix::from_int(m)).mul(&inv).to_int());
        let Some(weyl_map) = weyl_map else { return Ok(None) };
        let Some(reflection_map) = reflection_map(d, &weyl_map) else { return Ok(None) };
        Ok(Some(DatumAutomorphism { matrix: matrix.clone(), integral: matrix.to_int(), modulus: None, weyl_map, reflection_map }))
    }

    pub fn from_int(d: &RootDatum, m: &IntMatrix) -> Result<Option<Self>, AutError> {
        Self::new(d, &RatMatrix::from_int(m))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RatMatrix::identity(self.matrix.rows())
    }

    pub fn integral(&self) -> Option<&IntMatrix> {
        self.integral.as_ref()
    }

    pub fn apply(&self, t: &RationalModZVector) -> RationalModZVector {
        match &self.integral {
            Some(m) => t.apply(m, self.modulus),
            None => {
                let o = t.order();
                let m = self.matrix.reduce_p_integral(o as i128).expect("p-integral automorphism");
                t.apply(&m, Some(o))
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DatumAutomorphism) -> DatumAutomorphism {
        let integral = match (&self.integral, &other.integral, self.modulus) {
            (Some(a), Some(b), Some(m)) => Some(a.mul_mod(b, m)),
            (Some(a), Some(b), None) => Some(a.mul(b)),
            _ => None,
        };
        let matrix = match (&integral, self.modulus) {
            (Some(m), Some(_)) => RatMatrix::from_int(m),
            _ => self.matrix.mul(&other.matrix),
        };
        DatumAutomorphism {
            matrix,
            integral: integral.or_else(|| self.matrix.mul(&other.matrix).to_int()),
            modulus: self.modulus,
            weyl_map: other.weyl_map.iter().map(|&w| self.weyl_map[w]).collect(),
            reflection_map: other.reflection_map.iter().map(|&r| self.reflection_map[r]).collect(),
        }
    }

    /// The element of `W` with the same matrix, if any.
    pub fn weyl_element(&self, d: &RootDatum) -> Option<usize> {
        let m = match (&self.integral, d.modulus()) {
            (Some(m), Some(md)) => m.reduce_mod(md),
            (Some(m), None) => m.clone(),
            (None, _) => return None,
        };
        let w = d.weyl();
        match d.modulus() {
            Some(md) => w.elements().iter().position(|x| x.reduce_mod(md) == m),
            None => w.index_of(&m),
        }
    }

    /// Ratios `u_i` with `φ(b_i) = u_i b_{π(i)}` on the positive simple
    /// coroot directions, or `None` if the simple set is not preserved.
    fn simple_ratios(&self, d: &RootDatum) -> Option<Vec<Q>> {
        let cox = d.coxeter().ok()?;
        let mut out = Vec::new();
        for &r in &cox.simple_reflections {
            let r2 = self.reflection_map[r];
            if !cox.simple_reflections.contains(&r2) {
                return None;
            }
            let src: Vec<Q> = cox.positive_lines[r].iter().map(|&x| Q::from_integer(x as i128)).collect();
            let img = self.matrix.mul_vec(&src);
            let tgt = &cox.positive_lines[r2];
            let k = tgt.iter().position(|&x| x != 0)?;
            out.push(img[k] / Q::from_integer(tgt[k] as i128));
        }
        Some(out)
    }

    /// Whether `φ` maps the fixed positive simple system to itself.
    pub fn is_based(&self, d: &RootDatum) -> bool {
        self.simple_ratios(d).is_some_and(|u| u.iter().all(|x| x.is_positive()))
    }

    /// The unique `w φ` with `w ∈ W` that is based.
    pub fn based(&self, d: &RootDatum) -> Result<(usize, DatumAutomorphism), AutError> {
        let w = d.weyl();
        for e in 0..w.order() {
            let cand = DatumAutomorphism::from_weyl(d, e).compose(self);
            if cand.is_based(d) {
                return Ok((e, cand));
            }
        }
        Err(AutError::Inconsistent("no element of W makes the automorphism based".into()))
    }

    /// `φ(h_σ) = h_{φσφ⁻¹}` for every reflection.
    pub fn marking_equivariant(&self, d: &RootDatum) -> bool {
        (0..d.reflections().len()).all(|r| self.apply(&d.marking(r)) == d.marking(self.reflection_map[r]))
    }
}

/// `φ ∈ Aut(D)`, with the induced reflection permutation as witness.
pub fn membership(d: &RootDatum, matrix: &RatMatrix) -> Result<Option<Vec<usize>>, AutError> {
    Ok(DatumAutomorphism::new(d, matrix)?.map(|a| a.reflection_map))
}

/// `Out(D) = Aut(D)/W` through based automorphisms with `φ(b_i) = b_{π(i)}`.
#[derive(Clone, Debug, Serialize)]
pub struct OutDatum {
    pub datum: String,
    pub elements: Vec<DatumAutomorphism>,
    pub simple_permutations: Vec<Vec<usize>>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    pub table: Vec<Vec<usize>>,
}

impl OutDatum {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn index_of(&self, a: &DatumAutomorphism) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix == a.matrix)
    }
}

pub fn out_datum(d: &RootDatum) -> Result<OutDatum, AutError> {
    if d.is_truncated() {
        return Err(AutError::NotApplicable("Out(D) needs exact data".into()));
    }
    if !d.is_semisimple() {
        return Err(AutError::NotSemisimple);
    }
    let cox = d.coxeter().map_err(|_| AutError::NotCoxeterType)?;
    let simple = &cox.simple_reflections;
    let col = |r: usize| cox.positive_lines[r].iter().map(|&x| Q::from_integer(x as i128)).collect::<Vec<_>>();
    let n = d.rank();
    let source = RatMatrix::from_cols(&simple.iter().map(|&r| col(r)).collect::<Vec<_>>());
    let source_inv = if n == 0 { RatMatrix::identity(0) } else { source.inverse().ok_or(AutError::NotSemisimple)? };
    let mut elements = Vec::new();
    let mut perms = Vec::new();
    for perm in crate::datum::bijections(&cox.coxeter_matrix, &cox.coxeter_matrix) {
        let target = RatMatrix::from_cols(&perm.iter().map(|&j| col(simple[j])).collect::<Vec<_>>());
        let phi = if n == 0 { RatMatrix::identity(0) } else { target.mul(&source_inv) };
        if let Some(a) = DatumAutomorphism::new(d, &phi)? {
            elements.push(a);
            perms.push(perm);
        }
    }
    let mut table = Vec::new();
    for a in &elements {
        let mut row = Vec::new();
        for b in &elements {
            let c = a.compose(b);
            let k = elements
                .iter()
                .position(|e| e.matrix == c.matrix)
                .ok_or_else(|| AutError::Inconsistent("based automorphisms are not closed".into()))?;
            row.push(k);
        }
        table.push(row);
    }
    debug_assert!(elements.first().is_none_or(|e| e.matrix == RatMatrix::identity(n)));
    Ok(OutDatum { datum: d.name().to_string(), elements, simple_permutations: perms, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{catalog, BaseRing};

    #[test]
    fn membership_examples() {
        let su3 = catalog::su(3).unwrap();
        assert!(membership(&su3, &RatMatrix::identity(2)).unwrap().is_some());
        for e in 0..su3.weyl().order() {
            assert!(membership(&su3, &RatMatrix::from_int(su3.weyl().matrix(e))).unwrap().is_some());
        }
        let minus = RatMatrix::from_int(&IntMatrix::scalar(2, -1));
        assert!(membership(&su3, &minus).unwrap().is_some());
        let shear = RatMatrix::from_int(&IntMatrix::from_rows(&[[1, 1], [0, 1]]));
        assert!(membership(&su3, &shear).unwrap().is_none());
    }

    #[test]
    fn outer_automorphisms() {
        assert!(out_datum(&catalog::f4().unwrap()).unwrap().is_trivial());
        assert!(out_datum(&catalog::su(2).unwrap()).unwrap().is_trivial());
        let su3 = out_datum(&catalog::su(3).unwrap()).unwrap();
        assert_eq!(su3.order(), 2);
        assert_eq!(su3.table, vec![vec![0, 1], vec![1, 0]]);
        let mixed = catalog::product(&catalog::su(2).unwrap(), &catalog::so(3).unwrap()).unwrap();
        assert!(out_datum(&mixed).unwrap().is_trivial());
        let su2sq = catalog::product(&catalog::su(2).unwrap(), &catalog::su(2).unwrap()).unwrap();
        assert_eq!(out_datum(&su2sq).unwrap().order(), 2);
        assert!(matches!(out_datum(&catalog::torus(1)), Err(AutError::NotSemisimple)));
    }

    #[test]
    fn markings_are_equivariant() {
        for d in catalog::full_catalog().unwrap() {
            if d.is_truncated() || !d.is_semisimple() || !d.is_coxeter_type() {
                continue;
            }
            for a in out_datum(&d).unwrap().elements {
                assert!(a.marking_equivariant(&d), "{}", d.name());
            }
        }
        let su2 = catalog::su(2).unwrap().base_change(BaseRing::Padic(2)).unwrap();
        let three = DatumAutomorphism::from_int(&su2, &IntMatrix::scalar(1, 3)).unwrap().unwrap();
        assert!(three.marking_equivariant(&su2) && three.is_based(&su2));
        let minus = DatumAutomorphism::from_int(&su2, &IntMatrix::scalar(1, -1)).unwrap().unwrap();
        assert!(!minus.is_based(&su2));
        assert_eq!(minus.based(&su2).unwrap().1.matrix, RatMatrix::identity(1));
    }
}
