use serde::Serialize;

use crate::linalg::{elementary_divisors, kernel_basis, subgroup_intersect, FinAbGroup, IntMatrix, RationalModZVector, TorusSubgroup};

use super::{catalog, DatumError, RootDatum};

/// A subgroup of `T̆` summarized as divisible rank plus finite component group,
/// restricted to the part visible over the base ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterStructure {
    pub divisible_rank: usize,
    pub finite: FinAbGroup,
}

impl std::fmt::Display for CenterStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.divisible_rank, self.finite.is_trivial()) {
            (0, _) => write!(f, "{}", self.finite),
            (r, true) => write!(f, "T^{r}"),
            (r, false) => write!(f, "T^{r} x {}", self.finite),
        }
    }
}

/// `T̆^W = Z̆(D) ⊕ V` with `V ≅ (Z/2)^s`.
#[derive(Clone, Debug, Serialize)]
pub struct CenterSplitting {
    pub center: CenterStructure,
    pub fixed_points: CenterStructure,
    pub complement: FinAbGroup,
    /// Direct factors isomorphic to an odd special orthogonal datum.
    pub so_odd_factors: usize,
    /// Whether `s` came from a full decomposition into recognised factors.
    pub attributed: bool,
    pub consistent: bool,
}

impl RootDatum {
    fn exact_only(&self) -> Result<(), DatumError> {
        if self.is_truncated() {
            Err(DatumError::Truncated)
        } else {
            Ok(())
        }
    }

    pub(crate) fn visible(&self, s: &TorusSubgroup) -> CenterStructure {
        CenterStructure { divisible_rank: s.divisible_rank(), finite: self.ring().torsion_part(s.component_group()) }
    }

    pub fn summarize(&self, s: &TorusSubgroup) -> CenterStructure {
        self.visible(s)
    }

    /// `S(σ) = ker(β_σ ⊗ Q/Z)`.
    pub fn singular_set(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        Ok(TorusSubgroup::from_annihilator(&IntMatrix::from_rows(&[self.root(r).to_vec()]))?)
    }

    /// `⟨T̆₀⁺(σ), h_σ⟩`, the defining description of the singular set.
    pub fn singular_set_from_marking(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        let plus0 = self.torus_plus_identity(r)?;
        let h = self.marking(r);
        let fin: Vec<RationalModZVector> = if h.is_zero() { vec![] } else { vec![h] };
        Ok(TorusSubgroup::from_generators(self.rank(), plus0.divisible_basis(), &fin)?)
    }

    /// Both descriptions of `S(σ)` agree on the visible torsion.
    pub fn singular_set_consistent(&self, r: usize) -> Result<bool, DatumError> {
        let a = self.singular_set(r)?;
        let b = self.singular_set_from_marking(r)?;
        Ok(b.is_subgroup_of(&a) && self.visible(&a) == self.visible(&b))
    }

    /// `T̆⁺(σ) = ker(1 - σ)`.
    pub fn torus_plus(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        Ok(TorusSubgroup::from_annihilator(&self.reflections().get(r).matrix.one_minus())?)
    }

    /// `T̆⁻(σ) = ker(1 + σ)`.
    pub fn torus_minus(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        Ok(TorusSubgroup::from_annihilator(&self.reflections().get(r).matrix.one_plus())?)
    }

    pub fn torus_plus_identity(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        let k = kernel_basis(&self.reflections().get(r).matrix.one_minus())?;
        Ok(TorusSubgroup::from_generators(self.rank(), &k, &[])?)
    }

    /// Identity component `T̆₀⁻(σ)`, the image of `im(1 - σ)`.
    pub fn torus_minus_identity(&self, r: usize) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        let k = kernel_basis(&self.reflections().get(r).matrix.one_plus())?;
        Ok(TorusSubgroup::from_generators(self.rank(), &k, &[])?)
    }

    /// `T̆^W`, cut out by `1 - s` for the generators.
    pub fn fixed_points(&self) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        let n = self.rank();
        let ann = self.weyl().generator_matrices().iter().fold(IntMatrix::zeros(0, n), |acc, g| acc.vstack(&g.one_minus()));
        Ok(TorusSubgroup::from_annihilator(&ann)?)
    }

    /// `Z̆(D) = ⋂_σ S(σ)` as a subgroup of `L ⊗ Q/Z`.
    pub fn discrete_center_subgroup(&self) -> Result<TorusSubgroup, DatumError> {
        self.exact_only()?;
        let mut acc = TorusSubgroup::whole(self.rank());
        for r in 0..self.reflections().len() {
            let s = self.singular_set(r)?;
            // the last elementary divisor bounds the exponent of the finite part
            let stacked = acc.annihilator().vstack(s.annihilator());
            let start = elementary_divisors(&stacked)?.last().copied().unwrap_or(1).max(2);
            acc = subgroup_intersect(&acc, &s, i64::try_from(start).map_err(|_| crate::linalg::LinalgError::Overflow)?, 16)?;
        }
        Ok(acc)
    }

    pub fn discrete_center(&self) -> Result<CenterStructure, DatumError> {
        Ok(self.visible(&self.discrete_center_subgroup()?))
    }

    pub fn center_splitting(&self) -> Result<CenterSplitting, DatumError> {
        let z = self.discrete_center_subgroup()?;
        let fixed = self.fixed_points()?;
        let complement = self.ring().torsion_part(&fixed.quotient_by(&z)?);
        let sees_two = self.ring().prime().is_none_or(|p| p == 2);
        let (so_odd_factors, attributed) = if sees_two {
            let factors = self.decompose()?;
            let mut count = 0;
            for f in &factors.factors {
                if f.rank() >= 1 && f.semisimple_rank() == f.rank() {
                    let so = catalog::so(2 * f.rank() + 1)?.base_change(f.ring())?;
                    if f.is_isomorphic(&so)?.is_some() {
                        count += 1;
                    }
                }
            }
            (count, factors.split)
        } else {
            (0, true)
        };
        let expected = FinAbGroup::from_orders(&vec![2; so_odd_factors]);
        Ok(CenterSplitting {
            center: self.visible(&z),
            fixed_points: self.visible(&fixed),
            consistent: z.is_subgroup_of(&fixed) && (!attributed || complement == expected),
            complement,
            so_odd_factors,
            attributed,
        })
    }
}

impl RootDatum {
    /// Reflections `σ` with `A ⊆ S(σ)`, i.e. `β_σ(a) ∈ Z` for every generator `a`.
    pub fn centralizer_reflections(&self, a: &[RationalModZVector]) -> Vec<usize> {
        let a: Vec<RationalModZVector> = a.iter().map(|t| self.ring().torsion_point(t)).collect();
        (0..self.reflections().len())
            .filter(|&r| {
                a.iter().all(|t| {
                    if let Some(m) = self.modulus() {
                        if m % t.order() != 0 {
                            return false;
                        }
                    }
                    t.pair(self.root(r)).is_zero()
                })
            })
            .collect()
    }

    /// Subdatum on the same lattice generated by the reflections fixing `A` pointwise
    /// in the sense `A ⊆ S(σ)`.
    pub fn centralizer_subdatum(&self, a: &[RationalModZVector]) -> Result<RootDatum, DatumError> {
        if a.iter().any(|t| t.len() != self.rank()) {
            return Err(DatumError::Invalid("torus point has the wrong length".into()));
        }
        let refl = self.centralizer_reflections(a);
        let w = self.weyl();
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = vec![w.identity()];
        for &r in &refl {
            let e = self.reflections().get(r).element;
            if closure.binary_search(&e).is_err() {
                gens.push(e);
                closure = w.subgroup(&gens);
            }
        }
        let coroots = gens
            .iter()
            .enumerate()
            .map(|(i, &e)| super::CorootSpec {
                reflection_index: Some(i),
                reflection_matrix: None,
                coroot: self.coroot(self.reflection_of_element(e).expect("reflection")).to_vec(),
            })
            .collect();
        RootDatum::from_spec(super::DatumSpec {
            name: Some(format!("C({})", self.name())),
            ring: self.ring(),
            rank: self.rank(),
            weyl_generators: gens.iter().map(|&e| w.matrix(e).clone()).collect(),
            coroots,
            precision: self.precision(),
        })
    }

    /// Nonzero points of `T̆[2]` in standard coordinates.
    pub fn two_torsion_points(&self) -> Vec<RationalModZVector> {
        let n = self.rank();
        (1..1u64 << n)
            .map(|mask| {
                let v: Vec<&str> = (0..n).map(|i| if mask >> i & 1 == 1 { "1/2" } else { "0" }).collect();
                RationalModZVector::parse(&v).expect("halves parse")
            })
            .collect()
    }

    /// Indices in `W` of the Weyl group elements of a subdatum on the same lattice.
    pub fn weyl_elements_of(&self, sub: &RootDatum) -> Option<Vec<usize>> {
        sub.weyl().elements().iter().map(|m| self.weyl().index_of(m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, BaseRing};
    use crate::linalg::RationalModZVector;

    #[test]
    fn singular_sets_of_rank_one() {
        let so3 = catalog::so(3).unwrap();
        assert!(so3.singular_set(0).unwrap().component_group().is_trivial());
        assert_eq!(so3.torus_plus(0).unwrap().component_group().invariant_factors(), &[2]);
        let su2 = catalog::su(2).unwrap();
        assert_eq!(su2.singular_set(0).unwrap(), su2.torus_plus(0).unwrap());
        for d in [so3, su2.clone(), su2.base_change(BaseRing::Padic(3)).unwrap()] {
            assert!(d.singular_set_consistent(0).unwrap());
        }
    }

    #[test]
    fn centralizers() {
        let p2 = BaseRing::Padic(2);
        let so5 = catalog::so(5).unwrap().base_change(p2).unwrap();
        let half = |v: &[&str]| RationalModZVector::parse(v).unwrap();
        let c = so5.centralizer_subdatum(&[half(&["1/2", "1/2"])]).unwrap();
        assert!(c.is_isomorphic(&catalog::so(4).unwrap().base_change(p2).unwrap()).unwrap().is_some());
        let c = so5.centralizer_subdatum(&[half(&["1/2", "0"])]).unwrap();
        let target = catalog::product(&catalog::so(3).unwrap(), &catalog::torus(1)).unwrap().base_change(p2).unwrap();
        assert!(c.is_isomorphic(&target).unwrap().is_some());
        assert_eq!(so5.centralizer_subdatum(&[]).unwrap().weyl().order(), 8);
        let di4 = catalog::di4(6).unwrap();
        let c = di4.centralizer_subdatum(&[half(&["1/2", "0", "0"])]).unwrap();
        assert_eq!(di4.weyl().order() / c.weyl().order(), 7);
    }

    #[test]
    fn centers() {
        let su3 = catalog::su(3).unwrap().base_change(BaseRing::Padic(3)).unwrap();
        assert_eq!(su3.discrete_center().unwrap().finite.invariant_factors(), &[3]);
        let so5 = catalog::so(5).unwrap();
        let sp = so5.center_splitting().unwrap();
        assert!(sp.center.finite.is_trivial());
        assert_eq!(sp.complement.invariant_factors(), &[2]);
        assert_eq!(sp.so_odd_factors, 1);
        assert!(sp.consistent);
    }
}
