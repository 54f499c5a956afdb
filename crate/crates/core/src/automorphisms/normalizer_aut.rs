use std::cell::RefCell;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::ext::{solve_torus_coboundary, CoboundaryTree, DerivationCoefficients, ExtElement, NormalizerExtension, RootSubgroup};
use crate::linalg::rat::RatMatrix;
use crate::linalg::solve::solve_qz_rows;
use crate::linalg::{kernel_basis, IntMatrix, Qz, RationalModZVector};

use super::{AutError, DatumAutomorphism};

/// `(t, w) ↦ (φ t + μ(w), φ w φ⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerAutomorphism {
    pub phi: DatumAutomorphism,
    /// `μ(w)`, the torus part of the image of `(0, w)`.
    pub mu: Vec<RationalModZVector>,
    generators: Vec<usize>,
}

#[derive(Serialize)]
struct Lift<'a> {
    gen: usize,
    t: &'a RationalModZVector,
}

impl Serialize for NormalizerAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let lifts: Vec<Lift<'_>> = self.generators.iter().enumerate().map(|(i, &g)| Lift { gen: i, t: &self.mu[g] }).collect();
        let mut st = s.serialize_struct("NormalizerAutomorphism", 2)?;
        st.serialize_field("phi", &self.phi)?;
        st.serialize_field("lifts", &lifts)?;
        st.end()
    }
}

impl NormalizerAutomorphism {
    fn build(n: &NormalizerExtension, phi: DatumAutomorphism, mu: Vec<RationalModZVector>) -> Self {
        NormalizerAutomorphism { phi, mu, generators: n.datum().weyl().generators().to_vec() }
    }

    pub fn identity(n: &NormalizerExtension) -> Self {
        let d = n.datum();
        Self::build(n, DatumAutomorphism::identity(d), vec![RationalModZVector::zero(d.rank()); d.weyl().order()])
    }

    /// Conjugation by `x`.
    pub fn inner(n: &NormalizerExtension, x: &ExtElement) -> Self {
        let d = n.datum();
        let xi = n.inv(x);
        let mu = (0..d.weyl().order())
            .map(|w| {
                let e = ExtElement { t: RationalModZVector::zero(d.rank()), w };
                n.mul(&n.mul(x, &e), &xi).t
            })
            .collect();
        Self::build(n, DatumAutomorphism::from_weyl(d, x.w), mu)
    }

    pub fn apply(&self, x: &ExtElement) -> ExtElement {
        ExtElement { t: self.phi.apply(&x.t).add(&self.mu[x.w]), w: self.phi.weyl_map[x.w] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NormalizerAutomorphism) -> NormalizerAutomorphism {
        let mu = (0..self.mu.len()).map(|w| self.phi.apply(&other.mu[w]).add(&self.mu[other.phi.weyl_map[w]])).collect();
        NormalizerAutomorphism { phi: self.phi.compose(&other.phi), mu, generators: self.generators.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.phi.is_identity() && self.mu.iter().all(RationalModZVector::is_zero)
    }

    /// Images of the generators `(0, s_i)`.
    pub fn generator_images(&self) -> Vec<ExtElement> {
        self.generators.iter().map(|&g| ExtElement { t: self.mu[g].clone(), w: self.phi.weyl_map[g] }).collect()
    }

    /// Homomorphism check on all products `(0, g)(0, s)` with `s` a generator.
    pub fn is_homomorphism(&self, n: &NormalizerExtension) -> bool {
        let d = n.datum();
        let zero = RationalModZVector::zero(d.rank());
        let lift = |w: usize| ExtElement { t: zero.clone(), w };
        (0..d.weyl().order()).all(|g| {
            self.generators.iter().all(|&s| {
                let lhs = self.apply(&n.mul(&lift(g), &lift(s)));
                lhs == n.mul(&self.apply(&lift(g)), &self.apply(&lift(s)))
            })
        })
    }
}

fn derivation_table(n: &NormalizerExtension, values: &[RationalModZVector]) -> Vec<RationalModZVector> {
    let w = n.datum().weyl();
    let coeffs = DerivationCoefficients::new(w, w.generators(), n.action());
    let flat = RationalModZVector(values.iter().flat_map(|v| v.0.iter().copied()).collect());
    (0..w.order()).map(|e| coeffs.evaluate(e, &flat, n.modulus())).collect()
}

/// `φ_f(x) = f(x̄) x` for a derivation `f`, given on the generators of `W`.
pub fn derivation_automorphism(n: &NormalizerExtension, values: &[RationalModZVector]) -> Result<NormalizerAutomorphism, AutError> {
    let d = n.datum();
    if values.len() != d.weyl().generators().len() {
        return Err(AutError::Invalid("one value per generator is required".into()));
    }
    let psi = NormalizerAutomorphism::build(n, DatumAutomorphism::identity(d), derivation_table(n, values));
    if !psi.is_homomorphism(n) {
        return Err(AutError::Invalid("values violate a relation of W".into()));
    }
    Ok(psi)
}

/// `t` with `(1 - s) t = f(s)` on the generators.
pub(crate) fn principal_solution(
    n: &NormalizerExtension,
    f: &dyn Fn(usize) -> RationalModZVector,
) -> Result<Option<RationalModZVector>, AutError> {
    let d = n.datum();
    let k = d.rank();
    let mut rows = Vec::new();
    for (pos, &g) in d.weyl().generators().iter().enumerate() {
        let om = d.weyl().matrix(g).one_minus();
        let v = f(pos);
        for i in 0..k {
            rows.push((om.row(i).iter().map(|&x| x as i128).collect::<Vec<_>>(), v.0[i]));
        }
    }
    if let Some(m) = d.modulus() {
        for j in 0..k {
            let mut r = vec![0i128; k];
            r[j] = m as i128;
            rows.push((r, Qz::ZERO));
        }
    }
    Ok(solve_qz_rows(k, rows)?.map(|s| d.ring().torsion_point(&s.x)))
}

/// A conjugating element `x` with `ψ = c_x`, unique modulo `Z(ν̆(D)) = T̆^W`.
pub fn is_inner(n: &NormalizerExtension, psi: &NormalizerAutomorphism) -> Result<Option<ExtElement>, AutError> {
    let d = n.datum();
    let Some(v) = psi.phi.weyl_element(d) else { return Ok(None) };
    let lift = ExtElement { t: RationalModZVector::zero(d.rank()), w: v };
    let rest = NormalizerAutomorphism::inner(n, &n.inv(&lift)).compose(psi);
    if rest.phi.weyl_map.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(AutError::Inconsistent("residual automorphism moves W".into()));
    }
    let gens = d.weyl().generators().to_vec();
    let Some(t) = principal_solution(n, &|pos| rest.mu[gens[pos]].clone())? else { return Ok(None) };
    let x = n.mul(&lift, &n.torus(t));
    if NormalizerAutomorphism::inner(n, &x) != *psi {
        return Err(AutError::Inconsistent("recovered conjugator does not reproduce the automorphism".into()));
    }
    Ok(Some(x))
}

/// `ψ(ν̆(D)_σ) = ν̆(D)_{φσφ⁻¹}` for every reflection.
pub fn preserves_root_subgroups(n: &NormalizerExtension, psi: &NormalizerAutomorphism, roots: &[RootSubgroup]) -> Result<bool, AutError> {
    for (r, rs) in roots.iter().enumerate() {
        let target = &roots[psi.phi.reflection_map[r]];
        if !target.contains(n, &psi.apply(&rs.x))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Functionals cutting out `line ⊗ Q/Z`.
pub(crate) fn line_annihilator(line: &[i64]) -> Result<IntMatrix, AutError> {
    Ok(kernel_basis(&IntMatrix::from_rows(&[line.to_vec()]))?)
}

/// Rows `λ · μ(e) ≡ λ · (target - c_e)` for `λ` cutting out the line.
pub(crate) fn line_rows(
    tree: &CoboundaryTree,
    e: usize,
    line: &[i64],
    target: &RationalModZVector,
) -> Result<Vec<(Vec<i128>, Qz)>, AutError> {
    let ann = line_annihilator(line)?;
    let a = &tree.coeffs.coeffs[e];
    let shifted = target.sub(&tree.constants[e]);
    let mut rows = Vec::new();
    for j in 0..ann.cols() {
        let lam = ann.col(j);
        let row = (0..a.cols()).map(|c| (0..a.rows()).map(|i| lam[i] as i128 * a.get(i, c) as i128).sum()).collect();
        rows.push((row, shifted.pair(&lam)));
    }
    Ok(rows)
}

pub(crate) fn solve_lift(
    n: &NormalizerExtension,
    phi: &DatumAutomorphism,
    gens: &[usize],
    extra: &dyn Fn(&CoboundaryTree) -> Result<Vec<(Vec<i128>, Qz)>, AutError>,
) -> Result<Option<NormalizerAutomorphism>, AutError> {
    let d = n.datum();
    let w = d.weyl();
    let mut alpha_inv = vec![0; w.order()];
    for (x, &y) in phi.weyl_map.iter().enumerate() {
        alpha_inv[y] = x;
    }
    let dd = |x: usize, y: usize| phi.apply(&n.cocycle(alpha_inv[x], alpha_inv[y])).sub(&n.cocycle(x, y));
    let failure = RefCell::new(None);
    let wrapped = |tree: &CoboundaryTree| match extra(tree) {
        Ok(r) => r,
        Err(e) => {
            *failure.borrow_mut() = Some(e);
            vec![]
        }
    };
    let solved = solve_torus_coboundary(w, gens, n.action(), &dd, &wrapped)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let Some((tree, sol)) = solved else { return Ok(None) };
    let twisted: Vec<RationalModZVector> = (0..w.order()).map(|y| d.ring().torsion_point(&tree.value(y, &sol.x))).collect();
    let mu = (0..w.order()).map(|x| twisted[phi.weyl_map[x]].clone()).collect();
    let psi = NormalizerAutomorphism::build(n, phi.clone(), mu);
    if !psi.is_homomorphism(n) {
        return Err(AutError::Inconsistent("lift fails the homomorphism check".into()));
    }
    Ok(Some(psi))
}

fn exact_only(n: &NormalizerExtension) -> Result<(), AutError> {
    if n.datum().is_truncated() {
        return Err(AutError::NotApplicable("lifting needs exact data".into()));
    }
    Ok(())
}

/// Some `ψ ∈ Aut(ν̆(D))` over `φ`, with no condition on root subgroups.
pub fn lift_unconstrained(n: &NormalizerExtension, phi: &DatumAutomorphism) -> Result<NormalizerAutomorphism, AutError> {
    if let Some(v) = phi.weyl_element(n.datum()) {
        return Ok(NormalizerAutomorphism::inner(n, &ExtElement { t: RationalModZVector::zero(n.rank()), w: v }));
    }
    exact_only(n)?;
    solve_lift(n, phi, n.datum().weyl().generators(), &|_| Ok(vec![]))?
        .ok_or_else(|| AutError::Inconsistent("φ does not fix the extension class".into()))
}

/// `ψ ∈ Aut(ν̆(D), {ν̆(D)_σ})` over `φ`.
pub fn lift_to_normalizer(
    n: &NormalizerExtension,
    phi: &DatumAutomorphism,
    roots: &[RootSubgroup],
) -> Result<NormalizerAutomorphism, AutError> {
    let d = n.datum();
    if let Some(v) = phi.weyl_element(d) {
        return Ok(NormalizerAutomorphism::inner(n, &ExtElement { t: RationalModZVector::zero(n.rank()), w: v }));
    }
    exact_only(n)?;
    let reps: Vec<usize> = d.reflections().classes.iter().map(|c| c[0]).collect();
    let extra = |tree: &CoboundaryTree| -> Result<Vec<(Vec<i128>, Qz)>, AutError> {
        let mut rows = Vec::new();
        for &r in &reps {
            let r2 = phi.reflection_map[r];
            let e2 = d.reflections().get(r2).element;
            let target = roots[r2].x.t.sub(&phi.apply(&roots[r].x.t));
            rows.extend(line_rows(tree, e2, &roots[r2].line, &target)?);
        }
        Ok(rows)
    };
    let psi = solve_lift(n, phi, d.weyl().generators(), &extra)?
        .ok_or_else(|| AutError::Inconsistent("no lift preserves the root subgroups".into()))?;
    if !preserves_root_subgroups(n, &psi, roots)? {
        return Err(AutError::Inconsistent("class representatives do not propagate".into()));
    }
    Ok(psi)
}

/// Whether `φ ∈ N_{GL(L)}(W)` carries the class of `a` to the class of `b`
/// (both on the same lattice with the same Weyl group).
pub fn transports_extension(a: &NormalizerExtension, b: &NormalizerExtension, phi: &IntMatrix) -> Result<bool, AutError> {
    let (da, db) = (a.datum(), b.datum());
    if da.is_truncated() || db.is_truncated() || da.rank() != db.rank() || da.weyl().order() != db.weyl().order() {
        return Err(AutError::NotApplicable("transport needs exact data on a common lattice".into()));
    }
    let Some(inv) = RatMatrix::from_int(phi).inverse().and_then(|m| m.to_int()) else {
        return Err(AutError::Invalid("φ is not unimodular".into()));
    };
    let wa = da.weyl();
    let wb = db.weyl();
    let mut alpha = Vec::with_capacity(wa.order());
    for m in wa.elements() {
        match wb.index_of(&phi.mul(m).mul(&inv)) {
            Some(e) => alpha.push(e),
            None => return Ok(false),
        }
    }
    let mut alpha_inv = vec![0; wb.order()];
    for (x, &y) in alpha.iter().enumerate() {
        alpha_inv[y] = x;
    }
    let dd = |x: usize, y: usize| a.cocycle(alpha_inv[x], alpha_inv[y]).apply(phi, None).sub(&b.cocycle(x, y));
    Ok(solve_torus_coboundary(wb, wb.generators(), b.action(), &dd, &|_| vec![])?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::out_datum;
    use crate::datum::{catalog, BaseRing, RootDatum};
    use crate::ext::root_subgroups;

    fn setup(d: &RootDatum) -> (NormalizerExtension, Vec<RootSubgroup>) {
        let n = NormalizerExtension::new(d).unwrap();
        let r = root_subgroups(&n).unwrap();
        (n, r)
    }

    #[test]
    fn inner_automorphisms() {
        let d = catalog::spin(5).unwrap();
        let (n, roots) = setup(&d);
        let x = ExtElement { t: RationalModZVector::parse(&["1/3", "1/4"]).unwrap(), w: 3 };
        let psi = NormalizerAutomorphism::inner(&n, &x);
        assert!(psi.is_homomorphism(&n));
        assert!(preserves_root_subgroups(&n, &psi, &roots).unwrap());
        let y = is_inner(&n, &psi).unwrap().expect("inner");
        assert_eq!(NormalizerAutomorphism::inner(&n, &y), psi);
        assert!(NormalizerAutomorphism::identity(&n).is_identity());
    }

    #[test]
    fn derivation_automorphisms() {
        let d = catalog::su(3).unwrap();
        let (n, _) = setup(&d);
        let k = d.weyl().generators().len();
        let zero = vec![RationalModZVector::zero(2); k];
        assert!(derivation_automorphism(&n, &zero).unwrap().is_identity());
        // principal derivation f(w) = (1 - w) t is conjugation by t
        let t = RationalModZVector::parse(&["1/5", "2/7"]).unwrap();
        let vals: Vec<RationalModZVector> = d.weyl().generators().iter().map(|&g| t.sub(&t.apply(d.weyl().matrix(g), None))).collect();
        let psi = derivation_automorphism(&n, &vals).unwrap();
        assert_eq!(psi, NormalizerAutomorphism::inner(&n, &n.torus(t)));
        let bad = vec![RationalModZVector::parse(&["1/2", "0"]).unwrap(); k];
        assert!(derivation_automorphism(&n, &bad).is_err() || k == 0);
    }

    #[test]
    fn lifts_of_weyl_elements_and_the_flip() {
        let d = catalog::su(3).unwrap().base_change(BaseRing::Padic(2)).unwrap();
        let (n, roots) = setup(&d);
        for e in 0..d.weyl().order() {
            let psi = lift_to_normalizer(&n, &DatumAutomorphism::from_weyl(&d, e), &roots).unwrap();
            assert!(is_inner(&n, &psi).unwrap().is_some());
        }
        let flip = out_datum(&catalog::su(3).unwrap()).unwrap().elements[1].clone();
        let flip = DatumAutomorphism::new(&d, &flip.matrix).unwrap().unwrap();
        let psi = lift_to_normalizer(&n, &flip, &roots).unwrap();
        assert!(is_inner(&n, &psi).unwrap().is_none());
        assert!(is_inner(&n, &psi.compose(&psi)).unwrap().is_some());
        assert!(lift_unconstrained(&n, &flip).unwrap().is_homomorphism(&n));
    }

    #[test]
    fn extension_class_detects_coroot_lines() {
        let sp2 = catalog::sp(2).unwrap();
        let so5 = catalog::so(5).unwrap();
        let (a, _) = setup(&sp2);
        let (b, _) = setup(&so5);
        let id = IntMatrix::identity(2);
        assert!(transports_extension(&a, &a, &id).unwrap());
        assert!(transports_extension(&b, &b, &id).unwrap());
        assert!(!transports_extension(&a, &b, &id).unwrap());
        for e in 0..sp2.weyl().order() {
            assert!(transports_extension(&a, &a, sp2.weyl().matrix(e)).unwrap());
        }
    }
}
