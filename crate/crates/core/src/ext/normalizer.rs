use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::datum::RootDatum;
use crate::linalg::RationalModZVector;

use super::module::{solve_torus_coboundary, Action};
use super::reflection::{CocycleDump, CocycleEntry, ReflectionExtension};
use super::ExtError;

/// An element `(t, w)` of an extension of `W` by an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtElement {
    pub t: RationalModZVector,
    pub w: usize,
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, w{})", self.t, self.w)
    }
}

/// The torus normalizer extension `1 → T̆ → ν̆(D) → W → 1`, pushed forward
/// from the reflection extension along `e_σ ↦ h_σ`.
#[derive(Clone, Debug)]
pub struct NormalizerExtension {
    datum: RootDatum,
    rho: Arc<ReflectionExtension>,
    markings: Vec<RationalModZVector>,
    action: Action,
}

impl NormalizerExtension {
    pub fn new(datum: &RootDatum) -> Result<Self, ExtError> {
        let rho = ReflectionExtension::new(datum.weyl_arc(), Arc::new(datum.reflections().clone()))?;
        Ok(Self::from_reflection_extension(datum, Arc::new(rho)))
    }

    pub fn from_reflection_extension(datum: &RootDatum, rho: Arc<ReflectionExtension>) -> Self {
        let markings = (0..datum.reflections().len()).map(|r| datum.marking(r)).collect();
        NormalizerExtension { datum: datum.clone(), rho, markings, action: Action::of_group(datum.weyl()) }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn reflection_extension(&self) -> &ReflectionExtension {
        &self.rho
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn modulus(&self) -> Option<i64> {
        self.datum.modulus()
    }

    /// Whether every marking vanishes, so the extension is the semidirect product.
    pub fn is_split_by_construction(&self) -> bool {
        self.markings.iter().all(|h| h.is_zero())
    }

    /// `ν(g, h) = Σ_σ c(g, h)_σ h_σ`.
    pub fn cocycle(&self, g: usize, h: usize) -> RationalModZVector {
        let mut acc = RationalModZVector::zero(self.rank());
        if self.is_split_by_construction() {
            return acc;
        }
        for (k, c) in self.rho.value(g, h).into_iter().enumerate() {
            if c != 0 && !self.markings[k].is_zero() {
                acc = acc.add(&self.markings[k].scale(c as i128));
            }
        }
        acc
    }

    pub fn act(&self, w: usize, t: &RationalModZVector) -> RationalModZVector {
        self.action.act_torus(w, t)
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement { t: RationalModZVector::zero(self.rank()), w: self.datum.weyl().identity() }
    }

    pub fn torus(&self, t: RationalModZVector) -> ExtElement {
        ExtElement { t, w: self.datum.weyl().identity() }
    }

    /// `(t, w)(t', w') = (t + w t' + ν(w, w'), w w')`.
    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let t = a.t.add(&self.act(a.w, &b.t)).add(&self.cocycle(a.w, b.w));
        ExtElement { t, w: self.datum.weyl().mul(a.w, b.w) }
    }

    pub fn inv(&self, a: &ExtElement) -> ExtElement {
        let w = self.datum.weyl();
        let wi = w.inv(a.w);
        let t = self.act(wi, &a.t.add(&self.cocycle(a.w, wi))).neg();
        ExtElement { t, w: wi }
    }

    pub fn pow(&self, a: &ExtElement, k: usize) -> ExtElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, a))
    }

    pub fn order(&self, a: &ExtElement) -> usize {
        let id = self.identity();
        let mut x = a.clone();
        let mut n = 1;
        while x != id {
            x = self.mul(&x, a);
            n += 1;
        }
        n
    }

    pub fn cocycle_violation(&self, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        let w = self.datum.weyl();
        triples.into_iter().find(|&(a, b, c)| {
            let lhs = self.act(a, &self.cocycle(b, c));
            !lhs.sub(&self.cocycle(w.mul(a, b), c)).add(&self.cocycle(a, w.mul(b, c))).sub(&self.cocycle(a, b)).is_zero()
        })
    }

    /// Whether `ν` is a coboundary, i.e. the extension splits.
    pub fn splits(&self) -> Result<bool, ExtError> {
        let w = self.datum.weyl();
        let d = |g: usize, h: usize| self.cocycle(g, h);
        Ok(solve_torus_coboundary(w, w.generators(), &self.action, &d, &|_| vec![])?.is_some())
    }

    /// Smallest order of a lift of the reflection `r` to the extension.
    pub fn minimal_lift_order(&self, r: usize) -> Result<i64, ExtError> {
        super::roots::minimal_lift_order(self, r)
    }

    pub fn dump(&self) -> CocycleDump<RationalModZVector> {
        let n = self.datum.weyl().order();
        let mut entries = Vec::new();
        for g in 0..n {
            for h in 0..n {
                let v = self.cocycle(g, h);
                if !v.is_zero() {
                    entries.push(CocycleEntry { g, h, value: v });
                }
            }
        }
        CocycleDump { module: format!("2-torsion of the discrete torus of {}", self.datum.name()), group_order: n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;
    use crate::datum::BaseRing;
    use crate::ext::reflection::test_triples;

    #[test]
    fn weyl_lift_orders_distinguish_su2_and_so3() {
        let su2 = NormalizerExtension::new(&catalog::su(2).unwrap()).unwrap();
        let so3 = NormalizerExtension::new(&catalog::so(3).unwrap()).unwrap();
        let s = 1;
        let q = ExtElement { t: RationalModZVector::zero(1), w: s };
        assert_eq!(su2.mul(&q, &q).t, RationalModZVector::from_ints(&[1], 2));
        assert_eq!(su2.order(&q), 4);
        assert_eq!(so3.order(&q), 2);
        assert_eq!(su2.minimal_lift_order(0).unwrap(), 4);
        assert_eq!(so3.minimal_lift_order(0).unwrap(), 2);
        assert!(!su2.splits().unwrap());
        assert!(so3.splits().unwrap());
        // no (t, σ) squares to the identity: (1 + σ) t = 0 for σ = -1
        for k in 0..8 {
            let x = ExtElement { t: RationalModZVector::from_ints(&[k], 8), w: s };
            assert_ne!(su2.mul(&x, &x), su2.identity());
        }
    }

    #[test]
    fn arithmetic_is_associative() {
        let n = NormalizerExtension::new(&catalog::spin(5).unwrap()).unwrap();
        let order = n.datum().weyl().order();
        assert!(n.cocycle_violation(test_triples(order, 0, 3)).is_none());
        let t = |a: i64, b: i64| RationalModZVector::from_ints(&[a, b], 4);
        let xs: Vec<ExtElement> = (0..order).map(|w| ExtElement { t: t(w as i64 % 3, 1), w }).collect();
        for a in &xs {
            assert_eq!(n.mul(a, &n.inv(a)), n.identity());
            for b in xs.iter().step_by(3) {
                for c in xs.iter().step_by(5) {
                    assert_eq!(n.mul(&n.mul(a, b), c), n.mul(a, &n.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn odd_primes_give_the_semidirect_product() {
        let d = catalog::su(2).unwrap().base_change(BaseRing::Padic(3)).unwrap();
        let n = NormalizerExtension::new(&d).unwrap();
        assert!(n.is_split_by_construction());
        assert!(n.cocycle(1, 1).is_zero());
    }
}
