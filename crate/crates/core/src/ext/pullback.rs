use std::sync::Arc;

use serde::Serialize;

use crate::datum::{catalog, RootDatum};
use crate::groups::{ReflectionSet, WeylGroup};
use crate::linalg::IntMatrix;

use super::module::{solve_lattice_coboundary, Action};
use super::reflection::{reflection_line, ReflectionExtension};
use super::ExtError;

/// A reflection subgroup `W₁ ≤ W` with its own reflection extension.
pub struct ReflectionSubgroup {
    pub rho: ReflectionExtension,
    /// Element index in `W` of each element of `W₁`.
    pub elements: Vec<usize>,
    /// Reflection index in `W` of each reflection of `W₁`.
    pub reflections: Vec<usize>,
}

impl ReflectionSubgroup {
    pub fn generated_by(big: &ReflectionExtension, gens: &[usize]) -> Result<Self, ExtError> {
        let w = big.weyl();
        let mut mats: Vec<IntMatrix> = gens.iter().map(|&g| w.matrix(g).clone()).collect();
        if mats.is_empty() {
            mats.push(w.matrix(w.identity()).clone());
        }
        let sub = WeylGroup::generate(&mats, w.modulus(), w.order())?;
        let refl = ReflectionSet::find(&sub);
        let elements: Vec<usize> = (0..sub.order()).map(|i| w.index_of(sub.matrix(i)).expect("subgroup element")).collect();
        let reflections =
            refl.reflections.iter().map(|r| big.reflections().index_of_element(elements[r.element]).expect("reflection of W")).collect();
        let rho = ReflectionExtension::new(Arc::new(sub), Arc::new(refl))?;
        Ok(ReflectionSubgroup { rho, elements, reflections })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub ambient: String,
    pub subgroup_order: usize,
    pub subgroup_reflections: usize,
    /// The `Σ₁`-coordinates of the restricted cocycle are cohomologous to `ρ(W₁)`.
    pub restricted_matches: bool,
    /// The remaining coordinates form a split extension.
    pub complement_splits: bool,
    /// Every `w ∈ W₁` commuting with a reflection `τ ∉ Σ₁` fixes the `(-1)`-eigenline of `τ`,
    /// which is when the remaining coordinates are expected to split.
    pub complement_predicted: bool,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.restricted_matches && self.complement_splits == self.complement_predicted
    }
}

fn stabilizers_fix_lines(big: &ReflectionExtension, sub: &ReflectionSubgroup, rest: &[usize]) -> bool {
    let w = big.weyl();
    let refl = big.reflections();
    rest.iter().all(|&tau| {
        let t = refl.get(tau).element;
        let (line, prec) = reflection_line(w, refl, tau);
        sub.elements.iter().filter(|&&g| w.mul(g, t) == w.mul(t, g)).all(|&g| {
            let v = w.act(g, &line);
            match prec {
                Some(m) => v.iter().zip(&line).all(|(a, b)| (a - b).rem_euclid(m) == 0),
                None => v == line,
            }
        })
    })
}

fn coordinate_action(big: &ReflectionExtension, sub: &ReflectionSubgroup, coords: &[usize]) -> Action {
    let pos = |r: usize| coords.iter().position(|&c| c == r).expect("invariant coordinate set");
    let matrices = sub
        .elements
        .iter()
        .map(|&g| {
            let mut m = IntMatrix::zeros(coords.len(), coords.len());
            for (j, &c) in coords.iter().enumerate() {
                m.set(pos(big.reflections().conj(g, c)), j, 1);
            }
            m
        })
        .collect();
    Action { dim: coords.len(), matrices, modulus: None }
}

pub fn pullback(name: &str, big: &ReflectionExtension, gens: &[usize]) -> Result<PullbackReport, ExtError> {
    let sub = ReflectionSubgroup::generated_by(big, gens)?;
    let w1 = sub.rho.weyl();
    let rest: Vec<usize> = (0..big.rank()).filter(|r| !sub.reflections.contains(r)).collect();
    let restricted = |g: usize, h: usize| big.value(sub.elements[g], sub.elements[h]);
    let inside = coordinate_action(big, &sub, &sub.reflections);
    let d1 = |g: usize, h: usize| -> Vec<i64> {
        let full = restricted(g, h);
        let mine = sub.rho.value(g, h);
        sub.reflections.iter().zip(mine).map(|(&c, m)| full[c] - m).collect()
    };
    let restricted_matches = solve_lattice_coboundary(w1, w1.generators(), &inside, &d1)?.is_some();
    let complement_splits = if rest.is_empty() {
        true
    } else {
        let outside = coordinate_action(big, &sub, &rest);
        let d2 = |g: usize, h: usize| -> Vec<i64> {
            let full = restricted(g, h);
            rest.iter().map(|&c| full[c]).collect()
        };
        solve_lattice_coboundary(w1, w1.generators(), &outside, &d2)?.is_some()
    };
    Ok(PullbackReport {
        ambient: name.to_string(),
        subgroup_order: w1.order(),
        subgroup_reflections: sub.reflections.len(),
        restricted_matches,
        complement_splits,
        complement_predicted: stabilizers_fix_lines(big, &sub, &rest),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub factors: [String; 2],
    pub factor_pullbacks: Vec<PullbackReport>,
    /// `ρ(W₁ × W₂)` is cohomologous to `ρ(W₁) ⊕ ρ(W₂)`.
    pub splits_as_product: bool,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.splits_as_product && self.factor_pullbacks.iter().all(|r| r.passed())
    }
}

fn block_generators(big: &ReflectionExtension, lo: usize, hi: usize) -> Vec<usize> {
    big.reflections()
        .reflections
        .iter()
        .filter(|r| {
            let om = r.matrix.one_minus();
            (0..om.rows()).all(|i| (0..om.cols()).all(|j| om.get(i, j) == 0 || ((lo..hi).contains(&i) && (lo..hi).contains(&j))))
        })
        .map(|r| r.element)
        .collect()
}

fn block_part(m: &IntMatrix, lo: usize, hi: usize) -> IntMatrix {
    let mut out = IntMatrix::identity(m.rows());
    for i in lo..hi {
        for j in lo..hi {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

pub fn product(a: &RootDatum, b: &RootDatum) -> Result<ProductReport, ExtError> {
    let d = catalog::product(a, b)?;
    let big = ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone()))?;
    let n1 = a.rank();
    let n = d.rank();
    let g1 = block_generators(&big, 0, n1);
    let g2 = block_generators(&big, n1, n);
    let s1 = ReflectionSubgroup::generated_by(&big, &g1)?;
    let s2 = ReflectionSubgroup::generated_by(&big, &g2)?;
    let w = big.weyl();
    let split = |g: usize| {
        let m = w.matrix(g);
        let x = s1.rho.weyl().index_of(&block_part(m, 0, n1)).expect("first factor");
        let y = s2.rho.weyl().index_of(&block_part(m, n1, n)).expect("second factor");
        (x, y)
    };
    let diff = |g: usize, h: usize| -> Vec<i64> {
        let mut v = big.value(g, h);
        let (g1, g2) = split(g);
        let (h1, h2) = split(h);
        for (c, x) in s1.reflections.iter().zip(s1.rho.value(g1, h1)) {
            v[*c] -= x;
        }
        for (c, x) in s2.reflections.iter().zip(s2.rho.value(g2, h2)) {
            v[*c] -= x;
        }
        v
    };
    let splits_as_product = solve_lattice_coboundary(w, w.generators(), &big.action(), &diff)?.is_some();
    Ok(ProductReport {
        factors: [a.name().to_string(), b.name().to_string()],
        factor_pullbacks: vec![pullback(d.name(), &big, &g1)?, pullback(d.name(), &big, &g2)?],
        splits_as_product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(d: &RootDatum) -> ReflectionExtension {
        ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone())).unwrap()
    }

    #[test]
    fn a1_in_b2_and_b2_in_b3() {
        let b2 = catalog::so(5).unwrap();
        let e = ext(&b2);
        let short = e.reflections().reflections.iter().find(|r| r.class == 0).unwrap().element;
        assert!(pullback("SO(5)", &e, &[short]).unwrap().passed());
        let b3 = catalog::so(7).unwrap();
        let e = ext(&b3);
        // the reflections fixing the last coordinate generate a B2
        let gens: Vec<usize> = e
            .reflections()
            .reflections
            .iter()
            .filter(|r| {
                r.matrix.get(0, 0) == 1
                    && r.matrix.row(0).iter().filter(|&&x| x != 0).count() == 1
                    && r.matrix.col(0).iter().filter(|&&x| x != 0).count() == 1
            })
            .map(|r| r.element)
            .collect();
        let rep = pullback("SO(7)", &e, &gens).unwrap();
        assert_eq!(rep.subgroup_order, 8);
        assert!(rep.passed());
    }

    #[test]
    fn sign_changes_in_b2_do_not_split_off() {
        // W₁ = {±1, diag(±1)} contains -1, which negates the lines of both swaps
        let b2 = catalog::spin(5).unwrap();
        let e = ext(&b2);
        let signs: Vec<usize> = e.reflections().reflections.iter().filter(|r| r.matrix.get(0, 1) == 0).map(|r| r.element).collect();
        let rep = pullback("Spin(5)", &e, &signs).unwrap();
        assert_eq!(rep.subgroup_order, 4);
        assert!(rep.restricted_matches);
        assert!(!rep.complement_splits);
        assert!(!rep.complement_predicted);
        assert!(rep.passed());
    }

    #[test]
    fn products_split() {
        let r = product(&catalog::su(2).unwrap(), &catalog::su(2).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = product(&catalog::su(3).unwrap(), &catalog::so(3).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
