use serde::Serialize;

use crate::groups::CoxeterSystem;
use crate::linalg::RationalModZVector;

use super::module::solve_torus_coboundary;
use super::normalizer::{ExtElement, NormalizerExtension};
use super::roots::root_subgroup;
use super::ExtError;

/// Elements `t · q_w`, multiplied using `q_i² = h_i` and the braid relations.
///
/// `q_w` is the product of the `q_i` along the lexicographically minimal reduced word.
pub struct TitsExtension<'a> {
    pub normalizer: &'a NormalizerExtension,
    pub coxeter: &'a CoxeterSystem,
    /// Markings of the simple reflections.
    pub h: Vec<RationalModZVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TitsReport {
    pub datum: String,
    /// The root subgroup representatives of the simple reflections satisfy the braid relations.
    pub braid_relations: bool,
    /// Left and right generator rules agree on all of `W`.
    pub rules_agree: bool,
    /// A coboundary relating the two cocycles was found.
    pub equivalent: bool,
    pub longest_element_square: RationalModZVector,
}

impl<'a> TitsExtension<'a> {
    pub fn new(n: &'a NormalizerExtension) -> Result<Self, ExtError> {
        let d = n.datum();
        let coxeter = d.coxeter()?;
        let h = coxeter.simple_reflections.iter().map(|&r| d.marking(r)).collect();
        Ok(TitsExtension { normalizer: n, coxeter, h })
    }

    fn length(&self, w: usize) -> u32 {
        self.coxeter.length(w)
    }

    /// `(t q_w) · q_i`.
    pub fn mul_simple_right(&self, a: &ExtElement, i: usize) -> ExtElement {
        let w = self.normalizer.datum().weyl();
        let u = w.mul(a.w, self.coxeter.simple[i]);
        if self.length(u) > self.length(a.w) {
            ExtElement { t: a.t.clone(), w: u }
        } else {
            // q_w = q_u q_i, so q_w q_i = q_u h_i = (u h_i) q_u
            ExtElement { t: a.t.add(&self.normalizer.act(u, &self.h[i])), w: u }
        }
    }

    /// `q_i · (t q_w)`.
    pub fn mul_simple_left(&self, i: usize, a: &ExtElement) -> ExtElement {
        let w = self.normalizer.datum().weyl();
        let s = self.coxeter.simple[i];
        let t = self.normalizer.act(s, &a.t);
        let u = w.mul(s, a.w);
        if self.length(u) > self.length(a.w) {
            ExtElement { t, w: u }
        } else {
            ExtElement { t: t.add(&self.h[i]), w: u }
        }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let w = self.normalizer.datum().weyl();
        let mut acc = ExtElement { t: a.t.add(&self.normalizer.act(a.w, &b.t)), w: a.w };
        for i in self.coxeter.reduced_word(w, b.w) {
            acc = self.mul_simple_right(&acc, i);
        }
        acc
    }

    /// `c_T(w, w')` read off by folding.
    pub fn cocycle(&self, a: usize, b: usize) -> RationalModZVector {
        let zero = RationalModZVector::zero(self.normalizer.rank());
        self.mul(&ExtElement { t: zero.clone(), w: a }, &ExtElement { t: zero, w: b }).t
    }

    fn simple_index(&self, g: usize) -> usize {
        self.coxeter.simple.iter().position(|&s| s == g).expect("simple generator")
    }

    /// Check braid relations for the root subgroup representatives in `ν̆(D)`.
    pub fn braid_relations_hold(&self) -> Result<bool, ExtError> {
        let n = self.normalizer;
        let xs: Vec<ExtElement> =
            self.coxeter.simple_reflections.iter().map(|&r| root_subgroup(n, r).map(|rs| rs.x)).collect::<Result<_, _>>()?;
        for i in 0..xs.len() {
            if n.mul(&xs[i], &xs[i]) != n.torus(self.h[i].clone()) {
                return Ok(false);
            }
            for j in i + 1..xs.len() {
                let m = self.coxeter.coxeter_matrix[i][j];
                let alt = |a: usize, b: usize| (0..m).fold(n.identity(), |acc, k| n.mul(&acc, &xs[if k % 2 == 0 { a } else { b }]));
                if alt(i, j) != alt(j, i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Product of the `q_i` along an arbitrary word, inside `ν̆(D)` via the root subgroups.
    pub fn word_in_normalizer(&self, word: &[usize]) -> Result<ExtElement, ExtError> {
        let n = self.normalizer;
        let mut acc = n.identity();
        for &i in word {
            let rs = root_subgroup(n, self.coxeter.simple_reflections[i])?;
            acc = n.mul(&acc, &rs.x);
        }
        Ok(acc)
    }

    /// Certify that the folded cocycle and the pushforward cocycle differ by a coboundary.
    pub fn equivalent_to_normalizer(&self) -> Result<bool, ExtError> {
        let n = self.normalizer;
        let w = n.datum().weyl();
        let d = |a: usize, b: usize| {
            let i = self.simple_index(b);
            let t = self.mul_simple_right(&ExtElement { t: RationalModZVector::zero(n.rank()), w: a }, i).t;
            t.sub(&n.cocycle(a, b))
        };
        Ok(solve_torus_coboundary(w, &self.coxeter.simple, n.action(), &d, &|_| vec![])?.is_some())
    }

    pub fn report(&self) -> Result<TitsReport, ExtError> {
        let n = self.normalizer;
        let w = n.datum().weyl();
        let zero = RationalModZVector::zero(n.rank());
        let mut rules_agree = true;
        for e in 0..w.order() {
            for i in 0..self.coxeter.rank() {
                let a = ExtElement { t: zero.clone(), w: e };
                let qi = ExtElement { t: zero.clone(), w: self.coxeter.simple[i] };
                rules_agree &= self.mul_simple_left(i, &a) == self.mul(&qi, &a);
            }
        }
        let w0 = self.coxeter.longest_element();
        Ok(TitsReport {
            datum: n.datum().name().to_string(),
            braid_relations: self.braid_relations_hold()?,
            rules_agree,
            equivalent: self.equivalent_to_normalizer()?,
            longest_element_square: self.cocycle(w0, w0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;

    #[test]
    fn su2_square() {
        let n = NormalizerExtension::new(&catalog::su(2).unwrap()).unwrap();
        let t = TitsExtension::new(&n).unwrap();
        assert_eq!(t.cocycle(1, 1), RationalModZVector::from_ints(&[1], 2));
    }

    #[test]
    fn coxeter_catalog_is_equivalent() {
        for d in catalog::coxeter_catalog().unwrap() {
            if d.weyl().order() > 200 {
                continue;
            }
            let n = NormalizerExtension::new(&d).unwrap();
            let r = TitsExtension::new(&n).unwrap().report().unwrap();
            assert!(r.braid_relations && r.rules_agree && r.equivalent, "{}: {r:?}", d.name());
        }
    }

    #[test]
    fn reduced_words_of_the_longest_element_agree() {
        let d = catalog::su(3).unwrap();
        let n = NormalizerExtension::new(&d).unwrap();
        let t = TitsExtension::new(&n).unwrap();
        assert_eq!(t.word_in_normalizer(&[0, 1, 0]).unwrap(), t.word_in_normalizer(&[1, 0, 1]).unwrap());
    }
}
