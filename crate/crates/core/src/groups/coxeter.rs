use std::collections::VecDeque;

use crate::linalg::IntMatrix;

use super::presentation::{Letter, Presentation};
use super::{GroupError, ReflectionSet, WeylGroup};

/// Base of the default positivity functional `x ↦ Σ x_k B^k`.
pub const FUNCTIONAL_BASE: i128 = 1009;

/// A simple system of a Coxeter-type reflection group.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    /// Element indices of the simple reflections.
    pub simple: Vec<usize>,
    /// Reflection indices of the simple reflections.
    pub simple_reflections: Vec<usize>,
    /// Positive root lines, indexed like the reflection set.
    pub positive_lines: Vec<Vec<i64>>,
    pub coxeter_matrix: Vec<Vec<usize>>,
    length: Vec<u32>,
}

fn symmetric_lift(m: &IntMatrix, md: i64) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j).rem_euclid(md);
            out.set(i, j, if 2 * x > md { x - md } else { x });
        }
    }
    out
}

pub fn default_functional(dim: usize) -> Vec<i128> {
    (0..dim).map(|k| FUNCTIONAL_BASE.pow(k as u32)).collect()
}

fn eval(f: &[i128], v: &[i64]) -> i128 {
    f.iter().zip(v).map(|(a, &b)| a * b as i128).sum()
}

impl CoxeterSystem {
    /// Simple system for the positivity functional `functional`.
    pub fn new(w: &WeylGroup, refl: &ReflectionSet, functional: &[i128]) -> Result<Self, GroupError> {
        if let Some(md) = w.modulus() {
            let lift: Vec<_> = w.generator_matrices().iter().map(|m| symmetric_lift(m, md)).collect();
            let reason = match WeylGroup::generate(&lift, None, w.order()) {
                Ok(g) if g.order() == w.order() => "truncated group has an integral lift; build it over Z instead",
                _ => "symmetric integral lift of the generators does not close to a finite group",
            };
            return Err(GroupError::NotCoxeterType(reason.into()));
        }
        let mut lines = Vec::with_capacity(refl.len());
        for r in &refl.reflections {
            let v = r.line.clone().expect("exact group has root lines");
            if v.iter().any(|&x| (x as i128).abs() * 2 >= FUNCTIONAL_BASE) {
                return Err(GroupError::NotCoxeterType("root line entries too large for the functional".into()));
            }
            let s = eval(functional, &v);
            if s == 0 {
                return Err(GroupError::NotCoxeterType("positivity functional is not generic".into()));
            }
            lines.push(if s > 0 { v } else { v.iter().map(|x| -x).collect() });
        }
        let inversions = |e: usize| -> usize { lines.iter().filter(|l| eval(functional, &w.matrix(e).mul_vec(l)) < 0).count() };
        let mut simple_reflections: Vec<usize> = (0..refl.len()).filter(|&r| inversions(refl.get(r).element) == 1).collect();
        simple_reflections.sort_by_key(|&r| refl.get(r).element);
        let simple: Vec<usize> = simple_reflections.iter().map(|&r| refl.get(r).element).collect();
        let span: Vec<Vec<i64>> = lines.clone();
        let ss_rank = if span.is_empty() { 0 } else { crate::linalg::rank(&IntMatrix::from_rows(&span)).unwrap_or(0) };
        if simple.len() != ss_rank {
            return Err(GroupError::NotCoxeterType(format!("found {} simple reflections for semisimple rank {}", simple.len(), ss_rank)));
        }
        if w.subgroup(&simple).len() != w.order() {
            return Err(GroupError::NotCoxeterType("simple reflections do not generate the group".into()));
        }
        let mut length = vec![u32::MAX; w.order()];
        length[0] = 0;
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for &s in &simple {
                let y = w.mul(s, x);
                if length[y] == u32::MAX {
                    length[y] = length[x] + 1;
                    q.push_back(y);
                }
            }
        }
        let coxeter_matrix = simple.iter().map(|&a| simple.iter().map(|&b| w.element_order(w.mul(a, b))).collect()).collect();
        Ok(CoxeterSystem { simple, simple_reflections, positive_lines: lines, coxeter_matrix, length })
    }

    pub fn with_default(w: &WeylGroup, refl: &ReflectionSet) -> Result<Self, GroupError> {
        Self::new(w, refl, &default_functional(w.dim()))
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn length(&self, w: usize) -> u32 {
        self.length[w]
    }

    /// Number of positive root lines sent to negative ones.
    pub fn inversion_count(&self, g: &WeylGroup, w: usize, functional: &[i128]) -> usize {
        self.positive_lines.iter().filter(|l| eval(functional, &g.matrix(w).mul_vec(l)) < 0).count()
    }

    /// Lexicographically minimal reduced word, as positions in `simple`.
    pub fn reduced_word(&self, g: &WeylGroup, mut w: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length[w] as usize);
        while w != 0 {
            let i = (0..self.simple.len())
                .find(|&i| self.length[g.mul(self.simple[i], w)] < self.length[w])
                .expect("nontrivial element has a left descent");
            out.push(i);
            w = g.mul(self.simple[i], w);
        }
        out
    }

    pub fn longest_element(&self) -> usize {
        (0..self.length.len()).max_by_key(|&i| self.length[i]).unwrap_or(0)
    }

    /// Whether `w * s_i` is longer than `w`.
    pub fn right_ascent(&self, g: &WeylGroup, w: usize, i: usize) -> bool {
        self.length[g.mul(w, self.simple[i])] > self.length[w]
    }

    pub fn presentation(&self, g: &WeylGroup) -> Presentation {
        let n = self.simple.len();
        let mut relators = Vec::new();
        for i in 0..n {
            relators.push(vec![Letter::gen(i), Letter::gen(i)]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = self.coxeter_matrix[i][j];
                let mut w = Vec::with_capacity(2 * m);
                for _ in 0..m {
                    w.push(Letter::gen(i));
                    w.push(Letter::gen(j));
                }
                relators.push(w);
            }
        }
        Presentation::new(n, relators, self.simple.iter().map(|&s| g.matrix(s).clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> WeylGroup {
        let s1 = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let s2 = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        WeylGroup::generate(&[s1, s2], None, 100).unwrap()
    }

    #[test]
    fn b2_simple_system() {
        let w = b2();
        let rs = ReflectionSet::find(&w);
        let c = CoxeterSystem::with_default(&w, &rs).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.coxeter_matrix[0][1], 4);
        let w0 = c.longest_element();
        assert_eq!(c.length(w0), 4);
        assert_eq!(c.reduced_word(&w, w0).len(), 4);
        let f = default_functional(2);
        for e in 0..w.order() {
            assert_eq!(c.inversion_count(&w, e, &f), c.length(e) as usize);
        }
    }

    #[test]
    fn truncated_groups_are_rejected() {
        let w = WeylGroup::generate(&[IntMatrix::from_rows(&[[-1]])], Some(8), 10).unwrap();
        let rs = ReflectionSet::find(&w);
        assert!(matches!(CoxeterSystem::with_default(&w, &rs), Err(GroupError::NotCoxeterType(_))));
    }
}
