use std::collections::{HashMap, VecDeque};

use crate::linalg::{rank, IntMatrix};

use super::GroupError;

const TABLE_LIMIT: usize = 2048;

/// A finite group of integer matrices, enumerated.
///
/// With a `modulus` the matrices are only known modulo that number (a
/// truncation of a `p`-adic representation); entries are then kept in
/// `[0, modulus)`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    modulus: Option<i64>,
    generators: Vec<usize>,
    elements: Vec<IntMatrix>,
    lookup: HashMap<Vec<i64>, usize>,
    /// `left[g][i]` is the index of `generator_g * element_i`.
    left: Vec<Vec<usize>>,
    /// `right[g][i]` is the index of `element_i * generator_g`.
    right: Vec<Vec<usize>>,
    /// BFS parent: `element_i = generator_g * element_prev`.
    parent: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl WeylGroup {
    /// Enumerate the group generated by `generators`, failing once more than
    /// `bound` elements are found.
    pub fn generate(generators: &[IntMatrix], modulus: Option<i64>, bound: usize) -> Result<Self, GroupError> {
        let dim = generators.first().map_or(0, |g| g.rows());
        Self::generate_in(dim, generators, modulus, bound)
    }

    /// As [`WeylGroup::generate`], for matrices of size `dim` (allows an empty generating set).
    pub fn generate_in(dim: usize, generators: &[IntMatrix], modulus: Option<i64>, bound: usize) -> Result<Self, GroupError> {
        if generators.iter().any(|g| !g.is_square() || g.rows() != dim) {
            return Err(GroupError::BadGenerators("generators must be square matrices of equal size".into()));
        }
        let norm = |m: IntMatrix| match modulus {
            Some(md) => m.reduce_mod(md),
            None => m,
        };
        let gens: Vec<IntMatrix> = generators.iter().cloned().map(norm).collect();
        let mul = |a: &IntMatrix, b: &IntMatrix| match modulus {
            Some(md) => a.mul_mod(b, md),
            None => a.mul(b),
        };
        let id = norm(IntMatrix::identity(dim));
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id.data().to_vec(), 0usize);
        let mut parent = vec![None];
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, gm) in gens.iter().enumerate() {
                let prod = mul(gm, &elements[i]);
                let key = prod.data().to_vec();
                let j = match lookup.get(&key) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= bound {
                            return Err(GroupError::BoundExceeded(bound));
                        }
                        let j = elements.len();
                        elements.push(prod);
                        lookup.insert(key, j);
                        parent.push(Some((g, i)));
                        queue.push_back(j);
                        j
                    }
                };
                if left[g].len() <= i {
                    left[g].resize(i + 1, usize::MAX);
                }
                left[g][i] = j;
            }
        }
        let n = elements.len();
        let generators: Vec<usize> = gens.iter().map(|g| lookup[g.data()]).collect();
        let mut right = vec![vec![0usize; n]; gens.len()];
        for (g, gm) in gens.iter().enumerate() {
            for i in 0..n {
                right[g][i] = lookup[mul(&elements[i], gm).data()];
            }
        }
        let mut w = WeylGroup { dim, modulus, generators, elements, lookup, left, right, parent, inverse: Vec::new(), table: None };
        if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                let word = w.word(i);
                for j in 0..n {
                    let mut k = j;
                    for &g in word.iter().rev() {
                        k = w.left[g][k];
                    }
                    table[i * n + j] = k as u32;
                }
            }
            w.table = Some(table);
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            if inverse[i] != usize::MAX {
                continue;
            }
            let j = w.find_inverse(i);
            inverse[i] = j;
            inverse[j] = i;
        }
        w.inverse = inverse;
        Ok(w)
    }

    fn find_inverse(&self, i: usize) -> usize {
        let mut acc = i;
        let mut prev = 0;
        while acc != 0 {
            prev = acc;
            acc = self.mul(acc, i);
        }
        prev
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Option<i64> {
        self.modulus
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn matrix(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    /// Index of a matrix, if it lies in the group.
    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        let m = match self.modulus {
            Some(md) => m.reduce_mod(md),
            None => m.clone(),
        };
        self.lookup.get(m.data()).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.elements.len();
        if let Some(t) = &self.table {
            return t[i * n + j] as usize;
        }
        let mut k = j;
        let mut cur = i;
        let mut gens = Vec::new();
        while let Some((g, prev)) = self.parent[cur] {
            gens.push(g);
            cur = prev;
        }
        for &g in gens.iter().rev() {
            k = self.left[g][k];
        }
        k
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    /// `generator_g * element_i`.
    pub fn left_gen(&self, g: usize, i: usize) -> usize {
        self.left[g][i]
    }

    /// `element_i * generator_g`.
    pub fn right_gen(&self, i: usize, g: usize) -> usize {
        self.right[g][i]
    }

    /// Generator indices `g_1 ... g_k` with `element_i = s_{g_1} ... s_{g_k}`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((g, prev)) = self.parent[cur] {
            out.push(g);
            cur = prev;
        }
        out
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = i;
        let mut n = 1;
        while k != 0 {
            k = self.mul(k, i);
            n += 1;
        }
        n
    }

    /// Closure of a set of elements under multiplication.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order()).map(|g| self.conj(g, x)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&z| self.generators.iter().all(|&g| self.mul(g, z) == self.mul(z, g))).collect()
    }

    /// Whether `1 - element_i` has rank one.
    pub fn is_reflection(&self, i: usize) -> bool {
        if i == 0 {
            return false;
        }
        match self.modulus {
            None => rank(&self.elements[i].one_minus()).map(|r| r == 1).unwrap_or(false),
            Some(md) => {
                // finite order elements over a p-adic field with rank(1 - s) = 1
                // are exactly the involutions with trace n - 2
                let m = &self.elements[i];
                let tr: i64 = (0..self.dim).map(|k| m.get(k, k)).sum();
                self.element_order(i) == 2 && (tr - (self.dim as i64 - 2)).rem_euclid(md) == 0
            }
        }
    }

    /// Apply `element_i` to an integer vector (reduced by the modulus when present).
    pub fn act(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let out = self.elements[i].mul_vec(v);
        match self.modulus {
            Some(md) => out.into_iter().map(|x| x.rem_euclid(md)).collect(),
            None => out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_on_z() {
        let w = WeylGroup::generate(&[IntMatrix::from_rows(&[[-1]])], None, 10).unwrap();
        assert_eq!(w.order(), 2);
        assert!(w.is_reflection(1));
    }

    #[test]
    fn b2_order_and_inverses() {
        let s1 = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let s2 = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        let w = WeylGroup::generate(&[s1, s2], None, 100).unwrap();
        assert_eq!(w.order(), 8);
        for i in 0..8 {
            assert_eq!(w.mul(i, w.inv(i)), 0);
            let m = w.matrix(i).mul(w.matrix(w.inv(i)));
            assert!(m.is_identity());
        }
        assert_eq!((0..8).filter(|&i| w.is_reflection(i)).count(), 4);
    }

    #[test]
    fn bound_is_enforced() {
        let m = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert!(matches!(WeylGroup::generate(&[m], None, 50), Err(GroupError::BoundExceeded(50))));
    }
}
