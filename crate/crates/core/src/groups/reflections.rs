use std::collections::HashMap;

use crate::linalg::int::gcd;
use crate::linalg::IntMatrix;

use super::WeylGroup;

#[derive(Clone, Debug)]
pub struct Reflection {
    pub element: usize,
    pub class: usize,
    pub matrix: IntMatrix,
    /// Primitive vector spanning `im(1 - σ) ⊗ Q`, first nonzero entry positive.
    /// Absent for truncated groups.
    pub line: Option<Vec<i64>>,
}

/// All reflections of a group, grouped into conjugacy classes.
#[derive(Clone, Debug)]
pub struct ReflectionSet {
    pub reflections: Vec<Reflection>,
    /// Reflection indices per class; the first entry is the class representative.
    pub classes: Vec<Vec<usize>>,
    by_element: HashMap<usize, usize>,
    /// `perm[g][r]`: reflection index of `g σ_r g^{-1}`.
    perm: Vec<Vec<usize>>,
}

fn primitive_line(m: &IntMatrix) -> Option<Vec<i64>> {
    let om = m.one_minus();
    let col = (0..om.cols()).map(|j| om.col(j)).find(|c| c.iter().any(|&x| x != 0))?;
    let g = col.iter().fold(0i128, |acc, &x| gcd(acc, x as i128)) as i64;
    let mut v: Vec<i64> = col.iter().map(|&x| x / g).collect();
    if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Some(v)
}

impl ReflectionSet {
    pub fn find(w: &WeylGroup) -> ReflectionSet {
        let elems: Vec<usize> = (0..w.order()).filter(|&i| w.is_reflection(i)).collect();
        let by_element: HashMap<usize, usize> = elems.iter().enumerate().map(|(r, &e)| (e, r)).collect();
        let perm: Vec<Vec<usize>> = (0..w.order()).map(|g| elems.iter().map(|&e| by_element[&w.conj(g, e)]).collect()).collect();
        let mut class_of = vec![usize::MAX; elems.len()];
        let mut classes = Vec::new();
        for r in 0..elems.len() {
            if class_of[r] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members: Vec<usize> = (0..w.order()).map(|g| perm[g][r]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = c;
            }
            // representative first
            members.retain(|&m| m != r);
            members.insert(0, r);
            classes.push(members);
        }
        let reflections = elems
            .iter()
            .enumerate()
            .map(|(r, &e)| Reflection {
                element: e,
                class: class_of[r],
                matrix: w.matrix(e).clone(),
                line: if w.modulus().is_none() { primitive_line(w.matrix(e)) } else { None },
            })
            .collect();
        ReflectionSet { reflections, classes, by_element, perm }
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    pub fn index_of_element(&self, e: usize) -> Option<usize> {
        self.by_element.get(&e).copied()
    }

    /// Reflection index of `g σ_r g^{-1}`.
    pub fn conj(&self, g: usize, r: usize) -> usize {
        self.perm[g][r]
    }

    pub fn get(&self, r: usize) -> &Reflection {
        &self.reflections[r]
    }

    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_has_two_classes() {
        let s1 = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let s2 = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        let w = WeylGroup::generate(&[s1, s2], None, 100).unwrap();
        let rs = ReflectionSet::find(&w);
        assert_eq!(rs.len(), 4);
        assert_eq!(rs.classes.len(), 2);
        assert!(rs.classes.iter().all(|c| c.len() == 2));
    }
}
