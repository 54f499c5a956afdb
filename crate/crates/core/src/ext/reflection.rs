use std::sync::Arc;

use serde::Serialize;

use crate::groups::{ReflectionSet, WeylGroup};
use crate::linalg::int::valuation;
use crate::linalg::IntMatrix;

use super::module::{solve_lattice_coboundary, Action};
use super::ExtError;

/// A primitive vector spanning the `-1` eigenline of a reflection.
///
/// For truncated groups the vector is only determined modulo `2^{k - v}`;
/// the returned precision is that modulus.
pub fn reflection_line(w: &WeylGroup, refl: &ReflectionSet, r: usize) -> (Vec<i64>, Option<i64>) {
    let rf = refl.get(r);
    match (w.modulus(), &rf.line) {
        (None, Some(l)) => (l.clone(), None),
        (Some(m), _) => {
            let om = rf.matrix.one_minus().reduce_mod(m);
            let p = crate::linalg::int::prime_divisors(m as u64)[0] as i128;
            let (col, v) = (0..om.cols())
                .map(|j| om.col(j))
                .filter(|c| c.iter().any(|&x| x != 0))
                .map(|c| {
                    let v = c.iter().filter(|&&x| x != 0).map(|&x| valuation(x as i128, p)).min().unwrap_or(0);
                    (c, v)
                })
                .min_by_key(|(_, v)| *v)
                .expect("reflection has a nonzero column");
            let pv = p.pow(v) as i64;
            let prec = m / pv;
            (col.iter().map(|&x| (x / pv).rem_euclid(prec)).collect(), Some(prec))
        }
        (None, None) => unreachable!("exact reflections carry a line"),
    }
}

/// Sign of `x` on the `-1` eigenline of `τ`, when `x` preserves it.
fn line_sign(w: &WeylGroup, x: usize, line: &[i64], prec: Option<i64>) -> Option<i8> {
    let img = w.matrix(x).mul_vec(line);
    let eq = |sign: i64| match prec {
        None => img.iter().zip(line).all(|(a, b)| *a == sign * b),
        Some(m) => img.iter().zip(line).all(|(a, b)| (a - sign * b).rem_euclid(m) == 0),
    };
    if eq(1) {
        Some(1)
    } else if eq(-1) {
        Some(-1)
    } else {
        None
    }
}

/// The transfer of a `Z`-valued 2-cocycle on `C = C_W(τ)` to a cocycle on `W`
/// with values in the permutation module of the class of `τ`.
#[derive(Clone, Debug)]
pub struct ShapiroCocycle {
    pub class: usize,
    /// Coset representative per reflection of the class (`r σ_τ r⁻¹ = σ_j`);
    /// `None` outside the class.
    pub reps: Vec<Option<usize>>,
    centralizer_pos: Vec<Option<usize>>,
    centralizer_len: usize,
    base: Vec<i64>,
}

impl ShapiroCocycle {
    /// Transfer `base(x, y)` (indexed by element) along the given coset representatives.
    pub fn transfer(
        w: &WeylGroup,
        refl: &ReflectionSet,
        class: usize,
        reps: Vec<Option<usize>>,
        base: &dyn Fn(usize, usize) -> i64,
    ) -> Result<ShapiroCocycle, ExtError> {
        let tau = refl.classes[class][0];
        for (j, r) in reps.iter().enumerate() {
            let in_class = refl.get(j).class == class;
            match r {
                Some(r) if !in_class || refl.conj(*r, tau) != j => {
                    return Err(ExtError::InvalidRepresentatives(format!(
                        "element {r} does not conjugate the representative to reflection {j}"
                    )))
                }
                None if in_class => return Err(ExtError::InvalidRepresentatives(format!("reflection {j} has no representative"))),
                _ => {}
            }
        }
        let cent = w.centralizer(refl.get(tau).element);
        let mut pos = vec![None; w.order()];
        for (i, &c) in cent.iter().enumerate() {
            pos[c] = Some(i);
        }
        let mut table = vec![0i64; cent.len() * cent.len()];
        for (i, &x) in cent.iter().enumerate() {
            for (j, &y) in cent.iter().enumerate() {
                table[i * cent.len() + j] = base(x, y);
            }
        }
        Ok(ShapiroCocycle { class, reps, centralizer_pos: pos, centralizer_len: cent.len(), base: table })
    }

    /// `κ(g, j) = r_{g·j}⁻¹ g r_j`, an element of the centralizer.
    fn kappa(&self, w: &WeylGroup, refl: &ReflectionSet, g: usize, j: usize) -> usize {
        let rj = self.reps[j].expect("class member");
        let rgj = self.reps[refl.conj(g, j)].expect("class member");
        w.mul(w.inv(rgj), w.mul(g, rj))
    }

    fn base_at(&self, x: usize, y: usize) -> i64 {
        let i = self.centralizer_pos[x].expect("centralizer element");
        let j = self.centralizer_pos[y].expect("centralizer element");
        self.base[i * self.centralizer_len + j]
    }

    /// Add `c(g, h)` into a `Z[Σ]` vector.
    pub fn accumulate(&self, w: &WeylGroup, refl: &ReflectionSet, g: usize, h: usize, out: &mut [i64]) {
        let ghinv = w.inv(w.mul(g, h));
        for (k, slot) in out.iter_mut().enumerate() {
            if self.reps[k].is_none() {
                continue;
            }
            let j = refl.conj(ghinv, k);
            let x = self.kappa(w, refl, g, refl.conj(h, j));
            let y = self.kappa(w, refl, h, j);
            *slot += self.base_at(x, y);
        }
    }
}

/// The reflection extension `1 → Z[Σ] → ρ(W) → W → 1` as a normalized cocycle.
#[derive(Clone, Debug)]
pub struct ReflectionExtension {
    weyl: Arc<WeylGroup>,
    refl: Arc<ReflectionSet>,
    pub parts: Vec<ShapiroCocycle>,
}

/// Shortest coset representatives in enumeration order.
pub fn default_representatives(w: &WeylGroup, refl: &ReflectionSet, class: usize) -> Vec<Option<usize>> {
    let tau = refl.classes[class][0];
    let mut reps = vec![None; refl.len()];
    for g in 0..w.order() {
        let j = refl.conj(g, tau);
        reps[j].get_or_insert(g);
    }
    reps
}

/// Coset representatives chosen from the end of the enumeration.
pub fn last_representatives(w: &WeylGroup, refl: &ReflectionSet, class: usize) -> Vec<Option<usize>> {
    let tau = refl.classes[class][0];
    let mut reps = vec![None; refl.len()];
    for g in (0..w.order()).rev() {
        let j = refl.conj(g, tau);
        reps[j].get_or_insert(g);
    }
    reps
}

impl ReflectionExtension {
    pub fn new(weyl: Arc<WeylGroup>, refl: Arc<ReflectionSet>) -> Result<Self, ExtError> {
        let reps = (0..refl.classes.len()).map(|c| default_representatives(&weyl, &refl, c)).collect();
        Self::with_representatives(weyl, refl, reps)
    }

    /// Build from explicit coset representatives, one vector per class.
    pub fn with_representatives(weyl: Arc<WeylGroup>, refl: Arc<ReflectionSet>, reps: Vec<Vec<Option<usize>>>) -> Result<Self, ExtError> {
        let mut parts = Vec::with_capacity(refl.classes.len());
        for (c, r) in reps.into_iter().enumerate() {
            let tau = refl.classes[c][0];
            let (line, prec) = reflection_line(&weyl, &refl, tau);
            let sign = |x: usize| line_sign(&weyl, x, &line, prec).expect("centralizer preserves the line");
            let base = |x: usize, y: usize| i64::from(sign(x) == -1 && sign(y) == -1);
            parts.push(ShapiroCocycle::transfer(&weyl, &refl, c, r, &base)?);
        }
        Ok(ReflectionExtension { weyl, refl, parts })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn reflections(&self) -> &ReflectionSet {
        &self.refl
    }

    pub fn rank(&self) -> usize {
        self.refl.len()
    }

    /// `c(g, h) ∈ Z[Σ]`.
    pub fn value(&self, g: usize, h: usize) -> Vec<i64> {
        let mut out = vec![0; self.refl.len()];
        for p in &self.parts {
            p.accumulate(&self.weyl, &self.refl, g, h, &mut out);
        }
        out
    }

    /// `g · e_j = e_{g σ_j g⁻¹}`.
    pub fn act(&self, g: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.refl.conj(g, j)] += x;
        }
        out
    }

    pub fn permutation_matrix(&self, g: usize) -> IntMatrix {
        let n = self.refl.len();
        let mut m = IntMatrix::zeros(n, n);
        for j in 0..n {
            m.set(self.refl.conj(g, j), j, 1);
        }
        m
    }

    pub fn action(&self) -> Action {
        Action { dim: self.refl.len(), matrices: (0..self.weyl.order()).map(|g| self.permutation_matrix(g)).collect(), modulus: None }
    }

    /// First triple violating the cocycle identity among `triples`.
    pub fn cocycle_violation(&self, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        let w = &self.weyl;
        triples.into_iter().find(|&(a, b, c)| {
            let lhs = self.act(a, &self.value(b, c));
            let x = self.value(w.mul(a, b), c);
            let y = self.value(a, w.mul(b, c));
            let z = self.value(a, b);
            lhs.iter().zip(&x).zip(&y).zip(&z).any(|(((l, x), y), z)| l - x + y - z != 0)
        })
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.weyl.order()).all(|g| self.value(0, g).iter().all(|&x| x == 0) && self.value(g, 0).iter().all(|&x| x == 0))
    }

    /// Whether the two cocycles differ by a coboundary.
    pub fn cohomologous(&self, other: &ReflectionExtension) -> Result<bool, ExtError> {
        let w = &self.weyl;
        let d = |g: usize, h: usize| -> Vec<i64> { self.value(g, h).iter().zip(other.value(g, h)).map(|(a, b)| a - b).collect() };
        Ok(solve_lattice_coboundary(w, w.generators(), &self.action(), &d)?.is_some())
    }

    /// Restriction of the class-`c` transfer to `C_W(τ)`, read at the `τ` coordinate,
    /// agrees with the base cocycle.
    pub fn restriction_matches_base(&self, class: usize) -> bool {
        let part = &self.parts[class];
        let tau = self.refl.classes[class][0];
        let cent = self.weyl.centralizer(self.refl.get(tau).element);
        cent.iter().all(|&x| {
            cent.iter().all(|&y| {
                let mut v = vec![0; self.refl.len()];
                part.accumulate(&self.weyl, &self.refl, x, y, &mut v);
                v[tau] == part.base_at(x, y)
            })
        })
    }

    pub fn dump(&self) -> CocycleDump<Vec<i64>> {
        let n = self.weyl.order();
        let mut entries = Vec::new();
        for g in 0..n {
            for h in 0..n {
                let v = self.value(g, h);
                if v.iter().any(|&x| x != 0) {
                    entries.push(CocycleEntry { g, h, value: v });
                }
            }
        }
        CocycleDump { module: format!("Z[Sigma], {} reflections", self.refl.len()), group_order: n, entries }
    }
}

/// JSON form of a cocycle table (zero entries omitted).
#[derive(Clone, Debug, Serialize)]
pub struct CocycleDump<V: Serialize> {
    pub module: String,
    pub group_order: usize,
    pub entries: Vec<CocycleEntry<V>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleEntry<V: Serialize> {
    pub g: usize,
    pub h: usize,
    pub value: V,
}

/// Triples to test: all of them for small groups, a deterministic sample otherwise.
pub fn test_triples(order: usize, sample: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    if order <= 48 {
        let mut out = Vec::with_capacity(order.pow(3));
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    out.push((a, b, c));
                }
            }
        }
        return out;
    }
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % order as u64) as usize
    };
    (0..sample).map(|_| (next(), next(), next())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;

    fn ext(name: &str) -> ReflectionExtension {
        let d = catalog::by_name(name).unwrap();
        ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone())).unwrap()
    }

    #[test]
    fn rank_one_square_is_the_reflection() {
        let e = ext("SU(2)");
        let s = 1;
        assert_eq!(e.value(s, s), vec![1]);
        assert!(e.is_normalized());
    }

    #[test]
    fn cocycle_identity_b2_and_g2() {
        for name in ["SO(5)", "G2", "SU(3)"] {
            let e = ext(name);
            let n = e.weyl().order();
            assert!(e.cocycle_violation(test_triples(n, 0, 1)).is_none(), "{name}");
            for c in 0..e.reflections().classes.len() {
                assert!(e.restriction_matches_base(c));
            }
        }
    }

    #[test]
    fn representative_choice_is_irrelevant() {
        for name in ["SO(5)", "SU(3)", "SU(2)xSU(2)"] {
            let d = catalog::by_name(name).unwrap();
            let refl = Arc::new(d.reflections().clone());
            let a = ReflectionExtension::new(d.weyl_arc(), refl.clone()).unwrap();
            let reps = (0..refl.classes.len()).map(|c| last_representatives(d.weyl(), &refl, c)).collect();
            let b = ReflectionExtension::with_representatives(d.weyl_arc(), refl, reps).unwrap();
            assert!(a.cohomologous(&b).unwrap(), "{name}");
        }
    }

    #[test]
    fn bad_representatives_are_rejected() {
        let d = catalog::by_name("SU(3)").unwrap();
        let refl = Arc::new(d.reflections().clone());
        let mut reps = vec![default_representatives(d.weyl(), &refl, 0)];
        reps[0][1] = Some(0);
        assert!(ReflectionExtension::with_representatives(d.weyl_arc(), refl, reps).is_err());
    }
}
