//! Root data `(W, L, {R b_σ})`: validation, roots, markings, singular sets,
//! centers, centralizers, isomorphisms, decompositions and a catalog.

pub mod catalog;
mod center;
mod decompose;
mod iso;
mod ring;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{CoxeterSystem, GroupError, ReflectionSet, WeylGroup};
use crate::linalg::{hermite_basis, IntMatrix, LinalgError, RationalModZVector};

pub use center::{CenterSplitting, CenterStructure};
pub use decompose::Decomposition;
pub(crate) use iso::bijections;
pub use iso::LatticeMap;
pub use ring::BaseRing;
pub(crate) use ring::{columns, line_coefficient};

/// Largest group the constructors will enumerate.
pub const GROUP_BOUND: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("invalid root datum: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unknown catalog entry: {0}")]
    UnknownName(String),
    #[error("operation needs exact integer matrices, not a truncated model")]
    Truncated,
    #[error("subgroup is not contained in the discrete center")]
    NotCentral,
    #[error("{0}")]
    Unsupported(String),
}

/// Identifies the reflection a coroot belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorootSpec {
    /// Index into `weyl_generators`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reflection_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reflection_matrix: Option<IntMatrix>,
    pub coroot: Vec<i64>,
}

/// Raw input form of a root datum, as stored in datum files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub ring: BaseRing,
    pub rank: usize,
    pub weyl_generators: Vec<IntMatrix>,
    pub coroots: Vec<CorootSpec>,
    /// Truncation exponent `k` when the matrices are only known modulo `p^k`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub precision: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &str, violations: Vec<String>) {
        let passed = violations.is_empty();
        self.valid &= passed;
        self.checks.push(Check { name: name.into(), passed, violations });
    }

    pub fn summary(&self) -> String {
        self.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.violations.join("; "))).collect::<Vec<_>>().join(" | ")
    }
}

/// A validated root datum.
#[derive(Clone)]
pub struct RootDatum {
    spec: DatumSpec,
    weyl: Arc<WeylGroup>,
    refl: Arc<ReflectionSet>,
    coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coxeter: Arc<OnceLock<Result<CoxeterSystem, GroupError>>>,
}

impl std::fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RootDatum({}, rank {}, |W| = {}, {})", self.name(), self.rank(), self.weyl.order(), self.ring())
    }
}

struct Analysis {
    weyl: WeylGroup,
    refl: ReflectionSet,
    coroots: Vec<Option<Vec<i64>>>,
}

impl DatumSpec {
    pub fn modulus(&self) -> Option<i64> {
        let k = self.precision?;
        let p = self.ring.prime().unwrap_or(2);
        Some(p.pow(k))
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        match self.modulus() {
            Some(m) => v.iter().map(|x| x.rem_euclid(m)).collect(),
            None => v.to_vec(),
        }
    }

    /// Run every axiom check; returns the analysis when the structure is usable.
    fn analyze(&self) -> (ValidationReport, Option<Analysis>) {
        let mut rep = ValidationReport { valid: true, checks: Vec::new() };
        let n = self.rank;
        let shape: Vec<String> = self
            .weyl_generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.rows() != n || g.cols() != n)
            .map(|(i, g)| format!("generator {i} is {}x{}, expected {n}x{n}", g.rows(), g.cols()))
            .collect();
        let bad_shape = !shape.is_empty();
        rep.push("generator shapes", shape);
        if bad_shape {
            return (rep, None);
        }
        if self.precision.is_some() && self.ring == BaseRing::Integers {
            rep.push("precision", vec!["truncation needs a p-adic ring".into()]);
            return (rep, None);
        }
        let weyl = match WeylGroup::generate_in(n, &self.weyl_generators, self.modulus(), GROUP_BOUND) {
            Ok(w) => {
                rep.push("finite group", vec![]);
                w
            }
            Err(e) => {
                rep.push("finite group", vec![e.to_string()]);
                return (rep, None);
            }
        };
        let refl = ReflectionSet::find(&weyl);
        let refl_elems: Vec<usize> = refl.reflections.iter().map(|r| r.element).collect();
        let gen_by_refl = if weyl.subgroup(&refl_elems).len() == weyl.order() {
            vec![]
        } else {
            vec!["group is not generated by its reflections".to_string()]
        };
        rep.push("generated by reflections", gen_by_refl);

        let mut assigned: Vec<Option<Vec<i64>>> = vec![None; refl.len()];
        let mut target_errors = Vec::new();
        let mut consistency = Vec::new();
        for (k, c) in self.coroots.iter().enumerate() {
            let elem = match (&c.reflection_index, &c.reflection_matrix) {
                (Some(i), None) => self.weyl_generators.get(*i).and_then(|m| weyl.index_of(m)),
                (None, Some(m)) => weyl.index_of(m),
                _ => {
                    target_errors.push(format!("coroot {k}: give exactly one of reflection_index, reflection_matrix"));
                    continue;
                }
            };
            let Some(r) = elem.and_then(|e| refl.index_of_element(e)) else {
                target_errors.push(format!("coroot {k}: target is not a reflection of W"));
                continue;
            };
            if c.coroot.len() != n {
                target_errors.push(format!("coroot {k}: length {} instead of {n}", c.coroot.len()));
                continue;
            }
            let b = self.reduce(&c.coroot);
            match &assigned[r] {
                Some(prev) if !self.same_line(prev, &b) => {
                    consistency.push(format!("coroot {k} disagrees with an earlier coroot for the same reflection"))
                }
                _ => assigned[r] = Some(b),
            }
        }
        rep.push("coroot targets", target_errors);

        // close under conjugation from class representatives
        let mut missing = Vec::new();
        for class in &refl.classes {
            let Some(&src) = class.iter().find(|&&r| assigned[r].is_some()) else {
                missing.push(format!("no coroot for the class of reflection {}", refl.get(class[0]).element));
                continue;
            };
            let b = assigned[src].clone().unwrap();
            for w in 0..weyl.order() {
                let r = refl.conj(w, src);
                let img = weyl.act(w, &b);
                match &assigned[r] {
                    None => assigned[r] = Some(img),
                    Some(prev) => {
                        if !self.same_line(prev, &img) && consistency.len() < 8 {
                            consistency.push(format!(
                                "element {w} maps the coroot line of reflection {} off the line of reflection {}",
                                refl.get(src).element,
                                refl.get(r).element
                            ));
                        }
                    }
                }
            }
        }
        rep.push("every class has a coroot", missing);
        rep.push("W-equivariance", consistency);

        let mut containment = Vec::new();
        let mut eigen = Vec::new();
        let mut primitivity = Vec::new();
        for (r, b) in assigned.iter().enumerate() {
            let Some(b) = b else { continue };
            let s = &refl.get(r).matrix;
            let sb = weyl.act(refl.get(r).element, b);
            let neg: Vec<i64> = self.reduce(&b.iter().map(|x| -x).collect::<Vec<_>>());
            if b.iter().all(|&x| x == 0) || sb != neg {
                eigen.push(format!("reflection {}: coroot is not in the (-1)-eigenline", refl.get(r).element));
                continue;
            }
            for col in columns(&s.one_minus()) {
                let col = self.reduce(&col);
                match line_coefficient(&col, b, self.modulus()) {
                    Some((_, den)) if self.ring.is_unit(den) || den == 1 => {}
                    _ => {
                        containment.push(format!("reflection {}: im(1 - s) is not inside R b = R {:?}", refl.get(r).element, b));
                        break;
                    }
                }
            }
            if self.modulus().is_none() {
                let content = b.iter().fold(0i128, |a, &x| crate::linalg::int::gcd(a, x as i128));
                if !(self.ring.is_unit(content) || self.ring.is_unit(content / 2) && content % 2 == 0) {
                    primitivity.push(format!("reflection {}: coroot {:?} has content {content}", refl.get(r).element, b));
                }
            }
        }
        rep.push("coroot on the reflection line", eigen);
        rep.push("im(1 - s) inside R b", containment);
        rep.push("coroot primitive up to a factor 2", primitivity);
        (rep, Some(Analysis { weyl, refl, coroots: assigned }))
    }

    fn same_line(&self, a: &[i64], b: &[i64]) -> bool {
        match line_coefficient(b, a, self.modulus()) {
            Some((num, den)) => self.ring.is_unit(num) && self.ring.is_unit(den),
            None => false,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        self.analyze().0
    }
}

impl RootDatum {
    pub fn from_spec(spec: DatumSpec) -> Result<RootDatum, DatumError> {
        let (rep, analysis) = spec.analyze();
        if !rep.valid {
            return Err(DatumError::Invalid(rep.summary()));
        }
        let a = analysis.expect("valid analysis");
        let modulus = spec.modulus();
        let mut coroots: Vec<Vec<i64>> = a.coroots.into_iter().map(|b| b.expect("closed")).collect();
        if let (Some(p), None) = (spec.ring.prime(), modulus) {
            // strip unit factors so every root is integral
            for b in coroots.iter_mut() {
                let g = b.iter().fold(0i128, |acc, &x| crate::linalg::int::gcd(acc, x as i128));
                let keep = if p == 2 { crate::linalg::int::p_part(g, 2) } else { 1 };
                let g = (g / keep) as i64;
                b.iter_mut().for_each(|x| *x /= g);
            }
        }
        let roots = coroots
            .iter()
            .enumerate()
            .map(|(r, b)| {
                let s = a.refl.get(r).matrix.clone();
                let sm1 = s.sub(&IntMatrix::identity(spec.rank));
                columns(&sm1)
                    .iter()
                    .map(|c| {
                        let c = spec.reduce(c);
                        let (num, den) = line_coefficient(&c, b, modulus).expect("containment checked");
                        assert_eq!(den, 1, "coroot normalized");
                        num as i64
                    })
                    .collect()
            })
            .collect();
        Ok(RootDatum { spec, weyl: Arc::new(a.weyl), refl: Arc::new(a.refl), coroots, roots, coxeter: Arc::new(OnceLock::new()) })
    }

    /// Build from generators and coroots given for some of the generators.
    pub fn new(
        name: &str,
        ring: BaseRing,
        rank: usize,
        generators: Vec<IntMatrix>,
        coroots: Vec<(usize, Vec<i64>)>,
    ) -> Result<RootDatum, DatumError> {
        Self::from_spec(DatumSpec {
            name: Some(name.into()),
            ring,
            rank,
            weyl_generators: generators,
            coroots: coroots
                .into_iter()
                .map(|(i, b)| CorootSpec { reflection_index: Some(i), reflection_matrix: None, coroot: b })
                .collect(),
            precision: None,
        })
    }

    pub fn spec(&self) -> &DatumSpec {
        &self.spec
    }

    /// Spec listing one coroot per reflection class, by matrix.
    pub fn canonical_spec(&self) -> DatumSpec {
        let coroots = self
            .refl
            .classes
            .iter()
            .map(|c| CorootSpec {
                reflection_index: None,
                reflection_matrix: Some(self.refl.get(c[0]).matrix.clone()),
                coroot: self.coroots[c[0]].clone(),
            })
            .collect();
        DatumSpec { coroots, ..self.spec.clone() }
    }

    pub fn name(&self) -> &str {
        self.spec.name.as_deref().unwrap_or("datum")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.spec.name = Some(name.into());
        self
    }

    pub fn ring(&self) -> BaseRing {
        self.spec.ring
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn modulus(&self) -> Option<i64> {
        self.weyl.modulus()
    }

    pub fn precision(&self) -> Option<u32> {
        self.spec.precision
    }

    pub fn is_truncated(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn weyl_arc(&self) -> Arc<WeylGroup> {
        self.weyl.clone()
    }

    pub fn reflections(&self) -> &ReflectionSet {
        &self.refl
    }

    pub fn coroot(&self, r: usize) -> &[i64] {
        &self.coroots[r]
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    /// The linear form `β_σ` with `σ(x) = x + β_σ(x) b_σ`.
    pub fn root(&self, r: usize) -> &[i64] {
        &self.roots[r]
    }

    /// `β_σ(x)`.
    pub fn pair(&self, r: usize, x: &[i64]) -> i128 {
        let v: i128 = self.roots[r].iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
        match self.modulus() {
            Some(m) => v.rem_euclid(m as i128),
            None => v,
        }
    }

    /// The marking `h_σ = b_σ / 2`, trivial when 2 is a unit.
    pub fn marking(&self, r: usize) -> RationalModZVector {
        if self.ring().two_invertible() {
            return RationalModZVector::zero(self.rank());
        }
        RationalModZVector::from_ints(&self.coroots[r], 2)
    }

    pub fn coxeter(&self) -> Result<&CoxeterSystem, GroupError> {
        self.coxeter.get_or_init(|| CoxeterSystem::with_default(&self.weyl, &self.refl)).as_ref().map_err(Clone::clone)
    }

    pub fn is_coxeter_type(&self) -> bool {
        self.coxeter().is_ok()
    }

    /// Hermite basis (rows) of the coroot lattice `L_0`.
    pub fn coroot_lattice(&self) -> Result<IntMatrix, DatumError> {
        if self.is_truncated() {
            return Err(DatumError::Truncated);
        }
        if self.coroots.is_empty() {
            return Ok(IntMatrix::zeros(0, self.rank()));
        }
        Ok(hermite_basis(&IntMatrix::from_rows(&self.coroots))?)
    }

    /// Index `[L : L_0]` when `L_0` has full rank.
    pub fn coroot_lattice_index(&self) -> Result<Option<i128>, DatumError> {
        let b = self.coroot_lattice()?;
        if b.rows() != self.rank() {
            return Ok(None);
        }
        Ok(Some(b.det().abs()))
    }

    /// Rank of the span of the coroots.
    pub fn semisimple_rank(&self) -> usize {
        if self.coroots.is_empty() {
            return 0;
        }
        crate::linalg::rank(&IntMatrix::from_rows(&self.coroots)).unwrap_or(0)
    }

    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank() == self.rank()
    }

    /// Reflection index of the reflection with element index `e`.
    pub fn reflection_of_element(&self, e: usize) -> Option<usize> {
        self.refl.index_of_element(e)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical_spec()).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<RootDatum, DatumError> {
        let spec: DatumSpec = serde_json::from_str(s).map_err(|e| DatumError::Invalid(e.to_string()))?;
        Self::from_spec(spec)
    }

    /// Same datum over a different ring.
    pub fn base_change(&self, ring: BaseRing) -> Result<RootDatum, DatumError> {
        if self.is_truncated() {
            return Err(DatumError::Truncated);
        }
        let mut spec = self.canonical_spec();
        spec.ring = ring;
        let mut d = Self::from_spec(spec)?;
        if let Some(p) = ring.prime() {
            let base = self.name().split(" @").next().unwrap_or("datum").to_string();
            d.spec.name = Some(format!("{base} @{p}"));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> RootDatum {
        RootDatum::new("SU(2)", BaseRing::Integers, 1, vec![IntMatrix::from_rows(&[[-1]])], vec![(0, vec![1])]).unwrap()
    }

    #[test]
    fn roots_and_markings() {
        let d = su2();
        assert_eq!(d.root(0), &[-2]);
        assert_eq!(d.marking(0), RationalModZVector::from_ints(&[1], 2));
        let so3 = RootDatum::new("SO(3)", BaseRing::Integers, 1, vec![IntMatrix::from_rows(&[[-1]])], vec![(0, vec![2])]).unwrap();
        assert_eq!(so3.root(0), &[-1]);
        assert!(so3.marking(0).is_zero());
        assert_eq!(so3.coroot_lattice_index().unwrap(), Some(2));
        let odd = d.base_change(BaseRing::Padic(3)).unwrap();
        assert!(odd.marking(0).is_zero());
    }

    #[test]
    fn invalid_coroot_is_reported() {
        let spec = DatumSpec {
            name: None,
            ring: BaseRing::Integers,
            rank: 1,
            weyl_generators: vec![IntMatrix::from_rows(&[[-1]])],
            coroots: vec![CorootSpec { reflection_index: Some(0), reflection_matrix: None, coroot: vec![4] }],
            precision: None,
        };
        let rep = spec.validate();
        assert!(!rep.valid);
        assert!(RootDatum::from_spec(spec).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = su2();
        let back = RootDatum::from_json(&d.to_json()).unwrap();
        assert_eq!(back.coroots(), d.coroots());
    }
}
