use serde::Serialize;

use crate::datum::{BaseRing, RootDatum};
use crate::ext::{Action, DerivationCoefficients, ReflectionExtension};
use crate::groups::{Presentation, WeylGroup};
use crate::linalg::echelon::ExactEchelon;
use crate::linalg::int::{p_part, prime_divisors, valuation};
use crate::linalg::modular::{kernel_mod_prime_power, p_quotient_structure};
use crate::linalg::{rank, FinAbGroup, IntMatrix};

use super::bar::{BarComplex, LatticeClasses};
use super::fox::{h1_fox_torus, h1_truncated};
use super::{CohomologyError, CohomologyResult, Method};

const BOCKSTEIN_H1_ORDER: usize = 64;
const BAR_ENTRY_BUDGET: usize = 4_000_000;

fn visible(ring: BaseRing, orders: &[i64]) -> Vec<i64> {
    let kept: Vec<i64> = match ring {
        BaseRing::Integers => orders.to_vec(),
        BaseRing::Padic(p) => orders.iter().map(|&o| p_part(o as i128, p as i128) as i64).collect(),
    };
    FinAbGroup::from_orders(&kept).invariant_factors().to_vec()
}

fn row(d: &RootDatum, degree: usize, invariant_factors: Vec<i64>, method: Method, k: Option<u32>) -> CohomologyResult {
    CohomologyResult { group: format!("W({})", d.name()), coefficients: "T".into(), degree, invariant_factors, method, stabilization_k: k }
}

fn exact_only(d: &RootDatum, what: &str) -> Result<(), CohomologyError> {
    if d.is_truncated() {
        Err(CohomologyError::NotApplicable(format!("{what} needs an integral model of the action")))
    } else {
        Ok(())
    }
}

fn presentation(d: &RootDatum) -> Presentation {
    match d.coxeter() {
        Ok(c) => c.presentation(d.weyl()),
        Err(_) => Presentation::from_cayley(d.weyl()),
    }
}

/// `(p, k)` pairs used by the truncation route: `k = v_p(|W|) + 1` for
/// integral models, and the two largest levels allowed by the precision otherwise.
pub fn truncation_levels(d: &RootDatum) -> Vec<(i64, u32)> {
    let order = d.weyl().order() as i128;
    match (d.ring(), d.precision()) {
        (BaseRing::Padic(p), Some(prec)) => vec![(p, prec / 2 - 1)],
        (BaseRing::Padic(p), None) => vec![(p, valuation(order, p as i128) + 1)],
        (BaseRing::Integers, _) => prime_divisors(order as u64).into_iter().map(|p| (p as i64, valuation(order, p as i128) + 1)).collect(),
    }
}

fn truncated_group(w: &WeylGroup, gens: &[usize], action: &Action, levels: &[(i64, u32)]) -> Result<(Vec<i64>, u32), CohomologyError> {
    let mut acc = FinAbGroup::trivial();
    let mut kmax = 0;
    for &(p, k) in levels {
        let a = h1_truncated(w, gens, action, p, k)?.group;
        let b = h1_truncated(w, gens, action, p, k + 1)?.group;
        if a != b {
            return Err(CohomologyError::Unstable {
                k,
                next: k + 1,
                first: a.invariant_factors().to_vec(),
                second: b.invariant_factors().to_vec(),
            });
        }
        acc = acc.product(&a);
        kmax = kmax.max(k);
    }
    Ok((acc.invariant_factors().to_vec(), kmax))
}

/// `H¹(W; T̆)` by the requested method.
pub fn h1_torus(d: &RootDatum, method: Method) -> Result<CohomologyResult, CohomologyError> {
    let w = d.weyl();
    let action = Action::of_group(w);
    match method {
        Method::Bockstein => {
            exact_only(d, "the Bockstein route")?;
            if w.order() > BOCKSTEIN_H1_ORDER {
                return Err(CohomologyError::Budget(format!("bar H^2(W; L) for |W| = {}; use the Fox route", w.order())));
            }
            let cl = BarComplex::whole(w, &action).lattice_cohomology(2)?;
            Ok(row(d, 1, visible(d.ring(), &cl.orders), method, None))
        }
        Method::Fox => {
            exact_only(d, "the Fox route over Q/Z")?;
            let f = h1_fox_torus(w, &presentation(d), &action)?;
            Ok(row(d, 1, visible(d.ring(), &f), method, None))
        }
        Method::Truncated => {
            let (g, k) = truncated_group(w, w.generators(), &action, &truncation_levels(d))?;
            Ok(row(d, 1, visible(d.ring(), &g), method, Some(k)))
        }
        Method::Bar | Method::Direct => Err(CohomologyError::NotApplicable(format!("{method} for H^1(W; T)"))),
    }
}

/// `H¹(W; T̆)` by truncation at explicit `(p, k)` levels, checked against `k + 1`.
pub fn h1_torus_at(d: &RootDatum, levels: &[(i64, u32)]) -> Result<CohomologyResult, CohomologyError> {
    let w = d.weyl();
    let (g, k) = truncated_group(w, w.generators(), &Action::of_group(w), levels)?;
    Ok(row(d, 1, visible(d.ring(), &g), Method::Truncated, Some(k)))
}

/// Every applicable route for `H¹(W; T̆)`.
pub fn h1_torus_all_methods(d: &RootDatum) -> Result<Vec<CohomologyResult>, CohomologyError> {
    let mut out = Vec::new();
    if !d.is_truncated() {
        if d.weyl().order() <= BOCKSTEIN_H1_ORDER {
            out.push(h1_torus(d, Method::Bockstein)?);
        }
        out.push(h1_torus(d, Method::Fox)?);
    }
    if d.weyl().order() <= 2048 {
        out.push(h1_torus(d, Method::Truncated)?);
    }
    Ok(out)
}

fn bar_budget(w: usize, n: usize, j: usize) -> Result<(), CohomologyError> {
    let rows = n * (w - 1).pow(j as u32 + 1);
    let cols = n * (w - 1).pow(j as u32);
    if rows.saturating_mul(cols) > BAR_ENTRY_BUDGET {
        return Err(CohomologyError::Budget(format!("bar coboundary of size {rows} x {cols}")));
    }
    Ok(())
}

/// `H²(W; T̆) = H³(W; L)` from bar cochains.
pub fn h2_torus(d: &RootDatum) -> Result<CohomologyResult, CohomologyError> {
    exact_only(d, "H^2 by bar cochains")?;
    let w = d.weyl();
    bar_budget(w.order(), d.rank(), 2)?;
    let action = Action::of_group(w);
    let cl = BarComplex::whole(w, &action).lattice_cohomology(3)?;
    Ok(row(d, 2, visible(d.ring(), &cl.orders), Method::Bockstein, None))
}

/// `H¹(⟨σ⟩; T̆)` for reflection `r`.
pub fn h1_reflection(d: &RootDatum, r: usize, method: Method) -> Result<CohomologyResult, CohomologyError> {
    let w = d.weyl();
    let s = d.reflections().get(r).element;
    let label = |f: Vec<i64>, k: Option<u32>| CohomologyResult {
        group: format!("<s{r}> in W({})", d.name()),
        coefficients: "T".into(),
        degree: 1,
        invariant_factors: f,
        method,
        stabilization_k: k,
    };
    match method {
        Method::Direct => {
            if d.is_truncated() {
                let n = d.rank();
                let plus = d.reflections().get(r).matrix.one_plus();
                let rows: Vec<Vec<i128>> = (0..n).map(|i| plus.row(i).iter().map(|&x| x as i128).collect()).collect();
                let j = d.precision().unwrap_or(2) - 1;
                let ker = kernel_mod_prime_power(&rows, n, 2, j);
                let size = p_quotient_structure(&ker, &[], n, 2, j)?.order() >> j;
                let count = size.trailing_zeros() as usize;
                return Ok(label(vec![2; count], Some(j)));
            }
            let minus = d.torus_minus(r)?;
            let minus0 = d.torus_minus_identity(r)?;
            let q = d.ring().torsion_part(&minus.quotient_by(&minus0)?);
            Ok(label(q.invariant_factors().to_vec(), None))
        }
        Method::Bockstein => {
            exact_only(d, "the Bockstein route")?;
            let action = Action::of_group(w);
            let cl = BarComplex::new(w, &action, &[w.identity(), s]).lattice_cohomology(2)?;
            Ok(label(visible(d.ring(), &cl.orders), None))
        }
        Method::Truncated => {
            let sub = WeylGroup::generate(&[w.matrix(s).clone()], w.modulus(), 4)?;
            let action = Action::of_group(&sub);
            let levels: Vec<(i64, u32)> = match (d.ring(), d.precision()) {
                (BaseRing::Padic(p), Some(prec)) => vec![(p, prec / 2 - 1)],
                (ring, _) => vec![(ring.prime().unwrap_or(2), 2)],
            };
            let (g, k) = truncated_group(&sub, sub.generators(), &action, &levels)?;
            Ok(label(visible(d.ring(), &g), Some(k)))
        }
        Method::Fox | Method::Bar => Err(CohomologyError::NotApplicable(format!("{method} for H^1(<s>; T)"))),
    }
}

/// Induced map on cohomology, on invariant-factor generators.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionMap {
    pub degree: usize,
    pub source: Vec<i64>,
    pub targets: Vec<Vec<i64>>,
    /// Column `j` holds the image of source generator `j` in target coordinates.
    pub matrix: Vec<Vec<i64>>,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
}

fn visible_classes(ring: BaseRing, cl: LatticeClasses) -> LatticeClasses {
    let BaseRing::Padic(p) = ring else { return cl };
    let mut orders = Vec::new();
    let mut reps = Vec::new();
    for (o, x) in cl.orders.iter().zip(cl.representatives) {
        let pp = p_part(*o as i128, p as i128) as i64;
        if pp > 1 {
            let scale = o / pp;
            orders.push(pp);
            reps.push(x.iter().map(|v| v * scale).collect());
        }
    }
    LatticeClasses { degree: cl.degree, orders, representatives: reps }
}

fn combos(orders: &[i64], limit: usize) -> Result<Vec<Vec<i64>>, CohomologyError> {
    let total: i128 = orders.iter().map(|&o| o as i128).product();
    if total > limit as i128 {
        return Err(CohomologyError::Budget(format!("enumerating a group of order {total}")));
    }
    let mut out = vec![vec![]];
    for &o in orders {
        out = out.into_iter().flat_map(|c| (0..o).map(move |x| [c.clone(), vec![x]].concat())).collect();
    }
    Ok(out)
}

fn lin(reps: &[Vec<i64>], c: &[i64], len: usize) -> Vec<i128> {
    let mut v = vec![0i128; len];
    for (r, &k) in reps.iter().zip(c) {
        for (a, &x) in v.iter_mut().zip(r) {
            *a += k as i128 * x as i128;
        }
    }
    v
}

/// Restriction `H^i(W; T̆) → ∏ H^i(W_j; T̆)` for subgroups given by their elements.
pub fn restriction_torus(d: &RootDatum, degree: usize, subgroups: &[Vec<usize>]) -> Result<RestrictionMap, CohomologyError> {
    exact_only(d, "restriction by bar cochains")?;
    let w = d.weyl();
    let j = degree + 1;
    bar_budget(w.order(), d.rank(), j - 1)?;
    let action = Action::of_group(w);
    let whole = BarComplex::whole(w, &action);
    let src = visible_classes(d.ring(), whole.lattice_cohomology(j)?);
    let mut targets = Vec::new();
    let mut matrix: Vec<Vec<i64>> = Vec::new();
    let mut target_data = Vec::new();
    for elems in subgroups {
        let sub = BarComplex::new(w, &action, elems);
        let cl = visible_classes(d.ring(), sub.lattice_cohomology(j)?);
        let b = sub.coboundaries(j)?;
        targets.push(cl.orders.clone());
        target_data.push((sub, cl, b));
    }
    // image of each source generator, as coordinates in every target
    let mut images: Vec<Vec<i64>> = Vec::new();
    for x in &src.representatives {
        let mut coords = Vec::new();
        for (sub, cl, b) in &target_data {
            let y = sub.restrict_from(&whole, j, x);
            let len = y.len();
            let found = combos(&cl.orders, 1 << 12)?.into_iter().find(|c| {
                let z = lin(&cl.representatives, c, len);
                let diff: Vec<i128> = y.iter().zip(&z).map(|(&a, &b)| a as i128 - b).collect();
                b.contains(&diff)
            });
            coords.extend(found.ok_or_else(|| CohomologyError::Inconsistent("restricted class not found".into()))?);
        }
        images.push(coords);
    }
    let tgt_orders: Vec<i64> = targets.iter().flatten().copied().collect();
    for (r, _) in tgt_orders.iter().enumerate() {
        matrix.push(images.iter().map(|col| col[r]).collect());
    }
    let mut seen = std::collections::HashSet::new();
    let mut kernel = 0usize;
    for c in combos(&src.orders, 1 << 12)? {
        let img: Vec<i64> = tgt_orders
            .iter()
            .enumerate()
            .map(|(r, &o)| images.iter().zip(&c).map(|(col, &k)| col[r] * k).sum::<i64>().rem_euclid(o))
            .collect();
        if img.iter().all(|&x| x == 0) {
            kernel += 1;
        }
        seen.insert(img);
    }
    let target_order: i128 = tgt_orders.iter().map(|&o| o as i128).product();
    let injective = kernel == 1;
    let surjective = seen.len() as i128 == target_order;
    Ok(RestrictionMap { degree, source: src.orders, targets, matrix, injective, surjective, isomorphism: injective && surjective })
}

/// Whether `H¹(W; T̆) → H¹(W₁; T̆)` is injective, on the truncation image at level `k`.
pub fn transfer_injective(d: &RootDatum, sub_elements: &[usize], p: i64, k: u32) -> Result<bool, CohomologyError> {
    let w = d.weyl();
    let action = Action::of_group(w);
    let gens = w.generators().to_vec();
    let t = h1_truncated(w, &gens, &action, p, k)?;
    let pi = p as i128;
    let m = t.modulus;
    let n = d.rank();
    let dc = DerivationCoefficients::new(w, &gens, &action);
    let sub = WeylGroup::generate(&sub_elements.iter().map(|&e| w.matrix(e).clone()).collect::<Vec<_>>(), w.modulus(), w.order())?;
    let sub_gens: Vec<usize> = sub.generators().iter().map(|&g| w.index_of(sub.matrix(g)).expect("subgroup element")).collect();
    let res = |f: &[i128]| -> Vec<i128> {
        let mut out = Vec::new();
        for &h in &sub_gens {
            for i in 0..n {
                let v: i128 = (0..f.len()).map(|c| dc.coeffs[h].get(i, c) as i128 * f[c]).sum();
                out.push(v.rem_euclid(m));
            }
        }
        out
    };
    let ambient: Vec<Vec<i128>> = t.derivations.iter().chain(&t.principal).cloned().collect();
    let mut p1: Vec<Vec<i128>> = Vec::new();
    for b in 0..n {
        let mut v = Vec::new();
        for &h in &sub_gens {
            let om = w.matrix(h).one_minus();
            v.extend((0..n).map(|a| (om.get(a, b) as i128).rem_euclid(m)));
        }
        p1.push(v);
    }
    // (λ, μ) with res(Σ λ_i a_i) = Σ μ_j p1_j
    let rows_len = sub_gens.len() * n;
    let ncols = ambient.len() + p1.len();
    let images: Vec<Vec<i128>> = ambient.iter().map(|a| res(a)).collect();
    let rows: Vec<Vec<i128>> =
        (0..rows_len).map(|r| images.iter().map(|im| im[r]).chain(p1.iter().map(|q| (-q[r]).rem_euclid(m))).collect()).collect();
    let kernel = kernel_mod_prime_power(&rows, ncols, pi, 2 * k);
    let elems: Vec<Vec<i128>> = kernel
        .iter()
        .map(|lm| {
            let mut v = vec![0i128; ambient[0].len()];
            for (a, &l) in ambient.iter().zip(lm) {
                for (x, y) in v.iter_mut().zip(a) {
                    *x = (*x + l * y).rem_euclid(m);
                }
            }
            v
        })
        .collect();
    Ok(p_quotient_structure(&elems, &t.principal, ambient[0].len(), pi, 2 * k)?.is_trivial())
}

/// Certificate that `t ↦ ((1 - σ) t)_{σ ∈ S}` maps `T` onto `∏ T₀⁻(σ)`.
#[derive(Clone, Debug, Serialize)]
pub struct TsurjCertificate {
    pub datum: String,
    pub simple_reflections: usize,
    pub rank_of_map: usize,
    pub kernel_dimension: usize,
    pub fixed_dimension: usize,
    pub surjective: bool,
}

pub fn tsurj_check(d: &RootDatum) -> Result<TsurjCertificate, CohomologyError> {
    exact_only(d, "the surjectivity certificate")?;
    let cox = d.coxeter()?;
    let n = d.rank();
    let w = d.weyl();
    let mut rows = Vec::new();
    for &r in &cox.simple_reflections {
        let rf = d.reflections().get(r);
        let line = rf.line.as_ref().expect("exact reflection");
        let om = rf.matrix.one_minus();
        let i = line.iter().position(|&x| x != 0).expect("nonzero line");
        // (1 - σ) = line ⊗ ℓ
        rows.push((0..n).map(|j| om.get(i, j) / line[i]).collect::<Vec<i64>>());
    }
    let m = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&rows) };
    let rk = if rows.is_empty() { 0 } else { rank(&m)? };
    let stacked = w.generator_matrices().iter().fold(IntMatrix::zeros(0, n), |acc, g| acc.vstack(&g.one_minus()));
    let fixed = n - if stacked.rows() == 0 { 0 } else { rank(&stacked)? };
    Ok(TsurjCertificate {
        datum: d.name().to_string(),
        simple_reflections: rows.len(),
        rank_of_map: rk,
        kernel_dimension: n - rk,
        fixed_dimension: fixed,
        surjective: rk == rows.len() && n - rk == fixed,
    })
}

/// `H²(Γ; (Z/p^k)^r)` for `Γ ≤ W` given by its elements.
pub fn finite_group_h2(w: &WeylGroup, elems: &[usize], action: &Action, p: i64, k: u32) -> Result<FinAbGroup, CohomologyError> {
    let bar = BarComplex::new(w, action, elems);
    bar_budget(bar.group_order(), action.dim, 2)?;
    bar.finite_cohomology(2, p, k)
}

/// Orders of the transferred class of reflection class `c` in `H²(W; Z[Σ])`
/// and of its base class in `H²(C_W(τ); Z)`.
pub fn shapiro_class_order(rho: &ReflectionExtension, class: usize) -> Result<(i64, i64), CohomologyError> {
    let w = rho.weyl();
    bar_budget(w.order(), rho.rank(), 2)?;
    let action = rho.action();
    let bar = BarComplex::whole(w, &action);
    let n = rho.rank();
    let members: Vec<usize> = rho.reflections().classes[class].clone();
    let mut x = vec![0i64; bar.dim(2)];
    let nonid: Vec<usize> = (1..w.order()).collect();
    for (a, &g) in nonid.iter().enumerate() {
        for (b, &h) in nonid.iter().enumerate() {
            let v = rho.value(g, h);
            for &k in &members {
                x[(a * nonid.len() + b) * n + k] = v[k];
            }
        }
    }
    let in_w = class_order(&bar, &x)?;
    let tau = members[0];
    let cent = w.centralizer(rho.reflections().get(tau).element);
    let triv = Action { dim: 1, matrices: vec![IntMatrix::identity(1); w.order()], modulus: None };
    let cbar = BarComplex::new(w, &triv, &cent);
    let cn: Vec<usize> = cent.iter().copied().filter(|&e| e != 0).collect();
    let mut y = vec![0i64; cbar.dim(2)];
    for (a, &g) in cn.iter().enumerate() {
        for (b, &h) in cn.iter().enumerate() {
            y[a * cn.len() + b] = rho.value(g, h)[tau];
        }
    }
    Ok((in_w, class_order(&cbar, &y)?))
}

fn class_order(bar: &BarComplex<'_>, x: &[i64]) -> Result<i64, CohomologyError> {
    let d2 = bar.coboundary_rows(2);
    if d2.iter().any(|r| r.iter().map(|&(c, v)| v as i128 * x[c] as i128).sum::<i128>() != 0) {
        return Err(CohomologyError::Inconsistent("not a cocycle".into()));
    }
    let b: ExactEchelon<()> = bar.coboundaries(2)?;
    for m in 1..=bar.group_order() as i64 {
        let v: Vec<i128> = x.iter().map(|&a| a as i128 * m as i128).collect();
        if b.contains(&v) {
            return Ok(m);
        }
    }
    Err(CohomologyError::Inconsistent("class order exceeds the group order".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;
    use crate::linalg::RationalModZVector;
    use std::sync::Arc;

    fn factors(r: CohomologyResult) -> Vec<i64> {
        r.invariant_factors
    }

    #[test]
    fn rank_one() {
        let su2 = catalog::su(2).unwrap();
        for m in [Method::Bockstein, Method::Fox, Method::Truncated] {
            assert!(factors(h1_torus(&su2, m).unwrap()).is_empty());
        }
        assert!(factors(h1_reflection(&su2, 0, Method::Direct).unwrap()).is_empty());
    }

    #[test]
    fn spin5_values() {
        let d = catalog::spin(5).unwrap();
        for r in h1_torus_all_methods(&d).unwrap() {
            assert_eq!(r.invariant_factors, vec![2], "{r}");
        }
        assert_eq!(factors(h2_torus(&d).unwrap()), vec![2, 2]);
        let mut per: Vec<Vec<i64>> = (0..d.reflections().len())
            .map(|r| {
                let a = factors(h1_reflection(&d, r, Method::Direct).unwrap());
                assert_eq!(a, factors(h1_reflection(&d, r, Method::Bockstein).unwrap()));
                assert_eq!(a, factors(h1_reflection(&d, r, Method::Truncated).unwrap()));
                a
            })
            .collect();
        per.sort();
        per.dedup();
        assert_eq!(per, vec![vec![], vec![2]]);
    }

    #[test]
    fn surjectivity_certificates() {
        for name in ["SU(2)xSU(2)", "SU(3)", "SO(5)", "G2", "F4", "torus(2)"] {
            let c = tsurj_check(&catalog::by_name(name).unwrap()).unwrap();
            assert!(c.surjective, "{name}: {c:?}");
        }
    }

    #[test]
    fn finite_h2_examples() {
        let z2 = WeylGroup::generate(&[IntMatrix::from_rows(&[[-1]])], None, 4).unwrap();
        let triv = |n: usize| Action { dim: 1, matrices: vec![IntMatrix::identity(1); n], modulus: None };
        assert_eq!(finite_group_h2(&z2, &[0, 1], &triv(2), 2, 1).unwrap().invariant_factors(), &[2]);
        let z3 = WeylGroup::generate(&[IntMatrix::from_rows(&[[0, -1], [1, -1]])], None, 4).unwrap();
        assert!(finite_group_h2(&z3, &[0, 1, 2], &triv(3), 2, 1).unwrap().is_trivial());
        assert!(finite_group_h2(&z3, &[0], &triv(3), 2, 1).unwrap().is_trivial());
    }

    #[test]
    fn shapiro_classes_have_order_two() {
        for name in ["SU(2)", "SU(3)", "SO(5)"] {
            let d = catalog::by_name(name).unwrap();
            let rho = ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone())).unwrap();
            for c in 0..d.reflections().classes.len() {
                assert_eq!(shapiro_class_order(&rho, c).unwrap(), (2, 2), "{name}");
            }
        }
    }

    fn half_points(d: &RootDatum) -> Vec<RationalModZVector> {
        let n = d.rank();
        (1..1u32 << n)
            .map(|mask| {
                let v: Vec<String> = (0..n).map(|i| if mask >> i & 1 == 1 { "1/2".into() } else { "0".into() }).collect();
                RationalModZVector::parse(&v.iter().map(String::as_str).collect::<Vec<_>>()).unwrap()
            })
            .collect()
    }

    fn sub_elements(d: &RootDatum, c: &RootDatum) -> Vec<usize> {
        let w = d.weyl();
        c.weyl().elements().iter().map(|m| w.index_of(m).unwrap()).collect()
    }

    #[test]
    fn b2_family_restrictions() {
        let p2 = BaseRing::Padic(2);
        let spin5 = catalog::spin(5).unwrap().base_change(p2).unwrap();
        let su2sq = catalog::product(&catalog::su(2).unwrap(), &catalog::su(2).unwrap()).unwrap().base_change(p2).unwrap();
        let c = half_points(&spin5)
            .into_iter()
            .map(|a| spin5.centralizer_subdatum(&[a]).unwrap())
            .find(|c| c.is_isomorphic(&su2sq).unwrap().is_some())
            .expect("SU(2)^2 centralizer");
        let map = restriction_torus(&spin5, 2, &[sub_elements(&spin5, &c)]).unwrap();
        assert_eq!((map.source.clone(), map.targets.clone()), (vec![2, 2], vec![vec![2, 2, 2, 2]]));
        assert!(map.injective);

        let so5 = catalog::so(5).unwrap().base_change(p2).unwrap();
        let half = |v: &[&str]| RationalModZVector::parse(v).unwrap();
        let c1 = so5.centralizer_subdatum(&[half(&["1/2", "1/2"])]).unwrap();
        let c2 = so5.centralizer_subdatum(&[half(&["1/2", "0"])]).unwrap();
        let map = restriction_torus(&so5, 2, &[sub_elements(&so5, &c1), sub_elements(&so5, &c2)]).unwrap();
        assert_eq!(map.targets, vec![vec![2], vec![2]]);
        assert!(map.isomorphism, "{map:?}");

        let q = catalog::spin5_circle_quotient().unwrap().base_change(p2).unwrap();
        assert_eq!(factors(h1_torus(&q, Method::Bockstein).unwrap()), vec![2, 2]);
        let classes = &q.reflections().classes;
        let subs: Vec<Vec<usize>> = classes.iter().map(|c| vec![0, q.reflections().get(c[0]).element]).collect();
        let map = restriction_torus(&q, 1, &subs).unwrap();
        assert!(map.isomorphism, "{map:?}");
    }

    #[test]
    fn odd_primes_see_nothing() {
        for name in ["SU(3)", "Spin(5)", "G2"] {
            for p in [3, 5, 7] {
                let d = catalog::by_name(name).unwrap().base_change(BaseRing::Padic(p)).unwrap();
                for r in h1_torus_all_methods(&d).unwrap() {
                    assert!(r.invariant_factors.is_empty(), "{name} at {p}: {r}");
                }
            }
        }
    }

    #[test]
    fn di4_truncated() {
        let d = catalog::di4(catalog::DI4_PRECISION).unwrap();
        let r = h1_torus(&d, Method::Truncated).unwrap();
        assert_eq!((r.invariant_factors.clone(), r.stabilization_k), (vec![2], Some(4)));
        for c in &d.reflections().classes {
            assert_eq!(factors(h1_reflection(&d, c[0], Method::Truncated).unwrap()), vec![2]);
            assert_eq!(factors(h1_reflection(&d, c[0], Method::Direct).unwrap()), vec![2]);
        }
        let half = RationalModZVector::parse(&["1/2", "0", "0"]).unwrap();
        let c = d.centralizer_subdatum(&[half]).unwrap();
        assert!(transfer_injective(&d, &sub_elements(&d, &c), 2, 4).unwrap());
    }
}
