use serde::Serialize;

use crate::datum::BaseRing;
use crate::linalg::modular::{kernel_mod_prime_power, p_quotient_structure};
use crate::linalg::solve::solve_qz_rows;
use crate::linalg::{kernel_basis, solve_qz, solve_z, IntMatrix, Qz, RationalModZVector, TorusSubgroup};

use super::module::torsion_rows;
use super::normalizer::{ExtElement, NormalizerExtension};
use super::reflection::reflection_line;
use super::ExtError;

/// The subgroup `ν̆(D)_σ`: an extension of `⟨σ⟩` by `T̆₀⁻(σ)`.
#[derive(Clone, Debug, Serialize)]
pub struct RootSubgroup {
    pub reflection: usize,
    /// Coset representative `x = (t, σ)` with `x² = h_σ`.
    pub x: ExtElement,
    /// Primitive generator of the `-1` eigenline; `T̆₀⁻(σ) = line ⊗ Q/Z`.
    pub line: Vec<i64>,
    /// Precision of `line` for truncated data.
    pub line_precision: Option<i64>,
}

fn sigma_matrix(n: &NormalizerExtension, r: usize) -> (usize, IntMatrix) {
    let rf = n.datum().reflections().get(r);
    (rf.element, rf.matrix.clone())
}

fn rows_of(m: &IntMatrix, rhs: &RationalModZVector) -> Vec<(Vec<i128>, Qz)> {
    (0..m.rows()).map(|i| (m.row(i).iter().map(|&x| x as i128).collect(), rhs.0[i])).collect()
}

/// Solve `A t = b` over `Q/Z`, restricted to `m`-torsion when `modulus` is set.
fn solve_torus(a: &IntMatrix, b: &RationalModZVector, modulus: Option<i64>) -> Result<Option<RationalModZVector>, ExtError> {
    let mut rows = rows_of(&a.clone(), b);
    rows.extend(torsion_rows(a.cols(), modulus));
    Ok(solve_qz_rows(a.cols(), rows)?.map(|s| s.x))
}

/// Whether `y` lies on `line ⊗ Q/Z` (at the given precision).
pub fn on_line(line: &[i64], y: &RationalModZVector, prec: Option<i64>) -> Result<bool, ExtError> {
    let a = IntMatrix::from_cols(&[line.to_vec()]);
    match prec {
        None => Ok(solve_qz(&a, y)?.is_some()),
        Some(m) => {
            if m % y.order() != 0 {
                return Err(ExtError::Precision(format!("point {y} exceeds precision {m}")));
            }
            let mut rows = rows_of(&a, y);
            rows.extend(torsion_rows(1, Some(m)));
            Ok(solve_qz_rows(1, rows)?.is_some())
        }
    }
}

/// `x_σ` is the image of an element `(a, σ) ∈ ρ(W)` with `(a, σ)² = σ`, so the
/// family `σ ↦ ν̆(D)_σ` is conjugation covariant.
pub fn root_subgroup(n: &NormalizerExtension, r: usize) -> Result<RootSubgroup, ExtError> {
    let d = n.datum();
    let (s, _) = sigma_matrix(n, r);
    let rho = n.reflection_extension();
    let k = rho.rank();
    let mut rhs: Vec<i64> = rho.value(s, s).iter().map(|x| -x).collect();
    rhs[r] += 1;
    let a = solve_z(&IntMatrix::identity(k).add(&rho.permutation_matrix(s)), &rhs)?.ok_or(ExtError::NoRootSubgroup(r))?;
    let t = a.x.iter().enumerate().fold(RationalModZVector::zero(d.rank()), |acc, (j, &c)| acc.add(&d.marking(j).scale(c as i128)));
    let x = ExtElement { t, w: s };
    if n.mul(&x, &x) != n.torus(d.marking(r)) {
        return Err(ExtError::NoRootSubgroup(r));
    }
    let (line, line_precision) = reflection_line(d.weyl(), d.reflections(), r);
    Ok(RootSubgroup { reflection: r, x, line, line_precision })
}

pub fn root_subgroups(n: &NormalizerExtension) -> Result<Vec<RootSubgroup>, ExtError> {
    (0..n.datum().reflections().len()).map(|r| root_subgroup(n, r)).collect()
}

impl RootSubgroup {
    /// Whether `y` lies in `T̆₀⁻(σ)`.
    pub fn contains_torus(&self, y: &RationalModZVector) -> Result<bool, ExtError> {
        on_line(&self.line, y, self.line_precision)
    }

    /// Whether `g` lies in the subgroup.
    pub fn contains(&self, n: &NormalizerExtension, g: &ExtElement) -> Result<bool, ExtError> {
        if g.w == n.datum().weyl().identity() {
            self.contains_torus(&g.t)
        } else if g.w == self.x.w {
            self.contains_torus(&g.t.sub(&self.x.t))
        } else {
            Ok(false)
        }
    }
}

/// `{y² : y ∈ ν̆(D)_σ \ T̆₀⁻(σ)}`.
///
/// Every such `y` is `u x` with `u ∈ T̆₀⁻(σ)` and `(u x)² = (1 + σ) u + x²`;
/// the first term vanishes because `σ` negates the line. That identity is
/// checked exactly, then the set is sampled on torsion points of the line.
pub fn square_set(n: &NormalizerExtension, rs: &RootSubgroup) -> Result<Vec<RationalModZVector>, ExtError> {
    let d = n.datum();
    let m = &d.reflections().get(rs.reflection).matrix;
    let killed = m.one_plus().mul_vec(&rs.line);
    let vanishes = match rs.line_precision {
        None => killed.iter().all(|&x| x == 0),
        Some(p) => killed.iter().all(|&x| x.rem_euclid(p) == 0),
    };
    if !vanishes {
        return Err(ExtError::Inconsistent(format!("reflection {} does not negate its line", rs.reflection)));
    }
    let sq = n.mul(&rs.x, &rs.x).t;
    let den = rs.line_precision.unwrap_or(12).min(16);
    for a in 0..den {
        let u = RationalModZVector::from_ints(&rs.line.iter().map(|&c| c * a).collect::<Vec<_>>(), den);
        let y = n.mul(&n.torus(u), &rs.x);
        let y2 = n.mul(&y, &y);
        if y2.w != d.weyl().identity() || y2.t != sq {
            return Err(ExtError::Inconsistent(format!("square of {y} is {y2}")));
        }
    }
    Ok(vec![sq])
}

fn visible(ring: BaseRing, t: &RationalModZVector) -> RationalModZVector {
    ring.torsion_point(t)
}

fn nontrivial_mod_two(m: &IntMatrix) -> bool {
    m.one_minus().data().iter().any(|x| x.rem_euclid(2) != 0)
}

/// Recover `h_σ` from the extension alone: the unique element of
/// `T̆₀⁻(σ) ∩ {x² : x over σ}` satisfying the marking conditions.
///
/// Only `ν(σ, σ)` and the action of `σ` are consulted.
pub fn recover_marking(n: &NormalizerExtension, r: usize) -> Result<RationalModZVector, ExtError> {
    let d = n.datum();
    let ring = d.ring();
    let (s, m) = sigma_matrix(n, r);
    let v = n.cocycle(s, s);
    let nonzero_required = nontrivial_mod_two(&m) && !ring.two_invertible();
    let (line, prec) = reflection_line(d.weyl(), d.reflections(), r);
    let mut candidates: Vec<RationalModZVector> = Vec::new();
    match n.modulus() {
        None => {
            // y = v + K z ∈ T₀⁻ with K spanning ker(1 - σ)
            let k = kernel_basis(&m.one_minus())?;
            let ann_minus = kernel_basis(&IntMatrix::from_rows(std::slice::from_ref(&line)))?.transpose();
            let rhs = v.apply(&ann_minus, None).neg();
            let sys = ann_minus.mul(&k);
            let sol = solve_qz(&sys, &rhs)?.ok_or(ExtError::NoMarking(r))?;
            let mut zs = vec![sol.x.clone()];
            for f in &sol.finite {
                let ord = f.order();
                let mut next = Vec::new();
                for z in &zs {
                    for c in 0..ord {
                        next.push(z.add(&f.scale(c as i128)));
                    }
                }
                zs = next;
                if zs.len() > 1 << 16 {
                    return Err(ExtError::Inconsistent("candidate set too large".into()));
                }
            }
            for z in zs {
                let y = visible(ring, &v.add(&z.apply(&k, None)));
                if !candidates.contains(&y) {
                    candidates.push(y);
                }
            }
        }
        Some(md) => {
            let kk = md / 2;
            let half: Vec<i64> = line.iter().map(|&c| c.rem_euclid(2)).collect();
            for y in [RationalModZVector::zero(d.rank()), RationalModZVector::from_ints(&half, 2)] {
                // y - v ∈ (1 + σ) T̆, searched over kk-torsion
                let mut rows = rows_of(&m.one_plus(), &y.sub(&v));
                rows.extend(torsion_rows(d.rank(), Some(kk)));
                if solve_qz_rows(d.rank(), rows)?.is_some() && !candidates.contains(&y) {
                    candidates.push(y);
                }
            }
            let _ = prec;
        }
    }
    candidates.retain(|y| y.order() <= 2 && !(nonzero_required && y.is_zero()));
    match candidates.len() {
        1 => Ok(candidates.pop().expect("one candidate")),
        0 => Err(ExtError::NoMarking(r)),
        _ => Err(ExtError::AmbiguousMarking(r, candidates)),
    }
}

/// The set of subgroups `H = ⟨T̆₀⁻(σ), t x⟩`, `t ∈ T̆⁻(σ)`, as a torsor under
/// `T̆⁻(σ)/T̆₀⁻(σ) = H¹(⟨σ⟩; T̆)`.
#[derive(Clone, Debug, Serialize)]
pub struct Torsor {
    pub reflection: usize,
    /// Representatives `t` of `T̆⁻(σ)/T̆₀⁻(σ)`; the subgroups are `⟨T̆₀⁻, t x⟩`.
    pub translations: Vec<RationalModZVector>,
    pub generators: Vec<ExtElement>,
    /// Order of `T̆⁻(σ)/T̆₀⁻(σ)` computed independently.
    pub group_order: i128,
    /// Every generator squares to `h_σ` and the translation action is regular.
    pub verified: bool,
}

impl Torsor {
    pub fn len(&self) -> usize {
        self.translations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translations.is_empty()
    }
}

fn dedupe_mod_line(points: Vec<RationalModZVector>, rs: &RootSubgroup) -> Result<Vec<RationalModZVector>, ExtError> {
    let mut out: Vec<RationalModZVector> = Vec::new();
    for p in points {
        let mut new = true;
        for q in &out {
            if rs.contains_torus(&p.sub(q))? {
                new = false;
                break;
            }
        }
        if new {
            out.push(p);
        }
    }
    Ok(out)
}

fn span(gens: &[RationalModZVector], dim: usize, limit: usize) -> Result<Vec<RationalModZVector>, ExtError> {
    let mut pts = vec![RationalModZVector::zero(dim)];
    for g in gens {
        let ord = g.order();
        let mut next = Vec::new();
        for p in &pts {
            for c in 0..ord {
                let q = p.add(&g.scale(c as i128));
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        pts = next;
        if pts.len() > limit {
            return Err(ExtError::Inconsistent("torsion span too large".into()));
        }
    }
    Ok(pts)
}

pub fn torsor(n: &NormalizerExtension, rs: &RootSubgroup) -> Result<Torsor, ExtError> {
    let d = n.datum();
    let ring = d.ring();
    let dim = d.rank();
    let m = d.reflections().get(rs.reflection).matrix.clone();
    let (points, group_order) = match n.modulus() {
        None => {
            let minus = TorusSubgroup::from_annihilator(&m.one_plus())?;
            let minus0 = TorusSubgroup::from_generators(dim, &IntMatrix::from_cols(std::slice::from_ref(&rs.line)), &[])?;
            let order = ring.torsion_part(&minus.quotient_by(&minus0)?).order();
            let gens: Vec<RationalModZVector> = minus.finite_generators().iter().map(|g| visible(ring, g)).collect();
            (span(&gens, dim, 1 << 12)?, order)
        }
        Some(md) => {
            let k = md.trailing_zeros();
            let p = 2i128;
            // |ker_{2^j}(1 + σ)| / 2^j at two levels
            let plus = m.one_plus();
            let rows: Vec<Vec<i128>> = (0..dim).map(|i| plus.row(i).iter().map(|&x| x as i128).collect()).collect();
            let mut counts = Vec::new();
            for j in [k - 2, k - 1] {
                let ker = kernel_mod_prime_power(&rows, dim, p, j);
                let size = p_quotient_structure(&ker, &[], dim, p, j)?.order();
                counts.push(size / (1i128 << j));
            }
            if counts[0] != counts[1] {
                return Err(ExtError::Precision(format!("component count not stable: {counts:?}")));
            }
            let ker2 = kernel_mod_prime_power(&rows, dim, p, 1);
            let gens: Vec<RationalModZVector> =
                ker2.iter().map(|v| RationalModZVector::from_ints(&v.iter().map(|&x| x as i64).collect::<Vec<_>>(), 2)).collect();
            (span(&gens, dim, 1 << 12)?, counts[0])
        }
    };
    let translations = dedupe_mod_line(points, rs)?;
    let generators: Vec<ExtElement> = translations.iter().map(|t| n.mul(&n.torus(t.clone()), &rs.x)).collect();
    let h = n.mul(&rs.x, &rs.x);
    let mut verified = translations.len() as i128 == group_order && generators.iter().all(|g| n.mul(g, g) == h);
    // regular action: t_i + t_j hits exactly one class
    for a in &translations {
        for b in &translations {
            let s = a.add(b);
            let mut hits = 0;
            for c in &translations {
                if rs.contains_torus(&s.sub(c))? {
                    hits += 1;
                }
            }
            verified &= hits == 1;
        }
    }
    Ok(Torsor { reflection: rs.reflection, translations, generators, group_order, verified })
}

/// Smallest order of an element `(t, σ)`: twice the order of `ν(σ, σ)` in `T̆ / (1 + σ) T̆`.
pub fn minimal_lift_order(n: &NormalizerExtension, r: usize) -> Result<i64, ExtError> {
    let (s, m) = sigma_matrix(n, r);
    let v = n.cocycle(s, s);
    if n.modulus().is_some() {
        let mut k = 1;
        let mut cur = v.clone();
        while solve_torus(&m.one_plus(), &cur.neg(), n.modulus())?.is_none() {
            k += 1;
            cur = cur.add(&v);
            if k > 64 {
                return Err(ExtError::Inconsistent("lift order unbounded".into()));
            }
        }
        return Ok(2 * k);
    }
    // characters vanishing on (1 + σ) T̆ = ker(1 - σ) ⊗ Q/Z
    let k = kernel_basis(&m.one_minus())?;
    let chars = if k.cols() == 0 { IntMatrix::identity(m.rows()) } else { kernel_basis(&k.transpose())?.transpose() };
    Ok(2 * v.apply(&chars, None).order())
}

/// `x N_σ x⁻¹ = N_{w σ w⁻¹}` for lifts `x` of the generators.
pub fn conjugation_covariant(n: &NormalizerExtension, roots: &[RootSubgroup]) -> Result<bool, ExtError> {
    let d = n.datum();
    let w = d.weyl();
    for &g in w.generators() {
        let x = ExtElement { t: RationalModZVector::zero(d.rank()), w: g };
        let xi = n.inv(&x);
        for rs in roots {
            let target = &roots[d.reflections().conj(g, rs.reflection)];
            let c = n.mul(&n.mul(&x, &rs.x), &xi);
            if !target.contains(n, &c)? {
                return Ok(false);
            }
            let u = RationalModZVector::from_ints(&rs.line, 4.min(rs.line_precision.unwrap_or(4)));
            let cu = n.mul(&n.mul(&x, &n.torus(u)), &xi);
            if !target.contains(n, &cu)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;

    fn ext(d: &crate::datum::RootDatum) -> NormalizerExtension {
        NormalizerExtension::new(d).unwrap()
    }

    #[test]
    fn rank_one_root_subgroups() {
        let su2 = ext(&catalog::su(2).unwrap());
        let rs = root_subgroup(&su2, 0).unwrap();
        assert!(rs.x.t.is_zero());
        assert_eq!(square_set(&su2, &rs).unwrap(), vec![RationalModZVector::from_ints(&[1], 2)]);
        assert_eq!(recover_marking(&su2, 0).unwrap(), RationalModZVector::from_ints(&[1], 2));
        assert_eq!(torsor(&su2, &rs).unwrap().len(), 1);
        let so3 = ext(&catalog::so(3).unwrap());
        let rs = root_subgroup(&so3, 0).unwrap();
        assert_eq!(square_set(&so3, &rs).unwrap(), vec![RationalModZVector::zero(1)]);
        assert!(recover_marking(&so3, 0).unwrap().is_zero());
    }

    #[test]
    fn markings_round_trip_on_the_catalog() {
        for d in catalog::full_catalog().unwrap() {
            let n = ext(&d);
            let roots = root_subgroups(&n).unwrap();
            assert!(conjugation_covariant(&n, &roots).unwrap(), "{}", d.name());
            for r in 0..d.reflections().len() {
                assert_eq!(recover_marking(&n, r).unwrap(), d.marking(r), "{} reflection {r}", d.name());
                assert_eq!(square_set(&n, &roots[r]).unwrap(), vec![d.marking(r)]);
            }
        }
    }

    #[test]
    fn torsor_sizes() {
        let spin5 = catalog::spin(5).unwrap();
        let n = ext(&spin5);
        let sizes: Vec<usize> = root_subgroups(&n).unwrap().iter().map(|rs| torsor(&n, rs).unwrap().len()).collect();
        assert!(sizes.contains(&1));
        let di4 = catalog::di4(crate::datum::catalog::DI4_PRECISION).unwrap();
        let n = ext(&di4);
        for rs in root_subgroups(&n).unwrap() {
            let t = torsor(&n, &rs).unwrap();
            assert_eq!(t.len(), 2);
            assert!(t.verified);
        }
    }
}
