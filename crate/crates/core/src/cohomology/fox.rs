use crate::ext::{Action, DerivationCoefficients};
use crate::groups::{Presentation, WeylGroup};
use crate::linalg::modular::{kernel_mod_prime_power, p_quotient_structure};
use crate::linalg::{elementary_divisors, rank, FinAbGroup, IntMatrix};

use super::CohomologyError;

/// Fox Jacobian of a presentation: one block row per relator, one block column
/// per generator, so that `f` is a crossed homomorphism iff `J (f(x_1), ..) = 0`.
pub fn fox_matrix(w: &WeylGroup, pres: &Presentation, action: &Action) -> Result<IntMatrix, CohomologyError> {
    let gens = pres.generator_elements(w)?;
    let n = action.dim;
    let mut j = IntMatrix::zeros(pres.relators.len() * n, pres.generators * n);
    for (ri, rel) in pres.relators.iter().enumerate() {
        let mut prefix = w.identity();
        for l in rel {
            let g = gens[l.gen];
            // f(u x) = f(u) + u f(x),  f(u x⁻¹) = f(u) - u x⁻¹ f(x)
            let (elem, sign) = if l.inv { (w.mul(prefix, w.inv(g)), -1) } else { (prefix, 1) };
            let rho = &action.matrices[elem];
            for a in 0..n {
                for b in 0..n {
                    let v = j.get(ri * n + a, l.gen * n + b) + sign * rho.get(a, b);
                    j.set(ri * n + a, l.gen * n + b, v);
                }
            }
            prefix = if l.inv { w.mul(prefix, w.inv(g)) } else { w.mul(prefix, g) };
        }
    }
    Ok(match action.modulus {
        Some(m) => j.reduce_mod(m),
        None => j,
    })
}

/// `(1 - g_i)` stacked over the generators: principal derivations are its image.
pub fn principal_matrix(gens: &[usize], action: &Action) -> IntMatrix {
    let n = action.dim;
    let mut out = IntMatrix::zeros(gens.len() * n, n);
    for (i, &g) in gens.iter().enumerate() {
        let om = action.matrices[g].one_minus();
        for a in 0..n {
            for b in 0..n {
                out.set(i * n + a, b, om.get(a, b));
            }
        }
    }
    out
}

/// `H¹(G; L ⊗ Q/Z)` from a presentation: the torsion of `ker J` modulo the
/// divisible principal derivations.
pub fn h1_fox_torus(w: &WeylGroup, pres: &Presentation, action: &Action) -> Result<Vec<i64>, CohomologyError> {
    let j = fox_matrix(w, pres, action)?;
    let ed = elementary_divisors(&j)?;
    let corank = j.cols() - ed.len();
    let gens = pres.generator_elements(w)?;
    let pder = rank(&principal_matrix(&gens, action))?;
    if corank != pder {
        return Err(CohomologyError::Inconsistent(format!("derivations have divisible rank {corank} but principal derivations {pder}")));
    }
    Ok(ed.into_iter().filter(|&d| d > 1).map(|d| d as i64).collect())
}

/// `H¹(G; (Z/p^k)^n)` from a presentation.
pub fn h1_fox_finite(w: &WeylGroup, pres: &Presentation, action: &Action, p: i64, k: u32) -> Result<FinAbGroup, CohomologyError> {
    let m = (p as i128).pow(k);
    let j = fox_matrix(w, pres, action)?;
    let rows: Vec<Vec<i128>> = (0..j.rows()).map(|i| j.row(i).iter().map(|&x| (x as i128).rem_euclid(m)).collect()).collect();
    let der = kernel_mod_prime_power(&rows, j.cols(), p as i128, k);
    let gens = pres.generator_elements(w)?;
    let pm = principal_matrix(&gens, action);
    let pder: Vec<Vec<i128>> = (0..pm.cols()).map(|c| pm.col(c).iter().map(|&x| (x as i128).rem_euclid(m)).collect()).collect();
    Ok(p_quotient_structure(&der, &pder, j.cols(), p as i128, k)?)
}

/// `H¹(G; (Z/p^k)^n)` from crossed-homomorphism equations on every pair
/// `f(gh) = f(g) + g f(h)`.
pub fn h1_bar_finite(w: &WeylGroup, action: &Action, p: i64, k: u32) -> Result<FinAbGroup, CohomologyError> {
    if w.order() > 400 {
        return Err(CohomologyError::Budget(format!("bar H^1 needs |G| <= 400, got {}", w.order())));
    }
    let m = (p as i128).pow(k);
    let gens = w.generators().to_vec();
    let dc = DerivationCoefficients::new(w, &gens, action);
    let ncols = dc.unknowns();
    let n = action.dim;
    let mut e = crate::linalg::echelon::ModEchelon::new(ncols, m);
    for g in 0..w.order() {
        for h in 0..w.order() {
            let gh = w.mul(g, h);
            let rho = &action.matrices[g];
            let prod = rho.mul(&dc.coeffs[h]);
            for i in 0..n {
                let row: Vec<i128> = (0..ncols)
                    .map(|c| (dc.coeffs[gh].get(i, c) as i128 - dc.coeffs[g].get(i, c) as i128 - prod.get(i, c) as i128).rem_euclid(m))
                    .collect();
                if row.iter().any(|&x| x != 0) {
                    e.insert(row);
                }
            }
        }
    }
    let der = kernel_mod_prime_power(&e.basis(), ncols, p as i128, k);
    let pm = principal_matrix(&gens, action);
    let pder: Vec<Vec<i128>> = (0..pm.cols()).map(|c| pm.col(c).iter().map(|&x| (x as i128).rem_euclid(m)).collect()).collect();
    Ok(p_quotient_structure(&der, &pder, ncols, p as i128, k)?)
}

/// Image of `H¹(G; T[p^k]) → H¹(G; T[p^{2k}])`, which is `H¹(G; T̆)` once `k`
/// is large. The action must be known modulo `p^{2k}`.
pub fn h1_truncated(w: &WeylGroup, gens: &[usize], action: &Action, p: i64, k: u32) -> Result<TruncatedH1, CohomologyError> {
    let pi = p as i128;
    let big = pi.pow(2 * k);
    if let Some(md) = action.modulus {
        if (md as i128) % big != 0 {
            return Err(CohomologyError::Precision(format!("action known mod {md}, need {big}")));
        }
    }
    let dc = DerivationCoefficients::new(w, gens, action);
    let ncols = dc.unknowns();
    let rows = dc.derivation_rows(w, action);
    let small = pi.pow(k);
    let der_k =
        kernel_mod_prime_power(&rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(small)).collect()).collect::<Vec<_>>(), ncols, pi, k);
    let lifted: Vec<Vec<i128>> = der_k.iter().map(|v| v.iter().map(|x| (x * small).rem_euclid(big)).collect()).collect();
    let pm = principal_matrix(gens, action);
    let pder: Vec<Vec<i128>> = (0..pm.cols()).map(|c| pm.col(c).iter().map(|&x| (x as i128).rem_euclid(big)).collect()).collect();
    let group = p_quotient_structure(&lifted, &pder, ncols, pi, 2 * k)?;
    Ok(TruncatedH1 { group, derivations: lifted, principal: pder, modulus: big, gens: gens.to_vec() })
}

/// Result of [`h1_truncated`], keeping generator values of representing derivations
/// in `(Z/p^{2k})^{n r}`, read as points of `T[p^{2k}]`.
#[derive(Clone, Debug)]
pub struct TruncatedH1 {
    pub group: FinAbGroup,
    pub derivations: Vec<Vec<i128>>,
    pub principal: Vec<Vec<i128>>,
    pub modulus: i128,
    pub gens: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::di4::gl3_f2_presentation;

    #[test]
    fn gl3_on_the_natural_module() {
        let (w, pres) = gl3_f2_presentation().unwrap();
        let a = Action { dim: 3, matrices: w.elements().to_vec(), modulus: Some(2) };
        assert_eq!(h1_fox_finite(&w, &pres, &a, 2, 1).unwrap().invariant_factors(), &[2]);
        assert_eq!(h1_bar_finite(&w, &a, 2, 1).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn sign_module_on_the_circle() {
        let w = WeylGroup::generate(&[IntMatrix::from_rows(&[[-1]])], None, 4).unwrap();
        let a = Action::of_group(&w);
        let pres = Presentation::from_cayley(&w);
        assert!(h1_fox_torus(&w, &pres, &a).unwrap().is_empty());
        let t = h1_truncated(&w, w.generators(), &a, 2, 2).unwrap();
        assert!(t.group.is_trivial());
        // trivial action: H^1(Z/2; Q/Z) = Z/2
        let triv = Action { dim: 1, matrices: vec![IntMatrix::identity(1); 2], modulus: None };
        assert_eq!(h1_fox_torus(&w, &pres, &triv).unwrap(), vec![2]);
        assert_eq!(h1_truncated(&w, w.generators(), &triv, 2, 2).unwrap().group.invariant_factors(), &[2]);
    }
}
