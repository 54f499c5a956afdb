use serde::Serialize;

use crate::linalg::{kernel_basis, solve_z, IntMatrix};

use super::reflection::ReflectionExtension;
use super::ExtError;

/// Certificates for the structure of `ρ(W)` over involutions and reflections.
#[derive(Clone, Debug, Serialize)]
pub struct Gen210Report {
    pub group_order: usize,
    pub involutions: usize,
    pub reflections: usize,
    /// No `(a, w)` with `w² = 1` squares to the identity.
    pub no_involutions: bool,
    /// `(a, w)² = σ` is solvable exactly when `w = σ`.
    pub projection: bool,
    /// `ker(1 + σ) = im(1 - σ)` on `Z[Σ]`.
    pub c_sigma_agree: bool,
    /// Solutions of `(a, σ)² = σ` form a coset of `C_σ`, `Zσ ∩ C_σ = 0`, and
    /// products of two such elements lie in `C_σ ⊕ Zσ`.
    pub coset_structure: bool,
    pub failures: Vec<String>,
}

impl Gen210Report {
    pub fn passed(&self) -> bool {
        self.no_involutions && self.projection && self.c_sigma_agree && self.coset_structure
    }
}

fn column_span_contains(basis: &IntMatrix, v: &[i64]) -> Result<bool, ExtError> {
    if basis.cols() == 0 {
        return Ok(v.iter().all(|&x| x == 0));
    }
    Ok(solve_z(basis, v)?.is_some())
}

/// Whether two sets of columns span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<bool, ExtError> {
    for j in 0..a.cols() {
        if !column_span_contains(b, &a.col(j))? {
            return Ok(false);
        }
    }
    for j in 0..b.cols() {
        if !column_span_contains(a, &b.col(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn gen210(e: &ReflectionExtension) -> Result<Gen210Report, ExtError> {
    let w = e.weyl();
    let refl = e.reflections();
    let n = refl.len();
    let id = IntMatrix::identity(n);
    let invols: Vec<usize> = (1..w.order()).filter(|&g| w.mul(g, g) == 0).collect();
    let mut failures = Vec::new();
    let mut no_involutions = true;
    let mut projection = true;
    for &g in &invols {
        let p = e.permutation_matrix(g);
        let a = id.add(&p);
        let c = e.value(g, g);
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        if solve_z(&a, &neg)?.is_some() {
            no_involutions = false;
            failures.push(format!("involution over element {g}"));
        }
        for s in 0..n {
            let mut rhs = neg.clone();
            rhs[s] += 1;
            let solvable = solve_z(&a, &rhs)?.is_some();
            if solvable != (g == refl.get(s).element) {
                projection = false;
                failures.push(format!("square {s} over element {g}: solvable = {solvable}"));
            }
        }
    }
    let mut c_sigma_agree = true;
    let mut coset_structure = true;
    for s in 0..n {
        let g = refl.get(s).element;
        let p = e.permutation_matrix(g);
        let ker = kernel_basis(&id.add(&p))?;
        let img = id.sub(&p);
        if !same_lattice(&ker, &img)? {
            c_sigma_agree = false;
            failures.push(format!("C_sigma mismatch at reflection {s}"));
        }
        let mut rhs: Vec<i64> = e.value(g, g).iter().map(|x| -x).collect();
        rhs[s] += 1;
        let Some(sol) = solve_z(&id.add(&p), &rhs)? else {
            coset_structure = false;
            continue;
        };
        // homogeneous solutions are exactly C_σ
        coset_structure &= same_lattice(&sol.kernel, &ker)?;
        // Zσ ∩ C_σ = 0: (1 + σ) e_σ = 2 e_σ
        let mut es = vec![0; n];
        es[s] = 1;
        coset_structure &= id.add(&p).mul_vec(&es).iter().any(|&x| x != 0);
        // products of elements over σ land in C_σ ⊕ Zσ
        let both = ker.hstack(&IntMatrix::from_cols(&[es]));
        let a0 = sol.x.clone();
        let mut samples = vec![a0.clone()];
        for j in 0..ker.cols() {
            samples.push(a0.iter().zip(ker.col(j)).map(|(x, y)| x + y).collect());
        }
        for a in &samples {
            for b in &samples {
                let pb = p.mul_vec(b);
                let v: Vec<i64> = a.iter().zip(&pb).zip(e.value(g, g)).map(|((x, y), c)| x + y + c).collect();
                if !column_span_contains(&both, &v)? {
                    coset_structure = false;
                    failures.push(format!("product outside C_sigma + Z sigma at reflection {s}"));
                }
            }
        }
    }
    Ok(Gen210Report {
        group_order: w.order(),
        involutions: invols.len(),
        reflections: n,
        no_involutions,
        projection,
        c_sigma_agree,
        coset_structure,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::catalog;
    use std::sync::Arc;

    #[test]
    fn rank_two_groups_pass() {
        for name in ["SU(3)", "SO(5)", "G2"] {
            let d = catalog::by_name(name).unwrap();
            let e = ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone())).unwrap();
            let r = gen210(&e).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
        }
    }
}
