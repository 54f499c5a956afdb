use crate::groups::WeylGroup;
use crate::linalg::solve::solve_qz_rows;
use crate::linalg::{IntMatrix, LinalgError, Qz, RationalModZVector, TorusSolution};

/// A `W`-module given by one integer matrix per group element.
#[derive(Clone, Debug)]
pub struct Action {
    pub dim: usize,
    pub matrices: Vec<IntMatrix>,
    /// Matrices are only known modulo this number.
    pub modulus: Option<i64>,
}

impl Action {
    /// The defining representation of `W`.
    pub fn of_group(w: &WeylGroup) -> Action {
        Action { dim: w.dim(), matrices: w.elements().to_vec(), modulus: w.modulus() }
    }

    /// Precompose with an automorphism `α` of `W`: `g` acts as `α(g)`.
    pub fn twisted(&self, alpha: &[usize]) -> Action {
        Action { dim: self.dim, matrices: alpha.iter().map(|&a| self.matrices[a].clone()).collect(), modulus: self.modulus }
    }

    /// Restrict to a list of elements.
    pub fn restrict(&self, elems: &[usize]) -> Action {
        Action { dim: self.dim, matrices: elems.iter().map(|&e| self.matrices[e].clone()).collect(), modulus: self.modulus }
    }

    pub fn act_torus(&self, g: usize, t: &RationalModZVector) -> RationalModZVector {
        t.apply(&self.matrices[g], self.modulus)
    }

    pub fn act_int(&self, g: usize, v: &[i64]) -> Vec<i64> {
        self.matrices[g].mul_vec(v)
    }
}

/// BFS tree for right multiplication by a generating set: every non-identity
/// `w` is `parent · gens[i]`.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub gens: Vec<usize>,
    pub parent: Vec<Option<(usize, usize)>>,
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn new(w: &WeylGroup, gens: &[usize]) -> SpanningTree {
        let n = w.order();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[w.identity()] = true;
        let mut order = vec![w.identity()];
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for (k, &g) in gens.iter().enumerate() {
                let x = w.mul(p, g);
                if !seen[x] {
                    seen[x] = true;
                    parent[x] = Some((p, k));
                    order.push(x);
                }
            }
            i += 1;
        }
        SpanningTree { gens: gens.to_vec(), parent, order }
    }

    pub fn spans(&self, w: &WeylGroup) -> bool {
        self.order.len() == w.order()
    }

    /// Edges `(p, k)` with `p · gens[k]` not reached through that edge.
    pub fn non_tree_edges<'a>(&'a self, w: &'a WeylGroup) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.order.iter().flat_map(move |&p| {
            (0..self.gens.len()).filter_map(move |k| {
                let x = w.mul(p, self.gens[k]);
                (self.parent[x] != Some((p, k))).then_some((p, k))
            })
        })
    }
}

/// Integer coefficient matrices `A_w` (size `n × n r`) with
/// `f(w) = A_w (f(g_1), ..., f(g_r))` for every crossed homomorphism `f`.
#[derive(Clone, Debug)]
pub struct DerivationCoefficients {
    pub tree: SpanningTree,
    pub coeffs: Vec<IntMatrix>,
    pub n: usize,
}

impl DerivationCoefficients {
    pub fn new(w: &WeylGroup, gens: &[usize], action: &Action) -> DerivationCoefficients {
        let tree = SpanningTree::new(w, gens);
        let n = action.dim;
        let r = gens.len();
        let mut coeffs = vec![IntMatrix::zeros(n, n * r); w.order()];
        for &x in tree.order.iter().skip(1) {
            let (p, k) = tree.parent[x].expect("tree");
            // f(p g) = f(p) + p f(g)
            let mut a = coeffs[p].clone();
            let rho = &action.matrices[p];
            for i in 0..n {
                for j in 0..n {
                    let v = a.get(i, k * n + j) + rho.get(i, j);
                    a.set(i, k * n + j, v);
                }
            }
            if let Some(m) = action.modulus {
                a = a.reduce_mod(m);
            }
            coeffs[x] = a;
        }
        DerivationCoefficients { tree, coeffs, n }
    }

    pub fn unknowns(&self) -> usize {
        self.n * self.tree.gens.len()
    }

    /// Rows `(A_{pg} - A_p - p E_k) x = 0` over the non-tree edges: the
    /// crossed-homomorphism conditions.
    pub fn derivation_rows(&self, w: &WeylGroup, action: &Action) -> Vec<Vec<i128>> {
        let n = self.n;
        let mut rows = Vec::new();
        for (p, k) in self.tree.non_tree_edges(w) {
            let x = w.mul(p, self.tree.gens[k]);
            let rho = &action.matrices[p];
            for i in 0..n {
                let mut row: Vec<i128> =
                    (0..self.unknowns()).map(|c| self.coeffs[x].get(i, c) as i128 - self.coeffs[p].get(i, c) as i128).collect();
                for j in 0..n {
                    row[k * n + j] -= rho.get(i, j) as i128;
                }
                if let Some(m) = action.modulus {
                    row.iter_mut().for_each(|v| *v = v.rem_euclid(m as i128));
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Evaluate `f(w)` from generator values.
    pub fn evaluate(&self, w: usize, values: &RationalModZVector, modulus: Option<i64>) -> RationalModZVector {
        values.apply(&self.coeffs[w], modulus)
    }
}

/// Rows bounding unknowns to `m`-torsion when matrices are truncated mod `m`.
pub(crate) fn torsion_rows(ncols: usize, modulus: Option<i64>) -> Vec<(Vec<i128>, Qz)> {
    match modulus {
        None => vec![],
        Some(m) => (0..ncols)
            .map(|j| {
                let mut r = vec![0i128; ncols];
                r[j] = m as i128;
                (r, Qz::ZERO)
            })
            .collect(),
    }
}

/// Find `μ : W → T` with `μ(1) = 0` and `g μ(h) - μ(gh) + μ(g) = d(g, h)`,
/// where `d` is a torus-valued 2-cocycle given on `(w, generator)` pairs.
///
/// `extra` adds conditions `Σ c_j μ(g_j)_i ≡ q` and `constraint` rows are
/// expressed through the returned evaluator. Returns the values on the
/// generators together with the full solution space.
pub fn solve_torus_coboundary(
    w: &WeylGroup,
    gens: &[usize],
    action: &Action,
    d: &dyn Fn(usize, usize) -> RationalModZVector,
    extra: &dyn Fn(&CoboundaryTree) -> Vec<(Vec<i128>, Qz)>,
) -> Result<Option<(CoboundaryTree, TorusSolution)>, LinalgError> {
    let tree = CoboundaryTree::new(w, gens, action, d);
    let ncols = tree.coeffs.unknowns();
    let mut rows: Vec<(Vec<i128>, Qz)> = Vec::new();
    let n = action.dim;
    for (p, k) in tree.coeffs.tree.non_tree_edges(w) {
        let x = w.mul(p, gens[k]);
        // μ(x) = p μ(g_k) + μ(p) - d(p, g_k)
        let rho = &action.matrices[p];
        let dv = d(p, gens[k]);
        for i in 0..n {
            let mut row: Vec<i128> =
                (0..ncols).map(|c| tree.coeffs.coeffs[x].get(i, c) as i128 - tree.coeffs.coeffs[p].get(i, c) as i128).collect();
            for j in 0..n {
                row[k * n + j] -= rho.get(i, j) as i128;
            }
            let rhs = tree.constants[p].0[i].sub(dv.0[i]).sub(tree.constants[x].0[i]);
            rows.push((row, rhs));
        }
    }
    rows.extend(extra(&tree));
    rows.extend(torsion_rows(ncols, action.modulus));
    Ok(solve_qz_rows(ncols, rows)?.map(|s| (tree, s)))
}

/// Affine expressions `μ(w) = A_w x + c_w` along the spanning tree.
#[derive(Clone, Debug)]
pub struct CoboundaryTree {
    pub coeffs: DerivationCoefficients,
    pub constants: Vec<RationalModZVector>,
    pub modulus: Option<i64>,
}

impl CoboundaryTree {
    fn new(w: &WeylGroup, gens: &[usize], action: &Action, d: &dyn Fn(usize, usize) -> RationalModZVector) -> Self {
        let coeffs = DerivationCoefficients::new(w, gens, action);
        let mut constants = vec![RationalModZVector::zero(action.dim); w.order()];
        for &x in coeffs.tree.order.iter().skip(1) {
            let (p, k) = coeffs.tree.parent[x].expect("tree");
            constants[x] = constants[p].sub(&d(p, gens[k]));
        }
        CoboundaryTree { coeffs, constants, modulus: action.modulus }
    }

    pub fn value(&self, w: usize, x: &RationalModZVector) -> RationalModZVector {
        self.coeffs.evaluate(w, x, self.modulus).add(&self.constants[w])
    }

    pub fn unknowns(&self) -> usize {
        self.coeffs.unknowns()
    }
}

/// Integer analogue for lattice-valued cocycles: `μ : W → Z^n`.
pub fn solve_lattice_coboundary(
    w: &WeylGroup,
    gens: &[usize],
    action: &Action,
    d: &dyn Fn(usize, usize) -> Vec<i64>,
) -> Result<Option<Vec<i128>>, LinalgError> {
    let coeffs = DerivationCoefficients::new(w, gens, action);
    let n = action.dim;
    let mut constants = vec![vec![0i64; n]; w.order()];
    for &x in coeffs.tree.order.iter().skip(1) {
        let (p, k) = coeffs.tree.parent[x].expect("tree");
        constants[x] = constants[p].iter().zip(d(p, gens[k])).map(|(a, b)| a - b).collect();
    }
    let ncols = coeffs.unknowns();
    let mut rows = Vec::new();
    for (p, k) in coeffs.tree.non_tree_edges(w) {
        let x = w.mul(p, gens[k]);
        let rho = &action.matrices[p];
        let dv = d(p, gens[k]);
        for i in 0..n {
            let mut row: Vec<i128> = (0..ncols).map(|c| coeffs.coeffs[x].get(i, c) as i128 - coeffs.coeffs[p].get(i, c) as i128).collect();
            for j in 0..n {
                row[k * n + j] -= rho.get(i, j) as i128;
            }
            let rhs = constants[p][i] as i128 - dv[i] as i128 - constants[x][i] as i128;
            rows.push((row, rhs));
        }
    }
    crate::linalg::solve::solve_z_rows(ncols, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_spans_and_counts_edges() {
        let s1 = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let s2 = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        let w = WeylGroup::generate(&[s1, s2], None, 100).unwrap();
        let gens = w.generators().to_vec();
        let t = SpanningTree::new(&w, &gens);
        assert!(t.spans(&w));
        // |W| r edges, |W| - 1 of them in the tree
        assert_eq!(t.non_tree_edges(&w).count(), 8 * 2 - 7);
    }

    #[test]
    fn principal_derivations_are_coboundaries() {
        let w = WeylGroup::generate(&[IntMatrix::from_rows(&[[-1]])], None, 4).unwrap();
        let action = Action::of_group(&w);
        let gens = w.generators().to_vec();
        // d = δμ for μ(σ) = 1/3 (a 1-cochain): δμ(σ, σ) = σ μ(σ) - μ(1) + μ(σ) = 0
        let zero = |_: usize, _: usize| RationalModZVector::zero(1);
        let sol = solve_torus_coboundary(&w, &gens, &action, &zero, &|_| vec![]).unwrap();
        assert!(sol.is_some());
        // d(σ, σ) = 1/2 is not a coboundary for the sign action
        let half = |g: usize, h: usize| {
            if g == 1 && h == 1 {
                RationalModZVector::from_ints(&[1], 2)
            } else {
                RationalModZVector::zero(1)
            }
        };
        assert!(solve_torus_coboundary(&w, &gens, &action, &half, &|_| vec![]).unwrap().is_none());
    }
}
