//! Modules over `Z/p^k`.

use super::echelon::ModEchelon;
use super::finab::FinAbGroup;
use super::int::{self, inv_mod};
use super::LinalgError;

/// Generators of `{x in (Z/p^k)^n : A x = 0}` for `A` given by rows.
pub fn kernel_mod_prime_power(rows: &[Vec<i128>], ncols: usize, p: i128, k: u32) -> Vec<Vec<i128>> {
    let m = p.pow(k);
    let mut e = ModEchelon::new(ncols, m);
    for r in rows {
        e.insert(r.clone());
    }
    let mut b = e.basis();
    let nr = b.len();
    let mut q: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    let mut vals = Vec::new();
    let mut t = 0;
    while t < nr.min(ncols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in b.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = int::valuation(x, p);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((bi, bj, v)) = best else { break };
        b.swap(t, bi);
        for row in b.iter_mut() {
            row.swap(t, bj);
        }
        for row in q.iter_mut() {
            row.swap(t, bj);
        }
        let pe = p.pow(v);
        let unit = b[t][t] / pe;
        let uinv = inv_mod(unit, m).expect("unit");
        for x in b[t].iter_mut() {
            *x = (*x * uinv).rem_euclid(m);
        }
        for i in 0..nr {
            if i != t && b[i][t] != 0 {
                let f = b[i][t] / pe;
                let pivot_row = b[t].clone();
                for (x, y) in b[i].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(m);
                }
            }
        }
        for j in 0..ncols {
            if j != t && b[t][j] != 0 {
                let f = b[t][j] / pe;
                for row in b.iter_mut() {
                    row[j] = (row[j] - f * row[t]).rem_euclid(m);
                }
                for row in q.iter_mut() {
                    row[j] = (row[j] - f * row[t]).rem_euclid(m);
                }
            }
        }
        vals.push(v);
        t += 1;
    }
    let mut gens = Vec::new();
    for (j, &v) in vals.iter().enumerate() {
        if v > 0 {
            let s = p.pow(k - v);
            gens.push((0..ncols).map(|i| (q[i][j] * s).rem_euclid(m)).collect());
        }
    }
    for j in vals.len()..ncols {
        gens.push((0..ncols).map(|i| q[i][j]).collect());
    }
    gens
}

/// Structure of `(H + K)/K` inside `(Z/p^k)^n`, where `H`, `K` are spanned by the given rows.
pub fn p_quotient_structure(h: &[Vec<i128>], kgens: &[Vec<i128>], ncols: usize, p: i128, k: u32) -> Result<FinAbGroup, LinalgError> {
    let m = p.pow(k);
    let mut base = ModEchelon::new(ncols, m);
    for r in kgens {
        base.insert(r.clone());
    }
    let base_log = base.order_log(p);
    let mut logs = Vec::new();
    let mut scale: i128 = 1;
    for _ in 0..=k {
        let mut e = base.clone();
        for r in h {
            e.insert(r.iter().map(|x| x * scale).collect());
        }
        logs.push(e.order_log(p) - base_log);
        if logs.last() == Some(&0) {
            break;
        }
        scale *= p;
    }
    // logs[j] - logs[j+1] counts the factors of exponent > j.
    let mut exps: Vec<u32> = Vec::new();
    let counts: Vec<u32> = (0..logs.len().saturating_sub(1)).map(|j| logs[j] - logs[j + 1]).collect();
    for (j, &c) in counts.iter().enumerate() {
        let next = counts.get(j + 1).copied().unwrap_or(0);
        for _ in 0..c.saturating_sub(next) {
            exps.push(j as u32 + 1);
        }
    }
    let factors: Vec<i64> =
        exps.into_iter().map(|e| i64::try_from(p.pow(e)).map_err(|_| LinalgError::Overflow)).collect::<Result<_, _>>()?;
    Ok(FinAbGroup::from_orders(&factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_z_mod_4() {
        // 2x = 0 mod 4 has kernel {0, 2}.
        let gens = kernel_mod_prime_power(&[vec![2]], 1, 2, 2);
        assert_eq!(gens, vec![vec![2]]);
        let gens = kernel_mod_prime_power(&[vec![1, 1]], 2, 2, 3);
        assert_eq!(gens.len(), 1);
        assert_eq!((gens[0][0] + gens[0][1]).rem_euclid(8), 0);
    }

    #[test]
    fn quotient_by_orders() {
        let h = vec![vec![1, 0], vec![0, 2]];
        let g = p_quotient_structure(&h, &[], 2, 2, 2).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        let g = p_quotient_structure(&h, &[vec![2, 0]], 2, 2, 2).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 2]);
    }
}
