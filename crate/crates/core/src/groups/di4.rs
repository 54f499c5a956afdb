//! The exotic rank-three 2-adic reflection group of order 336 and `GL_3(F_2)`.

use crate::linalg::IntMatrix;

use super::presentation::{commutator, word_power, Letter, Presentation};
use super::{GroupError, ReflectionSet, WeylGroup};

pub const DI4_ORDER: usize = 336;

/// The 2-adic root of `x^2 + x + 2` that is divisible by 2, modulo `2^k`.
pub fn hensel_root(k: u32) -> i64 {
    let m = 1i128 << k;
    let mut x: i128 = 0;
    for _ in 0..=k {
        let f = (x * x + x + 2).rem_euclid(m);
        let df = (2 * x + 1).rem_euclid(m);
        let inv = crate::linalg::int::inv_mod(df, m).expect("derivative is odd");
        x = (x - f * inv).rem_euclid(m);
    }
    debug_assert_eq!((x * x + x + 2).rem_euclid(m), 0);
    x as i64
}

/// Cartan-type matrix whose rows define the simple reflections.
pub fn cartan(k: u32) -> [[i64; 3]; 3] {
    let a = hensel_root(k);
    let abar = -1 - a;
    [[2, 1, -a], [1, 2, 1], [-abar, 1, 2]]
}

/// Generators `s_i = 1 - e_i c_i` where `c_i` is row `i` of [`cartan`], reduced mod `2^k`.
pub fn generators(k: u32) -> Vec<IntMatrix> {
    let c = cartan(k);
    let m = 1i64 << k;
    (0..3)
        .map(|i| {
            let mut s = IntMatrix::identity(3);
            for j in 0..3 {
                s.set(i, j, (s.get(i, j) - c[i][j]).rem_euclid(m));
            }
            s
        })
        .collect()
}

/// The group over `Z/2^k`, after checking order, reflection count, center
/// and the reduction onto `GL_3(F_2)`.
pub fn builtin_di4(k: u32) -> Result<WeylGroup, GroupError> {
    if k < 3 {
        return Err(GroupError::BadGenerators("truncation exponent must be at least 3".into()));
    }
    let m = 1i64 << k;
    let gens = generators(k);
    let w = WeylGroup::generate(&gens, Some(m), 4 * DI4_ORDER)?;
    let fail = |what: String| Err(GroupError::Verification(what));
    if w.order() != DI4_ORDER {
        return fail(format!("order {} instead of {DI4_ORDER}", w.order()));
    }
    let refl = ReflectionSet::find(&w);
    if refl.len() != 21 || refl.classes.len() != 1 {
        return fail(format!("{} reflections in {} classes", refl.len(), refl.classes.len()));
    }
    let center = w.center();
    let minus = IntMatrix::scalar(3, -1);
    if center.len() != 2 || w.index_of(&minus) != Some(center[1]) {
        return fail("center is not {1, -1}".into());
    }
    let reduced: Vec<IntMatrix> = gens.iter().map(|g| g.reduce_mod(2)).collect();
    let w2 = WeylGroup::generate(&reduced, Some(2), 1000)?;
    if w2.order() != 168 {
        return fail(format!("mod 2 image has order {}", w2.order()));
    }
    Ok(w)
}

/// `GL_3(F_2)` as a matrix group mod 2.
pub fn gl3_f2() -> WeylGroup {
    let e = |i: usize, j: usize| {
        let mut m = IntMatrix::identity(3);
        m.set(i, j, 1);
        m
    };
    WeylGroup::generate(&[e(0, 1), e(1, 2), e(2, 0)], Some(2), 1000).expect("GL_3(F_2) is finite")
}

/// `<x, y | x^2, y^3, (xy)^7, [x,y]^4>` with images found by search in
/// [`gl3_f2`] and checked against coset enumeration.
pub fn gl3_f2_presentation() -> Result<(WeylGroup, Presentation), GroupError> {
    let g = gl3_f2();
    let x = vec![Letter::gen(0)];
    let y = vec![Letter::gen(1)];
    let rels =
        vec![word_power(&x, 2), word_power(&y, 3), word_power(&[Letter::gen(0), Letter::gen(1)], 7), word_power(&commutator(&x, &y), 4)];
    let abstract_order = Presentation::new(2, rels.clone(), vec![]).order(100_000)?;
    if abstract_order != 168 {
        return Err(GroupError::Verification(format!("presented group has order {abstract_order}")));
    }
    for a in 0..g.order() {
        if g.element_order(a) != 2 {
            continue;
        }
        for b in 0..g.order() {
            if g.element_order(b) != 3 {
                continue;
            }
            let p = Presentation::new(2, rels.clone(), vec![g.matrix(a).clone(), g.matrix(b).clone()]);
            if p.verify_in(&g).is_ok() {
                return Ok((g, p));
            }
        }
    }
    Err(GroupError::Verification("no generating pair satisfies the relators".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_root_is_even() {
        for k in [3, 6, 10, 20] {
            let a = hensel_root(k);
            assert_eq!(a % 2, 0);
            let m = 1i128 << k;
            assert_eq!(((a as i128) * (a as i128) + a as i128 + 2).rem_euclid(m), 0);
        }
    }

    #[test]
    fn di4_checks_pass() {
        for k in [3, 5, 8] {
            assert_eq!(builtin_di4(k).unwrap().order(), 336);
        }
    }

    #[test]
    fn gl3_presentation_found() {
        let (g, p) = gl3_f2_presentation().unwrap();
        assert_eq!(g.order(), 168);
        p.verify_in(&g).unwrap();
    }
}
