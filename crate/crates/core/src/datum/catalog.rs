//! Named root data: tori, the classical families, `G2`, `F4`, the truncated
//! 2-adic `DI(4)` datum, products and central quotients.

use crate::groups::di4;
use crate::linalg::rat::{RatMatrix, Q};
use crate::linalg::{hermite_basis, solve_z, IntMatrix, RationalModZVector};

use super::{BaseRing, CorootSpec, DatumError, DatumSpec, RootDatum};

/// Default truncation exponent for `DI(4)`.
pub const DI4_PRECISION: u32 = 10;

fn spec(name: &str, ring: BaseRing, rank: usize, gens: Vec<IntMatrix>, coroots: Vec<Vec<i64>>) -> DatumSpec {
    DatumSpec {
        name: Some(name.into()),
        ring,
        rank,
        coroots: coroots
            .into_iter()
            .enumerate()
            .map(|(i, b)| CorootSpec { reflection_index: Some(i), reflection_matrix: None, coroot: b })
            .collect(),
        weyl_generators: gens,
        precision: None,
    }
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn combo(m: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; m];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Datum on the lattice spanned by `basis` inside `Z^m`, with reflections
/// `x ↦ x - <α, x> b` for the given (root, coroot) pairs.
fn from_ambient(name: &str, m: usize, basis: &[Vec<i64>], simple: &[(Vec<i64>, Vec<i64>)]) -> Result<RootDatum, DatumError> {
    let b = IntMatrix::from_cols(basis);
    let coords = |v: &[i64]| -> Result<Vec<i64>, DatumError> {
        solve_z(&b, v)?.map(|s| s.x).ok_or_else(|| DatumError::Invalid(format!("{v:?} is not in the lattice")))
    };
    let mut gens = Vec::new();
    let mut coroots = Vec::new();
    for (alpha, cor) in simple {
        let cols = basis
            .iter()
            .map(|x| {
                let a: i64 = alpha.iter().zip(x).map(|(p, q)| p * q).sum();
                let img: Vec<i64> = (0..m).map(|k| x[k] - a * cor[k]).collect();
                coords(&img)
            })
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(IntMatrix::from_cols(&cols));
        coroots.push(coords(cor)?);
    }
    RootDatum::from_spec(spec(name, BaseRing::Integers, basis.len(), gens, coroots))
}

/// Datum on the coroot lattice with `s_i(a_j) = a_j - c[i][j] a_i`.
pub fn from_cartan(name: &str, c: &[Vec<i64>]) -> Result<RootDatum, DatumError> {
    let n = c.len();
    let gens = (0..n)
        .map(|i| {
            let mut s = IntMatrix::identity(n);
            for j in 0..n {
                s.set(i, j, s.get(i, j) - c[i][j]);
            }
            s
        })
        .collect();
    RootDatum::from_spec(spec(name, BaseRing::Integers, n, gens, (0..n).map(|i| unit(n, i)).collect()))
}

pub fn torus(n: usize) -> RootDatum {
    RootDatum::from_spec(spec(&format!("T{n}"), BaseRing::Integers, n, vec![], vec![])).expect("torus datum")
}

fn type_a_simple(m: usize, n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    (0..n).map(|i| (combo(m, &[(i, 1), (i + 1, -1)]), combo(m, &[(i, 1), (i + 1, -1)]))).collect()
}

fn d_lattice(n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![2]];
    }
    let mut b: Vec<Vec<i64>> = (0..n - 1).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
    b.push(combo(n, &[(n - 2, 1), (n - 1, 1)]));
    b
}

fn standard(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| unit(n, i)).collect()
}

fn b_simple(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut s = type_a_simple(n, n - 1);
    s.push((unit(n, n - 1), combo(n, &[(n - 1, 2)])));
    s
}

fn d_simple(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut s = type_a_simple(n, n - 1);
    let last = combo(n, &[(n - 2, 1), (n - 1, 1)]);
    s.push((last.clone(), last));
    s
}

/// `SU(n)`: sum-zero sublattice of `Z^n`.
pub fn su(n: usize) -> Result<RootDatum, DatumError> {
    if n < 2 {
        return Err(DatumError::UnknownName(format!("SU({n})")));
    }
    let basis: Vec<Vec<i64>> = (0..n - 1).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
    from_ambient(&format!("SU({n})"), n, &basis, &type_a_simple(n, n - 1))
}

/// `Sp(n)` on `Z^n` with long coroots `e_i`.
pub fn sp(n: usize) -> Result<RootDatum, DatumError> {
    if n < 1 {
        return Err(DatumError::UnknownName("Sp(0)".into()));
    }
    let mut simple = type_a_simple(n, n - 1);
    simple.push((combo(n, &[(n - 1, 2)]), unit(n, n - 1)));
    from_ambient(&format!("Sp({n})"), n, &standard(n), &simple)
}

/// `SO(n)` on `Z^{⌊n/2⌋}`.
pub fn so(n: usize) -> Result<RootDatum, DatumError> {
    let name = format!("SO({n})");
    match n {
        0 | 1 => Err(DatumError::UnknownName(name)),
        2 => Ok(torus(1).with_name(&name)),
        _ if n % 2 == 1 => from_ambient(&name, n / 2, &standard(n / 2), &b_simple(n / 2)),
        _ => from_ambient(&name, n / 2, &standard(n / 2), &d_simple(n / 2)),
    }
}

/// `Spin(n)` on the `D_{⌊n/2⌋}` lattice.
pub fn spin(n: usize) -> Result<RootDatum, DatumError> {
    let name = format!("Spin({n})");
    match n {
        0..=2 => Err(DatumError::UnknownName(name)),
        _ if n % 2 == 1 => from_ambient(&name, n / 2, &d_lattice(n / 2), &b_simple(n / 2)),
        _ => from_ambient(&name, n / 2, &d_lattice(n / 2), &d_simple(n / 2)),
    }
}

pub fn g2() -> Result<RootDatum, DatumError> {
    from_cartan("G2", &[vec![2, -1], vec![-3, 2]])
}

pub fn f4() -> Result<RootDatum, DatumError> {
    from_cartan("F4", &[vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]])
}

/// The 2-adic `DI(4)` datum, known modulo `2^k`.
pub fn di4(k: u32) -> Result<RootDatum, DatumError> {
    if k < 3 {
        return Err(DatumError::Invalid("DI(4) needs precision at least 3".into()));
    }
    let mut s = spec("DI(4)", BaseRing::Padic(2), 3, di4::generators(k), vec![unit(3, 0)]);
    s.precision = Some(k);
    RootDatum::from_spec(s)
}

/// Direct product on `L ⊕ L'`.
pub fn product(a: &RootDatum, b: &RootDatum) -> Result<RootDatum, DatumError> {
    if a.is_truncated() || b.is_truncated() {
        return Err(DatumError::Truncated);
    }
    if a.ring() != b.ring() {
        return Err(DatumError::Invalid(format!("ring mismatch {} vs {}", a.ring(), b.ring())));
    }
    let (n, m) = (a.rank(), b.rank());
    let mut gens = Vec::new();
    let mut coroots = Vec::new();
    let sa = a.canonical_spec();
    let sb = b.canonical_spec();
    let pad = |v: &[i64], left: bool| -> Vec<i64> {
        if left {
            v.iter().copied().chain(std::iter::repeat_n(0, m)).collect()
        } else {
            std::iter::repeat_n(0, n).chain(v.iter().copied()).collect()
        }
    };
    let mut refl_mats = Vec::new();
    for g in &a.weyl().generator_matrices() {
        gens.push(g.block_diag(&IntMatrix::identity(m)));
    }
    for g in &b.weyl().generator_matrices() {
        gens.push(IntMatrix::identity(n).block_diag(g));
    }
    for c in &sa.coroots {
        refl_mats.push(c.reflection_matrix.as_ref().expect("canonical").block_diag(&IntMatrix::identity(m)));
        coroots.push(pad(&c.coroot, true));
    }
    for c in &sb.coroots {
        refl_mats.push(IntMatrix::identity(n).block_diag(c.reflection_matrix.as_ref().expect("canonical")));
        coroots.push(pad(&c.coroot, false));
    }
    RootDatum::from_spec(DatumSpec {
        name: Some(format!("{} x {}", a.name(), b.name())),
        ring: a.ring(),
        rank: n + m,
        weyl_generators: gens,
        coroots: refl_mats
            .into_iter()
            .zip(coroots)
            .map(|(mat, b)| CorootSpec { reflection_index: None, reflection_matrix: Some(mat), coroot: b })
            .collect(),
        precision: None,
    })
}

pub fn product_all(parts: &[RootDatum]) -> Result<RootDatum, DatumError> {
    let (first, rest) = parts.split_first().ok_or_else(|| DatumError::Invalid("empty product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, d| product(&acc, d))
}

/// Enlarge `L` to the preimage of the central subgroup generated by `gens`.
pub fn central_quotient(d: &RootDatum, gens: &[RationalModZVector]) -> Result<RootDatum, DatumError> {
    let gens: Vec<&RationalModZVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(d.clone());
    }
    let center = d.discrete_center_subgroup()?;
    if gens.iter().any(|g| g.len() != d.rank() || !center.contains(g)) {
        return Err(DatumError::NotCentral);
    }
    let n = d.rank();
    let den = gens.iter().fold(1i64, |acc, g| num_integer::lcm(acc, g.order()));
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| combo(n, &[(i, den)])).collect();
    rows.extend(gens.iter().map(|g| g.numerators(den)));
    let h = hermite_basis(&IntMatrix::from_rows(&rows))?.transpose();
    let hr = RatMatrix::from_int(&h);
    let hinv = hr.inverse().expect("full rank lattice");
    let convert = |m: &IntMatrix| -> Result<IntMatrix, DatumError> {
        hinv.mul(&RatMatrix::from_int(m)).mul(&hr).to_int().ok_or_else(|| DatumError::Invalid("enlarged lattice is not W-stable".into()))
    };
    let gens_new = d.weyl().generator_matrices().iter().map(convert).collect::<Result<Vec<_>, _>>()?;
    let coroots = d
        .canonical_spec()
        .coroots
        .into_iter()
        .map(|c| {
            let b: Vec<Q> = c.coroot.iter().map(|&x| Q::from_integer(x as i128 * den as i128)).collect();
            let img = hinv.mul_vec(&b);
            let coroot = img
                .iter()
                .map(|q| q.is_integer().then(|| *q.numer() as i64))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| DatumError::Invalid("coroot leaves the lattice".into()))?;
            Ok(CorootSpec { reflection_index: None, reflection_matrix: Some(convert(c.reflection_matrix.as_ref().unwrap())?), coroot })
        })
        .collect::<Result<Vec<_>, DatumError>>()?;
    let order: i64 = gens.iter().map(|g| g.order()).product();
    RootDatum::from_spec(DatumSpec {
        name: Some(format!("({})/C{order}", d.name())),
        ring: d.ring(),
        rank: n,
        weyl_generators: gens_new,
        coroots,
        precision: None,
    })
}

/// `(Spin(5) × S¹)/C₂` with the diagonal central subgroup.
pub fn spin5_circle_quotient() -> Result<RootDatum, DatumError> {
    let spin5 = spin(5)?;
    let z = spin5.discrete_center_subgroup()?;
    let gen = z.finite_generators().first().cloned().ok_or_else(|| DatumError::Invalid("Spin(5) center".into()))?;
    let d = product(&spin5, &torus(1).with_name("S1"))?;
    let mut v = gen.0.clone();
    v.push(crate::linalg::Qz::new(1, 2));
    Ok(central_quotient(&d, &[RationalModZVector(v)])?.with_name("(Spin(5) x S1)/C2"))
}

fn parse_factor(s: &str) -> Result<RootDatum, DatumError> {
    let unknown = || DatumError::UnknownName(s.to_string());
    let lower = s.to_ascii_lowercase();
    let split = lower.find(|c: char| c.is_ascii_digit() || c == '(').ok_or_else(unknown)?;
    let (head, tail) = lower.split_at(split);
    let arg: String = tail.chars().filter(|c| c.is_ascii_digit()).collect();
    if !tail.trim_matches(|c: char| c == '(' || c == ')' || c.is_ascii_digit()).is_empty() {
        return Err(unknown());
    }
    let k: usize = arg.parse().map_err(|_| unknown())?;
    match head {
        "su" => su(k),
        "sp" => sp(k),
        "so" => so(k),
        "spin" => spin(k),
        "torus" | "t" => Ok(torus(k)),
        "s" | "u" if k == 1 => Ok(torus(1).with_name("S1")),
        "g" if k == 2 => g2(),
        "f" if k == 4 => f4(),
        "di" if k == 4 => di4(DI4_PRECISION),
        _ => Err(unknown()),
    }
}

/// Parse names such as `SU(3)`, `Spin5`, `SU(2)xSO(3)`, `DI4`, `torus(2)`
/// and `(Spin(5)xS1)/C2`.
pub fn by_name(name: &str) -> Result<RootDatum, DatumError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    if matches!(lower.as_str(), "(spin(5)xs1)/c2" | "(spin5xs1)/c2" | "spin5xs1/c2") {
        return spin5_circle_quotient();
    }
    let parts: Vec<&str> = compact.split(['x', '×', '*']).collect();
    let data = parts.iter().map(|p| parse_factor(p)).collect::<Result<Vec<_>, _>>()?;
    if data.len() == 1 {
        return Ok(data.into_iter().next().unwrap());
    }
    product_all(&data)
}

/// Family constructor with an explicit parameter, as used on the command line.
pub fn family(name: &str, param: Option<usize>) -> Result<RootDatum, DatumError> {
    match param {
        None => by_name(name),
        Some(k) => match name.to_ascii_lowercase().as_str() {
            "torus" => Ok(torus(k)),
            "su" => su(k),
            "sp" => sp(k),
            "so" => so(k),
            "spin" => spin(k),
            "di4" => di4(k as u32),
            _ => Err(DatumError::UnknownName(format!("{name} {k}"))),
        },
    }
}

/// Coxeter-type catalog data used by the verification suites.
pub fn coxeter_catalog() -> Result<Vec<RootDatum>, DatumError> {
    let names = [
        "SU(2)",
        "SO(3)",
        "SU(2)xSU(2)",
        "SU(3)",
        "Sp(2)",
        "Spin(5)",
        "SO(5)",
        "SO(4)",
        "G2",
        "SU(2)xSO(3)",
        "SO(3)xSO(5)",
        "Spin(7)",
        "SO(7)",
        "F4",
    ];
    let mut out = names.iter().map(|n| by_name(n)).collect::<Result<Vec<_>, _>>()?;
    out.push(spin5_circle_quotient()?);
    Ok(out)
}

/// Every catalog entry, including the truncated `DI(4)` datum and a torus.
pub fn full_catalog() -> Result<Vec<RootDatum>, DatumError> {
    let mut out = coxeter_catalog()?;
    out.push(torus(1).with_name("S1"));
    out.push(di4(DI4_PRECISION)?);
    Ok(out)
}

/// The `B2` family at `p = 2`.
pub fn b2_family() -> Result<Vec<RootDatum>, DatumError> {
    [spin(5)?, so(5)?, spin5_circle_quotient()?].iter().map(|d| d.base_change(BaseRing::Padic(2))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        for (name, order) in [
            ("SU(2)", 2),
            ("SU(3)", 6),
            ("Spin(5)", 8),
            ("SO(5)", 8),
            ("Sp(3)", 48),
            ("SO(6)", 24),
            ("G2", 12),
            ("F4", 1152),
            ("SU(2)xSO(3)", 4),
        ] {
            assert_eq!(by_name(name).unwrap().weyl().order(), order, "{name}");
        }
        assert_eq!(di4(5).unwrap().weyl().order(), 336);
    }

    #[test]
    fn quotients() {
        let su2 = su(2).unwrap();
        let z = su2.discrete_center_subgroup().unwrap();
        let q = central_quotient(&su2, z.finite_generators()).unwrap();
        assert!(q.is_isomorphic(&so(3).unwrap()).unwrap().is_some());
        assert_eq!(central_quotient(&su2, &[]).unwrap().coroots(), su2.coroots());
        let d = spin5_circle_quotient().unwrap();
        assert_eq!(d.reflections().classes.len(), 2);
        assert!(central_quotient(&so(3).unwrap(), &[RationalModZVector::parse(&["1/2"]).unwrap()]).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(by_name("Spin5").unwrap().name(), "Spin(5)");
        assert_eq!(by_name("SO(3) x SO(5)").unwrap().rank(), 3);
        assert!(by_name("E9").is_err());
        assert_eq!(family("su", Some(4)).unwrap().rank(), 3);
    }
}
