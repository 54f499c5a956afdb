use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::int::{gcd, inv_mod, valuation};
use crate::linalg::{FinAbGroup, IntMatrix, RationalModZVector};

/// Coefficient ring of a root datum: `Z` or the `p`-adic integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Padic(i64),
}

impl BaseRing {
    pub fn prime(&self) -> Option<i64> {
        match self {
            BaseRing::Integers => None,
            BaseRing::Padic(p) => Some(*p),
        }
    }

    /// Whether a nonzero integer is a unit of the ring.
    pub fn is_unit(&self, n: i128) -> bool {
        match self {
            BaseRing::Integers => n == 1 || n == -1,
            BaseRing::Padic(p) => n != 0 && n % (*p as i128) != 0,
        }
    }

    /// Whether `2` is invertible, so markings vanish.
    pub fn two_invertible(&self) -> bool {
        matches!(self, BaseRing::Padic(p) if *p != 2)
    }

    /// The part of a torsion group visible in `L ⊗ Q/Z` (all of it) or `L ⊗ Z/p^∞`.
    pub fn torsion_part(&self, g: &FinAbGroup) -> FinAbGroup {
        match self {
            BaseRing::Integers => g.clone(),
            BaseRing::Padic(p) => g.p_primary(*p),
        }
    }

    pub fn torsion_point(&self, t: &RationalModZVector) -> RationalModZVector {
        match self {
            BaseRing::Integers => t.clone(),
            BaseRing::Padic(p) => t.p_primary(*p),
        }
    }

    /// Whether a group order contributes to the visible torsion.
    pub fn sees(&self, n: i64) -> bool {
        match self {
            BaseRing::Integers => n > 1,
            BaseRing::Padic(p) => n % p == 0,
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Padic(p) => write!(f, "Z_{p}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RingRepr {
    Name(String),
    Prime { p: i64 },
}

impl Serialize for BaseRing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BaseRing::Integers => RingRepr::Name("Z".into()),
            BaseRing::Padic(p) => RingRepr::Prime { p: *p },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BaseRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RingRepr::deserialize(d)? {
            RingRepr::Name(n) if n == "Z" => Ok(BaseRing::Integers),
            RingRepr::Name(n) => Err(serde::de::Error::custom(format!("unknown ring {n:?}, expected \"Z\" or {{\"p\": prime}}"))),
            RingRepr::Prime { p } if crate::linalg::int::is_prime(p.max(0) as u64) => Ok(BaseRing::Padic(p)),
            RingRepr::Prime { p } => Err(serde::de::Error::custom(format!("{p} is not a prime"))),
        }
    }
}

/// Scalar `λ` with `v = λ u`, as a fraction `num/den` (den > 0), or `None`.
/// With a modulus the vectors are residues and `λ` is returned reduced.
pub(crate) fn line_coefficient(v: &[i64], u: &[i64], modulus: Option<i64>) -> Option<(i128, i128)> {
    match modulus {
        None => {
            let i = u.iter().position(|&x| x != 0)?;
            let (num, den) = (v[i] as i128, u[i] as i128);
            let g = gcd(num, den).max(1);
            let (num, den) = if den < 0 { (-num / g, -den / g) } else { (num / g, den / g) };
            let ok = v.iter().zip(u).all(|(&a, &b)| a as i128 * den == num * b as i128);
            ok.then_some((num, den))
        }
        Some(m) => {
            let m = m as i128;
            let p = (2..=m).find(|d| m % d == 0).unwrap_or(m);
            let vals: Vec<u32> =
                u.iter().map(|&x| if (x as i128).rem_euclid(m) == 0 { u32::MAX } else { valuation(x as i128, p) }).collect();
            let (i, &vmin) = vals.iter().enumerate().min_by_key(|(_, &v)| v)?;
            if vmin == u32::MAX {
                return None;
            }
            let pv = p.pow(vmin);
            let unit = (u[i] as i128 / pv).rem_euclid(m);
            let vi = v[i] as i128;
            if vi.rem_euclid(pv) != 0 {
                return None;
            }
            let lam = ((vi / pv).rem_euclid(m) * inv_mod(unit, m)?).rem_euclid(m / pv);
            let ok = v.iter().zip(u).all(|(&a, &b)| (a as i128 - lam * b as i128).rem_euclid(m) == 0);
            ok.then_some((lam, 1))
        }
    }
}

/// Columns of `m` as vectors.
pub(crate) fn columns(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_json() {
        let z: BaseRing = serde_json::from_str("\"Z\"").unwrap();
        assert_eq!(z, BaseRing::Integers);
        let p: BaseRing = serde_json::from_str("{\"p\": 2}").unwrap();
        assert_eq!(p, BaseRing::Padic(2));
        assert!(serde_json::from_str::<BaseRing>("{\"p\": 4}").is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "{\"p\":2}");
    }

    #[test]
    fn line_coefficients() {
        assert_eq!(line_coefficient(&[2, -2], &[1, -1], None), Some((2, 1)));
        assert_eq!(line_coefficient(&[1, 0], &[2, 0], None), Some((1, 2)));
        assert_eq!(line_coefficient(&[1, 1], &[1, 0], None), None);
        assert_eq!(line_coefficient(&[6, 2], &[3, 1], Some(8)), Some((2, 1)));
    }
}
