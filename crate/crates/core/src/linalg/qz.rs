use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::int::gcd;
use super::IntMatrix;

/// An element of Q/Z, kept as `num/den` with `0 <= num < den` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz {
    num: i64,
    den: i64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    pub fn new(num: i128, den: i128) -> Qz {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let n = num.rem_euclid(den);
        let g = gcd(n, den).max(1);
        Qz { num: (n / g) as i64, den: (den / g) as i64 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn add(self, o: Qz) -> Qz {
        let l = self.den as i128 / gcd(self.den as i128, o.den as i128) * o.den as i128;
        Qz::new(self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128), l)
    }

    pub fn neg(self) -> Qz {
        Qz::new(-(self.num as i128), self.den as i128)
    }

    pub fn sub(self, o: Qz) -> Qz {
        self.add(o.neg())
    }

    pub fn mul_int(self, k: i128) -> Qz {
        let d = self.den as i128;
        Qz::new(k.rem_euclid(d) * self.num as i128, d)
    }

    /// One solution `y` of `k * y = self` (k != 0).
    pub fn div_int(self, k: i128) -> Qz {
        assert!(k != 0);
        Qz::new(self.num as i128, self.den as i128 * k)
    }

    /// Split off the `p`-primary component.
    pub fn p_primary(self, p: i64) -> Qz {
        if self.is_zero() {
            return self;
        }
        let mut pp = 1i64;
        let mut d = self.den;
        while d % p == 0 {
            d /= p;
            pp *= p;
        }
        let rest = d;
        // num/den = a/pp + b/rest; a = num * rest^{-1} mod pp
        if pp == 1 {
            return Qz::ZERO;
        }
        let inv = super::int::inv_mod(rest as i128, pp as i128).expect("coprime");
        Qz::new(self.num as i128 * inv, pp as i128)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Debug for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Qz {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i128 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
                let b: i128 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
                if b == 0 {
                    return Err("zero denominator".into());
                }
                Ok(Qz::new(a, b))
            }
            None => {
                let a: i128 = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
                Ok(Qz::new(a, 1))
            }
        }
    }
}

impl Serialize for Qz {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Qz {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of `(Q/Z)^n`, e.g. an element of the discrete torus `L ⊗ Q/Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalModZVector(pub Vec<Qz>);

impl RationalModZVector {
    pub fn zero(n: usize) -> Self {
        RationalModZVector(vec![Qz::ZERO; n])
    }

    /// `v / den` reduced mod 1.
    pub fn from_ints(v: &[i64], den: i64) -> Self {
        RationalModZVector(v.iter().map(|&x| Qz::new(x as i128, den as i128)).collect())
    }

    pub fn parse(items: &[&str]) -> Result<Self, String> {
        items.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>().map(RationalModZVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Qz::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len());
        RationalModZVector(self.0.iter().zip(&o.0).map(|(a, b)| a.add(*b)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len());
        RationalModZVector(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(*b)).collect())
    }

    pub fn neg(&self) -> Self {
        RationalModZVector(self.0.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, k: i128) -> Self {
        RationalModZVector(self.0.iter().map(|a| a.mul_int(k)).collect())
    }

    /// Additive order (lcm of the coordinate denominators).
    pub fn order(&self) -> i64 {
        self.0.iter().fold(1i128, |acc, q| super::int::lcm(acc, q.den() as i128)) as i64
    }

    /// Apply an integer matrix. When `modulus` is given the matrix is only
    /// known modulo it, and every denominator must divide the modulus.
    pub fn apply(&self, m: &IntMatrix, modulus: Option<i64>) -> Self {
        assert_eq!(m.cols(), self.len(), "dimension mismatch applying matrix to torus point");
        if let Some(md) = modulus {
            assert!(self.0.iter().all(|q| md % q.den() == 0), "torus point of order {} exceeds matrix precision {}", self.order(), md);
        }
        let out = (0..m.rows())
            .map(|i| {
                let mut acc = Qz::ZERO;
                for j in 0..m.cols() {
                    acc = acc.add(self.0[j].mul_int(m.get(i, j) as i128));
                }
                acc
            })
            .collect();
        RationalModZVector(out)
    }

    /// Least common multiple of denominators, as the scaling that clears them.
    pub fn common_den(&self) -> i64 {
        self.order()
    }

    /// Numerators over a common denominator `d` (must be a multiple of the order).
    pub fn numerators(&self, d: i64) -> Vec<i64> {
        self.0
            .iter()
            .map(|q| {
                assert_eq!(d % q.den(), 0);
                q.num() * (d / q.den())
            })
            .collect()
    }

    pub fn p_primary(&self, p: i64) -> Self {
        RationalModZVector(self.0.iter().map(|q| q.p_primary(p)).collect())
    }

    /// Pairing with an integer form, valued in Q/Z.
    pub fn pair(&self, form: &[i64]) -> Qz {
        assert_eq!(form.len(), self.len());
        self.0.iter().zip(form).fold(Qz::ZERO, |acc, (q, &c)| acc.add(q.mul_int(c as i128)))
    }
}

impl fmt::Debug for RationalModZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalModZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_one() {
        let h = Qz::new(1, 2);
        assert!(h.add(h).is_zero());
        assert_eq!(Qz::new(3, 4).add(Qz::new(1, 2)), Qz::new(1, 4));
        assert_eq!(Qz::new(-1, 3), Qz::new(2, 3));
        assert_eq!(Qz::new(1, 2).div_int(2), Qz::new(1, 4));
        assert_eq!(Qz::new(1, 4).mul_int(2), h);
        assert_eq!("1/2".parse::<Qz>().unwrap(), h);
        assert_eq!(Qz::new(5, 6).p_primary(2), Qz::new(1, 2));
        assert_eq!(Qz::new(5, 6).p_primary(3), Qz::new(1, 3));
    }

    #[test]
    fn matrix_action() {
        let t = RationalModZVector::parse(&["1/2", "1/4"]).unwrap();
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(t.apply(&swap, None), RationalModZVector::parse(&["1/4", "1/2"]).unwrap());
        assert_eq!(t.order(), 4);
    }
}
