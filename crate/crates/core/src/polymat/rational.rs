//! Exact rationals and their canonical text encoding (`"p/q"`, lowest terms, `q > 0`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number. Thin newtype over [`BigRational`] so that the text
/// encoding and ordering conventions live in one place.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(pub BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Q {
        Q(BigRational::zero())
    }

    pub fn one() -> Q {
        Q(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn recip(&self) -> Q {
        Q(self.0.recip())
    }

    pub fn floor(&self) -> Q {
        Q(self.0.floor())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite float (binary expansion, no rounding).
    pub fn from_f64(x: f64) -> Option<Q> {
        BigRational::from_float(x).map(Q)
    }

    /// Best rational approximation with `|x - p/q| <= tol`, by continued fractions.
    pub fn approximate(x: f64, tol: f64) -> Q {
        if !x.is_finite() {
            return Q::zero();
        }
        let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
        let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
        let mut r = x;
        for _ in 0..64 {
            let a = r.floor();
            let ai = BigInt::from(a as i64);
            let h2 = &ai * &h1 + &h0;
            let k2 = &ai * &k1 + &k0;
            h0 = std::mem::replace(&mut h1, h2);
            k0 = std::mem::replace(&mut k1, k2);
            let approx = Q(BigRational::new(h1.clone(), k1.clone()));
            if (approx.to_f64() - x).abs() <= tol {
                return approx;
            }
            let frac = r - a;
            if frac.abs() < 1e-300 {
                return approx;
            }
            r = 1.0 / frac;
        }
        Q(BigRational::new(h1, k1))
    }

    /// Representative of `self` modulo `m` in the half-open interval `(0, m]`.
    pub fn reduce_half_open(&self, m: &Q) -> Q {
        let k = (self / m).floor();
        let mut r = self - &(&k * m);
        if r.is_zero() {
            r = m.clone();
        }
        r
    }

    /// True when `self - other` is an integer multiple of `m`.
    pub fn congruent(&self, other: &Q, m: &Q) -> bool {
        ((self - other) / m.clone()).is_integer()
    }

    pub fn gcd_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = ParseRationalError;

    /// Accepts `p/q` and bare integers `p`. The denominator must be nonzero.
    fn from_str(s: &str) -> Result<Q, ParseRationalError> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let valid = |x: &str, signed: bool| {
            let digits = if signed { x.strip_prefix('-').unwrap_or(x) } else { x };
            !digits.is_empty() && digits.len() <= 4096 && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(p, true) || !valid(q, false) {
            return Err(err());
        }
        let num: BigInt = p.parse().map_err(|_| err())?;
        let den: BigInt = q.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Q(BigRational::new(num, den)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q(std::ops::$trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> std::ops::$trait<&'a Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q(std::ops::$trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> std::ops::$trait<&'a Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> std::ops::$trait<Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q(std::ops::$trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::ops::Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl std::ops::Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl std::ops::AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        self.0 += &rhs.0;
    }
}

impl std::ops::SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        self.0 -= &rhs.0;
    }
}

impl std::iter::Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_form() {
        assert_eq!(Q::new(4, -6).to_string(), "-2/3");
        assert_eq!(Q::int(5).to_string(), "5/1");
        assert_eq!("10/4".parse::<Q>().unwrap(), Q::new(5, 2));
        assert_eq!("-7".parse::<Q>().unwrap(), Q::int(-7));
        assert!("1/0".parse::<Q>().is_err());
        assert!("1/-2".parse::<Q>().is_err());
        assert!("".parse::<Q>().is_err());
        assert!("--1".parse::<Q>().is_err());
    }

    #[test]
    fn half_open_reduction() {
        let two = Q::int(2);
        assert_eq!(Q::new(-1, 3).reduce_half_open(&two), Q::new(5, 3));
        assert_eq!(Q::int(4).reduce_half_open(&two), Q::int(2));
        assert_eq!(Q::new(7, 3).reduce_half_open(&two), Q::new(1, 3));
    }

    #[test]
    fn approximation_is_close() {
        let q = Q::approximate(std::f64::consts::PI, 1e-12);
        assert!((q.to_f64() - std::f64::consts::PI).abs() <= 1e-12);
        assert_eq!(Q::approximate(0.5, 1e-12), Q::new(1, 2));
        assert_eq!(Q::approximate(-1.0 / 6.0, 1e-12), Q::new(-1, 6));
    }
}
