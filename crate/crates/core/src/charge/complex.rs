use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::polymat::Q;

/// Gaussian rational `re + i im`, serialized as `["re", "im"]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Q, Q)", into = "(Q, Q)")]
pub struct Complex {
    pub re: Q,
    pub im: Q,
}

impl From<(Q, Q)> for Complex {
    fn from((re, im): (Q, Q)) -> Self {
        Complex { re, im }
    }
}

impl From<Complex> for (Q, Q) {
    fn from(z: Complex) -> Self {
        (z.re, z.im)
    }
}

impl Complex {
    pub fn new(re: Q, im: Q) -> Complex {
        Complex { re, im }
    }

    pub fn zero() -> Complex {
        Complex::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, k: &Q) -> Complex {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Exact binary image of a float pair; `None` for non-finite input.
    pub fn from_f64(re: f64, im: f64) -> Option<Complex> {
        Some(Complex { re: Q::from_f64(re)?, im: Q::from_f64(im)? })
    }

    pub fn norm(&self) -> f64 {
        let (x, y) = self.to_f64();
        x.hypot(y)
    }

    /// Argument divided by `pi`, in `(0, 2]`; `None` at the origin.
    pub fn arg_turns(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let (x, y) = self.to_f64();
        let mut t = y.atan2(x) / std::f64::consts::PI;
        if t <= 0.0 {
            t += 2.0;
        }
        Some(t)
    }

    /// Multiplication by `e^{i pi t}` in floating point, stored exactly.
    pub fn rotate(&self, t: f64) -> Complex {
        let (x, y) = self.to_f64();
        let (s, c) = (std::f64::consts::PI * t).sin_cos();
        Complex::from_f64(c * x - s * y, s * x + c * y).unwrap_or_default()
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Tolerance, in units of `pi`, for phases whose tangent is irrational.
pub const PHASE_TOLERANCE: f64 = 1e-9;

/// True iff `z = m e^{i pi phi}` with `m >= 0`. Exact when `4 phi` is an
/// integer, otherwise compared through `atan2` within [`PHASE_TOLERANCE`].
pub fn phase_matches(z: &Complex, phi: &Q) -> bool {
    if z.is_zero() {
        return true;
    }
    let eighth = (phi * &Q::int(4)).reduce_half_open(&Q::int(8));
    if eighth.is_integer() {
        let (re, im) = (&z.re, &z.im);
        let k = (1..=8).find(|k| eighth == Q::int(*k)).unwrap_or(8) % 8;
        return match k {
            0 => im.is_zero() && re.is_positive(),
            1 => re == im && re.is_positive(),
            2 => re.is_zero() && im.is_positive(),
            3 => &-re == im && im.is_positive(),
            4 => im.is_zero() && re.is_negative(),
            5 => re == im && re.is_negative(),
            6 => re.is_zero() && im.is_negative(),
            _ => &-re == im && re.is_positive(),
        };
    }
    let Some(t) = z.arg_turns() else { return true };
    let diff = (t - phi.to_f64()).rem_euclid(2.0);
    diff.min(2.0 - diff) <= PHASE_TOLERANCE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_axis_and_diagonal_phases() {
        let z = |a, b| Complex::new(Q::int(a), Q::int(b));
        assert!(phase_matches(&z(0, -1), &Q::new(3, 2)));
        assert!(!phase_matches(&z(0, -1), &Q::new(1, 2)));
        assert!(phase_matches(&z(-1, 0), &Q::one()));
        assert!(phase_matches(&z(3, 0), &Q::int(2)));
        assert!(phase_matches(&z(2, -2), &Q::new(7, 4)));
        assert!(!phase_matches(&z(-2, 2), &Q::new(7, 4)));
        assert!(phase_matches(&z(0, 0), &Q::new(1, 3)));
    }

    #[test]
    fn irrational_tangent_uses_tolerance() {
        let s = Q::from_f64(3f64.sqrt() / 2.0).unwrap();
        let z = Complex::new(s.clone(), Q::new(1, 2));
        assert!(phase_matches(&z, &Q::new(1, 6)));
        assert!(!phase_matches(&z, &Q::new(1, 5)));
        assert!(phase_matches(&Complex::new(-s, Q::new(1, 2)), &Q::new(5, 6)));
    }

    #[test]
    fn serializes_as_string_pair() {
        let z = Complex::new(Q::new(1, 2), Q::int(-3));
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, r#"["1/2","-3/1"]"#);
        assert_eq!(serde_json::from_str::<Complex>(&text).unwrap(), z);
    }
}
