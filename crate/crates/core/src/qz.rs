//! Exact arithmetic in Q/Z.
//!
//! A value `a/m` stands for the root of unity `exp(2πi·a/m)`; the identity
//! of the multiplicative group `k^×` is the zero element here, so a form that
//! "takes the value 1" takes the value `0` in this representation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// An element of Q/Z in canonical reduced form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QZ {
    num: u64,
    den: u64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    /// Builds `a/m mod 1`. Fails when `m == 0`.
    pub fn new(a: i64, m: i64) -> Result<QZ> {
        if m == 0 {
            return Err(Error::InvalidDenominator);
        }
        let (a, m) = if m < 0 { (-(a as i128), -(m as i128)) } else { (a as i128, m as i128) };
        Ok(Self::from_i128(a, m as u64))
    }

    /// `a/m` for a known positive denominator.
    pub fn frac(a: i64, m: u64) -> QZ {
        assert!(m > 0, "zero denominator");
        Self::from_i128(a as i128, m)
    }

    fn from_i128(a: i128, m: u64) -> QZ {
        let r = a.rem_euclid(m as i128) as u64;
        if r == 0 {
            return QZ::ZERO;
        }
        let g = gcd(r, m);
        QZ { num: r / g, den: m / g }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// Additive order of the element, i.e. its reduced denominator.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The integer `self · m`, valid only when `m` is a multiple of the denominator.
    pub fn scaled_to(self, m: u64) -> Option<u64> {
        if m.is_multiple_of(self.den) {
            Some(self.num * (m / self.den))
        } else {
            None
        }
    }

    pub fn times(self, n: i64) -> QZ {
        Self::from_i128(self.num as i128 * n as i128, self.den)
    }

    /// Renders the value as a root of unity, e.g. `1/4` becomes `e(1/4)`
    /// and the common names `1`, `-1` are used where they apply.
    pub fn to_root_string(self) -> String {
        match (self.num, self.den) {
            (0, _) => "1".to_string(),
            (1, 2) => "-1".to_string(),
            (1, 4) => "i".to_string(),
            (3, 4) => "-i".to_string(),
            (a, m) => format!("e({a}/{m})"),
        }
    }
}

impl Default for QZ {
    fn default() -> Self {
        QZ::ZERO
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, rhs: QZ) -> QZ {
        let m = lcm(self.den, rhs.den);
        let a = self.num as i128 * (m / self.den) as i128 + rhs.num as i128 * (m / rhs.den) as i128;
        QZ::from_i128(a, m)
    }
}

impl AddAssign for QZ {
    fn add_assign(&mut self, rhs: QZ) {
        *self = *self + rhs;
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        if self.num == 0 {
            self
        } else {
            QZ { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, rhs: QZ) -> QZ {
        self + (-rhs)
    }
}

impl SubAssign for QZ {
    fn sub_assign(&mut self, rhs: QZ) {
        *self = *self - rhs;
    }
}

impl Mul<QZ> for i64 {
    type Output = QZ;
    fn mul(self, rhs: QZ) -> QZ {
        rhs.times(self)
    }
}

impl std::iter::Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(iter: I) -> QZ {
        iter.fold(QZ::ZERO, |a, b| a + b)
    }
}

impl Ord for QZ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128)
            .cmp(&(other.num as u128 * self.den as u128))
            .then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for QZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QZ {
    type Err = Error;

    /// Accepts `a/m`, `a` (an integer, hence zero) and unreduced or negative fractions.
    fn from_str(s: &str) -> Result<QZ> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        match s.split_once('/') {
            Some((a, m)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let m: i64 = m.trim().parse().map_err(|_| bad())?;
                QZ::new(a, m)
            }
            None => {
                let _: i64 = s.parse().map_err(|_| bad())?;
                Ok(QZ::ZERO)
            }
        }
    }
}

impl Serialize for QZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(QZ::new(3, 6).unwrap(), QZ::frac(1, 2));
        assert_eq!(QZ::new(3, 6).unwrap().to_string(), "1/2");
        assert_eq!(QZ::new(7, 4).unwrap().to_string(), "3/4");
        let z = QZ::new(0, 5).unwrap();
        assert_eq!((z.numerator(), z.denominator()), (0, 1));
        assert_eq!(QZ::new(-1, 3).unwrap().to_string(), "2/3");
        assert_eq!(QZ::new(1, -3).unwrap().to_string(), "2/3");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(QZ::new(1, 0), Err(Error::InvalidDenominator)));
        assert!("1/0".parse::<QZ>().is_err());
    }

    #[test]
    fn parse_and_render() {
        assert_eq!("6/8".parse::<QZ>().unwrap().to_string(), "3/4");
        assert_eq!("0".parse::<QZ>().unwrap(), QZ::ZERO);
        assert_eq!("-1/8".parse::<QZ>().unwrap().to_string(), "7/8");
        assert!("x/2".parse::<QZ>().is_err());
        assert_eq!(QZ::frac(1, 2).to_root_string(), "-1");
        assert_eq!(QZ::frac(1, 8).to_root_string(), "e(1/8)");
    }

    proptest! {
        #[test]
        fn group_laws(a in -1000i64..1000, m in 1u64..200, b in -1000i64..1000, n in 1u64..200, k in -50i64..50) {
            let x = QZ::frac(a, m);
            let y = QZ::frac(b, n);
            prop_assert_eq!((x + y) + (-y), x);
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(QZ::new(x.numerator() as i64, x.denominator() as i64).unwrap(), x);
            prop_assert_eq!(x.times(k) + y.times(k), (x + y).times(k));
            prop_assert!(x.numerator() < x.denominator());
            prop_assert_eq!(gcd(x.numerator(), x.denominator()), 1);
        }
    }
}
