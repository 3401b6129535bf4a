//! Exact arithmetic in `Q(√5)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b·√5` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadNum { a, b }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Self {
        QuadNum { a: rat(a.0, a.1), b: rat(b.0, b.1) }
    }

    pub fn int(n: i64) -> Self {
        QuadNum { a: rat(n, 1), b: BigRational::zero() }
    }

    pub fn sqrt5() -> Self {
        QuadNum { a: BigRational::zero(), b: BigRational::one() }
    }

    /// `(-1 + √5)/2` for `positive`, `(-1 - √5)/2` otherwise; the roots of `t² + t - 1`.
    pub fn golden(positive: bool) -> Self {
        QuadNum::from_ratios((-1, 2), (if positive { 1 } else { -1 }, 2))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√5`.
    pub fn conj(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat(5, 1) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadNum { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, rhs: &QuadNum) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // opposite signs: compare a² with 5b²
        match (&self.a * &self.a).cmp(&(rat(5, 1) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√5 is irrational"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }

    /// `(x + y)/2`.
    pub fn midpoint(x: &QuadNum, y: &QuadNum) -> QuadNum {
        (x + y) * &QuadNum::from_ratios((1, 2), (0, 1))
    }

    /// Rational parts as strings, `"p"` or `"p/q"`.
    pub fn to_strings(&self) -> [String; 2] {
        [self.a.to_string(), self.b.to_string()]
    }

    pub fn from_strs(a: &str, b: &str) -> Result<Self> {
        Ok(QuadNum { a: parse_rat(a)?, b: parse_rat(b)? })
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Zero for QuadNum {
    fn zero() -> Self {
        QuadNum { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadNum {
    fn one() -> Self {
        QuadNum::int(1)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        QuadNum {
            a: &self.a * &rhs.a + rat(5, 1) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Panics on division by zero; use [`QuadNum::checked_div`] otherwise.
impl<'a> Div<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn div(self, rhs: &QuadNum) -> QuadNum {
        self.checked_div(rhs).expect("division by zero in Q(√5)")
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $f(self, rhs: QuadNum) -> QuadNum { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $f(self, rhs: &QuadNum) -> QuadNum { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}√5", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}√5", self.a, self.b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(p: bool) -> QuadNum {
        QuadNum::golden(p)
    }

    #[test]
    fn golden_identities() {
        let (gp, gm) = (g(true), g(false));
        assert_eq!(&gp * &gm, QuadNum::int(-1));
        assert_eq!(&gp + &gm, QuadNum::int(-1));
        assert_eq!(gp.inv().unwrap(), &gp + &QuadNum::one());
        for x in [&gp, &gm] {
            assert!((x * x + x - QuadNum::one()).is_zero());
        }
        assert_eq!(gp.conj(), gm);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(QuadNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn ordering_matches_floats() {
        let gp = g(true);
        assert!(gp > QuadNum::from_ratios((61, 100), (0, 1)));
        assert!(gp < QuadNum::from_ratios((62, 100), (0, 1)));
        assert!(g(false) < QuadNum::int(-1));
        assert_eq!(QuadNum::sqrt5().signum(), 1);
        assert_eq!((QuadNum::int(2) - QuadNum::sqrt5()).signum(), -1);
    }

    #[test]
    fn parse_and_print() {
        let x = QuadNum::from_strs("-1/2", "1/2").unwrap();
        assert_eq!(x, g(true));
        assert_eq!(x.to_strings(), ["-1/2".to_string(), "1/2".to_string()]);
        assert!(QuadNum::from_strs("1/0", "0").is_err());
        assert!(QuadNum::from_strs("x", "0").is_err());
    }

    fn small() -> impl Strategy<Value = QuadNum> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, b, c, d)| QuadNum::from_ratios((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn conj_is_field_automorphism(x in small(), y in small()) {
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
            prop_assert_eq!((&x + &y).conj(), x.conj() + y.conj());
            if !y.is_zero() {
                prop_assert_eq!((&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn order_agrees_with_f64(x in small(), y in small()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x < y, fx < fy);
            }
        }
    }
}
