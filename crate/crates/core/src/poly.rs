//! Univariate polynomials and rational functions over `Q` in one parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quad::{rat, QuadNum};

/// Dense coefficients, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The parameter itself.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                Poly(self.0.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut rem = self.0.clone();
        let mut quo = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (k, dc) in d.0.iter().enumerate() {
                rem[shift + k] = &rem[shift + k] - &c * dc;
            }
            quo[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &QuadNum) -> QuadNum {
        self.0.iter().rev().fold(QuadNum::zero(), |acc, c| {
            acc * x + QuadNum::new(c.clone(), BigRational::zero())
        })
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::from_ints(&[1])
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let z = BigRational::zero();
        Poly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) + rhs.0.get(k).unwrap_or(&z)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($t:ty: $($tr:ident $f:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned!(Poly: Add add, Sub sub, Mul mul);
forward_owned!(RatFunc: Add add, Sub sub, Mul mul);

/// Formats in the variable `α`, highest degree first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "α")
    }
}

pub fn write_poly(f: &mut impl fmt::Write, p: &Poly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let unit = abs.is_one();
        match k {
            0 => write!(f, "{abs}")?,
            _ => {
                if !unit {
                    write!(f, "{abs}")?;
                }
                write!(f, "{var}")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    Ok(())
}

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.lead().unwrap().clone();
        let inv = BigRational::one() / lead;
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::poly(Poly::from_ints(&[n]))
    }

    pub fn x() -> Self {
        Self::poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn eval(&self, x: &QuadNum) -> Result<QuadNum> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    #[cfg(test)]
    fn is_canonical(&self) -> bool {
        self.den.lead().is_some_and(|l| l.is_one()) && Poly::gcd(&self.num, &self.den).degree() == Some(0)
            || (self.num.is_zero() && self.den == Poly::one())
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.0.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_and_divisibility() {
        let a = Poly::from_ints(&[-1, 1, 1]); // α² + α - 1
        let b = &a * &Poly::from_ints(&[3, 2]);
        let c = &a * &Poly::from_ints(&[0, 5]);
        assert_eq!(Poly::gcd(&b, &c), a);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert!(!Poly::zero().divides(&a));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[-1, 1, 1]).to_string(), "α^2 + α - 1");
        let beta = RatFunc::new(Poly::from_ints(&[-1, 2]), Poly::x()).unwrap();
        assert_eq!(beta.to_string(), "(2α - 1)/α");
    }

    #[test]
    fn reduction() {
        let r = RatFunc::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[2, 2])).unwrap();
        assert_eq!(r, RatFunc::poly(Poly::from_ints(&[-1, 1])));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn eval_at_golden_root() {
        let p = Poly::from_ints(&[-1, 1, 1]);
        assert!(p.eval(&QuadNum::golden(true)).is_zero());
        assert!(p.eval(&QuadNum::golden(false)).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..5, 0..4).prop_map(|v| Poly::from_ints(&v))
    }

    fn small_rf() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly()).prop_filter_map("nonzero den", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn ratfunc_ops_stay_canonical(a in small_rf(), b in small_rf()) {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(r.is_canonical());
            }
            if !b.is_zero() {
                let q = a.checked_div(&b).unwrap();
                prop_assert!(q.is_canonical());
                prop_assert_eq!(&q * &b, a.clone());
            }
        }

        #[test]
        fn div_rem_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
