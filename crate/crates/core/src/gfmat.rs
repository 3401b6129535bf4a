//! 4×4 matrices over GF(5).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const P: u8 = 5;
pub const DIM: usize = 4;

/// Row-major entries in `0..5`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMat([u8; 16]);

/// A row vector of GF(5)⁴, indexed `v0 + 5 v1 + 25 v2 + 125 v3`.
pub type VecIndex = usize;
pub const VECTORS: usize = 625;

impl GfMat {
    pub fn new(rows: [[i64; 4]; 4]) -> Self {
        let mut e = [0u8; 16];
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                e[4 * r + c] = x.rem_euclid(P as i64) as u8;
            }
        }
        GfMat(e)
    }

    pub fn from_entries(e: [u8; 16]) -> Result<Self> {
        if e.iter().any(|&x| x >= P) {
            return Err(Error::Validation("entries must lie in 0..5".into()));
        }
        Ok(GfMat(e))
    }

    pub fn identity() -> Self {
        let mut e = [0u8; 16];
        for i in 0..4 {
            e[5 * i] = 1;
        }
        GfMat(e)
    }

    pub fn entries(&self) -> &[u8; 16] {
        &self.0
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.0[4 * r + c]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, rhs: &GfMat) -> GfMat {
        let (a, b) = (&self.0, &rhs.0);
        let mut e = [0u8; 16];
        for r in 0..4 {
            for c in 0..4 {
                let s = a[4 * r] as u32 * b[c] as u32
                    + a[4 * r + 1] as u32 * b[4 + c] as u32
                    + a[4 * r + 2] as u32 * b[8 + c] as u32
                    + a[4 * r + 3] as u32 * b[12 + c] as u32;
                e[4 * r + c] = (s % 5) as u8;
            }
        }
        GfMat(e)
    }

    pub fn pow(&self, mut k: u64) -> GfMat {
        let (mut acc, mut base) = (Self::identity(), *self);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u8 {
        let mut m = self.0;
        let mut det = 1u32;
        for c in 0..4 {
            let Some(p) = (c..4).find(|&r| m[4 * r + c] != 0) else { return 0 };
            if p != c {
                for k in 0..4 {
                    m.swap(4 * p + k, 4 * c + k);
                }
                det = (det * 4) % 5;
            }
            let pivot = m[4 * c + c] as u32;
            det = det * pivot % 5;
            let inv = INV[pivot as usize] as u32;
            for r in c + 1..4 {
                let f = m[4 * r + c] as u32 * inv % 5;
                for k in c..4 {
                    m[4 * r + k] = ((m[4 * r + k] as u32 + 5 * 5 - f * m[4 * c + k] as u32) % 5) as u8;
                }
            }
        }
        det as u8
    }

    pub fn inverse(&self) -> Option<GfMat> {
        let mut m = self.0;
        let mut inv = Self::identity().0;
        for c in 0..4 {
            let p = (c..4).find(|&r| m[4 * r + c] != 0)?;
            for k in 0..4 {
                m.swap(4 * p + k, 4 * c + k);
                inv.swap(4 * p + k, 4 * c + k);
            }
            let s = INV[m[4 * c + c] as usize] as u32;
            for k in 0..4 {
                m[4 * c + k] = (m[4 * c + k] as u32 * s % 5) as u8;
                inv[4 * c + k] = (inv[4 * c + k] as u32 * s % 5) as u8;
            }
            for r in 0..4 {
                if r == c || m[4 * r + c] == 0 {
                    continue;
                }
                let f = m[4 * r + c] as u32;
                for k in 0..4 {
                    m[4 * r + k] = ((m[4 * r + k] as u32 + 25 - f * m[4 * c + k] as u32) % 5) as u8;
                    inv[4 * r + k] = ((inv[4 * r + k] as u32 + 25 - f * inv[4 * c + k] as u32) % 5) as u8;
                }
            }
        }
        Some(GfMat(inv))
    }

    /// `u⁻¹ · self · u`.
    pub fn conjugate_by(&self, u: &GfMat, u_inv: &GfMat) -> GfMat {
        u_inv.mul(self).mul(u)
    }

    /// Base-5 digits packed into one integer; injective.
    pub fn key(&self) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, &x| acc * 5 + x as u64)
    }

    pub fn from_key(mut k: u64) -> Result<Self> {
        let mut e = [0u8; 16];
        for x in e.iter_mut() {
            *x = (k % 5) as u8;
            k /= 5;
        }
        if k != 0 {
            return Err(Error::Validation("key out of range".into()));
        }
        Ok(GfMat(e))
    }

    /// Multiplicative order, if invertible.
    pub fn order(&self) -> Option<u64> {
        self.inverse()?;
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }

    /// Row vector times matrix.
    pub fn act(&self, v: VecIndex) -> VecIndex {
        let d = digits(v);
        let mut out = 0;
        for c in (0..4).rev() {
            let s: u32 = (0..4).map(|r| d[r] as u32 * self.0[4 * r + c] as u32).sum();
            out = out * 5 + (s % 5) as usize;
        }
        out
    }
}

const INV: [u8; 5] = [0, 1, 3, 2, 4];

pub fn digits(v: VecIndex) -> [u8; 4] {
    [(v % 5) as u8, (v / 5 % 5) as u8, (v / 25 % 5) as u8, (v / 125 % 5) as u8]
}

impl fmt::Debug for GfMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfMat({self})")
    }
}

/// Sixteen digits, row-major.
impl fmt::Display for GfMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for GfMat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s.chars().filter(|c| !c.is_whitespace()).map(|c| c as u8).collect();
        if digits.len() != 16 || digits.iter().any(|d| !(b'0'..b'5').contains(d)) {
            return Err(Error::Parse(format!("expected 16 digits in 0..5, got {s:?}")));
        }
        let mut e = [0u8; 16];
        for (x, d) in e.iter_mut().zip(digits) {
            *x = d - b'0';
        }
        Ok(GfMat(e))
    }
}

impl Serialize for GfMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GfMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Nonzero vectors in index order.
pub fn nonzero_vectors() -> impl Iterator<Item = VecIndex> {
    1..VECTORS
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn any_mat() -> impl Strategy<Value = GfMat> {
        prop::array::uniform16(0u8..5).prop_map(GfMat)
    }

    #[test]
    fn identity_and_key() {
        let i = GfMat::identity();
        assert_eq!(i.to_string(), "1000010000100001");
        assert_eq!(i.det(), 1);
        assert_eq!(GfMat::from_key(i.key()).unwrap(), i);
        assert_eq!("1000 0100 0010 0001".parse::<GfMat>().unwrap(), i);
        assert!("1000010000100005".parse::<GfMat>().is_err());
        assert_eq!(serde_json::to_string(&i).unwrap(), "\"1000010000100001\"");
    }

    #[test]
    fn singular_matrix() {
        let m = GfMat::new([[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(m.det(), 0);
        assert!(m.inverse().is_none());
        assert!(m.order().is_none());
    }

    #[test]
    fn action_is_row_times_matrix() {
        let m = GfMat::new([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]]);
        // e1 = (1,0,0,0) ↦ first row
        assert_eq!(m.act(1), 5);
        // e4 ↦ 2 e4
        assert_eq!(m.act(125), 250);
        assert_eq!(m.act(0), 0);
    }

    proptest! {
        #[test]
        fn inverse_and_det(a in any_mat(), b in any_mat()) {
            prop_assert_eq!(a.mul(&b).det() as u32, a.det() as u32 * b.det() as u32 % 5);
            if let Some(ai) = a.inverse() {
                prop_assert!(a.det() != 0);
                prop_assert!(a.mul(&ai).is_identity());
                prop_assert!(ai.mul(&a).is_identity());
            } else {
                prop_assert_eq!(a.det(), 0);
            }
            prop_assert_eq!(GfMat::from_key(a.key()).unwrap(), a);
            prop_assert_eq!(a.to_string().parse::<GfMat>().unwrap(), a);
        }

        #[test]
        fn action_is_a_right_action(a in any_mat(), b in any_mat(), v in 0usize..625) {
            prop_assert_eq!(b.act(a.act(v)), a.mul(&b).act(v));
        }
    }
}
