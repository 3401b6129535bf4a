//! Finite fields of order 2, 3, 4 and 5 as explicit lookup tables, and points
//! of the projective planes over them.
//!
//! `GF(4)` is `F2[ζ]/(ζ² + ζ + 1)`; the element with index `b0 + 2·b1` is
//! `b0 + b1·ζ`, so `ζ` has index 2 and `ζ̄ = ζ + 1 = ζ²` has index 3.

use std::fmt;

use crate::error::{Error, Result};

pub type Elem = u8;

/// Index of `ζ` in the `GF(4)` table.
pub const ZETA: Elem = 2;
/// Index of `ζ̄ = 1 + ζ` in the `GF(4)` table.
pub const ZETA_BAR: Elem = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    add: Vec<Vec<Elem>>,
    mul: Vec<Vec<Elem>>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
}

/// `make_field(q)` for `q ∈ {2, 3, 4, 5}`.
pub fn make_field(q: usize) -> Result<FieldTable> {
    let (add, mul): (Vec<Vec<Elem>>, Vec<Vec<Elem>>) = match q {
        2 | 3 | 5 => (
            table(q, |a, b| (a + b) % q),
            table(q, |a, b| (a * b) % q),
        ),
        4 => (table(4, |a, b| a ^ b), table(4, gf4_mul)),
        _ => return Err(Error::UnsupportedFieldOrder(q)),
    };
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a][b] == 0).unwrap() as Elem)
        .collect();
    let inv = (0..q)
        .map(|a| (0..q).find(|&b| mul[a][b] == 1).map(|b| b as Elem))
        .collect();
    Ok(FieldTable { q, add, mul, neg, inv })
}

fn table(q: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<Elem>> {
    (0..q)
        .map(|a| (0..q).map(|b| f(a, b) as Elem).collect())
        .collect()
}

// carry-less product reduced by ζ² = ζ + 1
fn gf4_mul(a: usize, b: usize) -> usize {
    let mut prod = 0;
    for bit in 0..2 {
        if b >> bit & 1 == 1 {
            prod ^= a << bit;
        }
    }
    if prod & 4 != 0 {
        prod ^= 0b111;
    }
    prod
}

impl FieldTable {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.inv[a as usize]
    }

    /// The Frobenius map `x ↦ x^p` (the Galois involution for `q = 4`).
    pub fn frobenius(&self, a: Elem) -> Elem {
        let p = match self.q {
            4 => 2,
            q => q,
        };
        (1..p).fold(a, |acc, _| self.mul(acc, a))
    }

    pub fn dot(&self, u: &[Elem; 3], v: &[Elem; 3]) -> Elem {
        (0..3).fold(0, |acc, i| self.add(acc, self.mul(u[i], v[i])))
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn check_axioms(&self) -> bool {
        let q = self.q as Elem;
        let els: Vec<Elem> = (0..q).collect();
        for &a in &els {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return false;
            }
            if self.add(a, self.neg(a)) != 0 {
                return false;
            }
            match self.inv(a) {
                Some(b) if a != 0 => {
                    if self.mul(a, b) != 1 {
                        return false;
                    }
                }
                None if a == 0 => {}
                _ => return false,
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A point of `F_q P²` with its first nonzero coordinate scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([Elem; 3]);

impl ProjPoint {
    pub fn new(field: &FieldTable, coords: [Elem; 3]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or_else(|| Error::Validation("projective point with all coordinates zero".into()))?;
        if coords.iter().any(|&c| c as usize >= field.order()) {
            return Err(Error::Validation(format!("coordinate out of range in {coords:?}")));
        }
        let s = field.inv(lead).expect("nonzero element is invertible");
        Ok(ProjPoint(coords.map(|c| field.mul(s, c))))
    }

    /// The affine point `(x, y)` as `[x : y : 1]`.
    pub fn affine(field: &FieldTable, x: Elem, y: Elem) -> Result<Self> {
        Self::new(field, [x, y, 1])
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.0
    }

    /// Applies `v ↦ M·φ(v)` where `φ` is the Frobenius map when `frobenius` is set.
    pub fn transform(&self, field: &FieldTable, m: &[[Elem; 3]; 3], frobenius: bool) -> Result<Self> {
        let v = if frobenius {
            self.0.map(|c| field.frobenius(c))
        } else {
            self.0
        };
        let w = [0, 1, 2].map(|r| field.dot(&m[r], &v));
        Self::new(field, w)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// All `q² + q + 1` points, in lexicographic order of their normalized coordinates.
pub fn projective_points(field: &FieldTable) -> Vec<ProjPoint> {
    let q = field.order() as Elem;
    let mut out = Vec::with_capacity((q as usize).pow(2) + q as usize + 1);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let first = [a, b, c].into_iter().find(|&x| x != 0);
                if first == Some(1) {
                    out.push(ProjPoint([a, b, c]));
                }
            }
        }
    }
    out.sort();
    out
}

/// The ten points `B` of `F4 P²`: `P1..P5 = A^j·(1,0)` for the order-5 matrix
/// `A = [[0,1],[1,ζ]]`, followed by their directions `Q1..Q5` on the line at infinity.
pub fn f4_decagon_points(field: &FieldTable) -> Result<Vec<(String, ProjPoint)>> {
    if field.order() != 4 {
        return Err(Error::Validation("the decagon point set lives over GF(4)".into()));
    }
    let mut affine = Vec::with_capacity(5);
    let mut v = [1, 0];
    for _ in 0..5 {
        affine.push(v);
        // A·(x, y)ᵀ = (y, x + ζ·y)
        v = [v[1], field.add(v[0], field.mul(ZETA, v[1]))];
    }
    if v != [1, 0] {
        return Err(Error::Invariant("A^5 is not the identity".into()));
    }
    let mut out = Vec::with_capacity(10);
    for (j, &[x, y]) in affine.iter().enumerate() {
        out.push((format!("L{}", j + 1), ProjPoint::affine(field, x, y)?));
    }
    for (j, &[x, y]) in affine.iter().enumerate() {
        out.push((format!("M{}", j + 1), ProjPoint::new(field, [x, y, 0])?));
    }
    Ok(out)
}

/// The eight points of `F3² ∖ {0}`.
pub fn f3_maclane_points(field: &FieldTable) -> Result<Vec<(String, ProjPoint)>> {
    if field.order() != 3 {
        return Err(Error::Validation("the MacLane point set lives over GF(3)".into()));
    }
    let mut out = Vec::with_capacity(8);
    for x in 0..3 {
        for y in 0..3 {
            if (x, y) != (0, 0) {
                out.push((format!("p{x}{y}"), ProjPoint::affine(field, x, y)?));
            }
        }
    }
    Ok(out)
}
