//! Real projective line arrangements with coefficients in `Q(√5)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::LineCombinatorics;
use crate::error::{Error, Result};
use crate::quad::QuadNum;

/// Which root of `γ² + γ - 1 = 0` is used: `γ⁺ = (-1+√5)/2` or `γ⁻ = (-1-√5)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn gamma(self) -> QuadNum {
        QuadNum::golden(self == Sign::Plus)
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be + or -, got {s:?}"))),
        }
    }
}

/// Scales a nonzero triple so that its first nonzero entry is 1.
pub fn normalize(v: [QuadNum; 3]) -> Result<[QuadNum; 3]> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::Validation("all homogeneous coordinates are zero".into()))?
        .inv()?;
    Ok(v.map(|c| c * &lead))
}

pub fn cross(u: &[QuadNum; 3], v: &[QuadNum; 3]) -> [QuadNum; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn dot(u: &[QuadNum; 3], v: &[QuadNum; 3]) -> QuadNum {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

/// The line `a·x + b·y + c·z = 0`, canonically scaled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLineQ([QuadNum; 3]);

impl ProjLineQ {
    pub fn new(a: QuadNum, b: QuadNum, c: QuadNum) -> Result<Self> {
        Ok(ProjLineQ(normalize([a, b, c])?))
    }

    pub fn coeffs(&self) -> &[QuadNum; 3] {
        &self.0
    }

    pub fn contains(&self, p: &ProjPointQ) -> bool {
        dot(&self.0, &p.0).is_zero()
    }

    pub fn conj(&self) -> Self {
        ProjLineQ(self.0.clone().map(|c| c.conj()))
    }

    /// Whether this is the line through `[0:1:0]`, i.e. `b = 0`.
    pub fn is_vertical(&self) -> bool {
        self.0[1].is_zero()
    }
}

/// A point `[x : y : z]`, canonically scaled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPointQ([QuadNum; 3]);

impl ProjPointQ {
    pub fn new(x: QuadNum, y: QuadNum, z: QuadNum) -> Result<Self> {
        Ok(ProjPointQ(normalize([x, y, z])?))
    }

    pub fn coords(&self) -> &[QuadNum; 3] {
        &self.0
    }

    pub fn conj(&self) -> Self {
        ProjPointQ(self.0.clone().map(|c| c.conj()))
    }

    /// Intersection of two distinct lines.
    pub fn meet(l: &ProjLineQ, m: &ProjLineQ) -> Result<Self> {
        let p = cross(&l.0, &m.0);
        if p.iter().all(|c| c.is_zero()) {
            return Err(Error::Validation("coincident lines have no unique intersection".into()));
        }
        Ok(ProjPointQ(normalize(p)?))
    }

    /// `(x/z, y/z)` for affine points.
    pub fn affine(&self) -> Option<(QuadNum, QuadNum)> {
        let z = &self.0[2];
        if z.is_zero() {
            return None;
        }
        Some((&self.0[0] / z, &self.0[1] / z))
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for ProjLineQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (c, v) in self.0.iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                terms.push(v.to_string());
            } else {
                terms.push(format!("({c}){v}"));
            }
        }
        write!(f, "{} = 0", terms.join(" + "))
    }
}

/// Ordered, labeled lines with pairwise distinct equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealArrangement {
    sign: Option<Sign>,
    labels: Vec<String>,
    lines: Vec<ProjLineQ>,
}

impl RealArrangement {
    pub fn new(sign: Option<Sign>, lines: Vec<(String, ProjLineQ)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (label, l) in &lines {
            if !seen.insert(l) {
                return Err(Error::Validation(format!("line {label} repeats an earlier line")));
            }
        }
        let (labels, lines) = lines.into_iter().unzip();
        Ok(RealArrangement { sign, labels, lines })
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lines(&self) -> &[ProjLineQ] {
        &self.lines
    }

    pub fn line(&self, label: &str) -> Option<&ProjLineQ> {
        self.labels.iter().position(|l| l == label).map(|k| &self.lines[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ProjLineQ)> {
        self.labels.iter().zip(&self.lines)
    }

    /// Galois conjugation applied to every coefficient.
    pub fn conj(&self) -> Self {
        RealArrangement {
            sign: self.sign.map(Sign::flip),
            labels: self.labels.clone(),
            lines: self.lines.iter().map(ProjLineQ::conj).collect(),
        }
    }

    pub fn with_line(&self, label: &str, line: ProjLineQ) -> Result<Self> {
        let mut all: Vec<(String, ProjLineQ)> = self.iter().map(|(l, x)| (l.clone(), x.clone())).collect();
        all.push((label.to_string(), line));
        Self::new(self.sign, all)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ArrangementFile::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ArrangementFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }
}

/// The ten lines `M1..M5, L1..L5` for `γ = γ^sign`:
/// `M1: z=0, M2: x=0, M3: x=z, M4: x=-(γ+1)z, M5: x=(γ+2)z,
///  L1: y=x, L2: y=γ(x-z), L3: y=γx+z, L4: y=z, L5: y=0`.
pub fn build_c_arrangement(sign: Sign) -> RealArrangement {
    let g = sign.gamma();
    let q = QuadNum::int;
    let g1 = &g + &q(1);
    let g2 = &g + &q(2);
    let rows: Vec<(&str, [QuadNum; 3])> = vec![
        ("M1", [q(0), q(0), q(1)]),
        ("M2", [q(1), q(0), q(0)]),
        ("M3", [q(1), q(0), q(-1)]),
        ("M4", [q(1), q(0), g1]),
        ("M5", [q(1), q(0), -g2]),
        ("L1", [q(1), q(-1), q(0)]),
        ("L2", [g.clone(), q(-1), -g.clone()]),
        ("L3", [g.clone(), q(-1), q(1)]),
        ("L4", [q(0), q(1), q(-1)]),
        ("L5", [q(0), q(1), q(0)]),
    ];
    let lines = rows
        .into_iter()
        .map(|(l, [a, b, c])| (l.to_string(), ProjLineQ::new(a, b, c).expect("nonzero")))
        .collect();
    RealArrangement::new(Some(sign), lines).expect("distinct lines")
}

/// `C^sign` plus `N: γx + (γ+1)y + z = 0`, the line through `[1:0:-γ]` and `[0:1:-(γ+1)]`.
pub fn build_h_arrangement(sign: Sign) -> RealArrangement {
    let g = sign.gamma();
    let n = ProjLineQ::new(g.clone(), &g + &QuadNum::one(), QuadNum::one()).expect("nonzero");
    build_c_arrangement(sign).with_line("N", n).expect("N is new")
}

/// Combinatorics of an arrangement together with the exact coordinates of
/// each of its points, aligned with `combinatorics.points()`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub combinatorics: LineCombinatorics,
    pub coords: Vec<ProjPointQ>,
}

impl Lattice {
    pub fn point_of(&self, lines: &[usize]) -> Option<&ProjPointQ> {
        let mut key = lines.to_vec();
        key.sort_unstable();
        self.combinatorics.points().iter().position(|p| *p == key).map(|k| &self.coords[k])
    }
}

/// Exact pairwise intersections with coincident points merged.
pub fn intersection_lattice(arr: &RealArrangement) -> Result<Lattice> {
    let mut by_point: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut index: std::collections::HashMap<ProjPointQ, usize> = Default::default();
    let mut coords = Vec::new();
    let lines = arr.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = ProjPointQ::meet(&lines[i], &lines[j])?;
            let k = *index.entry(p.clone()).or_insert_with(|| {
                coords.push(p);
                coords.len() - 1
            });
            let members = by_point.entry(k).or_default();
            for l in [i, j] {
                if !members.contains(&l) {
                    members.push(l);
                }
            }
        }
    }
    let mut pairs: Vec<(Vec<usize>, ProjPointQ)> = by_point
        .into_iter()
        .map(|(k, mut ls)| {
            ls.sort_unstable();
            (ls, coords[k].clone())
        })
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (points, coords): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let combinatorics = LineCombinatorics::new(arr.len(), points, Some(arr.labels().to_vec()))?;
    Ok(Lattice { combinatorics, coords })
}

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<Sign>,
    lines: Vec<LineEntry>,
}

#[derive(Serialize, Deserialize)]
struct LineEntry {
    label: String,
    a: [String; 2],
    b: [String; 2],
    c: [String; 2],
}

const FIELD_NAME: &str = "Q(sqrt5)";

impl From<&RealArrangement> for ArrangementFile {
    fn from(arr: &RealArrangement) -> Self {
        ArrangementFile {
            field: FIELD_NAME.into(),
            sign: arr.sign,
            lines: arr
                .iter()
                .map(|(label, l)| {
                    let [a, b, c] = l.coeffs().clone().map(|x| x.to_strings());
                    LineEntry { label: label.clone(), a, b, c }
                })
                .collect(),
        }
    }
}

impl TryFrom<ArrangementFile> for RealArrangement {
    type Error = Error;
    fn try_from(f: ArrangementFile) -> Result<Self> {
        if f.field != FIELD_NAME {
            return Err(Error::Parse(format!("unsupported field {:?}", f.field)));
        }
        let lines = f
            .lines
            .into_iter()
            .map(|e| {
                let q = |p: &[String; 2]| QuadNum::from_strs(&p[0], &p[1]);
                Ok((e.label, ProjLineQ::new(q(&e.a)?, q(&e.b)?, q(&e.c)?)?))
            })
            .collect::<Result<Vec<_>>>()?;
        RealArrangement::new(f.sign, lines)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::multiplicity_profile;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadNum {
        QuadNum::from_ratios(a, b)
    }

    #[test]
    fn c_plus_equations() {
        let c = build_c_arrangement(Sign::Plus);
        let g = Sign::Plus.gamma();
        let m4 = c.line("M4").unwrap();
        assert_eq!(m4.coeffs(), &[QuadNum::one(), QuadNum::zero(), &g + &QuadNum::one()]);
        assert_eq!(c.len(), 10);
    }

    #[test]
    fn c_minus_l2_contains_its_points() {
        let c = build_c_arrangement(Sign::Minus);
        let g = Sign::Minus.gamma();
        let l2 = c.line("L2").unwrap();
        // y = γ(x - z) at x = 3, z = 1
        let p = ProjPointQ::new(QuadNum::int(3), &g * &QuadNum::int(2), QuadNum::one()).unwrap();
        assert!(l2.contains(&p));
    }

    #[test]
    fn conjugation_swaps_signs() {
        assert_eq!(build_c_arrangement(Sign::Plus).conj(), build_c_arrangement(Sign::Minus));
        assert_eq!(build_h_arrangement(Sign::Minus).conj(), build_h_arrangement(Sign::Plus));
    }

    #[test]
    fn n_passes_through_both_points() {
        for s in [Sign::Plus, Sign::Minus] {
            let g = s.gamma();
            let h = build_h_arrangement(s);
            let n = h.line("N").unwrap();
            assert_eq!(n.coeffs()[2], QuadNum::one() * &g.inv().unwrap());
            let a = ProjPointQ::new(QuadNum::one(), QuadNum::zero(), -g.clone()).unwrap();
            let b = ProjPointQ::new(QuadNum::zero(), QuadNum::one(), -(&g + &QuadNum::one())).unwrap();
            assert!(n.contains(&a) && n.contains(&b));
        }
    }

    #[test]
    fn c_plus_lattice() {
        let lat = intersection_lattice(&build_c_arrangement(Sign::Plus)).unwrap();
        let c = &lat.combinatorics;
        assert_eq!(multiplicity_profile(c), BTreeMap::from([(2, 5), (3, 10), (5, 1)]));
        let o = lat.point_of(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(o, &ProjPointQ::new(QuadNum::zero(), QuadNum::one(), QuadNum::zero()).unwrap());
        let idx = |l: &str| c.index_of(l).unwrap();
        let one = ProjPointQ::new(QuadNum::one(), QuadNum::one(), QuadNum::one()).unwrap();
        assert_eq!(lat.point_of(&[idx("L1"), idx("L4"), idx("M3")]), Some(&one));
    }

    #[test]
    fn h_plus_quadruple_point() {
        let h = build_h_arrangement(Sign::Plus);
        let lat = intersection_lattice(&h).unwrap();
        let c = &lat.combinatorics;
        let idx = |l: &str| c.index_of(l).unwrap();
        let g = Sign::Plus.gamma();
        let expected = ProjPointQ::new(QuadNum::one(), QuadNum::zero(), -g).unwrap();
        assert_eq!(lat.point_of(&[idx("N"), idx("L3"), idx("L5"), idx("M4")]), Some(&expected));
        let prof = multiplicity_profile(c);
        assert_eq!(prof.get(&5), Some(&1));
        assert!(prof.get(&4).copied().unwrap_or(0) >= 1);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let h = build_h_arrangement(Sign::Minus);
        let s = h.to_json();
        let back = RealArrangement::from_json(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_input_is_normalized() {
        let s = r#"{"field":"Q(sqrt5)","lines":[
            {"label":"a","a":["2","0"],"b":["0","2"],"c":["0","0"]},
            {"label":"b","a":["0","0"],"b":["0","0"],"c":["-3","0"]}]}"#;
        let arr = RealArrangement::from_json(s).unwrap();
        assert_eq!(arr.lines()[0].coeffs()[1], QuadNum::sqrt5());
        assert_eq!(arr.lines()[1].coeffs()[2], q((1, 1), (0, 1)));
        assert!(RealArrangement::from_json(&s.replace("Q(sqrt5)", "Q(i)")).is_err());
        let dup = r#"{"field":"Q(sqrt5)","lines":[
            {"label":"a","a":["1","0"],"b":["0","0"],"c":["0","0"]},
            {"label":"b","a":["-7/2","0"],"b":["0","0"],"c":["0","0"]}]}"#;
        assert!(RealArrangement::from_json(dup).is_err());
    }
}
