//! Braid monodromy of a real affine line arrangement with real critical values.
//!
//! Fibers are visited by decreasing `x`. Strands are the lines ordered by
//! decreasing `y` at a base fiber to the right of every crossing, strand 1 on
//! top. Passing a critical fiber right to left applies the positive half-twist
//! of each block of concurrent lines; the meridian around the `k`-th fiber
//! maps to `C_k · T_k · C_k⁻¹`, where `T_k` is the product of full twists at
//! that fiber and `C_k` the product of the half-twists of the fibers before it.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{RealArrangement, Sign};
use crate::braid::{BraidWord, MonodromyTuple, TupleEntry};
use crate::error::{Error, Result};
use crate::quad::QuadNum;

/// `y = slope · x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLine {
    pub label: String,
    pub slope: QuadNum,
    pub intercept: QuadNum,
}

impl AffineLine {
    pub fn new(label: impl Into<String>, slope: QuadNum, intercept: QuadNum) -> Self {
        AffineLine { label: label.into(), slope, intercept }
    }

    pub fn y_at(&self, x: &QuadNum) -> QuadNum {
        &(&self.slope * x) + &self.intercept
    }
}

/// The non-vertical lines of `arr` in the chart `z = 1`.
///
/// A line `z = 0`, if present, is the line at infinity; vertical lines (the
/// pencil through `[0:1:0]`) are dropped.
pub fn affine_part(arr: &RealArrangement) -> Vec<AffineLine> {
    arr.iter()
        .filter(|(_, l)| !l.is_vertical())
        .map(|(label, l)| {
            let [a, b, c] = l.coeffs();
            // a x + b y + c = 0
            AffineLine::new(label.clone(), -(a / b), -(c / b))
        })
        .collect()
}

/// A multiple-point abscissa and the blocks of strands that meet there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalFiber {
    pub x: QuadNum,
    /// 1-based strand positions `(first, last)` just right of `x`, top to bottom.
    pub blocks: Vec<(usize, usize)>,
    /// Line labels of each block, in the same order.
    pub block_lines: Vec<Vec<String>>,
}

fn sorted_by_y(lines: &[AffineLine], x: &QuadNum) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..lines.len()).collect();
    let ys: Vec<QuadNum> = lines.iter().map(|l| l.y_at(x)).collect();
    idx.sort_by(|&i, &j| ys[j].cmp(&ys[i]));
    idx
}

fn check_distinct(lines: &[AffineLine]) -> Result<()> {
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.slope == b.slope && a.intercept == b.intercept {
                return Err(Error::Validation(format!("lines {} and {} coincide", a.label, b.label)));
            }
        }
    }
    Ok(())
}

fn crossing_abscissas(lines: &[AffineLine]) -> Vec<QuadNum> {
    let mut xs = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.slope != b.slope {
                xs.push((&b.intercept - &a.intercept) / (&a.slope - &b.slope));
            }
        }
    }
    xs.sort_by(|a, b| b.cmp(a));
    xs.dedup();
    xs
}

/// Abscissas at which strand orders are sampled: the base point `x_1 + 1`,
/// midpoints between consecutive critical values, and `x_r - 1`.
fn sample_points(xs: &[QuadNum]) -> Vec<QuadNum> {
    let Some(first) = xs.first() else { return vec![QuadNum::zero()] };
    let mut out = vec![first + &QuadNum::one()];
    out.extend(xs.windows(2).map(|w| QuadNum::midpoint(&w[0], &w[1])));
    out.push(xs.last().unwrap() - &QuadNum::one());
    out
}

/// Critical fibers sorted by decreasing `x`, with coincident crossings merged into blocks.
pub fn critical_values(lines: &[AffineLine]) -> Result<Vec<CriticalFiber>> {
    check_distinct(lines)?;
    let xs = crossing_abscissas(lines);
    let samples = sample_points(&xs);
    let mut fibers = Vec::with_capacity(xs.len());
    for (k, x) in xs.iter().enumerate() {
        let order = sorted_by_y(lines, &samples[k]);
        let ys: Vec<QuadNum> = order.iter().map(|&i| lines[i].y_at(x)).collect();
        let mut blocks = Vec::new();
        let mut block_lines = Vec::new();
        let mut s = 0;
        while s < order.len() {
            let e = (s..order.len()).take_while(|&t| ys[t] == ys[s]).last().unwrap();
            if e > s {
                blocks.push((s + 1, e + 1));
                block_lines.push(order[s..=e].iter().map(|&i| lines[i].label.clone()).collect());
            }
            s = e + 1;
        }
        fibers.push(CriticalFiber { x: x.clone(), blocks, block_lines });
    }
    Ok(fibers)
}

/// Line labels by decreasing `y` to the right of every crossing.
pub fn base_strand_order(lines: &[AffineLine]) -> Vec<String> {
    let xs = crossing_abscissas(lines);
    let base = sample_points(&xs).swap_remove(0);
    sorted_by_y(lines, &base).into_iter().map(|i| lines[i].label.clone()).collect()
}

/// `Δ` on strands `i..=j`: `(σ_i⋯σ_{j-1})(σ_i⋯σ_{j-2})⋯σ_i`.
pub fn half_twist(n: usize, i: usize, j: usize) -> BraidWord {
    let mut letters = Vec::new();
    for top in (i..j).rev() {
        letters.extend(i as i32..=top as i32);
    }
    BraidWord::new(n, letters).expect("block lies inside the strands")
}

fn product(n: usize, words: impl IntoIterator<Item = BraidWord>) -> Result<BraidWord> {
    words.into_iter().try_fold(BraidWord::identity(n), |acc, w| acc.compose(&w))
}

/// One monodromy braid per critical fiber, in order of decreasing `x`.
pub fn braid_monodromy(lines: &[AffineLine]) -> Result<MonodromyTuple> {
    let n = lines.len();
    if n == 0 {
        return Err(Error::Validation("no affine lines".into()));
    }
    let fibers = critical_values(lines)?;
    let samples = sample_points(&fibers.iter().map(|f| f.x.clone()).collect::<Vec<_>>());
    let strands = base_strand_order(lines);
    let mut conj = BraidWord::identity(n);
    let mut entries = Vec::with_capacity(fibers.len());
    for (k, fiber) in fibers.iter().enumerate() {
        let mut covered = vec![false; n];
        for &(i, j) in &fiber.blocks {
            for c in &mut covered[i - 1..j] {
                if std::mem::replace(c, true) {
                    return Err(Error::Invariant(format!("overlapping blocks at x = {}", fiber.x)));
                }
            }
        }
        let h = product(n, fiber.blocks.iter().map(|&(i, j)| half_twist(n, i, j)))?;
        let twist = h.pow(2);

        // crossing the fiber must reverse each block and nothing else
        let right = sorted_by_y(lines, &samples[k]);
        let left = sorted_by_y(lines, &samples[k + 1]);
        let label = |v: Vec<usize>| v.into_iter().map(|i| lines[i].label.as_str()).collect::<Vec<_>>();
        if h.induced_permutation().permute_slice(&label(right)) != label(left) {
            return Err(Error::Invariant(format!("half-twists at x = {} disagree with the line order", fiber.x)));
        }

        entries.push(TupleEntry { label: format!("x={}", fiber.x), word: conj.conjugate(&twist)? });
        conj = conj.compose(&h)?;
    }
    MonodromyTuple::new(n, strands, entries)
}

/// Entrywise `w⁻¹ t_i w`; strand labels follow the strands of `w`.
pub fn conjugate_tuple(t: &MonodromyTuple, w: &BraidWord) -> Result<MonodromyTuple> {
    if w.n() != t.n() {
        return Err(Error::StrandMismatch(t.n(), w.n()));
    }
    let inv = w.invert();
    let entries = t
        .entries()
        .iter()
        .map(|e| Ok(TupleEntry { label: e.label.clone(), word: inv.conjugate(&e.word)? }))
        .collect::<Result<Vec<_>>>()?;
    let strands = w.induced_permutation().permute_slice(t.strands());
    MonodromyTuple::new(t.n(), strands, entries)
}

/// Strand orders between consecutive fibers, from the base fiber leftwards.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WiringDiagram {
    /// Sample abscissas, approximate, for display.
    pub xs: Vec<f64>,
    pub orders: Vec<Vec<String>>,
    pub critical: Vec<f64>,
}

pub fn wiring_diagram(lines: &[AffineLine]) -> Result<WiringDiagram> {
    check_distinct(lines)?;
    let xs = crossing_abscissas(lines);
    let samples = sample_points(&xs);
    Ok(WiringDiagram {
        xs: samples.iter().map(QuadNum::to_f64).collect(),
        orders: samples
            .iter()
            .map(|x| sorted_by_y(lines, x).into_iter().map(|i| lines[i].label.clone()).collect())
            .collect(),
        critical: xs.iter().map(QuadNum::to_f64).collect(),
    })
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, order) in self.orders.iter().enumerate() {
            writeln!(f, "x≈{:>8.4}  {}", self.xs[k], order.join(" "))?;
            if let Some(c) = self.critical.get(k) {
                writeln!(f, "  ── crossing at x≈{c:.4}")?;
            }
        }
        Ok(())
    }
}

/// `σ3σ4σ2σ3σ2`, derived as the positive braid taking the strand labels of
/// `C⁻` to those of `C⁺`.
pub fn alignment_braid() -> Result<BraidWord> {
    let minus = base_strand_order(&affine_part(&crate::arrangement::build_c_arrangement(Sign::Minus)));
    let plus = base_strand_order(&affine_part(&crate::arrangement::build_c_arrangement(Sign::Plus)));
    BraidWord::permutation_braid(&minus, &plus)
}

/// Braid monodromy of the affine lines of `C^sign`.
pub fn c_monodromy(sign: Sign) -> Result<MonodromyTuple> {
    braid_monodromy(&affine_part(&crate::arrangement::build_c_arrangement(sign)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_c_arrangement;
    use crate::braid::words_equal;

    fn w(l: &[i32]) -> BraidWord {
        BraidWord::new(5, l.to_vec()).unwrap()
    }

    pub(crate) fn golden() -> Vec<BraidWord> {
        vec![
            w(&[1, 1, 3, 3]),
            w(&[1, 3]).conjugate(&w(&[2, 2, 4, 4])).unwrap(),
            w(&[1, 3, 2, 4]).conjugate(&w(&[1, 1, 3, 3])).unwrap(),
            w(&[1, 3, 2, 4, 1, 3]).conjugate(&w(&[2, 2, 4, 4])).unwrap(),
        ]
    }

    #[test]
    fn affine_part_of_c() {
        let lines = affine_part(&build_c_arrangement(Sign::Plus));
        let labels: Vec<_> = lines.iter().map(|l| l.label.as_str()).collect();
        assert_eq!(labels, ["L1", "L2", "L3", "L4", "L5"]);
    }

    #[test]
    fn critical_values_of_c() {
        for sign in [Sign::Plus, Sign::Minus] {
            let g = sign.gamma();
            let q = QuadNum::int;
            let fibers = critical_values(&affine_part(&build_c_arrangement(sign))).unwrap();
            let mut expected = vec![&g + &q(2), q(1), q(0), -(&g + &q(1))];
            expected.sort_by(|a, b| b.cmp(a));
            let xs: Vec<_> = fibers.iter().map(|f| f.x.clone()).collect();
            assert_eq!(xs, expected);
            assert!(fibers.iter().all(|f| f.blocks.len() == 2 && f.blocks.iter().all(|&(i, j)| j == i + 1)));
        }
        let plus = critical_values(&affine_part(&build_c_arrangement(Sign::Plus))).unwrap();
        assert_eq!(plus[0].block_lines, [["L1", "L3"], ["L2", "L4"]]);
    }

    #[test]
    fn strand_orders() {
        let order = |s| base_strand_order(&affine_part(&build_c_arrangement(s)));
        assert_eq!(order(Sign::Plus), ["L1", "L3", "L2", "L4", "L5"]);
        assert_eq!(order(Sign::Minus), ["L1", "L4", "L5", "L2", "L3"]);
        let one = [AffineLine::new("a", QuadNum::int(3), QuadNum::int(1))];
        assert_eq!(base_strand_order(&one), ["a"]);
    }

    #[test]
    fn two_lines() {
        let lines = [
            AffineLine::new("p", QuadNum::int(1), QuadNum::int(0)),
            AffineLine::new("m", QuadNum::int(-1), QuadNum::int(0)),
        ];
        let f = critical_values(&lines).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].x, QuadNum::zero());
        assert_eq!(f[0].blocks, [(1, 2)]);
        let t = braid_monodromy(&lines).unwrap();
        assert_eq!(t.entries()[0].word.letters(), &[1, 1]);
        assert!(critical_values(&[lines[0].clone(), lines[0].clone()]).is_err());
    }

    #[test]
    fn triple_point_uses_full_twist() {
        let q = QuadNum::int;
        let lines = [
            AffineLine::new("a", q(1), q(0)),
            AffineLine::new("b", q(0), q(0)),
            AffineLine::new("c", q(-1), q(0)),
        ];
        let t = braid_monodromy(&lines).unwrap();
        assert_eq!(t.len(), 1);
        let full = BraidWord::new(3, vec![1, 2, 1, 1, 2, 1]).unwrap();
        assert!(words_equal(&t.entries()[0].word, &full).unwrap());
        assert_eq!(half_twist(4, 1, 4).letters(), &[1, 2, 3, 1, 2, 1]);
    }

    #[test]
    fn reproduces_both_tuples() {
        for sign in [Sign::Plus, Sign::Minus] {
            let t = c_monodromy(sign).unwrap();
            assert_eq!(t.len(), 4);
            for (k, (got, want)) in t.words().zip(golden()).enumerate() {
                assert!(words_equal(got, &want).unwrap(), "{sign} entry {k}: {got}");
            }
            assert_eq!(t.pseudo_coxeter().unwrap().exponent_sum(), 16);
        }
    }

    #[test]
    fn alignment() {
        let tau = alignment_braid().unwrap();
        assert!(words_equal(&tau, &w(&[3, 4, 2, 3, 2])).unwrap());
        let minus = c_monodromy(Sign::Minus).unwrap();
        let aligned = conjugate_tuple(&minus, &tau).unwrap();
        assert_eq!(aligned.strands(), ["L1", "L3", "L2", "L4", "L5"]);
        let chi = aligned.pseudo_coxeter().unwrap();
        let expect = tau.invert().conjugate(&minus.pseudo_coxeter().unwrap()).unwrap();
        assert!(words_equal(&chi, &expect).unwrap());
        assert_eq!(conjugate_tuple(&minus, &BraidWord::identity(5)).unwrap(), minus);
        assert!(conjugate_tuple(&minus, &BraidWord::identity(4)).is_err());
    }

    #[test]
    fn wiring_dump() {
        let d = wiring_diagram(&affine_part(&build_c_arrangement(Sign::Plus))).unwrap();
        assert_eq!(d.orders.len(), 5);
        assert_eq!(d.orders[0], ["L1", "L3", "L2", "L4", "L5"]);
        assert_eq!(d.orders[4], ["L4", "L5", "L3", "L2", "L1"]);
    }
}
