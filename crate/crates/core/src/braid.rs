//! Braid words in Artin generators, word equality, Hurwitz moves.
//!
//! A letter `i > 0` is `σ_i`, `-i` is `σ_i⁻¹`; strands are numbered from 1.
//! Equality is decided by the Artin action on the free group `F_n`, which is
//! faithful, so two words are equal exactly when they induce the same
//! automorphism.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord", into = "RawWord")]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawWord {
    n: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = Error;
    fn try_from(r: RawWord) -> Result<Self> {
        BraidWord::new(r.n, r.letters)
    }
}

impl From<BraidWord> for RawWord {
    fn from(w: BraidWord) -> Self {
        RawWord { n: w.n, letters: w.letters }
    }
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, min: 1, max: n - 1 });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// `σ_i`, or `σ_i⁻¹` for negative `i`.
    pub fn sigma(n: usize, i: i32) -> Result<Self> {
        Self::new(n, vec![i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check(&self, other: &BraidWord) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `self · other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self · other · self⁻¹`, written `self * other`.
    pub fn conjugate(&self, other: &BraidWord) -> Result<BraidWord> {
        self.compose(other)?.compose(&self.invert())
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.repeat(k) }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        BraidWord { n: self.n, letters: free_reduce(self.letters.iter().copied()) }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Where each strand position ends up; σ_i swaps positions `i` and `i + 1`.
    pub fn induced_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in images.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        Permutation::from_images(images).expect("swaps compose to a permutation")
    }

    pub fn is_pure(&self) -> bool {
        self.induced_permutation().is_identity()
    }

    /// Images of the free generators `x_1..x_n` under the Artin automorphism.
    pub fn artin_images(&self) -> Vec<Vec<i32>> {
        let mut img: Vec<Vec<i32>> = (1..=self.n as i32).map(|j| vec![j]).collect();
        // img holds φ_w; appending σ_i gives φ_w ∘ φ_σi
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (img[i].clone(), img[i + 1].clone());
            if l > 0 {
                // x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i
                img[i] = free_reduce(a.iter().chain(&b).copied().chain(inverse(&a)));
                img[i + 1] = a;
            } else {
                // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
                img[i + 1] = free_reduce(inverse(&b).chain(a.iter().copied()).chain(b.iter().copied()));
                img[i] = b;
            }
        }
        img
    }

    pub fn equals(&self, other: &BraidWord) -> Result<bool> {
        self.check(other)?;
        Ok(self.artin_images() == other.artin_images())
    }

    /// Letters as `σ1²σ3⁻¹`, grouping runs of one letter.
    pub fn to_sigma_string(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut k = 0;
        while k < self.letters.len() {
            let l = self.letters[k];
            let run = self.letters[k..].iter().take_while(|&&m| m == l).count();
            let e = if l > 0 { run as i64 } else { -(run as i64) };
            out.push('σ');
            out.push_str(&l.unsigned_abs().to_string());
            if e != 1 {
                out.push_str(&superscript(e));
            }
            k += run;
        }
        out
    }

    /// Positive braid whose induced permutation carries the strand labeling
    /// `from` to `to`, with one crossing per inversion.
    pub fn permutation_braid<T: PartialEq + fmt::Debug>(from: &[T], to: &[T]) -> Result<BraidWord> {
        let n = from.len();
        if to.len() != n {
            return Err(Error::StrandMismatch(n, to.len()));
        }
        let mut rank = Vec::with_capacity(n);
        for x in from {
            let r = to
                .iter()
                .position(|y| y == x)
                .ok_or_else(|| Error::Validation(format!("{x:?} missing from target labeling")))?;
            if rank.contains(&r) {
                return Err(Error::Validation(format!("{x:?} repeated")));
            }
            rank.push(r);
        }
        let mut letters = Vec::new();
        // bubble sort; every swap removes exactly one inversion
        loop {
            let Some(i) = (0..n.saturating_sub(1)).find(|&i| rank[i] > rank[i + 1]) else { break };
            rank.swap(i, i + 1);
            letters.push(i as i32 + 1);
        }
        BraidWord::new(n.max(1), letters)
    }
}

fn inverse(w: &[i32]) -> impl Iterator<Item = i32> + '_ {
    w.iter().rev().map(|l| -l)
}

fn free_reduce(it: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in it {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn superscript(e: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s: String = e.unsigned_abs().to_string().chars().map(|c| DIGITS[c as usize - '0' as usize]).collect();
    if e < 0 {
        s.insert(0, '⁻');
    }
    s
}

pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    a.equals(b)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "n={}; [{}]", self.n, body.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses `n=5; [1,1,3,3]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"n=<strands>; [<letters>]\", got {s:?}"));
        let (head, body) = s.split_once(';').ok_or_else(bad)?;
        let n = head.trim().strip_prefix("n=").ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let body = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let letters = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<Vec<i32>>>()?;
        BraidWord::new(n, letters)
    }
}

/// Generators `A_{ik} = σ_i⋯σ_{k-1} σ_k² σ_{k-1}⋯σ_i` of the pure braid group,
/// for `k = 1..n-1` and `i = k` down to 1.
pub fn pure_braid_generators(n: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for k in 1..n as i32 {
        for i in (1..=k).rev() {
            let mut letters: Vec<i32> = (i..k).collect();
            letters.extend([k, k]);
            letters.extend((i..k).rev());
            out.push(BraidWord { n, letters });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleEntry {
    pub label: String,
    pub word: BraidWord,
}

/// An ordered tuple of pure braids with the line labels of the strands at the base fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct MonodromyTuple {
    n: usize,
    strands: Vec<String>,
    entries: Vec<TupleEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    n: usize,
    strands: Vec<String>,
    entries: Vec<TupleEntry>,
}

impl TryFrom<RawTuple> for MonodromyTuple {
    type Error = Error;
    fn try_from(r: RawTuple) -> Result<Self> {
        MonodromyTuple::new(r.n, r.strands, r.entries)
    }
}

impl From<MonodromyTuple> for RawTuple {
    fn from(t: MonodromyTuple) -> Self {
        RawTuple { n: t.n, strands: t.strands, entries: t.entries }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HurwitzDirection {
    /// `(a, b) → (b, b a b⁻¹)`
    Forward,
    /// `(a, b) → (a⁻¹ b a, a)`
    Backward,
}

impl MonodromyTuple {
    pub fn new(n: usize, strands: Vec<String>, entries: Vec<TupleEntry>) -> Result<Self> {
        if strands.len() != n {
            return Err(Error::StrandMismatch(n, strands.len()));
        }
        for e in &entries {
            if e.word.n() != n {
                return Err(Error::StrandMismatch(n, e.word.n()));
            }
            if !e.word.is_pure() {
                return Err(Error::Validation(format!("entry {} is not a pure braid", e.label)));
            }
        }
        Ok(MonodromyTuple { n, strands, entries })
    }

    /// Entries labeled `1..=r`, strands `1..=n`.
    pub fn from_words(n: usize, words: Vec<BraidWord>) -> Result<Self> {
        let strands = (1..=n).map(|i| i.to_string()).collect();
        let entries = words
            .into_iter()
            .enumerate()
            .map(|(k, word)| TupleEntry { label: (k + 1).to_string(), word })
            .collect();
        Self::new(n, strands, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strands(&self) -> &[String] {
        &self.strands
    }

    pub fn entries(&self) -> &[TupleEntry] {
        &self.entries
    }

    pub fn words(&self) -> impl Iterator<Item = &BraidWord> {
        self.entries.iter().map(|e| &e.word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn with_strands(mut self, strands: Vec<String>) -> Result<Self> {
        if strands.len() != self.n {
            return Err(Error::StrandMismatch(self.n, strands.len()));
        }
        self.strands = strands;
        Ok(self)
    }

    /// The `j`-th Hurwitz move (1-based), acting on entries `j` and `j + 1`.
    pub fn hurwitz_move(&self, j: usize, dir: HurwitzDirection) -> Result<Self> {
        let r = self.entries.len();
        if j == 0 || j + 1 > r {
            return Err(Error::IndexOutOfRange { index: j, min: 1, max: r.saturating_sub(1) });
        }
        let (a, b) = (&self.entries[j - 1], &self.entries[j]);
        let (x, y) = match dir {
            HurwitzDirection::Forward => (b.clone(), TupleEntry { label: a.label.clone(), word: b.word.conjugate(&a.word)? }),
            HurwitzDirection::Backward => {
                (TupleEntry { label: b.label.clone(), word: a.word.invert().conjugate(&b.word)? }, a.clone())
            }
        };
        let mut out = self.clone();
        out.entries[j - 1] = x;
        out.entries[j] = y;
        Ok(out)
    }

    /// `χ = τ_r ⋯ τ_1`.
    pub fn pseudo_coxeter(&self) -> Result<BraidWord> {
        if self.entries.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let mut out = BraidWord::identity(self.n);
        for e in self.entries.iter().rev() {
            out = out.compose(&e.word)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for MonodromyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands: ({})", self.strands.join(","))?;
        for e in &self.entries {
            writeln!(f, "{}: {}", e.label, e.word.to_sigma_string())?;
        }
        Ok(())
    }
}
