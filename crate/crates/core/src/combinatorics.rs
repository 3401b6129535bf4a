//! Abstract line combinatorics: lines `0..n` and multiple points given as sets
//! of at least two lines, with every pair of lines meeting in exactly one point.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{projective_points, FieldTable, ProjPoint};
use crate::perm::Permutation;

/// Line permutation preserving the incidence structure.
pub type CombAutomorphism = Permutation;

/// Largest line count accepted by the backtracking isomorphism search.
pub const MAX_SEARCH_LINES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCombinatorics", into = "RawCombinatorics")]
pub struct LineCombinatorics {
    n: usize,
    points: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    // pair_point[i * n + j] = index of the point through lines i and j
    pair_point: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawCombinatorics {
    n: usize,
    points: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawCombinatorics> for LineCombinatorics {
    type Error = Error;

    fn try_from(raw: RawCombinatorics) -> Result<Self> {
        LineCombinatorics::new(raw.n, raw.points, raw.labels)
    }
}

impl From<LineCombinatorics> for RawCombinatorics {
    fn from(c: LineCombinatorics) -> Self {
        RawCombinatorics { n: c.n, points: c.points, labels: c.labels }
    }
}

impl LineCombinatorics {
    /// Validates and canonicalizes (each point sorted, point list sorted).
    pub fn new(n: usize, points: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCombinatorics(msg));
        if let Some(l) = &labels {
            if l.len() != n {
                return bad(format!("{} labels for {} lines", l.len(), n));
            }
            let distinct: BTreeSet<&String> = l.iter().collect();
            if distinct.len() != n {
                return bad("duplicate line labels".into());
            }
        }
        let mut points: Vec<Vec<usize>> = points
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        points.sort();
        let mut pair_point = vec![usize::MAX; n * n];
        for (k, p) in points.iter().enumerate() {
            if p.len() < 2 {
                return bad(format!("point {p:?} has fewer than two lines"));
            }
            if p.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("point {p:?} repeats a line"));
            }
            if let Some(&l) = p.iter().find(|&&l| l >= n) {
                return bad(format!("line index {l} out of range in {p:?}"));
            }
            for (a, &i) in p.iter().enumerate() {
                for &j in &p[a + 1..] {
                    if pair_point[i * n + j] != usize::MAX {
                        return bad(format!("lines {i} and {j} meet in two points"));
                    }
                    pair_point[i * n + j] = k;
                    pair_point[j * n + i] = k;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if pair_point[i * n + j] == usize::MAX {
                    return bad(format!("lines {i} and {j} have no common point"));
                }
            }
        }
        Ok(LineCombinatorics { n, points, labels, pair_point })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of line `i`, falling back to its 1-based index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Self::new(self.n, self.points, Some(labels))
    }

    /// Index into [`Self::points`] of the point where lines `i` and `j` meet.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j, "a line does not meet itself in a unique point");
        self.pair_point[i * self.n + j]
    }

    pub fn multiplicity(&self, point: usize) -> usize {
        self.points[point].len()
    }

    pub fn points_on(&self, line: usize) -> impl Iterator<Item = usize> + '_ {
        self.points
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.contains(&line))
            .map(|(k, _)| k)
    }

    /// Sorted multiplicities of the points on `line`.
    pub fn line_signature(&self, line: usize) -> Vec<usize> {
        let mut sig: Vec<usize> = self.points_on(line).map(|k| self.multiplicity(k)).collect();
        sig.sort_unstable();
        sig
    }

    /// Renames line `i` to `perm[i]`; labels travel with their lines.
    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Validation("relabeling has the wrong size".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|&i| perm.apply(i)).collect())
            .collect();
        let labels = self.labels.as_ref().map(|l| perm.permute_slice(l));
        Self::new(self.n, points, labels)
    }

    /// Whether `perm` maps the point set onto itself.
    pub fn preserves(&self, perm: &Permutation) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let set: BTreeSet<&Vec<usize>> = self.points.iter().collect();
        self.points.iter().all(|p| {
            let mut img: Vec<usize> = p.iter().map(|&i| perm.apply(i)).collect();
            img.sort_unstable();
            set.contains(&img)
        })
    }

    pub fn same_points(&self, other: &LineCombinatorics) -> bool {
        self.n == other.n && self.points == other.points
    }
}

/// Dualizes a set of points of `F_q P²`: input point `k` becomes line `k`, and
/// every line of the plane through two or more input points becomes a point.
pub fn dual_configuration(field: &FieldTable, points: &[ProjPoint]) -> Result<LineCombinatorics> {
    if points.len() < 2 {
        return Err(Error::Validation("need at least two points to dualize".into()));
    }
    let distinct: BTreeSet<&ProjPoint> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::Validation("duplicate input points".into()));
    }
    let mut out = Vec::new();
    // lines of the plane are parametrized by the same normalized triples
    for line in projective_points(field) {
        let on: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| field.dot(&line.coords(), &p.coords()) == 0)
            .map(|(k, _)| k)
            .collect();
        if on.len() >= 2 {
            out.push(on);
        }
    }
    LineCombinatorics::new(points.len(), out, None)
}

/// Dual configuration with line labels taken from the point labels.
pub fn dual_labeled(field: &FieldTable, points: &[(String, ProjPoint)]) -> Result<LineCombinatorics> {
    let pts: Vec<ProjPoint> = points.iter().map(|(_, p)| *p).collect();
    dual_configuration(field, &pts)?.with_labels(points.iter().map(|(l, _)| l.clone()).collect())
}

/// Count of points by multiplicity.
pub fn multiplicity_profile(c: &LineCombinatorics) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for p in c.points() {
        *out.entry(p.len()).or_insert(0) += 1;
    }
    out
}

/// `Σ_p C(ν(p), 2)`, which equals `C(n, 2)` for any valid combinatorics.
pub fn pair_coverage(c: &LineCombinatorics) -> usize {
    c.points().iter().map(|p| p.len() * (p.len() - 1) / 2).sum()
}

/// Every automorphism, in lexicographic order of image tables (identity first).
pub fn automorphism_group(c: &LineCombinatorics) -> Result<Vec<CombAutomorphism>> {
    let mut out = Vec::new();
    search_isomorphisms(c, c, |p| {
        out.push(p);
        true
    })?;
    Ok(out)
}

/// The lexicographically first line bijection carrying the points of `c1`
/// onto the points of `c2`, if any.
pub fn find_relabeling(c1: &LineCombinatorics, c2: &LineCombinatorics) -> Option<Permutation> {
    let mut found = None;
    search_isomorphisms(c1, c2, |p| {
        found = Some(p);
        false
    })
    .ok()?;
    found
}

/// All line bijections carrying `c1` onto `c2`.
pub fn all_relabelings(c1: &LineCombinatorics, c2: &LineCombinatorics) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    search_isomorphisms(c1, c2, |p| {
        out.push(p);
        true
    })?;
    Ok(out)
}

/// Backtracking over images of lines `0, 1, …` in order. Candidates must share
/// the multiplicity signature; each new assignment must agree with all earlier
/// ones on pairwise multiplicities and on triple concurrence. `visit` returns
/// `false` to stop.
fn search_isomorphisms(
    c1: &LineCombinatorics,
    c2: &LineCombinatorics,
    mut visit: impl FnMut(Permutation) -> bool,
) -> Result<()> {
    let n = c1.n();
    if n != c2.n() || c1.points().len() != c2.points().len() {
        return Ok(());
    }
    if n > MAX_SEARCH_LINES {
        return Err(Error::Resource { what: "isomorphism search line count".into(), limit: MAX_SEARCH_LINES });
    }
    if multiplicity_profile(c1) != multiplicity_profile(c2) {
        return Ok(());
    }
    let mut by_sig: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for j in 0..n {
        by_sig.entry(c2.line_signature(j)).or_default().push(j);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| by_sig.get(&c1.line_signature(i)).cloned().unwrap_or_default())
        .collect();

    struct Search<'a, F> {
        c1: &'a LineCombinatorics,
        c2: &'a LineCombinatorics,
        candidates: Vec<Vec<usize>>,
        image: Vec<usize>,
        used: Vec<bool>,
        visit: F,
    }

    impl<F: FnMut(Permutation) -> bool> Search<'_, F> {
        fn consistent(&self, i: usize, j: usize) -> bool {
            for a in 0..i {
                let (pa, qa) = (self.c1.meet(i, a), self.c2.meet(j, self.image[a]));
                if self.c1.multiplicity(pa) != self.c2.multiplicity(qa) {
                    return false;
                }
                for b in a + 1..i {
                    let same1 = pa == self.c1.meet(i, b);
                    let same2 = qa == self.c2.meet(j, self.image[b]);
                    if same1 != same2 {
                        return false;
                    }
                }
            }
            true
        }

        // returns false once the visitor asks to stop
        fn go(&mut self, i: usize) -> bool {
            let n = self.c1.n();
            if i == n {
                let perm = Permutation::from_images(self.image.clone()).expect("bijection");
                let mut mapped = self.c1.relabel(&perm).expect("relabel");
                mapped.labels = None;
                if mapped.points() != self.c2.points() {
                    return true;
                }
                return (self.visit)(perm);
            }
            for k in 0..self.candidates[i].len() {
                let j = self.candidates[i][k];
                if self.used[j] || !self.consistent(i, j) {
                    continue;
                }
                self.used[j] = true;
                self.image[i] = j;
                let keep_going = self.go(i + 1);
                self.used[j] = false;
                if !keep_going {
                    return false;
                }
            }
            true
        }
    }

    let mut s = Search {
        c1,
        c2,
        candidates,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        visit: &mut visit,
    };
    s.go(0);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{f3_maclane_points, f4_decagon_points, make_field};

    fn decagon() -> LineCombinatorics {
        let f = make_field(4).unwrap();
        dual_labeled(&f, &f4_decagon_points(&f).unwrap()).unwrap()
    }

    fn maclane() -> LineCombinatorics {
        let f = make_field(3).unwrap();
        dual_labeled(&f, &f3_maclane_points(&f).unwrap()).unwrap()
    }

    #[test]
    fn decagon_profile() {
        let c = decagon();
        let prof = multiplicity_profile(&c);
        assert_eq!(prof, BTreeMap::from([(2, 5), (3, 10), (5, 1)]));
        assert_eq!(pair_coverage(&c), 45);
    }

    #[test]
    fn two_points_give_one_double_point() {
        let f = make_field(2).unwrap();
        let pts = projective_points(&f);
        let c = dual_configuration(&f, &pts[..2]).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.points(), &[vec![0, 1]]);
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = make_field(3).unwrap();
        let p = projective_points(&f)[0];
        assert!(matches!(dual_configuration(&f, &[p, p]), Err(Error::Validation(_))));
        assert!(dual_configuration(&f, &[p]).is_err());
    }

    #[test]
    fn invalid_combinatorics_rejected() {
        // pair (0, 2) uncovered
        assert!(LineCombinatorics::new(3, vec![vec![0, 1], vec![1, 2]], None).is_err());
        // lines 0 and 1 share two points
        assert!(LineCombinatorics::new(3, vec![vec![0, 1, 2], vec![0, 1]], None).is_err());
        assert!(LineCombinatorics::new(2, vec![vec![0]], None).is_err());
        assert!(LineCombinatorics::new(2, vec![vec![0, 5]], None).is_err());
    }

    #[test]
    fn unsorted_input_is_canonicalized() {
        let a = LineCombinatorics::new(3, vec![vec![2, 1, 0]], None).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":3,"points":[[0,1,2]]}"#);
        let b: LineCombinatorics = serde_json::from_str(r#"{"points":[[2,0,1]],"n":3}"#).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<LineCombinatorics>(r#"{"n":3,"points":[[0,1]]}"#).is_err());
    }

    #[test]
    fn decagon_automorphisms() {
        let c = decagon();
        let aut = automorphism_group(&c).unwrap();
        assert_eq!(aut.len(), 20);
        assert!(aut[0].is_identity());
        // lines are L1..L5 = 0..4, M1..M5 = 5..9
        let five = Permutation::from_cycles(10, &[&[1, 2, 3, 4, 5], &[6, 7, 8, 9, 10]]).unwrap();
        let four = Permutation::from_cycles(10, &[&[2, 4, 5, 3], &[7, 9, 10, 8]]).unwrap();
        assert!(aut.contains(&five));
        assert!(aut.contains(&four));
        // ψ_B⁻¹ ψ_A ψ_B = ψ_A³ with the right action: ψ_B⁻¹ acts first
        let lhs = four.inverse().then(&five).then(&four);
        let rhs = five.then(&five).then(&five);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn maclane_automorphisms() {
        let c = maclane();
        assert_eq!(c.n(), 8);
        assert_eq!(automorphism_group(&c).unwrap().len(), 48);
    }

    #[test]
    fn relabeling_search() {
        let c = decagon();
        assert!(find_relabeling(&c, &c).unwrap().is_identity());
        assert!(find_relabeling(&c, &maclane()).is_none());
        let shuffle = Permutation::from_cycles(10, &[&[1, 7, 3], &[2, 10]]).unwrap();
        let d = c.relabel(&shuffle).unwrap();
        let found = find_relabeling(&c, &d).unwrap();
        assert_eq!(c.relabel(&found).unwrap().points(), d.points());
    }

    #[test]
    fn size_guard() {
        let n = MAX_SEARCH_LINES + 1;
        let c = LineCombinatorics::new(n, vec![(0..n).collect()], None).unwrap();
        assert!(matches!(automorphism_group(&c), Err(Error::Resource { .. })));
    }
}
