//! Finite subgroups of GL(4, 5): stabilizer chains, enumeration, conjugation
//! orbits, centralizers and subgroup conjugacy.
//!
//! Conjugation follows the exponent convention `x^u = u⁻¹ x u` unless a
//! function says otherwise.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfmat::{nonzero_vectors, GfMat, VecIndex, VECTORS};

pub const ORBIT_CAP: usize = 10_000_000;
pub const ENUMERATION_CAP: usize = 1_000_000;

/// One level of a stabilizer chain for the action on row vectors.
#[derive(Clone, Debug)]
struct Level {
    base: VecIndex,
    gens: Vec<(GfMat, GfMat)>,
    /// `trans[p] = (u, u⁻¹)` with `base · u = p`.
    trans: Vec<Option<(GfMat, GfMat)>>,
    orbit: Vec<VecIndex>,
}

impl Level {
    fn new(base: VecIndex) -> Self {
        let mut lv = Level { base, gens: Vec::new(), trans: vec![None; VECTORS], orbit: Vec::new() };
        lv.rebuild_orbit();
        lv
    }

    fn rebuild_orbit(&mut self) {
        self.trans.iter_mut().for_each(|t| *t = None);
        self.trans[self.base] = Some((GfMat::identity(), GfMat::identity()));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            let (u, ui) = self.trans[p].unwrap();
            for (s, si) in &self.gens {
                let q = s.act(p);
                if self.trans[q].is_none() {
                    self.trans[q] = Some((u.mul(s), si.mul(&ui)));
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }
}

/// Base points, orbit lengths and transversals for a matrix group acting on GF(5)⁴ \ {0}.
#[derive(Clone, Debug)]
pub struct StabChain {
    levels: Vec<Level>,
}

fn moved_point(g: &GfMat) -> Option<VecIndex> {
    nonzero_vectors().find(|&v| g.act(v) != v)
}

impl StabChain {
    /// Deterministic Schreier–Sims. A new base point is the first vector, in
    /// index order, moved by the element that forces the new level.
    pub fn build(gens: &[GfMat]) -> StabChain {
        let gens: Vec<(GfMat, GfMat)> = gens
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| (*g, g.inverse().expect("group elements are invertible")))
            .collect();
        let Some(b0) = gens.iter().find_map(|(g, _)| moved_point(g)) else {
            return StabChain { levels: Vec::new() };
        };
        let mut chain = StabChain { levels: vec![Level::new(b0)] };
        chain.levels[0].gens = gens;
        chain.levels[0].rebuild_orbit();

        // levels deeper than i form a complete chain for their generators
        let mut i = 0isize;
        while i >= 0 {
            let lv = i as usize;
            match chain.first_failing_schreier(lv) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = moved_point(&h).expect("residue is not the identity");
                        chain.levels.push(Level::new(b));
                    }
                    let hi = h.inverse().expect("invertible");
                    for l in lv + 1..=j {
                        chain.levels[l].gens.push((h, hi));
                        chain.levels[l].rebuild_orbit();
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    fn first_failing_schreier(&self, i: usize) -> Option<(GfMat, usize)> {
        let lv = &self.levels[i];
        for &p in &lv.orbit {
            let (u, _) = lv.trans[p].unwrap();
            for (s, _) in &lv.gens {
                let (_, vi) = lv.trans[s.act(p)].unwrap();
                let g = u.mul(s).mul(&vi);
                if g.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(g, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it left the chain.
    fn strip(&self, mut g: GfMat, from: usize) -> (GfMat, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            match &lv.trans[g.act(lv.base)] {
                Some((_, ui)) => g = g.mul(ui),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, g: &GfMat) -> bool {
        let (h, j) = self.strip(*g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<VecIndex> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}

/// A group given by generators, with its stabilizer chain computed on demand.
#[derive(Debug)]
pub struct MatGroup {
    gens: Vec<GfMat>,
    chain: OnceLock<StabChain>,
}

impl Clone for MatGroup {
    fn clone(&self) -> Self {
        MatGroup { gens: self.gens.clone(), chain: self.chain.clone() }
    }
}

impl MatGroup {
    pub fn new(gens: Vec<GfMat>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.det() == 0) {
            return Err(Error::Validation(format!("generator {g} is singular")));
        }
        Ok(MatGroup { gens, chain: OnceLock::new() })
    }

    pub fn trivial() -> Self {
        MatGroup { gens: Vec::new(), chain: OnceLock::new() }
    }

    pub fn gens(&self) -> &[GfMat] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(&self.gens))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, g: &GfMat) -> bool {
        self.chain().contains(g)
    }

    /// All elements, breadth first from the identity.
    pub fn enumerate(&self, cap: usize) -> Result<ElementSet> {
        let mut set = ElementSet::identity();
        set.close_under(&self.gens, cap)?;
        Ok(set)
    }
}

/// Distinct matrices in insertion order, with constant-time membership.
#[derive(Clone, Debug)]
pub struct ElementSet {
    elements: Vec<GfMat>,
    index: HashMap<u64, usize>,
}

impl ElementSet {
    pub fn identity() -> Self {
        let id = GfMat::identity();
        ElementSet { elements: vec![id], index: HashMap::from([(id.key(), 0)]) }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GfMat) -> bool {
        self.index.contains_key(&g.key())
    }

    pub fn elements(&self) -> &[GfMat] {
        &self.elements
    }

    fn insert(&mut self, g: GfMat) -> bool {
        let n = self.elements.len();
        let fresh = self.index.insert(g.key(), n).is_none();
        if fresh {
            self.elements.push(g);
        }
        fresh
    }

    /// Right-multiplies until closed; in a finite group this is the generated subgroup.
    fn close_under(&mut self, gens: &[GfMat], cap: usize) -> Result<()> {
        let mut k = 0;
        while k < self.elements.len() {
            let x = self.elements[k];
            for g in gens {
                if self.insert(x.mul(g)) && self.elements.len() > cap {
                    return Err(Error::Resource { what: "group enumeration".into(), limit: cap });
                }
            }
            k += 1;
        }
        Ok(())
    }
}

/// The orbit of `x` under conjugation by a group, with a transversal.
#[derive(Clone, Debug)]
pub struct ConjugationOrbit {
    gens: Vec<(GfMat, GfMat)>,
    points: Vec<GfMat>,
    /// `x^{trans[k]} = points[k]`.
    trans: Vec<GfMat>,
    index: HashMap<u64, u32>,
}

impl ConjugationOrbit {
    pub fn new(gens: &[GfMat], x: &GfMat, cap: usize) -> Result<Self> {
        let gens: Vec<(GfMat, GfMat)> = gens
            .iter()
            .map(|g| Ok((*g, g.inverse().ok_or_else(|| Error::Validation("singular generator".into()))?)))
            .collect::<Result<_>>()?;
        let mut o = ConjugationOrbit { gens, points: vec![*x], trans: vec![GfMat::identity()], index: HashMap::new() };
        o.index.insert(x.key(), 0);
        let mut k = 0;
        while k < o.points.len() {
            let (y, u) = (o.points[k], o.trans[k]);
            for (s, si) in &o.gens {
                let z = y.conjugate_by(s, si);
                if let std::collections::hash_map::Entry::Vacant(e) = o.index.entry(z.key()) {
                    e.insert(o.points.len() as u32);
                    o.points.push(z);
                    o.trans.push(u.mul(s));
                    if o.points.len() > cap {
                        return Err(Error::Resource { what: "conjugation orbit".into(), limit: cap });
                    }
                }
            }
            k += 1;
        }
        Ok(o)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, y: &GfMat) -> Option<usize> {
        self.index.get(&y.key()).map(|&k| k as usize)
    }

    /// Some `u` in the group with `u⁻¹ x u = y`.
    pub fn transversal(&self, y: &GfMat) -> Option<GfMat> {
        self.position(y).map(|k| self.trans[k])
    }

    /// Schreier generators `u_p s u_{p^s}⁻¹` of the centralizer of `x`, in orbit order.
    pub fn schreier_generators(&self) -> impl Iterator<Item = GfMat> + '_ {
        self.points.iter().enumerate().flat_map(move |(k, p)| {
            self.gens.iter().map(move |(s, si)| {
                let q = self.position(&p.conjugate_by(s, si)).expect("orbit is closed");
                self.trans[k].mul(s).mul(&self.trans[q].inverse().expect("invertible"))
            })
        })
    }
}

/// `u` with `u⁻¹ x u = y`, if `y` is conjugate to `x` in the group.
pub fn representative_action(g: &MatGroup, x: &GfMat, y: &GfMat, cap: usize) -> Result<Option<GfMat>> {
    Ok(ConjugationOrbit::new(g.gens(), x, cap)?.transversal(y))
}

#[derive(Clone, Debug)]
pub struct Centralizer {
    pub group: MatGroup,
    pub elements: ElementSet,
    pub orbit_size: usize,
}

/// Centralizer of the orbit's base point in `g`, enumerated.
pub fn centralizer_from_orbit(g: &MatGroup, orbit: &ConjugationOrbit, cap: usize) -> Result<Centralizer> {
    let order = g.order();
    let n = orbit.len() as u64;
    if order % n != 0 {
        return Err(Error::Invariant(format!("orbit size {n} does not divide |G| = {order}")));
    }
    let target = (order / n) as usize;
    if target > cap {
        return Err(Error::Resource { what: "centralizer enumeration".into(), limit: cap });
    }
    let mut gens = Vec::new();
    let mut elements = ElementSet::identity();
    for sg in orbit.schreier_generators() {
        if elements.len() >= target {
            break;
        }
        if !elements.contains(&sg) {
            gens.push(sg);
            elements.close_under(&gens, cap)?;
        }
    }
    if elements.len() != target {
        return Err(Error::Invariant(format!("centralizer has {} elements, expected {target}", elements.len())));
    }
    Ok(Centralizer { group: MatGroup::new(gens)?, elements, orbit_size: orbit.len() })
}

pub fn centralizer(g: &MatGroup, x: &GfMat, orbit_cap: usize, cap: usize) -> Result<Centralizer> {
    let orbit = ConjugationOrbit::new(g.gens(), x, orbit_cap)?;
    centralizer_from_orbit(g, &orbit, cap)
}

/// First `c` in `center` (in its order) with `c k c⁻¹ ∈ k2` for every generator
/// `k` of `k1`; with `|k1| = |k2|` this gives `c k1 c⁻¹ = k2`.
pub fn conjugacy_search(center: &[GfMat], k1_gens: &[GfMat], k1_order: usize, k2: &ElementSet) -> Option<GfMat> {
    if k1_order != k2.len() {
        return None;
    }
    center
        .par_iter()
        .find_first(|c| {
            let ci = c.inverse().expect("invertible");
            k1_gens.iter().all(|k| k2.contains(&c.mul(k).mul(&ci)))
        })
        .copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{pure_braid_generators, BraidWord};
    use crate::burau::burau_t2;

    fn m(rows: [[i64; 4]; 4]) -> GfMat {
        GfMat::new(rows)
    }

    fn diag(a: i64, b: i64, c: i64, d: i64) -> GfMat {
        m([[a, 0, 0, 0], [0, b, 0, 0], [0, 0, c, 0], [0, 0, 0, d]])
    }

    #[test]
    fn trivial_group() {
        let g = MatGroup::trivial();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&GfMat::identity()));
        assert!(!g.contains(&diag(2, 1, 1, 1)));
        assert_eq!(g.enumerate(10).unwrap().len(), 1);
        let id = MatGroup::new(vec![GfMat::identity()]).unwrap();
        assert_eq!(id.order(), 1);
        assert!(MatGroup::new(vec![diag(0, 1, 1, 1)]).is_err());
    }

    #[test]
    fn cyclic_group_matches_element_order() {
        let x = burau_t2(&BraidWord::new(5, vec![1, 1]).unwrap()).unwrap();
        let g = MatGroup::new(vec![x]).unwrap();
        assert_eq!(g.order(), x.order().unwrap());
        assert_eq!(g.enumerate(1000).unwrap().len() as u64, g.order());
        let c = centralizer(&g, &x, 1000, 1000).unwrap();
        assert_eq!(c.elements.len() as u64, g.order());
        assert_eq!(c.orbit_size, 1);
    }

    #[test]
    fn diagonal_group() {
        // (Z/4)^4 acting diagonally
        let g = MatGroup::new(vec![diag(2, 1, 1, 1), diag(1, 2, 1, 1), diag(1, 1, 2, 1), diag(1, 1, 1, 2)]).unwrap();
        assert_eq!(g.order(), 256);
        assert_eq!(g.enumerate(1000).unwrap().len(), 256);
        assert!(g.contains(&diag(3, 4, 1, 2)));
        assert!(!g.contains(&m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])));
    }

    #[test]
    fn general_linear_group() {
        // GL(4,5) is generated by a diagonal generator of F5* and a Singer-type companion matrix
        let a = diag(2, 1, 1, 1);
        let b = m([[4, 0, 0, 1], [4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0]]);
        let g = MatGroup::new(vec![a, b]).unwrap();
        let gl = (625u64 - 1) * (625 - 5) * (625 - 25) * (625 - 125);
        assert_eq!(g.order(), gl);
    }

    #[test]
    fn enumeration_cap() {
        let g = MatGroup::new(vec![diag(2, 1, 1, 1), diag(1, 2, 1, 1)]).unwrap();
        assert!(matches!(g.enumerate(10), Err(Error::Resource { .. })));
    }

    #[test]
    fn pure_braid_image_order() {
        let gens: Vec<GfMat> = pure_braid_generators(5).iter().map(|w| burau_t2(w).unwrap()).collect();
        let g = MatGroup::new(gens.clone()).unwrap();
        // every generator has det 3² = 4, so the image lies in det ∈ {1, 4}, of index 2 in GL(4,5)
        let gl: u64 = (625 - 1) * (625 - 5) * (625 - 25) * (625 - 125);
        assert_eq!(g.order(), gl / 2);
        assert_eq!(g.order(), 58_032_000_000);
        for x in &gens {
            assert!(g.contains(x));
        }
        assert!(!g.contains(&burau_t2(&BraidWord::new(5, vec![1]).unwrap()).unwrap()));
    }

    #[test]
    fn orbit_stabilizer_in_small_group() {
        let s1 = burau_t2(&BraidWord::new(5, vec![1, 1]).unwrap()).unwrap();
        let s2 = burau_t2(&BraidWord::new(5, vec![2, 2]).unwrap()).unwrap();
        let g = MatGroup::new(vec![s1, s2]).unwrap();
        let all = g.enumerate(ENUMERATION_CAP).unwrap();
        assert_eq!(all.len() as u64, g.order());
        for x in all.elements().iter().step_by(all.len() / 7 + 1) {
            let c = centralizer(&g, x, ORBIT_CAP, ENUMERATION_CAP).unwrap();
            assert_eq!(c.orbit_size as u64 * c.elements.len() as u64, g.order());
            for e in c.elements.elements() {
                assert_eq!(e.mul(x), x.mul(e));
            }
            // brute-force centralizer
            let brute = all.elements().iter().filter(|e| e.mul(x) == x.mul(e)).count();
            assert_eq!(brute, c.elements.len());
        }
    }

    #[test]
    fn representative_action_identity() {
        let s1 = burau_t2(&BraidWord::new(5, vec![1, 1]).unwrap()).unwrap();
        let s2 = burau_t2(&BraidWord::new(5, vec![2, 2]).unwrap()).unwrap();
        let g = MatGroup::new(vec![s1, s2]).unwrap();
        let u = representative_action(&g, &s1, &s1, 1000).unwrap().unwrap();
        assert!(u.is_identity());
        let y = s1.conjugate_by(&s2, &s2.inverse().unwrap());
        let u = representative_action(&g, &s1, &y, 1000).unwrap().unwrap();
        assert_eq!(s1.conjugate_by(&u, &u.inverse().unwrap()), y);
        assert!(matches!(representative_action(&g, &s1, &y, 1), Err(Error::Resource { .. })));
    }

    #[test]
    fn conjugacy_search_small() {
        // in the abelian diagonal group ⟨diag(4,1,1,1), diag(1,4,1,1), diag(1,1,4,1)⟩ of order 8,
        // two distinct order-2 subgroups are never conjugate
        let gens = vec![diag(4, 1, 1, 1), diag(1, 4, 1, 1), diag(1, 1, 4, 1)];
        let g = MatGroup::new(gens).unwrap();
        let center = g.enumerate(100).unwrap();
        assert_eq!(center.len(), 8);
        let a = MatGroup::new(vec![diag(4, 1, 1, 1)]).unwrap().enumerate(10).unwrap();
        let b = MatGroup::new(vec![diag(1, 4, 1, 1)]).unwrap().enumerate(10).unwrap();
        assert_eq!(conjugacy_search(center.elements(), &[diag(4, 1, 1, 1)], a.len(), &b), None);
        let found = conjugacy_search(center.elements(), &[diag(4, 1, 1, 1)], a.len(), &a);
        assert_eq!(found, Some(GfMat::identity()));
    }
}
