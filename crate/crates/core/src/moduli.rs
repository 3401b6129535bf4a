//! One-parameter moduli of an ordered line combinatorics.
//!
//! A projective frame fixes some lines in terms of a free parameter `α` and an
//! auxiliary unknown `β`. Remaining lines are then determined one at a time
//! from two already-known points on them; every further known point on the
//! line is an incidence condition. A condition that is linear in `β` while `β`
//! is still unknown fixes `β ∈ Q(α)`; a condition free of `β` contributes the
//! numerator of its determinant as a constraint polynomial in `α`.
//!
//! A condition counts as independent unless the gcd of the constraints found
//! so far divides it, i.e. it vanishes wherever the earlier ones do.

use std::fmt;

use num_traits::{One, Zero};

use crate::arrangement::{ProjLineQ, RealArrangement};
use crate::combinatorics::LineCombinatorics;
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc};
use crate::quad::QuadNum;

/// Polynomial in `β` with coefficients in `Q(α)`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPoly(Vec<RatFunc>);

impl BetaPoly {
    pub fn new(mut c: Vec<RatFunc>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        BetaPoly(c)
    }

    pub fn int(n: i64) -> Self {
        Self::new(vec![RatFunc::int(n)])
    }

    pub fn alpha() -> Self {
        Self::new(vec![RatFunc::x()])
    }

    pub fn beta() -> Self {
        Self::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn rat_func(r: RatFunc) -> Self {
        Self::new(vec![r])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in `β`; 0 for the zero polynomial.
    pub fn beta_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn coeff(&self, k: usize) -> RatFunc {
        self.0.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, rhs: &BetaPoly) -> BetaPoly {
        let n = self.0.len().max(rhs.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &BetaPoly) -> BetaPoly {
        let n = self.0.len().max(rhs.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &BetaPoly) -> BetaPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![RatFunc::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn substitute(&self, beta: &RatFunc) -> RatFunc {
        self.0.iter().rev().fold(RatFunc::zero(), |acc, c| &(&acc * beta) + c)
    }
}

type Coords = [BetaPoly; 3];

fn cross(u: &Coords, v: &Coords) -> Coords {
    [
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

fn dot(u: &Coords, v: &Coords) -> BetaPoly {
    u[0].mul(&v[0]).add(&u[1].mul(&v[1])).add(&u[2].mul(&v[2]))
}

fn beta_degree(c: &Coords) -> usize {
    c.iter().map(BetaPoly::beta_degree).max().unwrap_or(0)
}

/// Frame lines given explicitly, then the order in which the other lines are determined.
#[derive(Clone, Debug)]
pub struct FrameSchedule {
    pub frame: Vec<(String, Coords)>,
    pub order: Vec<String>,
}

impl FrameSchedule {
    /// `M1: z=0, M2: x=0, M3: x=z, M4: x=αz, M5: x=βz, L5: y=0, L4: y=z`,
    /// then `L1, L2, L3`.
    pub fn standard() -> Self {
        let i = BetaPoly::int;
        let neg = |p: BetaPoly| BetaPoly::int(0).sub(&p);
        let frame = vec![
            ("M1", [i(0), i(0), i(1)]),
            ("M2", [i(1), i(0), i(0)]),
            ("M3", [i(1), i(0), i(-1)]),
            ("M4", [i(1), i(0), neg(BetaPoly::alpha())]),
            ("M5", [i(1), i(0), neg(BetaPoly::beta())]),
            ("L5", [i(0), i(1), i(0)]),
            ("L4", [i(0), i(1), i(-1)]),
        ];
        FrameSchedule {
            frame: frame.into_iter().map(|(l, c)| (l.to_string(), c)).collect(),
            order: ["L1", "L2", "L3"].map(String::from).to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    /// Line label, or `"closure"` for the final concurrence check.
    pub line: String,
    /// Incidence conditions available at this step.
    pub conditions: usize,
    pub independent: usize,
    /// Constraint polynomials produced at this step (monic).
    pub constraints: Vec<Poly>,
    pub solved_beta: bool,
}

#[derive(Clone, Debug)]
pub struct ModuliDerivation {
    pub beta: Option<RatFunc>,
    pub steps: Vec<StepReport>,
    pub constraints: Vec<Poly>,
    /// Monic gcd of all constraints.
    pub moduli_polynomial: Poly,
    /// Every line, in combinatorics order, scaled so the first nonzero coefficient is 1.
    pub lines: Vec<(String, [RatFunc; 3])>,
}

impl ModuliDerivation {
    pub fn step(&self, line: &str) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.line == line)
    }

    /// The arrangement obtained by evaluating every line at `α = alpha`.
    pub fn realize_at(&self, alpha: &QuadNum) -> Result<RealArrangement> {
        let lines = self
            .lines
            .iter()
            .map(|(label, c)| {
                let [a, b, c] = [&c[0], &c[1], &c[2]].map(|r| r.eval(alpha));
                Ok((label.clone(), ProjLineQ::new(a?, b?, c?)?))
            })
            .collect::<Result<Vec<_>>>()?;
        RealArrangement::new(None, lines)
    }
}

impl fmt::Display for ModuliDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = &self.beta {
            writeln!(f, "β = {b}")?;
        }
        for s in &self.steps {
            write!(f, "{}: {} conditions, {} independent", s.line, s.conditions, s.independent)?;
            if s.solved_beta {
                write!(f, " (fixes β)")?;
            }
            for c in &s.constraints {
                write!(f, "; {c} = 0")?;
            }
            writeln!(f)?;
        }
        for (l, c) in &self.lines {
            writeln!(f, "{l}: [{}, {}, {}]", c[0], c[1], c[2])?;
        }
        write!(f, "moduli polynomial: {} = 0", self.moduli_polynomial)
    }
}

struct State<'a> {
    c: &'a LineCombinatorics,
    lines: Vec<Option<Coords>>,
    beta: Option<RatFunc>,
    gcd: Option<Poly>,
    constraints: Vec<Poly>,
}

enum Outcome {
    Trivial,
    SolvedBeta,
    Constraint { poly: Poly, independent: bool },
}

impl State<'_> {
    fn point(&self, k: usize, skip: usize) -> Option<Coords> {
        let known: Vec<&Coords> = self.c.points()[k]
            .iter()
            .filter(|&&l| l != skip)
            .filter_map(|&l| self.lines[l].as_ref())
            .take(2)
            .collect();
        match known[..] {
            [a, b] => Some(cross(a, b)),
            _ => None,
        }
    }

    fn substitute_beta(&mut self, beta: &RatFunc) {
        for c in self.lines.iter_mut().flatten() {
            for x in c.iter_mut() {
                *x = BetaPoly::rat_func(x.substitute(beta));
            }
        }
    }

    fn condition(&mut self, det: BetaPoly) -> Result<Outcome> {
        if det.is_zero() {
            return Ok(Outcome::Trivial);
        }
        match (det.beta_degree(), self.beta.is_some()) {
            (0, _) => {}
            (1, false) => {
                let beta = (-&det.coeff(0)).checked_div(&det.coeff(1))?;
                self.substitute_beta(&beta);
                self.beta = Some(beta);
                return Ok(Outcome::SolvedBeta);
            }
            (d, _) => return Err(Error::Derivation(format!("condition of degree {d} in β"))),
        }
        let poly = det.coeff(0).num().monic();
        let independent = match &self.gcd {
            None => true,
            Some(g) => !g.divides(&poly),
        };
        self.gcd = Some(match &self.gcd {
            None => poly.clone(),
            Some(g) => Poly::gcd(g, &poly),
        });
        self.constraints.push(poly.clone());
        Ok(Outcome::Constraint { poly, independent })
    }
}

pub fn derive_moduli_constraints(c: &LineCombinatorics, schedule: &FrameSchedule) -> Result<ModuliDerivation> {
    let index = |label: &str| {
        c.index_of(label)
            .ok_or_else(|| Error::Derivation(format!("no line labeled {label}")))
    };
    let mut st = State { c, lines: vec![None; c.n()], beta: None, gcd: None, constraints: Vec::new() };
    for (label, coords) in &schedule.frame {
        st.lines[index(label)?] = Some(coords.clone());
    }
    let mut steps = Vec::new();

    for label in &schedule.order {
        let target = index(label)?;
        if st.lines[target].is_some() {
            return Err(Error::Derivation(format!("{label} is already determined")));
        }
        let mut known: Vec<Coords> = c.points_on(target).filter_map(|k| st.point(k, target)).collect();
        if known.len() < 2 {
            return Err(Error::Underdetermined(label.clone()));
        }
        // prefer defining points free of β; stable, so ties keep point order
        known.sort_by_key(beta_degree);
        let line = cross(&known[0], &known[1]);
        if line.iter().all(BetaPoly::is_zero) {
            return Err(Error::Derivation(format!("defining points of {label} coincide")));
        }
        st.lines[target] = Some(line);
        let mut report = StepReport {
            line: label.clone(),
            conditions: known.len(),
            independent: 2,
            constraints: Vec::new(),
            solved_beta: false,
        };
        for p in &known[2..] {
            // β may have been substituted into the line by an earlier condition
            let p = match &st.beta {
                Some(b) => p.clone().map(|x| BetaPoly::rat_func(x.substitute(b))),
                None => p.clone(),
            };
            let det = dot(st.lines[target].as_ref().unwrap(), &p);
            match st.condition(det)? {
                Outcome::Trivial => {}
                Outcome::SolvedBeta => {
                    report.independent += 1;
                    report.solved_beta = true;
                }
                Outcome::Constraint { poly, independent } => {
                    report.independent += usize::from(independent);
                    report.constraints.push(poly);
                }
            }
        }
        steps.push(report);
    }

    if let Some(k) = st.lines.iter().position(Option::is_none) {
        return Err(Error::Underdetermined(c.label(k)));
    }

    // every point of multiplicity ≥ 3 must be a true concurrence
    let mut closure = StepReport {
        line: "closure".into(),
        conditions: 0,
        independent: 0,
        constraints: Vec::new(),
        solved_beta: false,
    };
    for p in c.points() {
        if p.len() < 3 {
            continue;
        }
        let l: Vec<Coords> = p.iter().map(|&i| st.lines[i].clone().unwrap()).collect();
        let meet = cross(&l[0], &l[1]);
        for other in &l[2..] {
            closure.conditions += 1;
            match st.condition(dot(&meet, other))? {
                Outcome::Trivial => {}
                Outcome::SolvedBeta => {
                    closure.independent += 1;
                    closure.solved_beta = true;
                }
                Outcome::Constraint { poly, independent } => {
                    closure.independent += usize::from(independent);
                    closure.constraints.push(poly);
                }
            }
        }
    }
    steps.push(closure);

    let mut lines = Vec::with_capacity(c.n());
    for (k, coords) in st.lines.iter().enumerate() {
        let coords = coords.as_ref().unwrap();
        if beta_degree(coords) > 0 {
            return Err(Error::Derivation("β is never determined".into()));
        }
        let r = coords.clone().map(|x| x.coeff(0));
        let lead = r
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::Derivation(format!("line {} degenerates", c.label(k))))?
            .clone();
        let r = [&r[0], &r[1], &r[2]].map(|x| x.checked_div(&lead));
        lines.push((c.label(k), [r[0].clone()?, r[1].clone()?, r[2].clone()?]));
    }

    Ok(ModuliDerivation {
        beta: st.beta,
        steps,
        moduli_polynomial: st.gcd.unwrap_or_else(Poly::zero),
        constraints: st.constraints,
        lines,
    })
}
