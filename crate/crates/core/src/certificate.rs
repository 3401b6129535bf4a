//! End-to-end non-equivalence certificate for the braid monodromies of `C⁺` and `C⁻`.
//!
//! Stages:
//! 1. braid monodromy of both arrangements from their equations;
//! 2. conjugation of the `C⁻` tuple by the alignment braid `τ` so both
//!    tuples label their strands by the same lines;
//! 3. Burau images at `t = 2` over GF(5); `β(P_5)` from the pure braid generators;
//! 4. `del1, del2` = images of the two pseudo-Coxeter elements, and `nv` with
//!    `nv⁻¹ del2 nv = del1`, so that `K̃⁻ := nv⁻¹ β(K⁻) nv` shares `del1`;
//! 5. the centralizer of `del1` in `β(P_5)`;
//! 6. an exhaustive search for `c` in the centralizer with `c K̃⁺ c⁻¹ = K̃⁻`.
//!
//! An equivalence of the two tuples by Hurwitz moves and conjugation would
//! force such a `c`; finding none proves the monodromies inequivalent.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arrangement::Sign;
use crate::braid::{pure_braid_generators, BraidWord, MonodromyTuple};
use crate::burau::burau;
use crate::error::{Error, Result};
use crate::gfmat::GfMat;
use crate::group::{centralizer_from_orbit, conjugacy_search, ConjugationOrbit, MatGroup, ENUMERATION_CAP, ORBIT_CAP};
use crate::monodromy::{alignment_braid, c_monodromy, conjugate_tuple};

pub const SCHEMA: u32 = 1;

/// Values the run must reproduce.
pub const ORDER_BP5: u64 = 58_032_000_000;
pub const ORDER_CENTRALIZER: u64 = 115_200;
pub const ORDER_K: u64 = 30_000;
pub const ORBIT_SIZE: u64 = 503_750;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotEquivalent,
    ConjugatorFound,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::NotEquivalent => 0,
            Verdict::ConjugatorFound => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotEquivalent => "NOT_EQUIVALENT",
            Verdict::ConjugatorFound => "CONJUGATOR_FOUND",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CertificateOptions {
    /// Compare `C⁺` against itself; the search must then return the identity.
    pub self_test: bool,
    pub enumeration_cap: usize,
    pub orbit_cap: usize,
    /// Worker threads for the search; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Burau parameter; the expected orders only apply at `t = 2`.
    pub t: i64,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            self_test: false,
            enumeration_cap: ENUMERATION_CAP,
            orbit_cap: ORBIT_CAP,
            threads: None,
            t: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monodromies {
    pub plus: MonodromyTuple,
    /// The `C⁻` tuple after conjugation by `alignment`.
    pub minus: MonodromyTuple,
    pub alignment: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrices {
    pub del1: GfMat,
    pub del2: GfMat,
    pub cj1: GfMat,
    pub nv: GfMat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: u32,
    pub self_test: bool,
    pub t: i64,
    pub order_bp5: Option<u64>,
    pub order_centralizer: Option<u64>,
    pub order_k_plus: Option<u64>,
    pub order_k_minus: Option<u64>,
    pub orbit_size: Option<u64>,
    pub searched: Option<u64>,
    pub conjugator: Option<GfMat>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub diagnostics: Vec<String>,
    pub monodromy: Option<Monodromies>,
    pub matrices: Option<Matrices>,
    /// Microseconds per stage.
    pub timings_us: BTreeMap<String, u64>,
}

impl CertificateReport {
    fn empty(opts: &CertificateOptions) -> Self {
        CertificateReport {
            schema: SCHEMA,
            self_test: opts.self_test,
            t: opts.t,
            order_bp5: None,
            order_centralizer: None,
            order_k_plus: None,
            order_k_minus: None,
            orbit_size: None,
            searched: None,
            conjugator: None,
            verdict: Verdict::Inconclusive,
            checks: Vec::new(),
            diagnostics: Vec::new(),
            monodromy: None,
            matrices: None,
            timings_us: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: &str, expected: impl ToString, actual: impl ToString) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        self.checks.push(Check { name: name.into(), expected, actual, ok });
        ok
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: CertificateReport = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if r.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }

    /// The report with timings cleared, for comparing runs.
    pub fn without_timings(&self) -> Self {
        CertificateReport { timings_us: BTreeMap::new(), ..self.clone() }
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        writeln!(f, "verdict: {}{}", self.verdict, if self.self_test { " (self-test)" } else { "" })?;
        writeln!(f, "|β(P5)|           {}", show(self.order_bp5))?;
        writeln!(f, "|centralizer|     {}", show(self.order_centralizer))?;
        writeln!(f, "orbit of del1     {}", show(self.orbit_size))?;
        writeln!(f, "|K+|              {}", show(self.order_k_plus))?;
        writeln!(f, "|K-|              {}", show(self.order_k_minus))?;
        writeln!(f, "elements searched {}", show(self.searched))?;
        if let Some(c) = &self.conjugator {
            writeln!(f, "conjugator        {c}")?;
        }
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            writeln!(f, "[{mark}] {}: expected {}, got {}", c.name, c.expected, c.actual)?;
        }
        for d in &self.diagnostics {
            writeln!(f, "note: {d}")?;
        }
        if let Some(m) = &self.monodromy {
            writeln!(f, "alignment braid: {}", m.alignment.to_sigma_string())?;
            write!(f, "C+ monodromy\n{}", m.plus)?;
            write!(f, "C- monodromy (aligned)\n{}", m.minus)?;
        }
        for (stage, us) in &self.timings_us {
            writeln!(f, "time {stage}: {:.1} ms", *us as f64 / 1e3)?;
        }
        Ok(())
    }
}

fn stage<T>(timings: &mut BTreeMap<String, u64>, name: &str, f: impl FnOnce() -> T) -> T {
    let t0 = Instant::now();
    let out = f();
    timings.insert(name.into(), t0.elapsed().as_micros() as u64);
    out
}

pub fn run_certificate(opts: &CertificateOptions) -> CertificateReport {
    let mut report = CertificateReport::empty(opts);
    let outcome = match opts.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_stages(opts, &mut report)),
            Err(e) => Err(Error::Unsupported(format!("thread pool: {e}"))),
        },
        None => run_stages(opts, &mut report),
    };
    if let Err(e) = outcome {
        report.verdict = Verdict::Inconclusive;
        report.diagnostics.push(format!("stopped: {e}"));
    }
    report
}

fn images(words: impl Iterator<Item = BraidWord>, t: i64) -> Result<Vec<GfMat>> {
    words.map(|w| burau(&w, t)).collect()
}

fn run_stages(opts: &CertificateOptions, report: &mut CertificateReport) -> Result<()> {
    let pinned = opts.t == 2;
    if !pinned {
        report.diagnostics.push(format!("t = {}: expected orders are not checked", opts.t));
    }

    let (plus, minus, tau) = stage(&mut report.timings_us, "monodromy", || -> Result<_> {
        let plus = c_monodromy(Sign::Plus)?;
        let tau = alignment_braid()?;
        let minus = if opts.self_test { plus.clone() } else { conjugate_tuple(&c_monodromy(Sign::Minus)?, &tau)? };
        Ok((plus, minus, tau))
    })?;
    report.check("aligned strand labels", plus.strands().join(","), minus.strands().join(","));
    report.monodromy = Some(Monodromies { plus: plus.clone(), minus: minus.clone(), alignment: tau.clone() });

    let t = opts.t;
    let hh = MatGroup::new(images(pure_braid_generators(5).into_iter(), t)?)?;
    let order_bp5 = stage(&mut report.timings_us, "stabilizer chain", || hh.order());
    report.order_bp5 = Some(order_bp5);
    if pinned {
        report.check("|β(P5)|", ORDER_BP5, order_bp5);
    }

    let kk1_gens = images(plus.words().cloned(), t)?;
    let minus_imgs = images(minus.words().cloned(), t)?;
    let del1 = burau(&plus.pseudo_coxeter()?, t)?;
    let del2 = burau(&minus.pseudo_coxeter()?, t)?;
    let cj1 = burau(&tau, t)?;
    if !opts.self_test {
        // χ(τ⁻¹ρ⁻τ) = τ⁻¹χ(ρ⁻)τ and χ(ρ⁻) has the same image as χ(ρ⁺)
        report.check("del2 = del1^cj1", del1.conjugate_by(&cj1, &cj1.inverse().expect("invertible")), del2);
    }

    let orbit = stage(&mut report.timings_us, "conjugation orbit", || ConjugationOrbit::new(hh.gens(), &del1, opts.orbit_cap))?;
    report.orbit_size = Some(orbit.len() as u64);
    if pinned {
        report.check("orbit of del1", ORBIT_SIZE, orbit.len());
    }
    // del1^u = del2, so nv = u⁻¹ has del2^nv = del1
    let u = orbit
        .transversal(&del2)
        .ok_or_else(|| Error::Invariant("the pseudo-Coxeter images are not conjugate in β(P5)".into()))?;
    let nv = u.inverse().expect("invertible");
    let nv_inv = u;
    report.check("del2^nv = del1", del1, del2.conjugate_by(&nv, &nv_inv));
    report.matrices = Some(Matrices { del1, del2, cj1, nv });
    let kk2_gens: Vec<GfMat> = minus_imgs.iter().map(|k| k.conjugate_by(&nv, &nv_inv)).collect();

    let cent = stage(&mut report.timings_us, "centralizer", || centralizer_from_orbit(&hh, &orbit, opts.enumeration_cap))?;
    report.order_centralizer = Some(cent.elements.len() as u64);
    if pinned {
        report.check("|centralizer|", ORDER_CENTRALIZER, cent.elements.len());
    }
    report.check("orbit-stabilizer", order_bp5, orbit.len() as u64 * cent.elements.len() as u64);
    drop(orbit);

    let (k1, k1_group, k2, k2_group) = stage(&mut report.timings_us, "enumerate K", || -> Result<_> {
        let g1 = MatGroup::new(kk1_gens.clone())?;
        let g2 = MatGroup::new(kk2_gens.clone())?;
        Ok((g1.enumerate(opts.enumeration_cap)?, g1, g2.enumerate(opts.enumeration_cap)?, g2))
    })?;
    report.order_k_plus = Some(k1.len() as u64);
    report.order_k_minus = Some(k2.len() as u64);
    if pinned {
        report.check("|K+|", ORDER_K, k1.len());
        report.check("|K-|", ORDER_K, k2.len());
    }
    report.check("|K+| from stabilizer chain", k1.len(), k1_group.order());
    report.check("|K-| from stabilizer chain", k2.len(), k2_group.order());

    let found = stage(&mut report.timings_us, "conjugacy search", || {
        conjugacy_search(cent.elements.elements(), &kk1_gens, k1.len(), &k2)
    });

    if !report.all_checks_pass() {
        report.verdict = Verdict::Inconclusive;
        report.diagnostics.push("an expected invariant failed; the search result is not trusted".into());
        report.conjugator = found;
        return Ok(());
    }
    match found {
        None => {
            report.searched = Some(cent.elements.len() as u64);
            report.verdict = Verdict::NotEquivalent;
        }
        Some(c) => {
            let pos = cent.elements.elements().iter().position(|e| *e == c).expect("found in the centralizer");
            report.searched = Some(pos as u64 + 1);
            let ci = c.inverse().expect("invertible");
            let holds = kk1_gens.iter().all(|k| k2.contains(&c.mul(k).mul(&ci)));
            report.check("conjugator maps K+ into K-", true, holds);
            report.check("conjugator commutes with del1", c.mul(&del1), del1.mul(&c));
            report.conjugator = Some(c);
            report.verdict = if report.all_checks_pass() { Verdict::ConjugatorFound } else { Verdict::Inconclusive };
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_codes_and_names() {
        assert_eq!(Verdict::NotEquivalent.exit_code(), 0);
        assert_eq!(Verdict::ConjugatorFound.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
        assert_eq!(serde_json::to_string(&Verdict::NotEquivalent).unwrap(), "\"NOT_EQUIVALENT\"");
        assert_eq!(Verdict::ConjugatorFound.to_string(), "CONJUGATOR_FOUND");
    }

    #[test]
    fn failing_stage_is_inconclusive() {
        let opts = CertificateOptions { orbit_cap: 10, ..Default::default() };
        let r = run_certificate(&opts);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.order_bp5, Some(ORDER_BP5));
        assert!(r.diagnostics.iter().any(|d| d.contains("conjugation orbit")));
        let back = CertificateReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn schema_is_checked() {
        let r = run_certificate(&CertificateOptions { orbit_cap: 1, ..Default::default() });
        let json = r.to_json().replace("\"schema\": 1", "\"schema\": 7");
        assert!(CertificateReport::from_json(&json).is_err());
    }
}
