//! Definiteness verdicts from invariants, and a bounded exhaustive check of
//! the classification of surfaces with definite intersection form.
//!
//! [`verify_main_theorems`] synthesizes every consistent invariant tuple that
//! a table row and a number of blow-ups produce within [`Bounds`], runs
//! [`definite_verdict`] on it without telling it the generating class, and
//! records every definite tuple. A tuple becomes a counterexample when:
//!
//! * a Kähler tuple is definite but not `pg = q = 0`, `b2 = 1`, form `⟨1⟩`,
//!   or its class set leaves `{rational, general_type}` without blow-ups;
//! * a non-Kähler tuple is positive definite;
//! * a non-Kähler negative definite tuple admits a class outside class VII,
//!   blown-up secondary Kodaira surfaces, and blown-up properly elliptic
//!   surfaces whose minimal model has `q = 1`, `c2 = b2 = 0`, or its form is
//!   not `b2·⟨−1⟩`;
//! * the verdict misses the generating class, or its lattice has the wrong
//!   formal signature.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{
    blow_down, blow_up, classes_consistent_with, intersection_form_of, join, ChernConstraint,
    ClassMatch, KahlerStatus, SurfaceClass, TABLE,
};
use crate::classify::LatticeClass;
use crate::error::SurfaceError;
use crate::lattice::{Parity, Signature};
use crate::surface::{
    bmy_margin, consistency_report, expected_b1, is_consistent, signature_pair, Kahler, KodairaDim,
    SurfaceInvariants,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    ZeroRank,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::PositiveDefinite => "PositiveDefinite",
            Definiteness::NegativeDefinite => "NegativeDefinite",
            Definiteness::Indefinite => "Indefinite",
            Definiteness::ZeroRank => "ZeroRank",
        })
    }
}

/// Classification outcome for one invariant tuple. `lattice` is `None` when
/// the form is not determined by what is known.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Verdict {
    pub definiteness: Definiteness,
    pub allowed_classes: Vec<ClassMatch>,
    pub lattice: Option<LatticeClass>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "definiteness: {}", self.definiteness)?;
        let classes = if self.allowed_classes.is_empty() {
            "none".to_string()
        } else {
            join(&self.allowed_classes)
        };
        writeln!(f, "classes: {classes}")?;
        match &self.lattice {
            Some(l) => write!(f, "lattice: {l}"),
            None => write!(f, "lattice: Undetermined"),
        }
    }
}

fn inconsistent(s: &SurfaceInvariants) -> Result<(), SurfaceError> {
    let report = consistency_report(s);
    if report.is_empty() {
        Ok(())
    } else {
        Err(SurfaceError::Inconsistent(join(&report)))
    }
}

/// Definiteness read off the signature pair.
pub fn definiteness_from_invariants(s: &SurfaceInvariants) -> Result<Definiteness, SurfaceError> {
    if s.kahler == Kahler::Unknown {
        return Err(SurfaceError::KahlerUnknown);
    }
    inconsistent(s)?;
    let (pos, neg) = signature_pair(s)?;
    Ok(match (pos > 0, neg > 0) {
        (false, false) => Definiteness::ZeroRank,
        (true, false) => Definiteness::PositiveDefinite,
        (false, true) => Definiteness::NegativeDefinite,
        (true, true) => Definiteness::Indefinite,
    })
}

/// Fills in an unknown Kähler status from the parity of `b1`: `b1 = 2q`
/// exactly for Kähler surfaces and `b1 = 2q − 1` otherwise.
pub fn resolve_kahler(s: &SurfaceInvariants) -> Result<SurfaceInvariants, SurfaceError> {
    if s.kahler != Kahler::Unknown {
        return Ok(*s);
    }
    let kahler = if s.b1 == 2 * s.q {
        Kahler::Yes
    } else if s.b1 == 2 * s.q - 1 {
        Kahler::No
    } else {
        return Err(SurfaceError::Inconsistent("b1".into()));
    };
    Ok(SurfaceInvariants { kahler, ..*s })
}

/// Every `(class, k)` such that blowing down `k` times gives a consistent
/// minimal tuple accepted by the class row, for `k = 0..=b2`.
pub fn blow_down_candidates(s: &SurfaceInvariants) -> Vec<ClassMatch> {
    let mut out = Vec::new();
    for k in 0..=s.b2.max(0) as u32 {
        let Some(m) = blow_down(s, k) else { break };
        if !is_consistent(&m) {
            continue;
        }
        out.extend(
            classes_consistent_with(&m)
                .into_iter()
                .map(|class| ClassMatch { class, blowups: k }),
        );
    }
    out.sort();
    out
}

/// Form determined by signature alone: zero, diagonal when definite, or the
/// canonical indefinite class when the parity is known.
fn form_from_signature(sig: Signature, parity: Option<Parity>) -> Option<LatticeClass> {
    if sig.rank() == 0 {
        return Some(LatticeClass::zero());
    }
    if !sig.is_indefinite() {
        return Some(LatticeClass::diagonal(sig.pos as u64, sig.neg as u64));
    }
    let parity = if sig.index().rem_euclid(8) != 0 {
        Some(Parity::Odd)
    } else {
        parity
    };
    parity.and_then(|p| crate::classify::canonical_indefinite(sig, p).ok())
}

/// [`definite_verdict_with`] without parity metadata.
pub fn definite_verdict(s: &SurfaceInvariants) -> Result<Verdict, SurfaceError> {
    definite_verdict_with(s, None)
}

/// Definiteness, the `(class, blow-ups)` pairs the invariants allow, and the
/// isometry class of the form when every allowed pair forces the same one.
///
/// `parity_hint` is external knowledge of the form's type. Candidates whose
/// forced parity contradicts it are dropped (an even form rules out
/// blow-ups, for instance).
pub fn definite_verdict_with(
    s: &SurfaceInvariants,
    parity_hint: Option<Parity>,
) -> Result<Verdict, SurfaceError> {
    inconsistent(s)?;
    let s = resolve_kahler(s)?;
    inconsistent(&s)?;
    let definiteness = definiteness_from_invariants(&s)?;
    let mut allowed = Vec::new();
    let mut forms = BTreeSet::new();
    for m in blow_down_candidates(&s) {
        match intersection_form_of(&s, m.class, m.blowups, parity_hint) {
            Ok(form) => {
                allowed.push(m);
                forms.insert(form);
            }
            Err(SurfaceError::ParityConflict) => {}
            Err(e) => return Err(e),
        }
    }
    let lattice = if allowed.is_empty() {
        let (pos, neg) = signature_pair(&s)?;
        form_from_signature(Signature::new(pos as usize, neg as usize, 0), parity_hint)
    } else if forms.len() == 1 {
        forms.into_iter().next().flatten()
    } else {
        None
    };
    Ok(Verdict {
        definiteness,
        allowed_classes: allowed,
        lattice,
    })
}

/// Enumeration ranges for [`verify_main_theorems`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub q_max: i64,
    pub pg_max: i64,
    pub b2_max: i64,
    pub k_max: u32,
    /// Restrict the enumeration to Kähler tuples.
    #[serde(default)]
    pub kahler_only: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            q_max: 6,
            pg_max: 6,
            b2_max: 30,
            k_max: 10,
            kahler_only: false,
        }
    }
}

/// Upper limits accepted by [`Bounds::validate`].
pub const BOUND_LIMITS: Bounds = Bounds {
    q_max: 50,
    pg_max: 50,
    b2_max: 400,
    k_max: 100,
    kahler_only: false,
};

impl Bounds {
    pub fn validate(&self) -> Result<(), String> {
        let checks = [
            ("q_max", self.q_max, BOUND_LIMITS.q_max),
            ("pg_max", self.pg_max, BOUND_LIMITS.pg_max),
            ("b2_max", self.b2_max, BOUND_LIMITS.b2_max),
            (
                "k_max",
                i64::from(self.k_max),
                i64::from(BOUND_LIMITS.k_max),
            ),
        ];
        for (name, v, hi) in checks {
            if !(0..=hi).contains(&v) {
                return Err(format!("{name} must lie in [0, {hi}], got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefiniteEntry {
    pub invariants: SurfaceInvariants,
    pub generator: ClassMatch,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub invariants: SurfaceInvariants,
    pub generator: ClassMatch,
    pub reason: String,
}

/// Deterministic aggregate of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub bounds: Bounds,
    /// Consistent tuples (minimal models and their blow-ups) examined.
    pub checked: u64,
    pub definite_kahler: Vec<DefiniteEntry>,
    pub definite_nonkahler: Vec<DefiniteEntry>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn chern_candidates(chern: ChernConstraint, q: i64, c2_max: i64) -> Vec<(i64, i64)> {
    match chern {
        ChernConstraint::OneOf { pairs } => pairs.to_vec(),
        ChernConstraint::RuledByGenus => vec![(8 * (1 - q), 4 * (1 - q))],
        ChernConstraint::MinusEuler => (0..=c2_max).map(|c2| (-c2, c2)).collect(),
        ChernConstraint::ZeroCanonical => (0..=c2_max).map(|c2| (0, c2)).collect(),
        // general type inside the Bogomolov–Miyaoka–Yau region c1² ≤ 3c2
        ChernConstraint::Positive => (1..=c2_max)
            .flat_map(|c2| (1..=3 * c2).map(move |c1sq| (c1sq, c2)))
            .collect(),
    }
}

fn kahler_options(status: KahlerStatus, kahler_only: bool) -> Vec<Kahler> {
    let all = match status {
        KahlerStatus::Kahler | KahlerStatus::Algebraic => vec![Kahler::Yes],
        KahlerStatus::NonKahler => vec![Kahler::No],
        KahlerStatus::Unconstrained => vec![Kahler::Yes, Kahler::No],
    };
    all.into_iter()
        .filter(|&k| !kahler_only || k == Kahler::Yes)
        .collect()
}

#[derive(Default)]
struct Partial {
    checked: u64,
    definite_kahler: Vec<DefiniteEntry>,
    definite_nonkahler: Vec<DefiniteEntry>,
    counterexamples: Vec<Counterexample>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.definite_kahler.extend(other.definite_kahler);
        self.definite_nonkahler.extend(other.definite_nonkahler);
        self.counterexamples.extend(other.counterexamples);
        self
    }

    fn fail(&mut self, s: &SurfaceInvariants, generator: ClassMatch, reason: impl Into<String>) {
        self.counterexamples.push(Counterexample {
            invariants: *s,
            generator,
            reason: reason.into(),
        });
    }
}

fn negative_definite_class_allowed(s: &SurfaceInvariants, m: &ClassMatch) -> bool {
    match m.class {
        SurfaceClass::ClassVii => s.b2 > 0,
        SurfaceClass::SecondaryKodaira => m.blowups >= 1,
        SurfaceClass::ProperlyElliptic => {
            m.blowups >= 1
                && blow_down(s, m.blowups)
                    .is_some_and(|min| min.q == 1 && min.c2 == 0 && min.b2 == 0)
        }
        _ => false,
    }
}

fn check_tuple(s: &SurfaceInvariants, generator: ClassMatch, out: &mut Partial) {
    out.checked += 1;
    // judge from the numbers alone, not from the generating row
    let blind = SurfaceInvariants {
        kodaira_dim: KodairaDim::Unknown,
        ..*s
    };
    let verdict = match definite_verdict(&blind) {
        Ok(v) => v,
        Err(e) => return out.fail(s, generator, format!("verdict failed: {e}")),
    };
    if !verdict.allowed_classes.contains(&generator) {
        out.fail(s, generator, "generating class not among allowed classes");
    }
    let (pos, neg) = match signature_pair(s) {
        Ok(p) => p,
        Err(e) => return out.fail(s, generator, e.to_string()),
    };
    let sig = Signature::new(pos as usize, neg as usize, 0);
    if let Some(l) = &verdict.lattice {
        if l.signature() != sig {
            out.fail(
                s,
                generator,
                format!("lattice {l} has signature {}", l.signature()),
            );
        }
    }
    let definite = matches!(
        verdict.definiteness,
        Definiteness::PositiveDefinite | Definiteness::NegativeDefinite
    );
    if !definite {
        return;
    }
    let entry = DefiniteEntry {
        invariants: *s,
        generator,
        verdict: verdict.clone(),
    };
    match s.kahler {
        Kahler::Yes => {
            if verdict.definiteness != Definiteness::PositiveDefinite {
                out.fail(s, generator, "Kähler surface with negative definite form");
            }
            if !(s.pg == 0 && s.q == 0 && s.b2 == 1) {
                out.fail(
                    s,
                    generator,
                    "definite Kähler surface beyond pg = q = 0, b2 = 1",
                );
            }
            if verdict.lattice != Some(LatticeClass::diagonal(1, 0)) {
                out.fail(s, generator, "definite Kähler form is not <1>");
            }
            let plane_like = |m: &ClassMatch| {
                m.blowups == 0
                    && matches!(m.class, SurfaceClass::Rational | SurfaceClass::GeneralType)
            };
            if !verdict.allowed_classes.iter().all(plane_like) {
                out.fail(
                    s,
                    generator,
                    "definite Kähler class outside rational/general type",
                );
            }
            let margin = bmy_margin(s.c1sq, s.c2);
            if margin != 4 * (s.pg + s.q) || (margin <= 0) != (s.pg == 0 && s.q == 0) {
                out.fail(
                    s,
                    generator,
                    format!("BMY margin {margin} does not equal 4(pg+q)"),
                );
            }
            out.definite_kahler.push(entry);
        }
        _ => {
            if verdict.definiteness != Definiteness::NegativeDefinite {
                out.fail(
                    s,
                    generator,
                    "non-Kähler surface with positive definite form",
                );
            }
            if s.pg != 0 {
                out.fail(s, generator, "negative definite with pg > 0");
            }
            if let Some(bad) = verdict
                .allowed_classes
                .iter()
                .find(|m| !negative_definite_class_allowed(s, m))
            {
                out.fail(
                    s,
                    generator,
                    format!("negative definite surface admits {bad}"),
                );
            }
            if verdict.allowed_classes.is_empty() {
                out.fail(s, generator, "negative definite surface with no class");
            }
            if verdict.lattice != Some(LatticeClass::diagonal(0, s.b2 as u64)) {
                out.fail(s, generator, "negative definite form is not b2<-1>");
            }
            out.definite_nonkahler.push(entry);
        }
    }
}

/// Enumerates every `(row, Kähler status, q, pg, Chern numbers, blow-ups)`
/// within `bounds`, keeps the consistent tuples, and checks each one.
///
/// Work is split across threads by `(row, Kähler status, q)`; the report is
/// sorted, so it does not depend on scheduling.
pub fn verify_main_theorems(bounds: &Bounds) -> Result<VerificationReport, String> {
    bounds.validate()?;
    let c2_max = bounds.b2_max + 2;
    let mut jobs = Vec::new();
    for row in TABLE.iter() {
        for kahler in kahler_options(row.kahler_status, bounds.kahler_only) {
            for q in (0..=bounds.q_max).filter(|&q| row.q.admits(q)) {
                jobs.push((row, kahler, q));
            }
        }
    }
    let total = jobs
        .into_par_iter()
        .map(|(row, kahler, q)| {
            let mut part = Partial::default();
            let Ok(b1) = expected_b1(q, kahler == Kahler::Yes) else {
                return part;
            };
            for pg in 0..=bounds.pg_max {
                for (c1sq, c2) in chern_candidates(row.chern, q, c2_max) {
                    let b2 = c2 - 2 + 2 * b1;
                    if !(0..=bounds.b2_max).contains(&b2) {
                        continue;
                    }
                    let minimal = SurfaceInvariants {
                        b1,
                        b2,
                        q,
                        pg,
                        c1sq,
                        c2,
                        kahler,
                        minimal: true,
                        kodaira_dim: row.kodaira_dim,
                    };
                    if !is_consistent(&minimal) {
                        continue;
                    }
                    for k in 0..=bounds.k_max {
                        if b2 + i64::from(k) > bounds.b2_max {
                            break;
                        }
                        let s = blow_up(&minimal, k)
                            .expect("blow-ups of consistent tuples stay consistent");
                        let generator = ClassMatch {
                            class: row.class,
                            blowups: k,
                        };
                        check_tuple(&s, generator, &mut part);
                    }
                }
            }
            part
        })
        .reduce(Partial::default, Partial::merge);
    let mut report = VerificationReport {
        bounds: *bounds,
        checked: total.checked,
        definite_kahler: total.definite_kahler,
        definite_nonkahler: total.definite_nonkahler,
        counterexamples: total.counterexamples,
    };
    report.definite_kahler.sort();
    report.definite_nonkahler.sort();
    report.counterexamples.sort();
    Ok(report)
}
