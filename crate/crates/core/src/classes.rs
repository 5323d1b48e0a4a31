//! The Enriques–Kodaira classification table as predicates on invariants of
//! minimal models, blow-ups, and the intersection forms the classes force.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{canonical_indefinite, LatticeClass};
use crate::error::SurfaceError;
use crate::lattice::{Parity, Signature};
use crate::surface::{consistency_report, signature_pair, Kahler, KodairaDim, SurfaceInvariants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceClass {
    Rational,
    RuledGenusG,
    ClassVii,
    Torus,
    K3,
    PrimaryKodaira,
    SecondaryKodaira,
    Enriques,
    Bielliptic,
    ProperlyElliptic,
    GeneralType,
}

impl SurfaceClass {
    pub const ALL: [SurfaceClass; 11] = [
        SurfaceClass::Rational,
        SurfaceClass::RuledGenusG,
        SurfaceClass::ClassVii,
        SurfaceClass::Torus,
        SurfaceClass::K3,
        SurfaceClass::PrimaryKodaira,
        SurfaceClass::SecondaryKodaira,
        SurfaceClass::Enriques,
        SurfaceClass::Bielliptic,
        SurfaceClass::ProperlyElliptic,
        SurfaceClass::GeneralType,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceClass::Rational => "rational",
            SurfaceClass::RuledGenusG => "ruled_genus_g",
            SurfaceClass::ClassVii => "class_vii",
            SurfaceClass::Torus => "torus",
            SurfaceClass::K3 => "k3",
            SurfaceClass::PrimaryKodaira => "primary_kodaira",
            SurfaceClass::SecondaryKodaira => "secondary_kodaira",
            SurfaceClass::Enriques => "enriques",
            SurfaceClass::Bielliptic => "bielliptic",
            SurfaceClass::ProperlyElliptic => "properly_elliptic",
            SurfaceClass::GeneralType => "general_type",
        }
    }

    pub fn constraint(&self) -> &'static SurfaceClassConstraint {
        TABLE
            .iter()
            .find(|row| row.class == *self)
            .expect("every class has a table row")
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SurfaceClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SurfaceClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown surface class {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KahlerStatus {
    Kahler,
    NonKahler,
    Algebraic,
    Unconstrained,
}

impl KahlerStatus {
    /// Algebraic surfaces are Kähler; only that distinction is checked.
    pub fn admits(&self, k: Kahler) -> bool {
        matches!(
            (self, k),
            (_, Kahler::Unknown)
                | (KahlerStatus::Unconstrained, _)
                | (KahlerStatus::Kahler | KahlerStatus::Algebraic, Kahler::Yes)
                | (KahlerStatus::NonKahler, Kahler::No)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum QConstraint {
    Fixed(i64),
    /// `q = g` for some genus `g ≥ 1`.
    Genus,
    Unconstrained,
}

impl QConstraint {
    pub fn admits(&self, q: i64) -> bool {
        match *self {
            QConstraint::Fixed(v) => q == v,
            QConstraint::Genus => q >= 1,
            QConstraint::Unconstrained => true,
        }
    }
}

/// Constraint on the minimal-model Chern numbers `(c1², c2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChernConstraint {
    /// One of a finite list of pairs.
    OneOf { pairs: &'static [(i64, i64)] },
    /// `c1² = 8(1 − q)`, `c2 = 4(1 − q)`.
    RuledByGenus,
    /// `c1² = −c2`, `c2 ≥ 0`.
    MinusEuler,
    /// `c1² = 0`, `c2 ≥ 0`.
    ZeroCanonical,
    /// `c1² > 0`, `c2 > 0` and the Bogomolov–Miyaoka–Yau bound `c1² ≤ 3c2`.
    Positive,
}

impl ChernConstraint {
    pub fn admits(&self, q: i64, c1sq: i64, c2: i64) -> bool {
        match *self {
            ChernConstraint::OneOf { pairs } => pairs.contains(&(c1sq, c2)),
            ChernConstraint::RuledByGenus => c1sq == 8 * (1 - q) && c2 == 4 * (1 - q),
            ChernConstraint::MinusEuler => c1sq == -c2 && c2 >= 0,
            ChernConstraint::ZeroCanonical => c1sq == 0 && c2 >= 0,
            ChernConstraint::Positive => c1sq > 0 && c2 > 0 && c1sq <= 3 * c2,
        }
    }
}

/// One row of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceClassConstraint {
    #[serde(rename = "name")]
    pub class: SurfaceClass,
    pub kodaira_dim: KodairaDim,
    pub kahler_status: KahlerStatus,
    pub q: QConstraint,
    pub chern: ChernConstraint,
}

impl SurfaceClassConstraint {
    /// Whether a minimal surface with these invariants may belong to the
    /// class. Unknown Kähler status or Kodaira dimension is not constrained.
    pub fn admits(&self, s: &SurfaceInvariants) -> bool {
        let kod = s.kodaira_dim == KodairaDim::Unknown || s.kodaira_dim == self.kodaira_dim;
        kod && self.kahler_status.admits(s.kahler)
            && self.q.admits(s.q)
            && self.chern.admits(s.q, s.c1sq, s.c2)
    }
}

impl fmt::Display for SurfaceClassConstraint {
    /// One table line: class, κ, Kähler status, q, minimal Chern numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kahler = match self.kahler_status {
            KahlerStatus::Kahler => "kahler",
            KahlerStatus::NonKahler => "non-kahler",
            KahlerStatus::Algebraic => "algebraic",
            KahlerStatus::Unconstrained => "any",
        };
        let q = match self.q {
            QConstraint::Fixed(v) => v.to_string(),
            QConstraint::Genus => "g>=1".into(),
            QConstraint::Unconstrained => "any".into(),
        };
        let chern = match self.chern {
            ChernConstraint::OneOf { pairs } => pairs
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(" or "),
            ChernConstraint::RuledByGenus => "(8(1-q),4(1-q))".into(),
            ChernConstraint::MinusEuler => "(-c2,c2), c2>=0".into(),
            ChernConstraint::ZeroCanonical => "(0,c2), c2>=0".into(),
            ChernConstraint::Positive => "0<c1sq<=3c2".into(),
        };
        write!(
            f,
            "{:<18} kod={:<14} {:<11} q={:<5} (c1sq,c2)={}",
            self.class.name(),
            self.kodaira_dim.to_string(),
            kahler,
            q,
            chern
        )
    }
}

const fn row(
    class: SurfaceClass,
    kodaira_dim: KodairaDim,
    kahler_status: KahlerStatus,
    q: QConstraint,
    chern: ChernConstraint,
) -> SurfaceClassConstraint {
    SurfaceClassConstraint {
        class,
        kodaira_dim,
        kahler_status,
        q,
        chern,
    }
}

/// The eleven rows. Tori carry `q = 2` and bielliptic surfaces `q = 1`.
pub static TABLE: [SurfaceClassConstraint; 11] = {
    use ChernConstraint::*;
    use KahlerStatus::*;
    use KodairaDim::*;
    use QConstraint::{Fixed, Genus};
    use SurfaceClass as C;
    [
        row(
            C::Rational,
            MinusInfinity,
            Algebraic,
            Fixed(0),
            OneOf {
                pairs: &[(9, 3), (8, 4)],
            },
        ),
        row(
            C::RuledGenusG,
            MinusInfinity,
            Algebraic,
            Genus,
            RuledByGenus,
        ),
        row(C::ClassVii, MinusInfinity, NonKahler, Fixed(1), MinusEuler),
        row(C::Torus, Zero, Kahler, Fixed(2), OneOf { pairs: &[(0, 0)] }),
        row(C::K3, Zero, Kahler, Fixed(0), OneOf { pairs: &[(0, 24)] }),
        row(
            C::PrimaryKodaira,
            Zero,
            NonKahler,
            Fixed(2),
            OneOf { pairs: &[(0, 0)] },
        ),
        row(
            C::SecondaryKodaira,
            Zero,
            NonKahler,
            Fixed(1),
            OneOf { pairs: &[(0, 0)] },
        ),
        row(
            C::Enriques,
            Zero,
            Algebraic,
            Fixed(0),
            OneOf { pairs: &[(0, 12)] },
        ),
        row(
            C::Bielliptic,
            Zero,
            Algebraic,
            Fixed(1),
            OneOf { pairs: &[(0, 0)] },
        ),
        row(
            C::ProperlyElliptic,
            One,
            Unconstrained,
            QConstraint::Unconstrained,
            ZeroCanonical,
        ),
        row(
            C::GeneralType,
            Two,
            Algebraic,
            QConstraint::Unconstrained,
            Positive,
        ),
    ]
};

/// Rows accepting a minimal surface, in table order. Empty means no compact
/// complex surface has these invariants.
pub fn classes_consistent_with(s: &SurfaceInvariants) -> Vec<SurfaceClass> {
    TABLE
        .iter()
        .filter(|r| r.admits(s))
        .map(|r| r.class)
        .collect()
}

/// Invariants after `k` blow-ups: `b2 += k`, `c2 += k`, `c1² −= k`.
pub fn blow_up(s: &SurfaceInvariants, k: u32) -> Result<SurfaceInvariants, SurfaceError> {
    let report = consistency_report(s);
    if !report.is_empty() {
        return Err(SurfaceError::Inconsistent(join(&report)));
    }
    let k = i64::from(k);
    Ok(SurfaceInvariants {
        b2: s.b2 + k,
        c2: s.c2 + k,
        c1sq: s.c1sq - k,
        minimal: k == 0 && s.minimal,
        ..*s
    })
}

/// Inverse of [`blow_up`] on the numbers; `None` when `b2 < k`. The result is
/// marked minimal and is not checked for consistency.
pub fn blow_down(s: &SurfaceInvariants, k: u32) -> Option<SurfaceInvariants> {
    let k = i64::from(k);
    (s.b2 >= k).then(|| SurfaceInvariants {
        b2: s.b2 - k,
        c2: s.c2 - k,
        c1sq: s.c1sq + k,
        minimal: true,
        ..*s
    })
}

pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// A class together with the number of blow-ups from its minimal model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassMatch {
    pub class: SurfaceClass,
    pub blowups: u32,
}

impl fmt::Display for ClassMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={})", self.class, self.blowups)
    }
}

/// Parity of the intersection form when the invariants force it:
/// non-minimal surfaces are odd; a unimodular form with `τ ≢ 0 (mod 8)` is
/// odd (the square of a characteristic vector is `≡ τ mod 8`, and 0 is
/// characteristic exactly for even forms); primary Kodaira surfaces are even.
fn forced_parity(class: SurfaceClass, blowups: u32, sig: Signature) -> Option<Parity> {
    if sig.rank() == 0 {
        return None;
    }
    if blowups > 0 || sig.index().rem_euclid(8) != 0 {
        return Some(Parity::Odd);
    }
    match class {
        SurfaceClass::PrimaryKodaira => Some(Parity::Even),
        _ => None,
    }
}

/// The isometry class of the intersection form of a surface `s` that is
/// `blowups` blow-ups of a minimal member of `class`, when it is forced.
///
/// Definite forms are diagonal (Donaldson; this is what makes class VII with
/// `b2 > 0` equal to `b2·⟨−1⟩` and the fake planes `⟨1⟩`). Indefinite forms
/// follow from signature and parity, where the parity is forced as in
/// [`forced_parity`] or supplied by `parity_hint` (e.g. catalog metadata for
/// K3 and Enriques surfaces). Otherwise `Ok(None)`: undetermined.
pub fn intersection_form_of(
    s: &SurfaceInvariants,
    class: SurfaceClass,
    blowups: u32,
    parity_hint: Option<Parity>,
) -> Result<Option<LatticeClass>, SurfaceError> {
    let report = consistency_report(s);
    if !report.is_empty() {
        return Err(SurfaceError::Inconsistent(join(&report)));
    }
    let mismatch = || SurfaceError::ClassMismatch {
        class: class.to_string(),
        blowups,
    };
    let minimal = blow_down(s, blowups).ok_or_else(mismatch)?;
    if !consistency_report(&minimal).is_empty() || !class.constraint().admits(&minimal) {
        return Err(mismatch());
    }
    let (pos, neg) = signature_pair(s)?;
    let sig = Signature::new(pos as usize, neg as usize, 0);
    let forced = forced_parity(class, blowups, sig);
    if let (Some(f), Some(h)) = (forced, parity_hint) {
        if f != h {
            return Err(SurfaceError::ParityConflict);
        }
    }
    if sig.rank() == 0 {
        return Ok(Some(LatticeClass::zero()));
    }
    if !sig.is_indefinite() {
        if parity_hint == Some(Parity::Even) {
            return Err(SurfaceError::ParityConflict);
        }
        return Ok(Some(LatticeClass::diagonal(pos as u64, neg as u64)));
    }
    match forced.or(parity_hint) {
        Some(p) => Ok(Some(canonical_indefinite(sig, p)?)),
        None => Ok(None),
    }
}
