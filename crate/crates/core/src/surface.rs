//! Numerical relations between the Betti, Hodge and Chern numbers of a
//! compact complex surface.

use std::fmt;

use num::rational::Ratio;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;

/// Exact rationals for the formulas with denominators 3 and 12.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kahler {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KodairaDim {
    #[serde(rename = "minus_infinity")]
    MinusInfinity,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for KodairaDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KodairaDim::MinusInfinity => "-inf",
            KodairaDim::Zero => "0",
            KodairaDim::One => "1",
            KodairaDim::Two => "2",
            KodairaDim::Unknown => "unknown",
        })
    }
}

/// Invariants of a compact complex surface. The index `τ` is derived, not
/// stored; `pg` and `q` are independent inputs so every formula is a
/// cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInvariants")]
pub struct SurfaceInvariants {
    pub b1: i64,
    pub b2: i64,
    pub q: i64,
    pub pg: i64,
    pub c1sq: i64,
    pub c2: i64,
    pub kahler: Kahler,
    pub minimal: bool,
    #[serde(rename = "kodaira")]
    pub kodaira_dim: KodairaDim,
}

#[derive(Deserialize)]
struct RawInvariants {
    b1: i64,
    b2: i64,
    q: i64,
    pg: i64,
    c1sq: i64,
    c2: i64,
    kahler: Kahler,
    minimal: bool,
    kodaira: KodairaDim,
}

impl TryFrom<RawInvariants> for SurfaceInvariants {
    type Error = SurfaceError;

    fn try_from(r: RawInvariants) -> Result<Self, SurfaceError> {
        SurfaceInvariants {
            b1: r.b1,
            b2: r.b2,
            q: r.q,
            pg: r.pg,
            c1sq: r.c1sq,
            c2: r.c2,
            kahler: r.kahler,
            minimal: r.minimal,
            kodaira_dim: r.kodaira,
        }
        .validated()
    }
}

/// Magnitude limit on any single invariant, keeping every formula exact in
/// `i128`.
pub const INVARIANT_LIMIT: i64 = 1 << 40;

impl SurfaceInvariants {
    /// Rejects negative Betti/Hodge numbers and absurdly large values.
    pub fn validated(self) -> Result<Self, SurfaceError> {
        for (name, v) in [
            ("b1", self.b1),
            ("b2", self.b2),
            ("q", self.q),
            ("pg", self.pg),
        ] {
            if v < 0 {
                return Err(SurfaceError::Negative(name));
            }
        }
        let all = [self.b1, self.b2, self.q, self.pg, self.c1sq, self.c2];
        if all.iter().any(|v| v.abs() > INVARIANT_LIMIT) {
            return Err(SurfaceError::Inconsistent("invariant out of range".into()));
        }
        Ok(self)
    }

    /// `τ = (c1² − 2c2)/3`.
    pub fn index_from_chern(&self) -> Rational {
        index_from_chern(self.c1sq, self.c2)
    }
}

/// `c2 = 2 − 2b1 + b2` (Euler number with `b0 = b4 = 1`, `b3 = b1`).
pub fn euler_check(s: &SurfaceInvariants) -> bool {
    s.c2 == 2 - 2 * s.b1 + s.b2
}

/// Index theorem: `τ = (c1² − 2c2)/3`, exact.
pub fn index_from_chern(c1sq: i64, c2: i64) -> Rational {
    Rational::new(c1sq as i128 - 2 * c2 as i128, 3)
}

/// `(1 − q + pg) − (c1² + c2)/12`; zero iff Noether's formula holds.
pub fn noether_residual(s: &SurfaceInvariants) -> Rational {
    Rational::from_integer(1 - s.q as i128 + s.pg as i128)
        - Rational::new(s.c1sq as i128 + s.c2 as i128, 12)
}

/// `b1 = 2q` for Kähler surfaces, `2q − 1` otherwise.
pub fn expected_b1(q: i64, kahler: bool) -> Result<i64, SurfaceError> {
    if kahler {
        Ok(2 * q)
    } else if q < 1 {
        Err(SurfaceError::NonKahlerQZero)
    } else {
        Ok(2 * q - 1)
    }
}

/// `(pos, neg)` of the intersection form: `(2pg + 1, b2 − 2pg − 1)` for
/// Kähler surfaces, `(2pg, b2 − 2pg)` otherwise.
pub fn signature_pair(s: &SurfaceInvariants) -> Result<(i64, i64), SurfaceError> {
    let pos = match s.kahler {
        Kahler::Yes => 2 * s.pg + 1,
        Kahler::No => 2 * s.pg,
        Kahler::Unknown => return Err(SurfaceError::KahlerUnknown),
    };
    let neg = s.b2 - pos;
    if neg < 0 {
        return Err(SurfaceError::Inconsistent(format!(
            "signature ({pos},{neg}) has a negative component"
        )));
    }
    Ok((pos, neg))
}

/// Chern numbers forced on a Kähler surface with positive definite form:
/// `(10pg − 8q + 9, 2pg − 4q + 3)`. The caller is responsible for the
/// hypothesis.
pub fn chern_from_pg_q(pg: i64, q: i64) -> (i64, i64) {
    (10 * pg - 8 * q + 9, 2 * pg - 4 * q + 3)
}

/// `c1² − 3c2`; Bogomolov–Miyaoka–Yau requires this to be `≤ 0` for
/// surfaces of general type.
pub fn bmy_margin(c1sq: i64, c2: i64) -> i64 {
    c1sq - 3 * c2
}

/// One failed constraint in [`consistency_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `c2 ≠ 2 − 2b1 + b2`.
    Euler,
    /// Noether's formula fails.
    Noether,
    /// `b1` does not match `q` and the Kähler status.
    B1,
    /// `(c1² − 2c2)/3` is not the integer `pos − neg`.
    Index,
    /// A component of the signature pair is negative.
    Signature,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::Euler => "euler",
            Violation::Noether => "noether",
            Violation::B1 => "b1",
            Violation::Index => "index",
            Violation::Signature => "signature",
        })
    }
}

/// All violated constraints, sorted. Empty iff the tuple is consistent.
///
/// Given the Euler and Noether relations and the `b1` relation, the index
/// theorem is implied; so the index check is only reported when Euler and
/// Noether both hold, where a failure carries independent information.
/// Unknown Kähler status skips the `b1` and signature checks.
pub fn consistency_report(s: &SurfaceInvariants) -> Vec<Violation> {
    let mut out = Vec::new();
    let euler = euler_check(s);
    let noether = noether_residual(s).is_zero();
    if !euler {
        out.push(Violation::Euler);
    }
    if !noether {
        out.push(Violation::Noether);
    }
    let kahler = match s.kahler {
        Kahler::Yes => Some(true),
        Kahler::No => Some(false),
        Kahler::Unknown => None,
    };
    if let Some(k) = kahler {
        if !expected_b1(s.q, k).is_ok_and(|b1| b1 == s.b1) {
            out.push(Violation::B1);
        }
    }
    let sig = signature_pair(s);
    if matches!(sig, Err(SurfaceError::Inconsistent(_))) {
        out.push(Violation::Signature);
    }
    if euler && noether {
        let tau = s.index_from_chern();
        let ok = tau.is_integer()
            && match &sig {
                Ok((p, n)) => tau == Rational::from_integer((p - n) as i128),
                Err(_) => kahler.is_none(),
            };
        if !ok {
            out.push(Violation::Index);
        }
    }
    out.sort();
    out
}

pub fn is_consistent(s: &SurfaceInvariants) -> bool {
    consistency_report(s).is_empty()
}

/// Whether `τ` is an integer. Convenience for callers that only hold Chern
/// numbers.
pub fn index_is_integral(c1sq: i64, c2: i64) -> bool {
    index_from_chern(c1sq, c2).denom().is_one()
}
