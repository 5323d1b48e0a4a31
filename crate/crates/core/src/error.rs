use thiserror::Error;

/// Failures of lattice construction and lattice operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ragged Gram matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("asymmetric Gram matrix: entry ({i},{j}) differs from ({j},{i})")]
    Asymmetric { i: usize, j: usize },
    #[error("not an integer: {0}")]
    NotAnInteger(String),
    #[error("parity undefined for zero lattice")]
    ZeroRank,
    #[error("not a base change")]
    NotABaseChange,
    #[error("not indefinite unimodular")]
    NotIndefiniteUnimodular,
    #[error("no such even unimodular lattice")]
    NoEvenLattice,
    #[error("enumeration requires definite lattice")]
    NotDefinite,
    #[error("norm {0} has the wrong sign for this lattice")]
    NormSign(String),
    #[error("lattice is not unimodular")]
    NotUnimodular,
    #[error("indefinite lattice: use canonical_indefinite")]
    Indefinite,
    #[error("vector length {found} does not match rank {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cannot parse lattice class: {0}")]
    ClassSyntax(String),
}

/// Failures of the surface-invariant formulas and the classification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("non-Kähler requires q ≥ 1")]
    NonKahlerQZero,
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("Kähler status unknown")]
    KahlerUnknown,
    #[error("negative invariant: {0}")]
    Negative(&'static str),
    #[error("invariants do not match class {class} after {blowups} blow-downs")]
    ClassMismatch { class: String, blowups: u32 },
    #[error("parity hint contradicts the forced parity of the form")]
    ParityConflict,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
