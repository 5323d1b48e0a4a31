//! Isometry classification of unimodular lattices.

mod class;
mod enumerate;
mod split;

use std::sync::OnceLock;

use num::{BigInt, Integer};

pub use class::LatticeClass;
pub use enumerate::enumerate_vectors_of_norm;
pub use split::{
    diagonalize_odd_definite, indefinite_search_bound, orthogonal_complement, split_off_unit,
    DefiniteOutcome, SplitOutcome, UnitSplit, INDEFINITE_SEARCH_BUDGET,
};

use crate::error::LatticeError;
use crate::lattice::{IntegralLattice, Parity, Signature};
use crate::matrix;

/// Gram matrix of E8 in a basis of simple roots: the Dynkin diagram is the
/// chain 0–1–2–3–4–5–6 with node 7 attached to node 4.
pub const E8_GRAM: [[i64; 8]; 8] = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
];

/// The E8 lattice. The first call checks `det = 1` and signature `(8,0,0)`.
pub fn e8() -> IntegralLattice {
    static E8: OnceLock<IntegralLattice> = OnceLock::new();
    E8.get_or_init(|| {
        let l = IntegralLattice::from_i64(&E8_GRAM).expect("E8 Gram matrix is symmetric");
        assert_eq!(
            l.determinant(),
            BigInt::from(1),
            "E8 self-check: determinant"
        );
        assert_eq!(
            l.signature(),
            Signature::new(8, 0, 0),
            "E8 self-check: signature"
        );
        l
    })
    .clone()
}

/// The unique indefinite unimodular class with the given signature and type.
///
/// Odd: `pos·⟨1⟩ ⊕ neg·⟨−1⟩`. Even with `τ = pos − neg`: `(τ/8)·E8 ⊕ neg·U`
/// when `τ ≥ 0`, otherwise `(−τ/8)·E8(−1) ⊕ pos·U`.
pub fn canonical_indefinite(sig: Signature, parity: Parity) -> Result<LatticeClass, LatticeError> {
    if !sig.is_indefinite() {
        return Err(LatticeError::NotIndefiniteUnimodular);
    }
    let (pos, neg) = (sig.pos as u64, sig.neg as u64);
    match parity {
        Parity::Odd => Ok(LatticeClass::diagonal(pos, neg)),
        Parity::Even => {
            let tau = sig.index();
            if tau.rem_euclid(8) != 0 {
                return Err(LatticeError::NoEvenLattice);
            }
            if tau >= 0 {
                Ok(LatticeClass::even(neg, (tau / 8) as u64, 0))
            } else {
                Ok(LatticeClass::even(pos, 0, (-tau / 8) as u64))
            }
        }
    }
}

/// `w` is characteristic iff `x·x ≡ x·w (mod 2)` for all `x`; by linearity
/// mod 2 it suffices that `(G w)ᵢ ≡ gᵢᵢ` for every basis vector.
pub fn is_characteristic_vector(l: &IntegralLattice, w: &[BigInt]) -> Result<bool, LatticeError> {
    if w.len() != l.rank() {
        return Err(LatticeError::LengthMismatch {
            expected: l.rank(),
            found: w.len(),
        });
    }
    let gw = matrix::mat_vec(l.gram(), w);
    Ok(gw
        .iter()
        .enumerate()
        .all(|(i, v)| (v - l.entry(i, i)).is_even()))
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Class(LatticeClass),
    NotDiagonalizable {
        units: LatticeClass,
        remainder: IntegralLattice,
    },
    NotUnimodular,
}

/// Isometry class of any lattice this crate can decide: the zero lattice,
/// indefinite unimodular lattices by signature and type, and definite
/// unimodular ones by unit splitting.
pub fn classify(l: &IntegralLattice) -> Classification {
    if l.rank() == 0 {
        return Classification::Class(LatticeClass::zero());
    }
    if !l.is_unimodular() {
        return Classification::NotUnimodular;
    }
    let sig = l.signature();
    if sig.is_indefinite() {
        let parity = l.parity().expect("rank is positive");
        let class =
            canonical_indefinite(sig, parity).expect("unimodular even lattices have τ ≡ 0 mod 8");
        return Classification::Class(class);
    }
    match diagonalize_odd_definite(l).expect("definite unimodular input") {
        DefiniteOutcome::Diagonal(c) => Classification::Class(c),
        DefiniteOutcome::NotDiagonalizable { units, remainder } => {
            Classification::NotDiagonalizable { units, remainder }
        }
    }
}
