use num::{BigInt, One, Signed, Zero};

use super::enumerate::{definite_sign, find_vector_of_norm, reduced_definite};
use super::LatticeClass;
use crate::error::LatticeError;
use crate::lattice::IntegralLattice;
use crate::matrix;

/// A vector `e` with `e·e = ±1` and the orthogonal complement `e⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSplit {
    /// `e·e`, either `+1` or `−1`.
    pub sign: i8,
    /// `e` in the coordinates of the input lattice.
    pub vector: Vec<BigInt>,
    /// Gram matrix of `e⊥` in some integral basis.
    pub complement: IntegralLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(UnitSplit),
    /// No unit vector was found. `exhaustive` is true for definite input,
    /// where the search is complete and this proves there is none.
    NoUnit {
        exhaustive: bool,
    },
}

/// Largest number of candidate vectors the indefinite search looks at.
pub const INDEFINITE_SEARCH_BUDGET: usize = 200_000;

/// Gram matrix of `e⊥ = {x : x·e = 0}` for a vector with `e·e = ±1`. The
/// basis comes from the integer kernel of the linear form `x ↦ (G e)·x`.
pub fn orthogonal_complement(l: &IntegralLattice, e: &[BigInt]) -> IntegralLattice {
    let form = matrix::mat_vec(l.gram(), e);
    let basis = matrix::row_kernel(&form);
    l.restrict(&basis)
}

fn basis_unit(l: &IntegralLattice) -> Option<usize> {
    (0..l.rank()).find(|&i| l.entry(i, i).abs().is_one())
}

fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    (0..n)
        .map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

fn split_at(l: &IntegralLattice, e: Vec<BigInt>) -> UnitSplit {
    let norm = l.norm(&e);
    UnitSplit {
        sign: if norm.is_positive() { 1 } else { -1 },
        complement: orthogonal_complement(l, &e),
        vector: e,
    }
}

/// Coordinate bound for the indefinite unit search: `max(10, 2·max|gᵢⱼ|)`.
pub fn indefinite_search_bound(l: &IntegralLattice) -> i64 {
    let biggest = l
        .gram()
        .iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or_default();
    let twice: i64 = (biggest * 2u32).try_into().unwrap_or(i64::MAX);
    twice.max(10)
}

/// Sup-norm shells `r = 1, 2, …, bound`, stopping once `budget` vectors
/// have been tried. Only vectors whose first nonzero coordinate is positive
/// are tested.
fn search_indefinite(l: &IntegralLattice, bound: i64, budget: usize) -> Option<Vec<BigInt>> {
    let n = l.rank();
    let mut tried = 0usize;
    for r in 1..=bound {
        let mut x = vec![-r; n];
        loop {
            let on_shell = x.iter().any(|v| v.abs() == r);
            let leading_positive = x.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0);
            if on_shell && leading_positive {
                tried += 1;
                let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
                if l.norm(&v).abs().is_one() {
                    return Some(v);
                }
                if tried >= budget {
                    return None;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                x[i] += 1;
                if x[i] > r {
                    x[i] = -r;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == n {
                break;
            }
        }
    }
    None
}

/// Splits an orthogonal summand `⟨±1⟩` off a unimodular lattice.
///
/// Definite lattices are searched exhaustively by vector enumeration.
/// Indefinite ones are searched inside the coordinate box of
/// [`indefinite_search_bound`] (capped at [`INDEFINITE_SEARCH_BUDGET`]
/// vectors), so `NoUnit` there only means "not found within bound".
pub fn split_off_unit(l: &IntegralLattice) -> Result<SplitOutcome, LatticeError> {
    if l.rank() == 0 {
        return Err(LatticeError::ZeroRank);
    }
    if !l.is_unimodular() {
        return Err(LatticeError::NotUnimodular);
    }
    if let Some(i) = basis_unit(l) {
        return Ok(SplitOutcome::Split(split_at(l, unit_vector(l.rank(), i))));
    }
    match definite_sign(l) {
        Some(positive) => {
            let (reduced, t) = reduced_definite(l).expect("definite lattice reduces");
            let target = if positive {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            match find_vector_of_norm(&reduced, &target)? {
                Some(e) => {
                    let inner = split_at(&reduced, e);
                    Ok(SplitOutcome::Split(UnitSplit {
                        vector: matrix::mat_vec(&t, &inner.vector),
                        ..inner
                    }))
                }
                None => Ok(SplitOutcome::NoUnit { exhaustive: true }),
            }
        }
        None => {
            let bound = indefinite_search_bound(l);
            Ok(
                match search_indefinite(l, bound, INDEFINITE_SEARCH_BUDGET) {
                    Some(e) => SplitOutcome::Split(split_at(l, e)),
                    None => SplitOutcome::NoUnit { exhaustive: false },
                },
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefiniteOutcome {
    /// `n·⟨1⟩` or `n·⟨−1⟩`.
    Diagonal(LatticeClass),
    /// Unit splitting stopped before the lattice was used up. `units` holds
    /// the summands split off so far and `remainder` the part without units.
    NotDiagonalizable {
        units: LatticeClass,
        remainder: IntegralLattice,
    },
}

/// ℤ-diagonalization of a definite unimodular lattice by repeated unit
/// splitting.
pub fn diagonalize_odd_definite(l: &IntegralLattice) -> Result<DefiniteOutcome, LatticeError> {
    if l.rank() == 0 {
        return Err(LatticeError::ZeroRank);
    }
    if !l.is_unimodular() {
        return Err(LatticeError::NotUnimodular);
    }
    if definite_sign(l).is_none() {
        return Err(LatticeError::Indefinite);
    }
    let mut units = LatticeClass::zero();
    let mut rest = reduced_definite(l).expect("definite lattice reduces").0;
    while rest.rank() > 0 {
        match split_off_unit(&rest)? {
            SplitOutcome::Split(s) => {
                if s.sign > 0 {
                    units.plus_one += 1;
                } else {
                    units.minus_one += 1;
                }
                rest = s.complement;
            }
            SplitOutcome::NoUnit { .. } => {
                return Ok(DefiniteOutcome::NotDiagonalizable {
                    units,
                    remainder: rest,
                });
            }
        }
    }
    Ok(DefiniteOutcome::Diagonal(units))
}
