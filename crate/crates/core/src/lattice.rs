//! Integral symmetric bilinear forms given by their Gram matrix.

use std::fmt;
use std::sync::OnceLock;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;
use crate::json;
use crate::matrix::{self, IntMatrix};

/// A free ℤ-module with an integer-valued symmetric bilinear form, stored as
/// its Gram matrix in a fixed basis. Rank 0 is allowed.
#[derive(Clone)]
pub struct IntegralLattice {
    gram: IntMatrix,
    det: OnceLock<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Inertia of a symmetric form: numbers of positive, negative and null
/// directions after diagonalizing over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize, null: usize) -> Self {
        Signature { pos, neg, null }
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg + self.null
    }

    /// `pos − neg`.
    pub fn index(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn is_indefinite(&self) -> bool {
        self.null == 0 && self.pos > 0 && self.neg > 0
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;

    fn add(self, rhs: Signature) -> Signature {
        Signature::new(self.pos + rhs.pos, self.neg + rhs.neg, self.null + rhs.null)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.null)
    }
}

/// Which pivot the symmetric elimination picks first. The inertia does not
/// depend on it; both orders are exposed so that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Forward,
    Reverse,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        let n = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::Ragged {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Asymmetric { i, j });
                }
            }
        }
        Ok(IntegralLattice {
            gram,
            det: OnceLock::new(),
        })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::new(matrix::from_i64(rows))
    }

    pub fn zero() -> Self {
        IntegralLattice {
            gram: Vec::new(),
            det: OnceLock::new(),
        }
    }

    /// Diagonal lattice `⟨d₁⟩ ⊕ … ⊕ ⟨dₙ⟩`.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::from(entries[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        IntegralLattice {
            gram,
            det: OnceLock::new(),
        }
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic() -> Self {
        Self::from_i64(&[[0, 1], [1, 0]]).expect("U is symmetric")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntMatrix {
        self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    /// `x·y` under the form.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = matrix::mat_vec(&self.gram, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `x·x` under the form.
    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }

    pub fn negated(&self) -> Self {
        IntegralLattice {
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect(),
            det: OnceLock::new(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        self.det
            .get_or_init(|| matrix::bareiss_determinant(&self.gram))
            .clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Even iff every diagonal entry is even: `x·x ≡ Σ gᵢᵢ xᵢ² (mod 2)`.
    pub fn parity(&self) -> Result<Parity, LatticeError> {
        if self.rank() == 0 {
            return Err(LatticeError::ZeroRank);
        }
        let even = self
            .gram
            .iter()
            .enumerate()
            .all(|(i, r)| (&r[i] % 2u32).is_zero());
        Ok(if even { Parity::Even } else { Parity::Odd })
    }

    pub fn signature(&self) -> Signature {
        self.signature_with(PivotOrder::Forward)
    }

    /// Inertia by symmetric congruence reduction over ℚ.
    ///
    /// A nonzero diagonal pivot contributes its sign. When every remaining
    /// diagonal entry vanishes but some `gᵢⱼ ≠ 0`, the block `[[0,g],[g,0]]`
    /// contributes one positive and one negative direction and is eliminated
    /// through its Schur complement.
    pub fn signature_with(&self, order: PivotOrder) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        if order == PivotOrder::Reverse {
            active.reverse();
        }
        let mut sig = Signature::default();
        while !active.is_empty() {
            if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
                let p = active.remove(pos);
                let d = a[p][p].clone();
                if d.is_positive() {
                    sig.pos += 1;
                } else {
                    sig.neg += 1;
                }
                for &r in &active {
                    if a[r][p].is_zero() {
                        continue;
                    }
                    let f = &a[r][p] / &d;
                    for &s in &active {
                        let v = &f * &a[p][s];
                        a[r][s] -= v;
                    }
                }
                continue;
            }
            let block = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..]
                    .iter()
                    .find(|&&j| !a[i][j].is_zero())
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = block else {
                sig.null += active.len();
                break;
            };
            active.retain(|&k| k != i && k != j);
            sig.pos += 1;
            sig.neg += 1;
            let g = a[i][j].clone();
            let snapshot: Vec<(BigRational, BigRational)> =
                (0..n).map(|r| (a[r][i].clone(), a[r][j].clone())).collect();
            for &r in &active {
                for &s in &active {
                    let (ri, rj) = &snapshot[r];
                    let (si, sj) = &snapshot[s];
                    let v = (rj * si + ri * sj) / &g;
                    a[r][s] -= v;
                }
            }
        }
        sig
    }

    /// `pos − neg` of the signature.
    pub fn index(&self) -> i64 {
        self.signature().index()
    }

    /// Orthogonal direct sum with block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        IntegralLattice {
            gram,
            det: OnceLock::new(),
        }
    }

    /// Base change `Tᵗ·G·T` by a unimodular integer matrix.
    pub fn congruence_transform(&self, t: &[Vec<BigInt>]) -> Result<IntegralLattice, LatticeError> {
        let n = self.rank();
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotABaseChange);
        }
        if !matrix::bareiss_determinant(t).abs().is_one() {
            return Err(LatticeError::NotABaseChange);
        }
        let gram = matrix::mul(&matrix::transpose(t), &matrix::mul(&self.gram, t));
        Ok(IntegralLattice {
            gram,
            det: self.det.clone(),
        })
    }

    /// Gram matrix of the sublattice spanned by the given vectors (as
    /// coordinates in the current basis).
    pub fn restrict(&self, basis: &[Vec<BigInt>]) -> IntegralLattice {
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.inner(x, y)).collect())
            .collect();
        IntegralLattice {
            gram,
            det: OnceLock::new(),
        }
    }
}

impl PartialEq for IntegralLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for IntegralLattice {}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegralLattice({self})")
    }
}

/// Row-major rendering, e.g. `[[0,1],[1,0]]`. The output is valid JSON.
impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.gram.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    gram: Vec<Vec<serde_json::Number>>,
}

impl Serialize for IntegralLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GramJson {
            gram: json::matrix_to_numbers(&self.gram),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegralLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GramJson::deserialize(d)?;
        let gram = json::matrix_from_numbers(&raw.gram).map_err(D::Error::custom)?;
        IntegralLattice::new(gram).map_err(D::Error::custom)
    }
}

impl std::str::FromStr for IntegralLattice {
    type Err = LatticeError;

    /// Parses either `{"gram": [[…]]}` or a bare `[[…]]` array.
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| LatticeError::NotAnInteger(e.to_string()));
        }
        let rows: Vec<Vec<serde_json::Number>> =
            serde_json::from_str(s).map_err(|e| LatticeError::NotAnInteger(e.to_string()))?;
        IntegralLattice::new(json::matrix_from_numbers(&rows)?)
    }
}
