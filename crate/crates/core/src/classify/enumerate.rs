//! Exact short-vector machinery for definite lattices: rational LDLᵀ,
//! LLL reduction of a Gram matrix, and Fincke–Pohst style enumeration.

use std::ops::ControlFlow;

use num::{BigInt, BigRational, Signed, Zero};
use rayon::prelude::*;

use crate::error::LatticeError;
use crate::lattice::IntegralLattice;
use crate::matrix::{self, IntMatrix};

/// Quadratic-form decomposition `Q(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` of a
/// positive definite Gram matrix.
#[derive(Debug, Clone)]
pub(crate) struct Completion {
    pub d: Vec<BigRational>,
    /// Upper triangle; `mu[i][j]` is meaningful for `j > i`.
    pub mu: Vec<Vec<BigRational>>,
}

/// Completing the square over ℚ. Returns `None` if a pivot is not positive.
pub(crate) fn complete_square(gram: &[Vec<BigInt>]) -> Option<Completion> {
    let n = gram.len();
    let mut q: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    let d = (0..n).map(|i| q[i][i].clone()).collect();
    Some(Completion { d, mu: q })
}

fn round_half_away(x: &BigRational) -> BigInt {
    x.round().to_integer()
}

/// Replace basis vector `k` by `b_k − r·b_j` in a Gram matrix.
fn column_op(g: &mut IntMatrix, t: &mut IntMatrix, k: usize, j: usize, r: &BigInt) {
    let n = g.len();
    for row in g.iter_mut() {
        let v = r * &row[j];
        row[k] -= v;
    }
    for l in 0..n {
        let v = r * &g[j][l];
        g[k][l] -= v;
    }
    for row in t.iter_mut() {
        let v = r * &row[j];
        row[k] -= v;
    }
}

fn swap_basis(g: &mut IntMatrix, t: &mut IntMatrix, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    for row in t.iter_mut() {
        row.swap(a, b);
    }
}

/// LLL-reduce a positive definite Gram matrix (δ = 3/4).
///
/// Returns the reduced Gram matrix `G'` and the unimodular `T` with
/// `G' = Tᵗ·G·T`. Panics if the input is not positive definite.
pub(crate) fn lll_reduce(gram: &[Vec<BigInt>]) -> (IntMatrix, IntMatrix) {
    let n = gram.len();
    let mut g: IntMatrix = gram.to_vec();
    let mut t = matrix::identity(n);
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        let c = complete_square(&g).expect("LLL input must be positive definite");
        // mu_{k,j} = c.mu[j][k]; keep a local copy updated through size reduction
        let mut mu_k: Vec<BigRational> = (0..k).map(|j| c.mu[j][k].clone()).collect();
        for j in (0..k).rev() {
            let r = round_half_away(&mu_k[j]);
            if r.is_zero() {
                continue;
            }
            column_op(&mut g, &mut t, k, j, &r);
            let rr = BigRational::from_integer(r);
            for (l, m) in mu_k.iter_mut().enumerate().take(j) {
                *m -= &rr * &c.mu[l][j];
            }
            mu_k[j] -= &rr;
        }
        let m = &mu_k[k - 1];
        let lovasz = (&delta - m * m) * &c.d[k - 1];
        if c.d[k] >= lovasz {
            k += 1;
        } else {
            swap_basis(&mut g, &mut t, k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (g, t)
}

/// Sign of a definite form: `Some(true)` positive, `Some(false)` negative.
pub(crate) fn definite_sign(l: &IntegralLattice) -> Option<bool> {
    let s = l.signature();
    if s.null != 0 || l.rank() == 0 {
        return None;
    }
    match (s.pos, s.neg) {
        (_, 0) => Some(true),
        (0, _) => Some(false),
        _ => None,
    }
}

/// Depth-first enumeration of all `x` with `Q(x) = target` for a positive
/// definite form. `visit` may stop the walk early.
fn walk_exact_norm<F>(c: &Completion, target: &BigRational, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[BigInt]) -> ControlFlow<()>,
{
    let n = c.d.len();
    let mut x = vec![BigInt::zero(); n];
    if n == 0 {
        return ControlFlow::Continue(());
    }
    descend(c, n - 1, target.clone(), &mut x, visit)
}

fn candidates(d: &BigRational, center: &BigRational, budget: &BigRational) -> Vec<BigInt> {
    if budget.is_negative() {
        return Vec::new();
    }
    // integers x with d·(x − center)² ≤ budget
    let ratio = budget / d;
    let reach: BigInt = ratio.floor().to_integer().sqrt();
    let lo: BigInt = center.floor().to_integer() - &reach - 1;
    let hi: BigInt = center.ceil().to_integer() + &reach + 1;
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        let diff = BigRational::from_integer(v.clone()) - center;
        if d * &diff * &diff <= *budget {
            out.push(v.clone());
        }
        v += 1;
    }
    out
}

fn descend<F>(
    c: &Completion,
    i: usize,
    budget: BigRational,
    x: &mut Vec<BigInt>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[BigInt]) -> ControlFlow<()>,
{
    let n = c.d.len();
    let center: BigRational = -(i + 1..n)
        .map(|j| &c.mu[i][j] * BigRational::from_integer(x[j].clone()))
        .fold(BigRational::zero(), |a, b| a + b);
    for v in candidates(&c.d[i], &center, &budget) {
        let diff = BigRational::from_integer(v.clone()) - &center;
        let rest = &budget - &c.d[i] * &diff * &diff;
        x[i] = v;
        if i == 0 {
            if rest.is_zero() {
                visit(x)?;
            }
        } else {
            descend(c, i - 1, rest, x, visit)?;
        }
    }
    x[i] = BigInt::zero();
    ControlFlow::Continue(())
}

fn first_nonzero_positive(x: &[BigInt]) -> bool {
    x.iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_positive())
}

/// Checks preconditions and returns the positive definite Gram matrix to
/// search in, with the matching positive target norm.
fn positive_problem(l: &IntegralLattice, m: &BigInt) -> Result<(IntMatrix, BigInt), LatticeError> {
    let positive = definite_sign(l).ok_or(LatticeError::NotDefinite)?;
    if m.is_zero() || m.is_positive() != positive {
        return Err(LatticeError::NormSign(m.to_string()));
    }
    Ok(if positive {
        (l.gram().clone(), m.clone())
    } else {
        (l.negated().into_gram(), -m)
    })
}

/// All vectors of norm `m` up to sign in a definite lattice.
///
/// One representative of each pair `{x, −x}` is returned (first nonzero
/// coordinate positive), sorted lexicographically in descending order. The
/// search runs in an LLL-reduced basis and maps results back, so the
/// enumeration box stays small even for badly skewed input bases. The top
/// coordinate is fanned out across threads; the output order does not depend
/// on scheduling.
pub fn enumerate_vectors_of_norm(
    l: &IntegralLattice,
    m: &BigInt,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let (g, target) = positive_problem(l, m)?;
    let n = g.len();
    let (reduced, t) = lll_reduce(&g);
    let c = complete_square(&reduced).expect("reduced form stays positive definite");
    let target = BigRational::from_integer(target);
    let top = candidates(&c.d[n - 1], &BigRational::zero(), &target);
    let mut found: Vec<Vec<BigInt>> = top
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut local = Vec::new();
            let diff = BigRational::from_integer(v.clone());
            let rest = &target - &c.d[n - 1] * &diff * &diff;
            let mut x = vec![BigInt::zero(); n];
            x[n - 1] = v;
            let mut push = |y: &[BigInt]| {
                let orig = matrix::mat_vec(&t, y);
                if first_nonzero_positive(&orig) {
                    local.push(orig);
                }
                ControlFlow::Continue(())
            };
            if n == 1 {
                if rest.is_zero() {
                    let _ = push(&x);
                }
            } else {
                let _ = descend(&c, n - 2, rest, &mut x, &mut push);
            }
            local
        })
        .collect();
    found.sort_by(|a, b| b.cmp(a));
    Ok(found)
}

/// First vector of norm `m` found in a definite lattice, in the coordinates
/// of `l`. Exhaustive: `None` proves there is none.
pub(crate) fn find_vector_of_norm(
    l: &IntegralLattice,
    m: &BigInt,
) -> Result<Option<Vec<BigInt>>, LatticeError> {
    let (g, target) = positive_problem(l, m)?;
    let (reduced, t) = lll_reduce(&g);
    if let Some(i) = (0..reduced.len()).find(|&i| reduced[i][i] == target) {
        return Ok(Some(t.iter().map(|row| row[i].clone()).collect()));
    }
    let c = complete_square(&reduced).expect("reduced form stays positive definite");
    let mut hit = None;
    let _ = walk_exact_norm(&c, &BigRational::from_integer(target), &mut |y| {
        hit = Some(matrix::mat_vec(&t, y));
        ControlFlow::Break(())
    });
    Ok(hit)
}

/// Gram matrix after LLL reduction, used to keep entries small when a
/// definite lattice is split repeatedly.
pub(crate) fn reduced_definite(l: &IntegralLattice) -> Option<(IntegralLattice, IntMatrix)> {
    let positive = definite_sign(l)?;
    let g = if positive {
        l.gram().clone()
    } else {
        l.negated().into_gram()
    };
    let (mut reduced, t) = lll_reduce(&g);
    if !positive {
        for row in reduced.iter_mut() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    let lat = IntegralLattice::new(reduced).expect("congruent matrix is symmetric");
    Some((lat, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::e8;
    use num::One;

    /// Brute force over the box `|xᵢ|² ≤ m·(G⁻¹)ᵢᵢ` is replaced here by a
    /// plain cube that is large enough for the small cases tested.
    fn brute_force(l: &IntegralLattice, m: i64, radius: i64) -> Vec<Vec<BigInt>> {
        let n = l.rank();
        let mut out = Vec::new();
        let mut x = vec![-radius; n];
        loop {
            let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
            if l.norm(&v) == BigInt::from(m) && first_nonzero_positive(&v) {
                out.push(v);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| b.cmp(a));
                    return out;
                }
                x[i] += 1;
                if x[i] > radius {
                    x[i] = -radius;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn diag_units() {
        let l = IntegralLattice::diagonal(&[1, 1]);
        let v = enumerate_vectors_of_norm(&l, &BigInt::one()).unwrap();
        assert_eq!(
            v,
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one()]
            ]
        );
    }

    #[test]
    fn e8_counts() {
        assert!(enumerate_vectors_of_norm(&e8(), &BigInt::one())
            .unwrap()
            .is_empty());
        let roots = enumerate_vectors_of_norm(&e8(), &BigInt::from(2)).unwrap();
        assert_eq!(roots.len(), 120);
        for r in &roots {
            assert_eq!(e8().norm(r), BigInt::from(2));
        }
        let neg = enumerate_vectors_of_norm(&e8().negated(), &BigInt::from(-2)).unwrap();
        assert_eq!(neg, roots);
    }

    #[test]
    fn matches_brute_force() {
        let l = IntegralLattice::from_i64(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]).unwrap();
        for m in 1..=8 {
            let fast = enumerate_vectors_of_norm(&l, &BigInt::from(m)).unwrap();
            assert_eq!(fast, brute_force(&l, m, 4), "norm {m}");
        }
    }

    /// Floating-point Fincke–Pohst in the original basis with exact integer
    /// acceptance; shares no code with the rational implementation.
    fn float_oracle(g: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
        let n = g.len();
        let mut q: Vec<Vec<f64>> = g
            .iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        let norm = |x: &[i64]| -> i64 {
            (0..n)
                .map(|i| (0..n).map(|j| g[i][j] * x[i] * x[j]).sum::<i64>())
                .sum()
        };
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        fn rec(
            i: usize,
            budget: f64,
            q: &[Vec<f64>],
            x: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
            norm: &dyn Fn(&[i64]) -> i64,
            m: i64,
        ) {
            let n = q.len();
            let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
            let r = ((budget.max(0.0) + 1e-6) / q[i][i]).sqrt();
            let lo = (c - r).floor() as i64;
            let hi = (c + r).ceil() as i64;
            for v in lo..=hi {
                x[i] = v;
                let rest = budget - q[i][i] * (v as f64 - c).powi(2);
                if rest < -1e-6 {
                    continue;
                }
                if i == 0 {
                    if norm(x) == m && x.iter().find(|&&t| t != 0).is_some_and(|&t| t > 0) {
                        out.push(x.clone());
                    }
                } else {
                    rec(i - 1, rest, q, x, out, norm, m);
                }
            }
            x[i] = 0;
        }
        rec(n - 1, m as f64, &q, &mut x, &mut out, &norm, m);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn e8_against_float_oracle() {
        let g: Vec<Vec<i64>> = e8()
            .gram()
            .iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        assert!(float_oracle(&g, 1).is_empty());
        let oracle = float_oracle(&g, 2);
        assert_eq!(oracle.len(), 120);
        let fast = enumerate_vectors_of_norm(&e8(), &BigInt::from(2)).unwrap();
        let fast: Vec<Vec<i64>> = fast
            .iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        assert_eq!(fast, oracle);
    }

    #[test]
    fn rejects_wrong_inputs() {
        let u = IntegralLattice::hyperbolic();
        assert_eq!(
            enumerate_vectors_of_norm(&u, &BigInt::one()),
            Err(LatticeError::NotDefinite)
        );
        assert!(matches!(
            enumerate_vectors_of_norm(&e8(), &BigInt::from(-2)),
            Err(LatticeError::NormSign(_))
        ));
        assert!(matches!(
            enumerate_vectors_of_norm(&e8(), &BigInt::zero()),
            Err(LatticeError::NormSign(_))
        ));
    }

    #[test]
    fn lll_is_a_congruence() {
        let l = IntegralLattice::from_i64(&[[5, 7, 3], [7, 11, 4], [3, 4, 2]]).unwrap();
        let (g, t) = lll_reduce(l.gram());
        assert_eq!(l.congruence_transform(&t).unwrap().gram(), &g);
    }
}
