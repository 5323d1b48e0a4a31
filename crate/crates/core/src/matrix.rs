//! Dense integer matrix helpers. Matrices are row-major `Vec<Vec<BigInt>>`.

use num::{BigInt, Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
    rows.iter()
        .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<BigInt>]) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

/// Product of an `r×k` and a `k×c` matrix. Panics on a shape mismatch.
pub fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shape mismatch");
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(g, v)| g * v).sum())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix. The empty matrix
/// has determinant 1.
pub fn bareiss_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Basis of the integer kernel `{x ∈ ℤⁿ : a·x = 0}` of a single row.
///
/// Column operations reduce `a` to one nonzero entry (the gcd up to sign)
/// while the same operations are applied to an identity matrix; the columns
/// not carrying the gcd then span the kernel over ℤ. The result has `n − 1`
/// vectors when `a ≠ 0` and `n` otherwise.
pub fn row_kernel(a: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut row = a.to_vec();
    let mut cols = identity(n); // cols[j] is column j of the transform
    let pivot = loop {
        let smallest = (0..n)
            .filter(|&j| !row[j].is_zero())
            .min_by(|&x, &y| row[x].abs().cmp(&row[y].abs()));
        let Some(p) = smallest else {
            return cols;
        };
        let mut done = true;
        for j in 0..n {
            if j == p || row[j].is_zero() {
                continue;
            }
            let q = row[j].div_floor(&row[p]);
            let step = &q * &row[p];
            row[j] -= step;
            let (src, dst) = if p < j {
                let (lo, hi) = cols.split_at_mut(j);
                (&lo[p], &mut hi[0])
            } else {
                let (lo, hi) = cols.split_at_mut(p);
                (&hi[0], &mut lo[j])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                *d -= &q * s;
            }
            if !row[j].is_zero() {
                done = false;
            }
        }
        if done {
            break p;
        }
    };
    cols.into_iter()
        .enumerate()
        .filter(|&(j, _)| j != pivot)
        .map(|(_, c)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0, 1], vec![0, 2, 3], vec![1, 3, 5]],
            vec![
                vec![2, -1, 0, 4],
                vec![-1, 2, -1, 0],
                vec![0, -1, 2, 7],
                vec![4, 0, 7, -3],
            ],
            vec![vec![1, 2], vec![2, 4]],
        ];
        for c in cases {
            assert_eq!(
                bareiss_determinant(&from_i64(&c)),
                BigInt::from(det_cofactor(&c))
            );
        }
        assert_eq!(bareiss_determinant(&[]), BigInt::one());
    }

    #[test]
    fn kernel_of_row() {
        let a: Vec<BigInt> = [6, 10, 15].iter().map(|&v| BigInt::from(v)).collect();
        let k = row_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&a).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        // the kernel basis extends to a unimodular matrix: its 2x2 minors have gcd 1
        let minors =
            [(0, 1), (0, 2), (1, 2)].map(|(i, j)| &k[0][i] * &k[1][j] - &k[0][j] * &k[1][i]);
        let g = minors.iter().fold(BigInt::zero(), |acc, m| acc.gcd(m));
        assert!(g.is_one());
    }

    #[test]
    fn kernel_of_zero_row_is_everything() {
        let a = vec![BigInt::zero(); 3];
        assert_eq!(row_kernel(&a), identity(3));
    }
}
