#![allow(dead_code)]

use intform::matrix::{self, IntMatrix};
use intform::IntegralLattice;
use num::BigInt;
use rand::Rng;

/// A random matrix in GL(n, ℤ) built from elementary column operations,
/// swaps and sign flips applied to the identity.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut t = matrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            t[0][0] = BigInt::from(-1);
        }
        return t;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => {
                for row in t.iter_mut() {
                    row.swap(i, j);
                }
            }
            1 => {
                for row in t.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
            _ => {
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                for row in t.iter_mut() {
                    let add = &row[j] * &c;
                    row[i] += add;
                }
            }
        }
    }
    t
}

/// `diag(±1, …)` with `pos` ones followed by `neg` minus ones.
pub fn signed_diagonal(pos: usize, neg: usize) -> IntegralLattice {
    let entries: Vec<i64> = std::iter::repeat_n(1, pos)
        .chain(std::iter::repeat_n(-1, neg))
        .collect();
    IntegralLattice::diagonal(&entries)
}
