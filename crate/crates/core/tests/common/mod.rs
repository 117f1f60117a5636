//! Oracles that avoid the crate's structure-constant table: everything here
//! is computed from dense `n × n` matrices and read back off the upper
//! triangle.

#![allow(dead_code)]

use gamma_sym::lie::rational::{int, rat};
use gamma_sym::Rational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<Rational>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// `(i, j)` with `i < j` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn skew_from_coords(n: usize, coords: &[Rational]) -> Dense {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (c, (i, j)) in coords.iter().zip(pairs(n)) {
        m[i][j] = c.clone();
        m[j][i] = -c.clone();
    }
    m
}

pub fn coords_from_skew(m: &Dense) -> Vec<Rational> {
    pairs(m.len()).into_iter().map(|(i, j)| m[i][j].clone()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn commutator(a: &Dense, b: &Dense) -> Dense {
    let ab = mul(a, b);
    let ba = mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn trace(a: &Dense) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Bracket of coordinate vectors through matrix commutators.
pub fn bracket(n: usize, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    coords_from_skew(&commutator(&skew_from_coords(n, x), &skew_from_coords(n, y)))
}

/// Matrix of `ad X` on so(n): column `k` holds `[X, E_k]`.
pub fn ad_matrix(n: usize, x: &[Rational]) -> Dense {
    let dim = n * (n - 1) / 2;
    let xm = skew_from_coords(n, x);
    let mut out = vec![vec![Rational::zero(); dim]; dim];
    for k in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[k] = int(1);
        let col = coords_from_skew(&commutator(&xm, &skew_from_coords(n, &e)));
        for (row, v) in col.into_iter().enumerate() {
            out[row][k] = v;
        }
    }
    out
}

/// `tr(ad X ∘ ad Y)` by brute force.
pub fn killing(n: usize, x: &[Rational], y: &[Rational]) -> Rational {
    let ax = ad_matrix(n, x);
    let ay = ad_matrix(n, y);
    let dim = ax.len();
    let mut acc = Rational::zero();
    for i in 0..dim {
        for j in 0..dim {
            if !ax[i][j].is_zero() && !ay[j][i].is_zero() {
                acc += &ax[i][j] * &ay[j][i];
            }
        }
    }
    acc
}

/// Label of `E_ij` for a block partition, as Klein bits: same block → 0,
/// blocks {1,2}/{3,4} → a = 1, {1,3}/{2,4} → b = 2, {1,4}/{2,3} → c = 3.
pub fn block_label(partition: [usize; 4], i: usize, j: usize) -> u32 {
    let block = |v: usize| {
        let mut acc = 0;
        for (b, &r) in partition.iter().enumerate() {
            acc += r;
            if v < acc {
                return b;
            }
        }
        unreachable!("index inside n")
    };
    let (p, q) = (block(i), block(j));
    let (p, q) = (p.min(q), p.max(q));
    match (p, q) {
        _ if p == q => 0,
        (0, 1) | (2, 3) => 1,
        (0, 2) | (1, 3) => 2,
        _ => 3,
    }
}
