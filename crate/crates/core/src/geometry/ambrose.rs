//! Checks on the homogeneous-structure tensor `T = ∇ − ∇̄`.
//!
//! Sign convention: `T(X,Y) = ½[X,Y]_m` at the origin. Both checks are
//! invariant under `T ↦ −T`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::grading::GradingData;
use crate::lie::linalg::check_len;
use crate::lie::rational::rat;
use crate::lie::{Rational, SymmetricForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmbroseSingerReport {
    /// `c₁₂(T)(X) = tr(Y ↦ T(Y, X)) = 0` for every `m` basis `X`.
    pub c12_zero: bool,
    /// `B_m(T(X,Y),Z)` is alternating in all three slots.
    pub totally_skew: bool,
    /// `T = 0` identically (symmetric case).
    pub vanishes: bool,
}

/// `T(E_x, E_y)` on `m` positions.
fn difference_tensor(
    grading: &GradingData,
    m: &[usize],
    position: &[Option<usize>],
    x: usize,
    y: usize,
) -> Vec<(usize, Rational)> {
    let half = rat(1, 2);
    grading
        .algebra()
        .bracket_basis(m[x], m[y])
        .into_iter()
        .filter_map(|(k, c)| position[k].map(|p| (p, &half * c)))
        .collect()
}

/// The contraction is taken as the trace of `Y ↦ T(Y, X)`, which is the
/// orthonormal-basis sum `Σ_i B_m(T(E_i, X), E_i)` for any metric.
pub fn ambrose_singer_check(grading: &GradingData, b_m: &SymmetricForm) -> Result<AmbroseSingerReport> {
    let m = grading.m_indices();
    check_len(m.len(), b_m.dim())?;
    let mut position = vec![None; grading.algebra().dim()];
    m.iter().enumerate().for_each(|(p, &k)| position[k] = Some(p));
    let size = m.len();
    let tensor: Vec<Vec<Vec<(usize, Rational)>>> = (0..size)
        .into_par_iter()
        .map(|x| {
            (0..size)
                .map(|y| difference_tensor(grading, &m, &position, x, y))
                .collect()
        })
        .collect();

    let vanishes = tensor.iter().flatten().all(Vec::is_empty);
    let c12_zero = (0..size).all(|x| {
        (0..size)
            .map(|i| {
                tensor[i][x]
                    .iter()
                    .find(|(p, _)| *p == i)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rational::zero)
            })
            .sum::<Rational>()
            .is_zero()
    });
    let value =
        |x: usize, y: usize, z: usize| -> Rational { tensor[x][y].iter().map(|(p, c)| c * b_m.get(*p, z)).sum() };
    let totally_skew = (0..size).into_par_iter().all(|x| {
        (0..size).all(|y| {
            (0..size).all(|z| {
                let v = value(x, y, z);
                (&v + value(y, x, z)).is_zero() && (&v + value(x, z, y)).is_zero()
            })
        })
    });
    Ok(AmbroseSingerReport {
        c12_zero,
        totally_skew,
        vanishes,
    })
}
