//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is scaled to a primitive integer
//! vector and combined with integer multipliers only, dividing by the row
//! content after every step. Rows are sparse, which keeps the invariance
//! systems (at most two nonzeros per constraint) cheap even for so(13).
//!
//! The reduced row echelon form of a row space is unique, so the nullspace
//! basis read off its free columns is reproducible regardless of row order.
//! Pivots are taken leftmost-column first.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{SquareMatrix, SymmetricForm};
use super::rational::{one, zero, Rational};
use crate::error::{Error, Result};

type IntRow = Vec<(usize, BigInt)>;

fn primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    // normalize sign so the leading entry is positive
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn to_int_row(row: &[(usize, Rational)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    if !out.is_empty() {
        primitive(&mut out);
    }
    out
}

/// `a·x - b·y` on sparse integer rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if !out.is_empty() {
        primitive(&mut out);
    }
    out
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Incremental fraction-free row reducer over sparse rows.
#[derive(Debug, Clone)]
pub struct RowReducer {
    ncols: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a sparse row `(column, value)`; returns whether the rank grew.
    pub fn push_sparse(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut row = to_int_row(row);
        while let Some((lead, lead_value)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let p = &pivot[0].1;
                    let g = p.gcd(&lead_value);
                    row = combine(&(p / &g), &row, &(&lead_value / &g), pivot);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn push_dense(&mut self, row: &[Rational]) -> bool {
        let sparse: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.push_sparse(&sparse)
    }

    /// Reduced row echelon form as rational rows keyed by pivot column,
    /// each normalized to a unit pivot.
    pub fn rref(&self) -> BTreeMap<usize, Vec<(usize, Rational)>> {
        let mut reduced: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            for (&q, qrow) in &reduced {
                if let Some(v) = entry(&row, q).cloned() {
                    let d = &qrow[0].1;
                    let g = d.gcd(&v);
                    row = combine(&(d / &g), &row, &(&v / &g), qrow);
                }
            }
            reduced.insert(lead, row);
        }
        reduced
            .into_iter()
            .map(|(lead, row)| {
                let d = row[0].1.clone();
                let row = row.into_iter().map(|(c, v)| (c, Rational::new(v, d.clone()))).collect();
                (lead, row)
            })
            .collect()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !rref.contains_key(c)) {
            let mut v = vec![zero(); self.ncols];
            v[free] = one();
            for (&lead, row) in &rref {
                if let Some(k) = row.iter().position(|(c, _)| *c == free) {
                    v[lead] = -row[k].1.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Dense RREF rows, a canonical basis of the row space.
    pub fn row_basis(&self) -> Vec<Vec<Rational>> {
        self.rref()
            .into_values()
            .map(|row| {
                let mut dense = vec![zero(); self.ncols];
                for (c, v) in row {
                    dense[c] = v;
                }
                dense
            })
            .collect()
    }
}

/// Exact nullspace of a dense rectangular matrix given by rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut reducer = RowReducer::new(ncols);
    for row in rows {
        reducer.push_dense(row);
    }
    reducer.nullspace()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut reducer = RowReducer::new(ncols);
    for row in rows {
        reducer.push_dense(row);
    }
    reducer.rank()
}

/// `(positives, negatives, zeros)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct Inertia {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl Inertia {
    pub fn new(positives: usize, negatives: usize, zeros: usize) -> Self {
        Self {
            positives,
            negatives,
            zeros,
        }
    }

    pub fn total(&self) -> usize {
        self.positives + self.negatives + self.zeros
    }

    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.positives, self.negatives, self.zeros)
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;
    fn add(self, o: Inertia) -> Inertia {
        Inertia::new(
            self.positives + o.positives,
            self.negatives + o.negatives,
            self.zeros + o.zeros,
        )
    }
}

/// Sylvester inertia by symmetric elimination.
///
/// A nonzero diagonal pivot is used when one exists; otherwise a nonzero
/// off-diagonal entry `a` at `(i,j)` is split off as the hyperbolic block
/// `[[0,a],[a,0]]`, contributing one positive and one negative direction.
pub fn congruence_signature(form: &SymmetricForm) -> Inertia {
    let mut m = form.rows();
    let mut inertia = Inertia::default();
    while !m.is_empty() {
        let size = m.len();
        if let Some(p) = (0..size).find(|&i| !m[i][i].is_zero()) {
            let pivot = m[p][p].clone();
            if pivot.is_positive() {
                inertia.positives += 1;
            } else {
                inertia.negatives += 1;
            }
            let rest: Vec<usize> = (0..size).filter(|&i| i != p).collect();
            let next = rest
                .iter()
                .map(|&i| {
                    let f = &m[i][p] / &pivot;
                    rest.iter()
                        .map(|&j| {
                            if f.is_zero() || m[p][j].is_zero() {
                                m[i][j].clone()
                            } else {
                                &m[i][j] - &f * &m[p][j]
                            }
                        })
                        .collect()
                })
                .collect();
            m = next;
            continue;
        }
        let off = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_zero());
        let Some((p, q)) = off else {
            inertia.zeros += size;
            break;
        };
        inertia.positives += 1;
        inertia.negatives += 1;
        // Schur complement of the block [[0,a],[a,0]]: S = C - (u·wᵀ + w·uᵀ)/a
        let a = m[p][q].clone();
        let rest: Vec<usize> = (0..size).filter(|&i| i != p && i != q).collect();
        let next = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        let cross = &m[i][p] * &m[q][j] + &m[i][q] * &m[p][j];
                        if cross.is_zero() {
                            m[i][j].clone()
                        } else {
                            &m[i][j] - cross / &a
                        }
                    })
                    .collect()
            })
            .collect();
        m = next;
    }
    inertia
}

/// Inverse by Gauss–Jordan elimination; `None` when singular.
pub fn inverse(matrix: &SquareMatrix) -> Option<SquareMatrix> {
    let n = matrix.size();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| matrix[(i, j)].clone()).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one() } else { zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (da, di) = (&f * &a[col][j], &f * &inv[col][j]);
                a[r][j] -= da;
                inv[r][j] -= di;
            }
        }
    }
    SquareMatrix::from_rows(inv).ok()
}

/// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier, coefficients
/// from the constant term up; the leading coefficient is 1.
pub fn characteristic_polynomial(matrix: &SquareMatrix) -> Vec<Rational> {
    let n = matrix.size();
    let mut coeffs = vec![zero(); n + 1];
    coeffs[n] = one();
    let mut aux = SquareMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A·M_k)/k
        let mut mk = matrix.mul(&aux);
        for i in 0..n {
            mk[(i, i)] += &coeffs[n - k + 1];
        }
        let c = -matrix.mul(&mk).trace() / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c;
        aux = mk;
    }
    coeffs
}

pub fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}
