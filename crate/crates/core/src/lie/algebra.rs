//! The orthogonal Lie algebra `so(n)` over the elementary skew basis.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;

use super::linalg::check_len;
use super::matrix::{SquareMatrix, SymmetricForm};
use super::rational::{zero, Rational};
use crate::error::{Error, Result};

/// Sparse coefficient vector: `(basis index, coefficient)` sorted by index.
pub type Terms = Vec<(usize, Rational)>;

#[derive(Debug)]
pub struct LieAlgebraData {
    n: usize,
    /// `(i, j)` with `i < j`, 0-based, lexicographic.
    basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `[basis_i, basis_j]` for `i < j`; missing keys are zero brackets.
    structure: HashMap<(usize, usize), Terms>,
    killing: OnceLock<SymmetricForm>,
}

/// `so(n)` with basis `E_ij = unit(i,j) - unit(j,i)`, `i < j`, in
/// lexicographic order; structure constants from matrix commutators.
pub fn build_so(n: usize) -> Result<LieAlgebraData> {
    if n < 3 {
        return Err(Error::AlgebraTooSmall(n));
    }
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index: HashMap<_, _> = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let elementary: Vec<SquareMatrix> = basis.iter().map(|&(i, j)| SquareMatrix::elementary(n, i, j)).collect();
    let dim = basis.len();
    let structure: HashMap<(usize, usize), Terms> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|a| {
            let elementary = &elementary;
            let basis = &basis;
            (a + 1..dim).filter_map(move |b| {
                let c = elementary[a].commutator(&elementary[b]);
                let terms: Terms = basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &(i, j))| !c[(i, j)].is_zero())
                    .map(|(k, &(i, j))| (k, c[(i, j)].clone()))
                    .collect();
                (!terms.is_empty()).then_some(((a, b), terms))
            })
        })
        .collect();
    Ok(LieAlgebraData {
        n,
        basis,
        index,
        structure,
        killing: OnceLock::new(),
    })
}

impl LieAlgebraData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix indices `(i, j)`, 0-based, of basis element `k`.
    pub fn basis_pair(&self, k: usize) -> (usize, usize) {
        self.basis[k]
    }

    pub fn basis_pairs(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    pub fn basis_matrix(&self, k: usize) -> SquareMatrix {
        let (i, j) = self.basis[k];
        SquareMatrix::elementary(self.n, i, j)
    }

    /// Borrowed terms of `[basis_a, basis_b]` for `a < b`; empty otherwise.
    pub fn structure_terms(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        self.structure.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `[basis_a, basis_b]` as sparse terms.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Terms {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => Vec::new(),
            Less => self.structure.get(&(a, b)).cloned().unwrap_or_default(),
            Greater => self
                .structure
                .get(&(b, a))
                .map(|t| t.iter().map(|(k, v)| (*k, -v.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Bilinear bracket of dense coefficient vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.dim(), x.len())?;
        check_len(self.dim(), y.len())?;
        let mut out = vec![zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in self.bracket_basis(a, b) {
                    out[k] += xa * yb * c;
                }
            }
        }
        Ok(out)
    }

    pub fn unit(&self, k: usize) -> Vec<Rational> {
        let mut v = vec![zero(); self.dim()];
        v[k] = super::rational::one();
        v
    }

    /// Coefficient vector to skew matrix.
    pub fn to_matrix(&self, x: &[Rational]) -> Result<SquareMatrix> {
        check_len(self.dim(), x.len())?;
        let mut m = SquareMatrix::zeros(self.n);
        for (k, v) in x.iter().enumerate() {
            let (i, j) = self.basis[k];
            m[(i, j)] = v.clone();
            m[(j, i)] = -v.clone();
        }
        m.into_skew()
    }

    /// Skew matrix to coefficient vector (entries above the diagonal).
    pub fn from_matrix(&self, m: &SquareMatrix) -> Result<Vec<Rational>> {
        let m = m.clone().into_skew()?;
        check_len(self.n, m.size())?;
        Ok(self.basis.iter().map(|&(i, j)| m[(i, j)].clone()).collect())
    }

    /// Sparse matrix of `ad basis_a`: column `l` holds `[basis_a, basis_l]`.
    fn ad_columns(&self, a: usize) -> Vec<Terms> {
        (0..self.dim()).map(|l| self.bracket_basis(a, l)).collect()
    }

    /// Killing form `tr(ad X ∘ ad Y)` in the basis, cached after first use.
    pub fn killing_form(&self) -> &SymmetricForm {
        self.killing.get_or_init(|| {
            let dim = self.dim();
            let ads: Vec<Vec<Terms>> = (0..dim).into_par_iter().map(|a| self.ad_columns(a)).collect();
            let rows: Vec<Vec<Rational>> = (0..dim)
                .into_par_iter()
                .map(|a| {
                    (0..dim)
                        .map(|b| {
                            // tr(ad_a ad_b) = Σ_l Σ_k (ad_a)_{lk} (ad_b)_{kl}
                            let mut acc = zero();
                            for l in 0..dim {
                                for (k, c) in &ads[b][l] {
                                    if let Some((_, d)) = ads[a][*k].iter().find(|(r, _)| *r == l) {
                                        acc += c * d;
                                    }
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            SymmetricForm::from_rows(rows).expect("Killing form is symmetric")
        })
    }
}
