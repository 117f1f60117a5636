use num_traits::Zero;
use serde::Serialize;

use super::rational::{one, pairs, zero, Pair, Rational};
use crate::error::{Error, Result};

/// Dense `n × n` rational matrix, row-major.
#[derive(Debug, Clone)]
pub struct SquareMatrix {
    size: usize,
    entries: Vec<Rational>,
    skew: bool,
}

// Equality is by value; the skew tag is a cached fact, not identity.
impl PartialEq for SquareMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.entries == other.entries
    }
}

impl Eq for SquareMatrix {}

/// Wire form shared by matrices and forms.
#[derive(Debug, Serialize)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Pair>,
}

impl SquareMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![zero(); size * size],
            skew: false,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::LengthMismatch {
                    expected: size,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            size,
            entries,
            skew: false,
        })
    }

    /// Tags the matrix as an element of `so(n)`, checking skew-symmetry.
    pub fn into_skew(mut self) -> Result<Self> {
        for i in 0..self.size {
            for j in i..self.size {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        self.skew = true;
        Ok(self)
    }

    /// The elementary skew matrix `unit(i,j) - unit(j,i)`.
    pub fn elementary(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(size);
        m.entries[i * size + j] = one();
        m.entries[j * size + i] = -one();
        m.skew = i != j;
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        let n = self.size;
        assert_eq!(n, other.size, "matrix size mismatch");
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        SquareMatrix {
            size: self.size,
            entries,
            skew: self.skew && other.skew,
        }
    }

    pub fn scale(&self, factor: &Rational) -> SquareMatrix {
        SquareMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| a * factor).collect(),
            skew: self.skew,
        }
    }

    pub fn neg(&self) -> SquareMatrix {
        self.scale(&-one())
    }

    /// `XY - YX`.
    pub fn commutator(&self, other: &SquareMatrix) -> SquareMatrix {
        let mut c = self.mul(other).add(&other.mul(self).neg());
        c.skew = self.skew && other.skew;
        c
    }

    pub fn trace(&self) -> Rational {
        (0..self.size).map(|i| self.entries[i * self.size + i].clone()).sum()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            size: self.size,
            entries: pairs(&self.entries),
        }
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.size + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        self.skew = false;
        &mut self.entries[i * self.size + j]
    }
}

/// Symmetric bilinear form on a `dim`-dimensional space, as its Gram matrix
/// over a designated ordered basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    dim: usize,
    entries: Vec<Rational>,
}

impl SymmetricForm {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut f = Self::zeros(dim);
        for i in 0..dim {
            f.entries[i * dim + i] = one();
        }
        f
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut f = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            f.entries[i * values.len() + i] = v.clone();
        }
        f
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = SquareMatrix::from_rows(rows)?;
        let dim = m.size();
        for i in 0..dim {
            for j in i + 1..dim {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self {
            dim,
            entries: m.entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[j * self.dim + i] = value.clone();
        self.entries[i * self.dim + j] = value;
    }

    pub fn evaluate(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * yj * self.get(i, j);
                }
            }
        }
        acc
    }

    pub fn add_scaled(&mut self, other: &SymmetricForm, factor: &Rational) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += b * factor;
            }
        }
    }

    /// Restriction to the listed basis indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> SymmetricForm {
        let dim = indices.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        SymmetricForm { dim, entries }
    }

    /// `Pᵀ F P` for a square change-of-basis matrix `P`.
    pub fn congruent(&self, p: &SquareMatrix) -> SymmetricForm {
        let f = SquareMatrix {
            size: self.dim,
            entries: self.entries.clone(),
            skew: false,
        };
        let mut pt = SquareMatrix::zeros(p.size());
        for i in 0..p.size() {
            for j in 0..p.size() {
                pt[(i, j)] = p[(j, i)].clone();
            }
        }
        let out = pt.mul(&f).mul(p);
        SymmetricForm {
            dim: out.size,
            entries: out.entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim.max(1)).map(<[Rational]>::to_vec).collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            size: self.dim,
            entries: pairs(&self.entries),
        }
    }
}
