//! Geodesics `t ↦ exp(tE)` through the origin, in closed form and by a
//! numeric matrix exponential used as the oracle.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::rational::to_f64;
use crate::lie::SquareMatrix;

/// `exp(tE) = (I + E²) + sin t · E − cos t · E²`, valid when `E³ = −E`.
#[derive(Debug, Clone)]
pub struct GeodesicCurve {
    generator: SquareMatrix,
    constant: SquareMatrix,
    sine: SquareMatrix,
    cosine: SquareMatrix,
}

impl GeodesicCurve {
    pub fn new(generator: &SquareMatrix) -> Result<Self> {
        let square = generator.mul(generator);
        let cube = square.mul(generator);
        if cube != generator.neg() {
            return Err(Error::NotCubicInvolution);
        }
        Ok(Self {
            generator: generator.clone(),
            constant: SquareMatrix::identity(generator.size()).add(&square),
            sine: generator.clone(),
            cosine: square.neg(),
        })
    }

    pub fn generator(&self) -> &SquareMatrix {
        &self.generator
    }

    /// The exact constant matrices paired with `(1, sin t, cos t)`.
    pub fn decomposition(&self) -> [&SquareMatrix; 3] {
        [&self.constant, &self.sine, &self.cosine]
    }

    pub fn at(&self, t: f64) -> DMatrix<f64> {
        let (s, c) = t.sin_cos();
        to_float(&self.constant) + to_float(&self.sine) * s + to_float(&self.cosine) * c
    }
}

pub fn to_float(m: &SquareMatrix) -> DMatrix<f64> {
    let n = m.size();
    DMatrix::from_fn(n, n, |i, j| to_f64(&m[(i, j)]))
}

pub fn geodesic_closed_form(generator: &SquareMatrix, t: f64) -> Result<DMatrix<f64>> {
    Ok(GeodesicCurve::new(generator)?.at(t))
}

const PADE_DEGREE: usize = 8;
/// Scaled norm target for the [8/8] Padé approximant; its truncation error
/// there is far below double precision.
const SCALED_NORM: f64 = 0.5;

fn pade_coefficients() -> [f64; PADE_DEGREE + 1] {
    let q = PADE_DEGREE;
    let mut c = [0.0; PADE_DEGREE + 1];
    c[0] = 1.0;
    for k in 1..=q {
        // c_k = c_{k-1} (q - k + 1) / (k (2q - k + 1))
        c[k] = c[k - 1] * (q - k + 1) as f64 / (k as f64 * (2 * q - k + 1) as f64);
    }
    c
}

/// Upper bound on the spectral norm: `sqrt(‖A‖₁ ‖A‖∞)`.
fn spectral_norm_bound(a: &DMatrix<f64>) -> f64 {
    let one = a
        .column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let inf = a
        .row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    (one * inf).sqrt()
}

/// `exp(tX)` by scaling and squaring around an [8/8] Padé approximant.
pub fn matrix_exp_numeric(x: &SquareMatrix, t: f64) -> DMatrix<f64> {
    exp_float(&(to_float(x) * t))
}

pub fn exp_float(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = spectral_norm_bound(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings);
    let c = pade_coefficients();
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut numer = DMatrix::<f64>::identity(n, n) * c[0];
    let mut denom = numer.clone();
    for (k, ck) in c.iter().enumerate().skip(1) {
        power = &power * &scaled;
        numer += &power * *ck;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        denom += &power * (sign * ck);
    }
    let mut result = denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is invertible for small norms");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).iter().map(|v| v.abs()).fold(0.0, f64::max)
}

#[derive(Debug, Serialize)]
pub struct GeodesicSample {
    pub t: f64,
    pub matrix: Vec<Vec<f64>>,
}

pub fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}
