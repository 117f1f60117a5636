//! Sectional-curvature numerators at the origin.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::connection::Connection;
use crate::error::{Error, Result};
use crate::grading::GradingData;
use crate::lie::rational::{rat, to_text, Pair};
use crate::lie::{Rational, SymmetricForm, Terms};

#[derive(Debug, Clone)]
pub struct CurvatureTable {
    /// Algebra basis indices of the `m` basis, in table order.
    pub m_basis: Vec<usize>,
    /// Keyed by `(i, j)`, `i < j`, 0-based positions in `m_basis`.
    pub entries: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Serialize)]
struct EntryJson {
    i: usize,
    j: usize,
    value: Pair,
}

impl CurvatureTable {
    /// Entry for an unordered pair; symmetric in its arguments.
    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        self.entries.get(&(i.min(j), i.max(j)))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    /// `i,j,numerator,denominator` rows, 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,numerator,denominator\n");
        for ((i, j), v) in &self.entries {
            writeln!(out, "{},{},{},{}", i + 1, j + 1, v.numer(), v.denom()).unwrap();
        }
        out
    }

    /// One `R_{ijji} = value` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((i, j), v) in &self.entries {
            let (i, j) = (i + 1, j + 1);
            writeln!(out, "R_{{{i}{j}{j}{i}}} = {:>5}", to_text(v)).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|((i, j), v)| EntryJson {
                i: i + 1,
                j: j + 1,
                value: Pair(v.clone()),
            })
            .collect();
        serde_json::json!({ "dim_m": self.m_basis.len(), "entries": entries })
    }
}

fn split(grading: &GradingData, terms: Terms) -> (Terms, Terms) {
    terms.into_iter().partition(|(k, _)| grading.in_m(*k))
}

fn norm(form: &SymmetricForm, terms: &[(usize, Rational)], position: &[Option<usize>]) -> Rational {
    let mut acc = Rational::zero();
    for (a, x) in terms {
        for (b, y) in terms {
            if let (Some(p), Some(q)) = (position[*a], position[*b]) {
                acc += x * y * form.get(p, q);
            }
        }
    }
    acc
}

/// `¼ B_m([E_i,E_j]_m, [E_i,E_j]_m) + B_e([E_i,E_j]_{g_e}, [E_i,E_j]_{g_e})`
/// over the `m` basis, which must be orthonormal for `b_m`. `b_e` is a form
/// on `g_e` in basis-index order.
pub fn sectional_table(grading: &GradingData, b_m: &SymmetricForm, b_e: &SymmetricForm) -> Result<CurvatureTable> {
    let m = grading.m_indices();
    let fixed = grading.fixed_indices();
    crate::lie::linalg::check_len(m.len(), b_m.dim())?;
    crate::lie::linalg::check_len(fixed.len(), b_e.dim())?;
    for i in 0..m.len() {
        for j in i..m.len() {
            let expected = i == j;
            let v = b_m.get(i, j);
            if (expected && !v.is_one()) || (!expected && !v.is_zero()) {
                return Err(Error::NotOrthonormal(i, j));
            }
        }
    }
    let dim = grading.algebra().dim();
    let mut m_pos = vec![None; dim];
    let mut e_pos = vec![None; dim];
    m.iter().enumerate().for_each(|(p, &k)| m_pos[k] = Some(p));
    fixed.iter().enumerate().for_each(|(p, &k)| e_pos[k] = Some(p));

    let quarter = rat(1, 4);
    let entries = (0..m.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (m, quarter, m_pos, e_pos) = (&m, &quarter, &m_pos, &e_pos);
            (i + 1..m.len()).map(move |j| {
                let (in_m, in_e) = split(grading, grading.algebra().bracket_basis(m[i], m[j]));
                let value = quarter * norm(b_m, &in_m, m_pos) + norm(b_e, &in_e, e_pos);
                ((i, j), value)
            })
        })
        .collect();
    Ok(CurvatureTable { m_basis: m, entries })
}

/// `B_m(R(E_i,E_j)E_j, E_i)` for a chosen connection.
pub fn connection_sectional_table(
    grading: &GradingData,
    b_m: &SymmetricForm,
    connection: &dyn Connection,
) -> Result<CurvatureTable> {
    let m = grading.m_indices();
    crate::lie::linalg::check_len(m.len(), b_m.dim())?;
    let algebra = grading.algebra();
    let to_m = |v: &[Rational]| -> Vec<Rational> { m.iter().map(|&k| v[k].clone()).collect() };
    let mut entries = BTreeMap::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let (x, y) = (algebra.unit(m[i]), algebra.unit(m[j]));
            let r = connection.curvature(grading, &x, &y, &y)?;
            entries.insert((i, j), b_m.evaluate(&to_m(&r), &to_m(&x)));
        }
    }
    Ok(CurvatureTable { m_basis: m, entries })
}
