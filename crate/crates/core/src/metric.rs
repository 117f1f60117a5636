//! Invariant symmetric forms on `m`.
//!
//! The unknowns of [`invariant_family`] are the entries of a block-diagonal
//! symmetric form, one block per non-identity component, so components are
//! orthogonal by construction. Within each block the `ad(g_e)`-invariance
//! identity `B([Z,X],Y) + B(X,[Z,Y]) = 0` is imposed for every `g_e` basis
//! vector `Z`, and the exact nullspace becomes the family basis.
//!
//! Unknowns are ordered diagonal entries first, so a free diagonal column
//! yields a diagonal-supported basis form (named `t_*`) and the remaining
//! directions touch off-diagonal entries (named `u_*`).

use std::collections::BTreeSet;
use std::ops::Range;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::GradingData;
use crate::group::GroupElement;
use crate::lie::linalg::{characteristic_polynomial, check_len, inverse};
use crate::lie::rational::{int, zero};
use crate::lie::{congruence_signature, Inertia, Rational, RowReducer, SquareMatrix, SymmetricForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Diagonal,
    OffDiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameter {
    pub name: String,
    pub support: String,
    #[serde(skip)]
    pub kind: ParamKind,
}

#[derive(Debug, Clone)]
pub struct FormFamily {
    grading: GradingData,
    carrier: Vec<usize>,
    /// Carrier position of each algebra basis index (`None` on `g_e`).
    position: Vec<Option<usize>>,
    basis_forms: Vec<SymmetricForm>,
    parameters: Vec<Parameter>,
    block_structure: Vec<(GroupElement, Range<usize>)>,
    /// For refined families: coordinates of each basis form in the parent.
    parent_coordinates: Option<Vec<Vec<Rational>>>,
}

impl FormFamily {
    pub fn grading(&self) -> &GradingData {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.basis_forms.len()
    }

    /// Algebra basis indices of `m`, in form order.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn basis_forms(&self) -> &[SymmetricForm] {
        &self.basis_forms
    }

    pub fn parameters(&self) -> &[Parameter] {
        &self.parameters
    }

    pub fn block_structure(&self) -> &[(GroupElement, Range<usize>)] {
        &self.block_structure
    }

    pub fn parent_coordinates(&self) -> Option<&[Vec<Rational>]> {
        self.parent_coordinates.as_deref()
    }

    pub fn position_of(&self, basis_index: usize) -> Option<usize> {
        self.position[basis_index]
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| p.name == name)
    }

    /// Inertia of the member at `values`, summed over component blocks.
    pub fn inertia_at(&self, values: &[Rational]) -> Result<Inertia> {
        let form = evaluate_family(self, values)?;
        Ok(block_inertia(&form, &self.block_structure))
    }
}

fn block_inertia(form: &SymmetricForm, blocks: &[(GroupElement, Range<usize>)]) -> Inertia {
    blocks
        .iter()
        .map(|(_, range)| {
            let idx: Vec<usize> = range.clone().collect();
            congruence_signature(&form.restrict(&idx))
        })
        .fold(Inertia::default(), |a, b| a + b)
}

type BlockStructure = Vec<(GroupElement, Range<usize>)>;

fn carrier_of(grading: &GradingData) -> (Vec<usize>, Vec<Option<usize>>, BlockStructure) {
    let mut carrier = Vec::new();
    let mut blocks = Vec::new();
    for c in grading.components().into_iter().filter(|c| !c.label.is_identity()) {
        let start = carrier.len();
        carrier.extend(&c.indices);
        blocks.push((c.label, start..carrier.len()));
    }
    let mut position = vec![None; grading.algebra().dim()];
    for (p, &k) in carrier.iter().enumerate() {
        position[k] = Some(p);
    }
    (carrier, position, blocks)
}

/// Names and support strings for a list of forms on the carrier.
fn describe(grading: &GradingData, carrier: &[usize], forms: &[SymmetricForm]) -> Vec<Parameter> {
    let all_sub_blocks: BTreeSet<String> = carrier.iter().map(|&k| region(grading, k)).collect();
    let mut out: Vec<Parameter> = Vec::with_capacity(forms.len());
    for form in forms {
        let mut regions = BTreeSet::new();
        let mut labels = BTreeSet::new();
        let mut diagonal = true;
        for i in 0..form.dim() {
            for j in i..form.dim() {
                if form.get(i, j).is_zero() {
                    continue;
                }
                diagonal &= i == j;
                for k in [carrier[i], carrier[j]] {
                    regions.insert(region(grading, k));
                    labels.insert(grading.label(k));
                }
            }
        }
        let regions: Vec<String> = regions.into_iter().collect();
        let labels: Vec<String> = labels.into_iter().map(|g| g.to_string()).collect();
        let (kind, prefix, shape) = if diagonal {
            (ParamKind::Diagonal, "t", "diag")
        } else {
            (ParamKind::OffDiagonal, "u", "offdiag")
        };
        let base = if regions.len() == all_sub_blocks.len() && regions.len() > 1 {
            prefix.to_string()
        } else {
            format!("{prefix}_{}", regions.join("+"))
        };
        let mut name = base.clone();
        let mut copy = 1;
        while out.iter().any(|p| p.name == name) {
            copy += 1;
            name = format!("{base}.{copy}");
        }
        out.push(Parameter {
            name,
            support: format!("{}:{shape}:{}", labels.join("+"), regions.join("+")),
            kind,
        });
    }
    out
}

fn region(grading: &GradingData, k: usize) -> String {
    grading
        .sub_block(k)
        .map(str::to_string)
        .unwrap_or_else(|| grading.label(k).to_string())
}

/// All `ad(g_e)`-invariant, component-orthogonal symmetric forms on `m`.
pub fn invariant_family(grading: &GradingData) -> FormFamily {
    let (carrier, position, block_structure) = carrier_of(grading);
    let algebra = grading.algebra();
    let fixed = grading.fixed_indices();
    let mut basis_forms = Vec::new();

    for (_, range) in &block_structure {
        let members = &carrier[range.clone()];
        let size = members.len();
        let local = |k: usize| position[k].filter(|p| range.contains(p)).map(|p| p - range.start);
        let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).collect();
        let column = |i: usize, j: usize| -> usize {
            if i == j {
                i
            } else {
                let (i, j) = (i.min(j), i.max(j));
                // offset of (i, j) among the strictly upper pairs
                size + i * (2 * size - i - 1) / 2 + (j - i - 1)
            }
        };
        let ncols = size + pairs.len();
        let rows: Vec<Vec<(usize, Rational)>> = fixed
            .par_iter()
            .flat_map_iter(|&z| {
                let images: Vec<Vec<(usize, Rational)>> = members
                    .iter()
                    .map(|&x| {
                        algebra
                            .bracket_basis(z, x)
                            .into_iter()
                            .filter_map(|(k, c)| local(k).map(|p| (p, c)))
                            .collect()
                    })
                    .collect();
                let mut rows = Vec::new();
                for i in 0..size {
                    for j in i..size {
                        let mut row: Vec<(usize, Rational)> = Vec::new();
                        for (p, c) in &images[i] {
                            row.push((column(*p, j), c.clone()));
                        }
                        for (p, c) in &images[j] {
                            row.push((column(i, *p), c.clone()));
                        }
                        let row = merge_terms(row);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
                rows
            })
            .collect();
        let mut reducer = RowReducer::new(ncols);
        for row in &rows {
            reducer.push_sparse(row);
        }
        for v in reducer.nullspace() {
            let mut form = SymmetricForm::zeros(carrier.len());
            for i in 0..size {
                for j in i..size {
                    let value = &v[column(i, j)];
                    if !value.is_zero() {
                        form.set(range.start + i, range.start + j, value.clone());
                    }
                }
            }
            basis_forms.push(form);
        }
    }

    let parameters = describe(grading, &carrier, &basis_forms);
    FormFamily {
        grading: grading.clone(),
        carrier,
        position,
        basis_forms,
        parameters,
        block_structure,
        parent_coordinates: None,
    }
}

fn merge_terms(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `[basis x, basis y]_m` in carrier positions.
fn bracket_m(family: &FormFamily, x: usize, y: usize) -> Vec<(usize, Rational)> {
    family
        .grading
        .algebra()
        .bracket_basis(family.carrier[x], family.carrier[y])
        .into_iter()
        .filter_map(|(k, c)| family.position[k].map(|p| (p, c)))
        .collect()
}

fn pair_value(form: &SymmetricForm, terms: &[(usize, Rational)], other: usize) -> Rational {
    terms.iter().map(|(p, c)| c * form.get(*p, other)).sum()
}

/// Refines a family by `B([X,Y]_m, Z) + B([X,Z]_m, Y) = 0` over all
/// `m`-basis triples.
pub fn naturally_reductive_subfamily(family: &FormFamily) -> FormFamily {
    let d = family.dim();
    let size = family.carrier.len();
    let brackets: Vec<Vec<Vec<(usize, Rational)>>> = (0..size)
        .into_par_iter()
        .map(|x| (0..size).map(|y| bracket_m(family, x, y)).collect())
        .collect();
    let rows: Vec<Vec<(usize, Rational)>> = (0..size)
        .into_par_iter()
        .flat_map_iter(|x| {
            let brackets = &brackets;
            (0..size).flat_map(move |y| {
                (y..size).filter_map(move |z| {
                    let (xy, xz) = (&brackets[x][y], &brackets[x][z]);
                    if xy.is_empty() && xz.is_empty() {
                        return None;
                    }
                    let row: Vec<(usize, Rational)> = family
                        .basis_forms
                        .iter()
                        .enumerate()
                        .map(|(k, form)| (k, pair_value(form, xy, z) + pair_value(form, xz, y)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    (!row.is_empty()).then_some(row)
                })
            })
        })
        .collect();
    let mut reducer = RowReducer::new(d);
    for row in &rows {
        if reducer.rank() == d {
            break;
        }
        reducer.push_sparse(row);
    }
    let coordinates = reducer.nullspace();
    let basis_forms: Vec<SymmetricForm> = coordinates
        .iter()
        .map(|mu| combine_forms(&family.basis_forms, mu, size))
        .collect();
    let parameters = describe(&family.grading, &family.carrier, &basis_forms);
    FormFamily {
        grading: family.grading.clone(),
        carrier: family.carrier.clone(),
        position: family.position.clone(),
        basis_forms,
        parameters,
        block_structure: family.block_structure.clone(),
        parent_coordinates: Some(coordinates),
    }
}

fn combine_forms(forms: &[SymmetricForm], values: &[Rational], size: usize) -> SymmetricForm {
    let mut out = SymmetricForm::zeros(size);
    for (form, v) in forms.iter().zip(values) {
        if !v.is_zero() {
            out.add_scaled(form, v);
        }
    }
    out
}

/// `Σ values_i · basis_form_i`.
pub fn evaluate_family(family: &FormFamily, values: &[Rational]) -> Result<SymmetricForm> {
    check_len(family.dim(), values.len())?;
    Ok(combine_forms(&family.basis_forms, values, family.carrier.len()))
}

/// Whether a form on `m` (in the grading's `m` order) satisfies the
/// naturally reductive identity on every basis triple.
///
/// For members of the invariant family this is the adaptedness criterion:
/// the Levi-Civita connection then coincides with the torsion-free
/// canonical connection.
pub fn is_adapted(form: &SymmetricForm, grading: &GradingData) -> bool {
    let carrier = grading.m_indices();
    if form.dim() != carrier.len() {
        return false;
    }
    let algebra = grading.algebra();
    let mut position = vec![None; algebra.dim()];
    for (p, &k) in carrier.iter().enumerate() {
        position[k] = Some(p);
    }
    let bracket = |x: usize, y: usize| -> Vec<(usize, Rational)> {
        algebra
            .bracket_basis(carrier[x], carrier[y])
            .into_iter()
            .filter_map(|(k, c)| position[k].map(|p| (p, c)))
            .collect()
    };
    let size = carrier.len();
    (0..size).into_par_iter().all(|x| {
        let row: Vec<_> = (0..size).map(|y| bracket(x, y)).collect();
        (0..size).all(|y| (y..size).all(|z| (pair_value(form, &row[y], z) + pair_value(form, &row[z], y)).is_zero()))
    })
}

/// Whether a form on `m` satisfies `B([Z,X],Y) + B(X,[Z,Y]) = 0` for every
/// `g_e` basis `Z` and `m` basis `X, Y`.
pub fn is_invariant(form: &SymmetricForm, grading: &GradingData) -> bool {
    let carrier = grading.m_indices();
    if form.dim() != carrier.len() {
        return false;
    }
    let algebra = grading.algebra();
    let mut position = vec![None; algebra.dim()];
    for (p, &k) in carrier.iter().enumerate() {
        position[k] = Some(p);
    }
    let size = carrier.len();
    grading.fixed_indices().into_par_iter().all(|z| {
        let images: Vec<Vec<(usize, Rational)>> = carrier
            .iter()
            .map(|&x| {
                algebra
                    .bracket_basis(z, x)
                    .into_iter()
                    .filter_map(|(k, c)| position[k].map(|p| (p, c)))
                    .collect()
            })
            .collect();
        (0..size)
            .all(|i| (i..size).all(|j| (pair_value(form, &images[i], j) + pair_value(form, &images[j], i)).is_zero()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    pub parameter_values: Vec<Rational>,
    pub inertia: Inertia,
    /// Exactly one negative direction and no null directions.
    pub lorentzian: bool,
}

/// Evaluates the family at every sign vector in `{-1,+1}^T` over its
/// diagonal (`t_*`) parameters with off-diagonal ones set to zero,
/// in lexicographic order with `-1` first.
pub fn sign_sweep(family: &FormFamily) -> impl Iterator<Item = SignatureReport> + '_ {
    let t_params: Vec<usize> = family
        .parameters
        .iter()
        .enumerate()
        .filter(|(_, p)| p.kind == ParamKind::Diagonal)
        .map(|(k, _)| k)
        .collect();
    let count = t_params.len();
    let m_dim = family.carrier.len();
    (0u64..(1u64 << count)).map(move |s| {
        let mut values = vec![zero(); family.dim()];
        for (i, &k) in t_params.iter().enumerate() {
            let positive = (s >> (count - 1 - i)) & 1 == 1;
            values[k] = int(if positive { 1 } else { -1 });
        }
        let inertia = family.inertia_at(&values).expect("length matches family");
        SignatureReport {
            parameter_values: values,
            lorentzian: inertia.negatives == 1 && inertia.zeros == 0 && inertia.positives + 1 == m_dim,
            inertia,
        }
    })
}

/// First sign assignment with inertia `(dim m - 1, 1, 0)`, if any. A
/// sufficient search; `None` does not prove no Lorentzian member exists.
pub fn lorentzian_search(family: &FormFamily) -> Option<SignatureReport> {
    sign_sweep(family).find(|r| r.lorentzian)
}

/// `β_γ = B_γ⁻¹ K_γ` on one component, with `K_γ(X,Y) = B_γ(β_γ X, Y)`.
#[derive(Debug, Clone)]
pub struct KillingMetricOperator {
    pub label: GroupElement,
    /// Algebra basis indices of `g_γ`, the operator's basis.
    pub indices: Vec<usize>,
    pub matrix: SquareMatrix,
    /// `β_γ ∘ ad Z = ad Z ∘ β_γ` for every `g_e` basis `Z`.
    pub commutes: bool,
    /// `det(xI - β_γ)`, constant term first.
    pub characteristic_polynomial: Vec<Rational>,
}

/// `b_m` is a form on `m` in the grading's `m` order.
pub fn killing_metric_operator(
    grading: &GradingData,
    b_m: &SymmetricForm,
    label: GroupElement,
) -> Result<KillingMetricOperator> {
    let component = grading.component(label)?;
    if label.is_identity() {
        return Err(Error::UnknownComponent(label.to_string()));
    }
    let carrier = grading.m_indices();
    check_len(carrier.len(), b_m.dim())?;
    let positions: Vec<usize> = component
        .indices
        .iter()
        .map(|k| carrier.iter().position(|c| c == k).expect("component lies in m"))
        .collect();
    let b = b_m.restrict(&positions);
    let inertia = congruence_signature(&b);
    if inertia.zeros > 0 {
        return Err(Error::Degenerate(label.to_string()));
    }
    if inertia.negatives > 0 {
        return Err(Error::NotPositiveDefinite(label.to_string()));
    }
    let algebra = grading.algebra();
    let k = algebra.killing_form().restrict(&component.indices);
    let b_inv = inverse(&SquareMatrix::from_rows(b.rows())?).ok_or_else(|| Error::Degenerate(label.to_string()))?;
    let beta = b_inv.mul(&SquareMatrix::from_rows(k.rows())?);

    let size = component.indices.len();
    let commutes = grading.fixed_indices().into_iter().all(|z| {
        let mut ad = SquareMatrix::zeros(size);
        for (col, &x) in component.indices.iter().enumerate() {
            for (out, c) in algebra.bracket_basis(z, x) {
                if let Some(row) = component.indices.iter().position(|&i| i == out) {
                    ad[(row, col)] = c;
                }
            }
        }
        beta.mul(&ad) == ad.mul(&beta)
    });
    Ok(KillingMetricOperator {
        label,
        indices: component.indices,
        characteristic_polynomial: characteristic_polynomial(&beta),
        matrix: beta,
        commutes,
    })
}

/// Whether a form is positive definite (exact inertia check).
pub fn is_positive_definite(form: &SymmetricForm) -> bool {
    let inertia = congruence_signature(form);
    inertia.negatives == 0 && inertia.zeros == 0
}

/// Strictly positive rational check used by CLI validation.
pub fn all_positive(values: &[Rational]) -> bool {
    values.iter().all(Signed::is_positive)
}
