//! Block `(Z₂×Z₂)`-gradings of `so(n)`.
//!
//! A partition `n = r₁ + r₂ + r₃ + r₄` cuts the matrix into a 4×4 block
//! pattern. The elementary basis vector `E_ij` is homogeneous: it lands in
//! `g_e` when `i` and `j` share a block, otherwise its label depends only on
//! the unordered pair of blocks:
//!
//! | blocks        | label | sub-blocks |
//! |---------------|-------|------------|
//! | {1,2}, {3,4}  | `a`   | A1, A2     |
//! | {1,3}, {2,4}  | `b`   | B1, B2     |
//! | {1,4}, {2,3}  | `c`   | C1, C2     |

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate, GroupElement};
use crate::lie::{build_so, LieAlgebraData, Rational, RowReducer};

#[derive(Debug, Clone)]
pub struct GradingData {
    algebra: Arc<LieAlgebraData>,
    rank: usize,
    assignment: Vec<GroupElement>,
    partition: Option<[usize; 4]>,
    /// Block of each matrix row, 0-based, for partition gradings.
    blocks: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentView {
    pub label: GroupElement,
    pub indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingVerdict {
    Pass,
    /// `[basis x, basis y]` has a nonzero coefficient on `offending`, which
    /// is not in the component `label(x)·label(y)`.
    Fail {
        x: usize,
        y: usize,
        offending: usize,
    },
}

impl GradingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, GradingVerdict::Pass)
    }
}

const SUB_BLOCKS: [[Option<&str>; 4]; 4] = [
    [None, Some("A1"), Some("B1"), Some("C1")],
    [Some("A1"), None, Some("C2"), Some("B2")],
    [Some("B1"), Some("C2"), None, Some("A2")],
    [Some("C1"), Some("B2"), Some("A2"), None],
];

/// Klein-group label of the unordered block pair `{p, q}`.
pub fn block_pair_label(p: usize, q: usize) -> GroupElement {
    match (p.min(q), p.max(q)) {
        (a, b) if a == b => GroupElement::E,
        (0, 1) | (2, 3) => GroupElement::A,
        (0, 2) | (1, 3) => GroupElement::B,
        _ => GroupElement::C,
    }
}

pub fn block_grading(n: usize, partition: [usize; 4]) -> Result<GradingData> {
    let sum: usize = partition.iter().sum();
    if sum != n {
        return Err(Error::InvalidPartition { partition, sum, n });
    }
    block_grading_on(Arc::new(build_so(n)?), partition)
}

/// Block grading over an already built `so(n)`, for sweeps over partitions.
pub fn block_grading_on(algebra: Arc<LieAlgebraData>, partition: [usize; 4]) -> Result<GradingData> {
    let n = algebra.n();
    let sum: usize = partition.iter().sum();
    if sum != n {
        return Err(Error::InvalidPartition { partition, sum, n });
    }
    let blocks: Vec<usize> = partition
        .iter()
        .enumerate()
        .flat_map(|(b, &r)| std::iter::repeat_n(b, r))
        .collect();
    let assignment = algebra
        .basis_pairs()
        .iter()
        .map(|&(i, j)| block_pair_label(blocks[i], blocks[j]))
        .collect();
    Ok(GradingData {
        algebra,
        rank: 2,
        assignment,
        partition: Some(partition),
        blocks: Some(blocks),
    })
}

impl GradingData {
    /// A grading given by an arbitrary basis assignment; not verified here.
    pub fn from_assignment(algebra: Arc<LieAlgebraData>, assignment: Vec<GroupElement>) -> Result<Self> {
        if assignment.len() != algebra.dim() {
            return Err(Error::LengthMismatch {
                expected: algebra.dim(),
                actual: assignment.len(),
            });
        }
        let rank = assignment.first().map(GroupElement::rank).unwrap_or(2);
        if let Some(bad) = assignment.iter().find(|g| g.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank as u8,
                right: bad.rank() as u8,
            });
        }
        Ok(Self {
            algebra,
            rank,
            assignment,
            partition: None,
            blocks: None,
        })
    }

    /// Copy with one basis vector moved to another component. The partition
    /// is dropped since the result is no longer a block grading.
    pub fn reassigned(&self, index: usize, label: GroupElement) -> Result<Self> {
        let mut assignment = self.assignment.clone();
        assignment[index] = label;
        Self::from_assignment(self.algebra.clone(), assignment)
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<LieAlgebraData> {
        self.algebra.clone()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn partition(&self) -> Option<[usize; 4]> {
        self.partition
    }

    pub fn label(&self, k: usize) -> GroupElement {
        self.assignment[k]
    }

    pub fn assignment(&self) -> &[GroupElement] {
        &self.assignment
    }

    pub fn group(&self) -> Vec<GroupElement> {
        enumerate(self.rank).expect("rank validated on construction")
    }

    pub fn component(&self, label: GroupElement) -> Result<ComponentView> {
        if label.rank() != self.rank {
            return Err(Error::UnknownComponent(label.to_string()));
        }
        let indices: Vec<usize> = (0..self.assignment.len())
            .filter(|&k| self.assignment[k] == label)
            .collect();
        Ok(ComponentView {
            label,
            dim: indices.len(),
            indices,
        })
    }

    /// Every component, in group enumeration order (identity first).
    pub fn components(&self) -> Vec<ComponentView> {
        self.group()
            .into_iter()
            .map(|g| self.component(g).expect("label from own group"))
            .collect()
    }

    pub fn fixed_indices(&self) -> Vec<usize> {
        self.component(GroupElement::identity(self.rank).unwrap())
            .unwrap()
            .indices
    }

    /// Basis of `m` ordered by component, then by basis index.
    pub fn m_indices(&self) -> Vec<usize> {
        self.components()
            .into_iter()
            .filter(|c| !c.label.is_identity())
            .flat_map(|c| c.indices)
            .collect()
    }

    pub fn in_m(&self, k: usize) -> bool {
        !self.assignment[k].is_identity()
    }

    /// Name of the sub-block (A1, …, C2) containing basis vector `k`, or
    /// `None` for `g_e` and for gradings without a partition.
    pub fn sub_block(&self, k: usize) -> Option<&'static str> {
        let blocks = self.blocks.as_ref()?;
        let (i, j) = self.algebra.basis_pair(k);
        SUB_BLOCKS[blocks[i]][blocks[j]]
    }

    pub fn project_m(&self, x: &[Rational]) -> Vec<Rational> {
        self.project(x, true)
    }

    pub fn project_fixed(&self, x: &[Rational]) -> Vec<Rational> {
        self.project(x, false)
    }

    fn project(&self, x: &[Rational], onto_m: bool) -> Vec<Rational> {
        x.iter()
            .enumerate()
            .map(|(k, v)| {
                if self.in_m(k) == onto_m {
                    v.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    pub fn check_in_m(&self, x: &[Rational]) -> Result<()> {
        crate::lie::linalg::check_len(self.algebra.dim(), x.len())?;
        match x.iter().enumerate().find(|(k, v)| !v.is_zero() && !self.in_m(*k)) {
            Some((k, _)) => Err(Error::SupportOutsideM(k)),
            None => Ok(()),
        }
    }
}

/// Checks `[g_α, g_β] ⊂ g_{αβ}` on every basis pair, reporting the
/// lexicographically first failure.
pub fn verify_grading(grading: &GradingData) -> GradingVerdict {
    let algebra = grading.algebra();
    let dim = algebra.dim();
    let first = (0..dim).into_par_iter().find_map_first(|x| {
        (x + 1..dim).find_map(|y| {
            let expected = grading.label(x).product(grading.label(y)).ok()?;
            algebra
                .structure_terms(x, y)
                .iter()
                .find(|(k, _)| grading.label(*k) != expected)
                .map(|&(k, _)| (x, y, k))
        })
    });
    match first {
        None => GradingVerdict::Pass,
        Some((x, y, offending)) => GradingVerdict::Fail { x, y, offending },
    }
}

#[derive(Debug, Clone)]
pub struct HolonomySpan {
    /// RREF basis (full coordinates) of `span{[X,Y]_{g_e} : X, Y ∈ m}`.
    pub basis: Vec<Vec<Rational>>,
    /// Per non-identity label, the span of `[g_γ, g_γ]_{g_e}`.
    pub per_component: Vec<(GroupElement, Vec<Vec<Rational>>)>,
    pub fixed_dim: usize,
    algebra_dim: usize,
}

impl HolonomySpan {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn spans_fixed(&self) -> bool {
        self.dim() == self.fixed_dim
    }

    /// Dimension of `Σ_γ [g_γ, g_γ]_{g_e}`.
    pub fn component_sum_dim(&self) -> usize {
        let mut reducer = RowReducer::new(self.algebra_dim);
        for (_, rows) in &self.per_component {
            for r in rows {
                reducer.push_dense(r);
            }
        }
        reducer.rank()
    }
}

pub fn holonomy_span(grading: &GradingData) -> HolonomySpan {
    let algebra = grading.algebra();
    let dim = algebra.dim();
    let m = grading.m_indices();
    let fixed_part = |x: usize, y: usize| -> Vec<(usize, Rational)> {
        algebra
            .bracket_basis(x, y)
            .into_iter()
            .filter(|(k, _)| !grading.in_m(*k))
            .collect()
    };
    let mut all = RowReducer::new(dim);
    for (a, &x) in m.iter().enumerate() {
        for &y in &m[a + 1..] {
            all.push_sparse(&fixed_part(x, y));
        }
    }
    let per_component = grading
        .components()
        .into_iter()
        .filter(|c| !c.label.is_identity())
        .map(|c| {
            let mut reducer = RowReducer::new(dim);
            for (a, &x) in c.indices.iter().enumerate() {
                for &y in &c.indices[a + 1..] {
                    reducer.push_sparse(&fixed_part(x, y));
                }
            }
            (c.label, reducer.row_basis())
        })
        .collect();
    HolonomySpan {
        basis: all.row_basis(),
        per_component,
        fixed_dim: grading.fixed_indices().len(),
        algebra_dim: dim,
    }
}

#[derive(Debug, Serialize)]
pub struct ComponentSummary {
    pub label: GroupElement,
    pub dim: usize,
}

/// Wire summary of a grading.
#[derive(Debug, Serialize)]
pub struct GradingSummary {
    pub n: usize,
    pub partition: Option<[usize; 4]>,
    pub components: Vec<ComponentSummary>,
    pub verified: bool,
}

impl GradingSummary {
    pub fn new(grading: &GradingData) -> Self {
        Self {
            n: grading.algebra().n(),
            partition: grading.partition(),
            components: grading
                .components()
                .into_iter()
                .map(|c| ComponentSummary {
                    label: c.label,
                    dim: c.dim,
                })
                .collect(),
            verified: verify_grading(grading).passed(),
        }
    }
}
