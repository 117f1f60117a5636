//! Exact computations on `(Z₂)^k`-graded orthogonal Lie algebras `so(n)`:
//! gradings, invariant inner products on the reductive complement,
//! curvature and signature data, and geodesics through the origin.
//!
//! ```
//! use gamma_sym::{block_grading, invariant_family};
//!
//! let grading = block_grading(5, [2, 2, 1, 0]).unwrap();
//! assert_eq!(invariant_family(&grading).dim(), 4);
//! ```

pub mod cli;
pub mod error;
pub mod geometry;
pub mod grading;
pub mod group;
pub mod lie;
pub mod metric;

pub use error::{Error, Result};
pub use grading::{block_grading, holonomy_span, verify_grading, GradingData, GradingSummary, GradingVerdict};
pub use group::GroupElement;
pub use lie::{build_so, LieAlgebraData, Rational, SquareMatrix, SymmetricForm};
pub use metric::{
    evaluate_family, invariant_family, is_adapted, is_invariant, killing_metric_operator, lorentzian_search,
    naturally_reductive_subfamily, FormFamily,
};
