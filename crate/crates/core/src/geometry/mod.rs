//! Connection, curvature and geodesic data at the origin of `G/H`.

pub mod ambrose;
pub mod connection;
pub mod curvature;
pub mod geodesic;

pub use ambrose::{ambrose_singer_check, AmbroseSingerReport};
pub use connection::{
    canonical_curvature, canonical_torsion, torsionfree_curvature, Canonical, Connection, ConnectionRegistry,
    TorsionFree,
};
pub use curvature::{connection_sectional_table, sectional_table, CurvatureTable};
pub use geodesic::{geodesic_closed_form, matrix_exp_numeric, GeodesicCurve};
