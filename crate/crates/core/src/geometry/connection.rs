//! Invariant connections on the reductive space `G/H`, evaluated at the
//! origin on `m`-vectors given as full coefficient vectors of `g`.
//!
//! Both connections share the trait [`Connection`] and are looked up by
//! name in a [`ConnectionRegistry`], so callers (the CLI's `curvature`
//! command, tables) can pick one at runtime.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::GradingData;
use crate::lie::rational::rat;
use crate::lie::Rational;

pub trait Connection: Send + Sync {
    fn name(&self) -> &'static str;

    /// Torsion `T(X, Y)` at the origin.
    fn torsion(&self, grading: &GradingData, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>>;

    /// Curvature `R(X, Y) Z` at the origin.
    fn curvature(&self, grading: &GradingData, x: &[Rational], y: &[Rational], z: &[Rational])
        -> Result<Vec<Rational>>;
}

fn neg(v: Vec<Rational>) -> Vec<Rational> {
    v.into_iter().map(|a| -a).collect()
}

fn axpy(acc: &mut [Rational], factor: &Rational, v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += factor * b;
        }
    }
}

fn bracket(grading: &GradingData, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    grading.algebra().bracket(x, y)
}

fn check_m(grading: &GradingData, vectors: &[&[Rational]]) -> Result<()> {
    vectors.iter().try_for_each(|v| grading.check_in_m(v))
}

/// `T(X,Y) = -[X,Y]_m`.
pub fn canonical_torsion(grading: &GradingData, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    check_m(grading, &[x, y])?;
    Ok(neg(grading.project_m(&bracket(grading, x, y)?)))
}

/// `R(X,Y)Z = -[[X,Y]_{g_e}, Z]_m`.
pub fn canonical_curvature(
    grading: &GradingData,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
) -> Result<Vec<Rational>> {
    check_m(grading, &[x, y, z])?;
    let xy = grading.project_fixed(&bracket(grading, x, y)?);
    Ok(neg(grading.project_m(&bracket(grading, &xy, z)?)))
}

/// Curvature of the torsion-free canonical connection:
/// `¼[X,[Y,Z]_m]_m − ¼[Y,[X,Z]_m]_m − ½[[X,Y]_m,Z]_m − [[X,Y]_{g_e},Z]_m`.
pub fn torsionfree_curvature(
    grading: &GradingData,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
) -> Result<Vec<Rational>> {
    check_m(grading, &[x, y, z])?;
    let m = |v: Vec<Rational>| grading.project_m(&v);
    let yz = m(bracket(grading, y, z)?);
    let xz = m(bracket(grading, x, z)?);
    let xy = bracket(grading, x, y)?;
    let (xy_m, xy_e) = (grading.project_m(&xy), grading.project_fixed(&xy));

    let mut out = vec![Rational::zero(); x.len()];
    axpy(&mut out, &rat(1, 4), &m(bracket(grading, x, &yz)?));
    axpy(&mut out, &rat(-1, 4), &m(bracket(grading, y, &xz)?));
    axpy(&mut out, &rat(-1, 2), &m(bracket(grading, &xy_m, z)?));
    axpy(&mut out, &rat(-1, 1), &m(bracket(grading, &xy_e, z)?));
    Ok(out)
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Canonical;

impl Connection for Canonical {
    fn name(&self) -> &'static str {
        "canonical"
    }

    fn torsion(&self, grading: &GradingData, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        canonical_torsion(grading, x, y)
    }

    fn curvature(
        &self,
        grading: &GradingData,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Result<Vec<Rational>> {
        canonical_curvature(grading, x, y, z)
    }
}

/// `∇̄ = ∇ − T`; same geodesics as the canonical connection, no torsion.
#[derive(Debug, Default, Clone, Copy)]
pub struct TorsionFree;

impl Connection for TorsionFree {
    fn name(&self) -> &'static str {
        "torsion-free"
    }

    fn torsion(&self, grading: &GradingData, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        check_m(grading, &[x, y])?;
        Ok(vec![Rational::zero(); x.len()])
    }

    fn curvature(
        &self,
        grading: &GradingData,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Result<Vec<Rational>> {
        torsionfree_curvature(grading, x, y, z)
    }
}

pub struct ConnectionRegistry {
    entries: Vec<Box<dyn Connection>>,
}

impl ConnectionRegistry {
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn with_builtins() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(Canonical));
        registry.register(Box::new(TorsionFree));
        registry
    }

    /// Registers a connection, replacing any previous entry of the same name.
    pub fn register(&mut self, connection: Box<dyn Connection>) {
        self.entries.retain(|c| c.name() != connection.name());
        self.entries.push(connection);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Connection> {
        self.entries
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown connection '{name}' (known: {})",
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|c| c.name()).collect()
    }
}

impl Default for ConnectionRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
