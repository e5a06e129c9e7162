//! Snap points of `R^d` to rational points lying exactly on the unit sphere.
//!
//! A direction is given by per-coordinate [`ApproxSource`]s that produce
//! rational enclosures at any requested precision. [`snap`] rotates the point
//! so that its dominant coordinate is the negative last axis, evaluates the
//! stereographic image at certified precision, rounds it to a rational vector
//! with small (common) denominators, and maps it back with the exact inverse
//! projection. The output satisfies `sum x_i^2 = 1` in exact arithmetic and
//! carries a certified infinity-norm error bound.
//!
//! Modules:
//! - [`numerics`]: rationals, enclosures, continued fractions, Jacobi-Perron,
//!   brute-force Dirichlet approximation, Chebyshev and Liouville helpers.
//! - [`sphere`]: stereographic maps, axis rotations, exact spherical predicates.
//! - [`snap`]: the snapping engine and its strategies.
//! - [`lab`]: executable checks and the benchmark driver.
//! - [`io`]: record parsing and result formatting used by the CLI.

pub mod error;
pub mod io;
pub mod lab;
pub mod numerics;
pub mod par;
pub mod snap;
pub mod sphere;

pub use error::{Error, Result};
pub use numerics::{ApproxSource, ApproxValue, BigRational, Convergent};
pub use snap::{snap, Accuracy, Objective, SnapConfig, SnapResult, Strategy, StrategyKind};

pub use sphere::{AxisRotation, CartesianPoint, UnitSpherePoint};
