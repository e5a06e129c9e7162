//! Snapping points to rational points exactly on the unit sphere.
//!
//! The engine rotates the input so its dominant coordinate becomes the
//! negative last axis, encloses the stereographic image `tau(x / |x|)` at
//! certified precision, picks a nearby rational preimage `y` with one of the
//! strategies below, and returns `sigma(y)` rotated back.
//!
//! | strategy | preimage | denominators |
//! |----------|----------|--------------|
//! | FX | `2^-e` grid | `<= 2^(2e+1)` |
//! | CF | per-coordinate continued fractions | small for each axis |
//! | JP | Jacobi-Perron, one common denominator (d = 3) | smallest in practice |
//! | BD(N) | exhaustive Dirichlet scan up to `N` | oracle only |

mod batch;
mod config;
mod engine;

pub use batch::snap_batch;
pub use config::{Accuracy, Budget, Objective, SnapConfig, Strategy, StrategyKind, DEFAULT_BD_LIMIT};
pub use engine::{auto_select, certify_error, certify_error_at, choose_y, snap, SnapResult};
