//! Executable checks of the sphere-snapping bounds and the benchmark harness.

mod bench;
mod enumerate;
mod random;
mod stretch;
pub mod suite;

pub use bench::{run_benchmark, BenchmarkCell, BenchmarkRow, ScatterPoint, EARTH_RADIUS_M};
pub use enumerate::{congruence_admits, enumerate_float_sphere_points, is_signed_unit, MAX_SCAN};
pub use random::{random_ball_point, random_sphere_point, random_sphere_points};
pub use stretch::{tau_norm_below_one, stretch_check, stretch_ratio};
