//! Rational points on the unit sphere, stereographic maps, axis rotations and
//! exact spherical predicates.

mod intersection;
pub(crate) mod point;
mod predicates;
pub(crate) mod rotation;
mod stereo;

pub use intersection::{cross, dot, intersection_direction, point_on_minor_arc};
pub use point::{CartesianPoint, UnitSpherePoint};
pub use predicates::{det3, great_circle_orientation, in_circumsphere};
pub use rotation::{normalize_rotation, AxisRotation};
pub use stereo::{sigma, sigma_common, tau};
