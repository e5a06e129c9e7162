use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::point::{CartesianPoint, UnitSpherePoint};
use super::predicates::as_v3;
use crate::error::{Error, Result};

pub fn cross(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Direction of the line shared by the planes of two great circles, each
/// spanned by a segment's endpoints and the origin: `(a1 x a2) x (b1 x b2)`.
///
/// The result is exact and rational; it and its negation identify the two
/// intersection points of the great circles.
pub fn intersection_direction(
    a1: &UnitSpherePoint,
    a2: &UnitSpherePoint,
    b1: &UnitSpherePoint,
    b2: &UnitSpherePoint,
) -> Result<CartesianPoint> {
    let na = cross(&as_v3(a1)?, &as_v3(a2)?);
    let nb = cross(&as_v3(b1)?, &as_v3(b2)?);
    if na.iter().all(Zero::is_zero) || nb.iter().all(Zero::is_zero) {
        return Err(Error::DegeneratePair);
    }
    let d = cross(&na, &nb);
    if d.iter().all(Zero::is_zero) {
        return Err(Error::CoplanarGreatCircles);
    }
    CartesianPoint::new(d.to_vec())
}

/// Whether direction `v` (in the plane of `a`, `b`) points into the closed
/// minor arc from `a` to `b`.
pub fn point_on_minor_arc(a: &UnitSpherePoint, b: &UnitSpherePoint, v: &[BigRational]) -> Result<bool> {
    let (a, b) = (as_v3(a)?, as_v3(b)?);
    let v: [BigRational; 3] = match v {
        [x, y, z] => [x.clone(), y.clone(), z.clone()],
        _ => {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: v.len(),
            })
        }
    };
    let n = cross(&a, &b);
    let s1 = dot(&cross(&a, &v), &n);
    let s2 = dot(&cross(&v, &b), &n);
    // v must also be on the same side as the arc midpoint direction a + b
    let mid: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    Ok(!s1.is_negative() && !s2.is_negative() && !dot(&mid, &v).is_negative())
}
