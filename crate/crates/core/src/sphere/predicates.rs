use num_rational::BigRational;
use num_traits::Zero;

use super::intersection::cross;
use super::point::UnitSpherePoint;
use crate::error::{Error, Result};
use crate::numerics::rational::sign_of;

type V3 = [BigRational; 3];

/// Determinant of the 3x3 matrix with rows `a`, `b`, `c` (cofactor expansion).
pub fn det3(a: &V3, b: &V3, c: &V3) -> BigRational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub(crate) fn as_v3(p: &UnitSpherePoint) -> Result<V3> {
    match p.coords() {
        [x, y, z] => Ok([x.clone(), y.clone(), z.clone()]),
        c => Err(Error::DimensionMismatch {
            expected: 3,
            found: c.len(),
        }),
    }
}

fn sub(a: &V3, b: &V3) -> V3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

/// Side of `q` relative to the great circle through `p1` and `p2`:
/// `+1` left of it, `0` on it, `-1` right of it. Exact.
pub fn great_circle_orientation(
    p1: &UnitSpherePoint,
    p2: &UnitSpherePoint,
    q: &UnitSpherePoint,
) -> Result<i32> {
    let (a, b, c) = (as_v3(p1)?, as_v3(p2)?, as_v3(q)?);
    if cross(&a, &b).iter().all(Zero::is_zero) {
        return Err(Error::DegeneratePair);
    }
    Ok(sign_of(&det3(&a, &b, &c)))
}

/// Whether `q` lies strictly inside (`+1`), on (`0`) or outside (`-1`) the
/// sphere through `p1`, `p2`, `p3` and the origin.
///
/// For points on the unit sphere this is the side of `q` relative to the
/// plane `P` through `p1, p2, p3`, where the side not containing the origin
/// counts as inside. If `P` passes through the origin, inside is the side
/// containing `(0,0,1)`, else `(0,1,0)`, else `(1,0,0)`.
pub fn in_circumsphere(
    p1: &UnitSpherePoint,
    p2: &UnitSpherePoint,
    p3: &UnitSpherePoint,
    q: &UnitSpherePoint,
) -> Result<i32> {
    let (a, b, c, x) = (as_v3(p1)?, as_v3(p2)?, as_v3(p3)?, as_v3(q)?);
    let u = sub(&b, &a);
    let v = sub(&c, &a);
    if cross(&u, &v).iter().all(Zero::is_zero) {
        return Err(Error::DegenerateTriple);
    }
    let side = |pt: &V3| sign_of(&det3(&u, &v, &sub(pt, &a)));
    let s = side(&x);
    let zero: V3 = std::array::from_fn(|_| BigRational::zero());
    let origin = side(&zero);
    if origin != 0 {
        return Ok(-origin * s);
    }
    let unit = |i: usize| -> V3 {
        std::array::from_fn(|j| BigRational::from_integer(((i == j) as i64).into()))
    };
    for axis in [2, 1, 0] {
        let t = side(&unit(axis));
        if t != 0 {
            return Ok(t * s);
        }
    }
    unreachable!("a plane cannot contain the origin and all three unit vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::sigma;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn e(i: usize) -> UnitSpherePoint {
        UnitSpherePoint::axis(3, i, 1)
    }

    fn pt(v: [(i64, i64); 3]) -> UnitSpherePoint {
        UnitSpherePoint::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(great_circle_orientation(&e(0), &e(1), &e(2)).unwrap(), 1);
        assert_eq!(great_circle_orientation(&e(0), &e(1), &e(0)).unwrap(), 0);
        assert_eq!(
            great_circle_orientation(&e(0), &e(1), &UnitSpherePoint::axis(3, 2, -1)).unwrap(),
            -1
        );
        assert_eq!(
            great_circle_orientation(&e(0), &e(0).negated(), &e(2)),
            Err(Error::DegeneratePair)
        );
        assert_eq!(
            great_circle_orientation(&e(1), &e(1), &e(2)),
            Err(Error::DegeneratePair)
        );
    }

    #[test]
    fn circumsphere_examples() {
        let inside = pt([(2, 3), (2, 3), (1, 3)]);
        assert_eq!(in_circumsphere(&e(0), &e(1), &e(2), &inside).unwrap(), 1);
        let far = UnitSpherePoint::axis(3, 0, -1);
        assert_eq!(in_circumsphere(&e(0), &e(1), &e(2), &far).unwrap(), -1);
        assert_eq!(in_circumsphere(&e(0), &e(1), &e(2), &e(0)).unwrap(), 0);
        // order of the triple does not matter
        assert_eq!(in_circumsphere(&e(1), &e(0), &e(2), &inside).unwrap(), 1);
        assert_eq!(
            in_circumsphere(&e(0), &e(0), &e(2), &inside),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn great_circle_plane_prefers_north() {
        // equator: the plane z = 0 passes through the origin
        let a = e(0);
        let b = e(1);
        let c = UnitSpherePoint::axis(3, 0, -1);
        assert_eq!(in_circumsphere(&a, &b, &c, &e(2)).unwrap(), 1);
        assert_eq!(in_circumsphere(&a, &b, &c, &UnitSpherePoint::axis(3, 2, -1)).unwrap(), -1);
        // meridian plane x = 0 contains (0,0,1) and (0,1,0): falls through to (1,0,0)
        let m = [e(1), e(2), UnitSpherePoint::axis(3, 1, -1)];
        assert_eq!(in_circumsphere(&m[0], &m[1], &m[2], &e(0)).unwrap(), 1);
    }

    /// Fraction-free Gaussian elimination, independent of the cofactor formula.
    fn det_by_elimination(rows: [V3; 3]) -> BigRational {
        let mut m = rows;
        let mut det = BigRational::from_integer(1.into());
        for col in 0..3 {
            let Some(piv) = (col..3).find(|&r| !m[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            det *= &m[col][col];
            for r in col + 1..3 {
                let f = &m[r][col] / &m[col][col];
                for c in col..3 {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
        det
    }

    fn sphere_point() -> impl Strategy<Value = UnitSpherePoint> {
        ((-200i64..200, 1i64..50), (-200i64..200, 1i64..50))
            .prop_map(|((a, b), (c, d))| sigma(&[q(a, b), q(c, d)]))
    }

    proptest! {
        #[test]
        fn cofactor_matches_elimination(
            a in sphere_point(), b in sphere_point(), c in sphere_point()
        ) {
            let rows = [as_v3(&a).unwrap(), as_v3(&b).unwrap(), as_v3(&c).unwrap()];
            prop_assert_eq!(det3(&rows[0], &rows[1], &rows[2]), det_by_elimination(rows));
        }

        #[test]
        fn circumsphere_is_invariant_under_triple_permutation(
            a in sphere_point(), b in sphere_point(), c in sphere_point(), x in sphere_point()
        ) {
            prop_assume!(a != b && b != c && a != c);
            let s = in_circumsphere(&a, &b, &c, &x).unwrap();
            prop_assert_eq!(in_circumsphere(&b, &a, &c, &x).unwrap(), s);
            prop_assert_eq!(in_circumsphere(&c, &b, &a, &x).unwrap(), s);
        }
    }
}
