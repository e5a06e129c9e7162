use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::snap::SnapResult;
use crate::sphere::point::norm_squared;
use crate::sphere::sigma;

fn distance_sq(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (u, v)| {
        let t = u - v;
        acc + &t * &t
    })
}

fn check_ball(x: &[BigRational], y: &[BigRational]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if norm_squared(x) > BigRational::one() || norm_squared(y) > BigRational::one() {
        return Err(Error::OutsideUnitBall);
    }
    Ok(())
}

/// Exact test of `|sigma(x) - sigma(x')| <= 2 |x - x'|` in squared form, for
/// `x`, `x'` in the closed unit ball.
pub fn stretch_check(x: &[BigRational], x2: &[BigRational]) -> Result<bool> {
    check_ball(x, x2)?;
    let lhs = distance_sq(x, x2) * BigRational::from_integer(4.into());
    let rhs = distance_sq(sigma(x).coords(), sigma(x2).coords());
    Ok(lhs >= rhs)
}

/// `|sigma(x) - sigma(x')|^2 / |x - x'|^2`; `None` when `x = x'`.
pub fn stretch_ratio(x: &[BigRational], x2: &[BigRational]) -> Result<Option<BigRational>> {
    check_ball(x, x2)?;
    let den = distance_sq(x, x2);
    if den.is_zero() {
        return Ok(None);
    }
    Ok(Some(distance_sq(sigma(x).coords(), sigma(x2).coords()) / den))
}

/// For the rotated output `p` of a snap: `|tau(p)|^2 = (1 + p_d) / (1 - p_d)`
/// and it is below 1.
pub fn tau_norm_below_one(result: &SnapResult) -> Result<bool> {
    let rotated = result.rotation.apply_point(&result.point)?;
    let last = rotated.coords().last().expect("dimension >= 2");
    let one = BigRational::one();
    if last >= &one {
        return Ok(false);
    }
    let ratio = (&one + last) / (&one - last);
    let t = crate::sphere::tau(&rotated)?;
    Ok(ratio == norm_squared(&t) && ratio < one)
}
