use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::sphere::UnitSpherePoint;

/// Largest exhaustive scan accepted by [`enumerate_float_sphere_points`].
pub const MAX_SCAN: u128 = 100_000_000;

/// Every point `z / 2^E` with integer `|z_i| <= 2^E` lying exactly on the
/// unit sphere, in lexicographic order of `z`.
pub fn enumerate_float_sphere_points(d: usize, max_exp: u32) -> Result<Vec<UnitSpherePoint>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let side = (1u128 << max_exp) * 2 + 1;
    let candidates = side.checked_pow(d as u32).unwrap_or(u128::MAX);
    if max_exp > 40 || candidates > MAX_SCAN {
        return Err(Error::ScanTooLarge { candidates });
    }
    let r = 1i64 << max_exp;
    let target = r * r;
    let den = BigInt::from(r);
    let mut out = Vec::new();
    let mut z = vec![-r; d];
    loop {
        if z.iter().map(|v| v * v).sum::<i64>() == target {
            let coords = z.iter().map(|&v| BigRational::new(v.into(), den.clone())).collect();
            out.push(UnitSpherePoint::new(coords)?);
        }
        // odometer increment
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if z[i] < r {
                z[i] += 1;
                break;
            }
            z[i] = -r;
        }
    }
}

/// `true` when `z` has exactly one nonzero entry equal to `+-1` after scaling.
pub fn is_signed_unit(z: &[i64], max_exp: u32) -> bool {
    let r = 1i64 << max_exp;
    let nonzero: Vec<&i64> = z.iter().filter(|v| **v != 0).collect();
    nonzero.len() == 1 && nonzero[0].abs() == r
}

/// Whether `sum z_i^2 = 4^E` survives the congruence test: after cancelling
/// common factors of 2 down to `sum w_i^2 = 4^k`, either `k = 0` and `w` is a
/// signed unit vector, or `k >= 1` and the number of odd `w_i` is a positive
/// multiple of 4 (odd squares are 1 mod 8, even squares 0 mod 4).
pub fn congruence_admits(z: &[i64], max_exp: u32) -> bool {
    if z.iter().all(|v| *v == 0) {
        return false;
    }
    let mut w = z.to_vec();
    let mut k = max_exp;
    while k > 0 && w.iter().all(|v| v % 2 == 0) {
        w.iter_mut().for_each(|v| *v /= 2);
        k -= 1;
    }
    if k == 0 {
        return is_signed_unit(&w, 0);
    }
    let odd = w.iter().filter(|v| *v % 2 != 0).count();
    odd > 0 && odd % 4 == 0
}
