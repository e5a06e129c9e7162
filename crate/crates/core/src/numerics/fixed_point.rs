use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::approx::ApproxValue;
use super::rational::round_half_even;
use crate::error::{Error, Result};

/// Rounds an enclosure to the grid `2^-s`, ties to even.
///
/// The enclosure radius must not exceed `2^-(s+2)`; the returned value is then
/// within `2^-s` of every point of the enclosure's underlying real.
pub fn fixed_point_round(alpha: &ApproxValue, s: u32) -> Result<BigRational> {
    if !alpha.within_bits(s + 2) {
        return Err(Error::InsufficientPrecision { needed: s + 2 });
    }
    let scale = BigInt::one() << s as usize;
    let z = round_half_even(&(&alpha.center * BigRational::from_integer(scale.clone())));
    Ok(BigRational::new(z, scale))
}
