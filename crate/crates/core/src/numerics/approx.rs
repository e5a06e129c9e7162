use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::rational::pow2;
use crate::error::{Error, Result};

/// Hard ceiling for any precision escalation.
pub const MAX_BITS: u32 = 4096;

/// A rational enclosure `[center - radius, center + radius]` of a real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    pub center: BigRational,
    pub radius: BigRational,
}

impl ApproxValue {
    pub fn new(center: BigRational, radius: BigRational) -> Self {
        assert!(!radius.is_negative(), "enclosure radius must be non-negative");
        Self { center, radius }
    }

    pub fn exact(value: BigRational) -> Self {
        Self {
            center: value,
            radius: BigRational::zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn lo(&self) -> BigRational {
        &self.center - &self.radius
    }

    pub fn hi(&self) -> BigRational {
        &self.center + &self.radius
    }

    pub fn to_interval(&self) -> Interval {
        Interval::new(self.lo(), self.hi())
    }

    /// Whether the radius is at most `2^-bits`.
    pub fn within_bits(&self, bits: u32) -> bool {
        self.radius <= pow2(-(bits as i64))
    }

    pub fn intersects(&self, other: &ApproxValue) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }
}

/// A refinable producer of enclosures for one real number.
///
/// `approx(bits)` must return an enclosure with radius at most `2^-bits`.
/// Enclosures for different precisions must pairwise intersect, and asking for
/// more bits never yields a wider radius. Implementations are shared across
/// worker threads and may be queried concurrently.
pub trait ApproxSource: Send + Sync {
    fn approx(&self, bits: u32) -> Result<ApproxValue>;
}

impl ApproxSource for BigRational {
    fn approx(&self, _bits: u32) -> Result<ApproxValue> {
        Ok(ApproxValue::exact(self.clone()))
    }
}

impl<S: ApproxSource + ?Sized> ApproxSource for &S {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        (**self).approx(bits)
    }
}

impl<S: ApproxSource + ?Sized> ApproxSource for Box<S> {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        (**self).approx(bits)
    }
}

impl<S: ApproxSource + ?Sized> ApproxSource for Arc<S> {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        (**self).approx(bits)
    }
}

/// A single, non-refinable enclosure viewed as a source. Requests finer than
/// the stored radius fail with [`Error::InsufficientPrecision`].
#[derive(Debug, Clone)]
pub struct FixedEnclosure(pub ApproxValue);

impl ApproxSource for FixedEnclosure {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        if self.0.within_bits(bits) {
            Ok(self.0.clone())
        } else {
            Err(Error::InsufficientPrecision { needed: bits })
        }
    }
}

/// Runs `attempt` at `start` bits, doubling until it yields a value or the
/// precision passes [`MAX_BITS`].
pub fn refine<T>(start: u32, mut attempt: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
    let mut bits = start.clamp(1, MAX_BITS);
    loop {
        if let Some(v) = attempt(bits)? {
            return Ok(v);
        }
        if bits >= MAX_BITS {
            return Err(Error::PrecisionExhausted { cap: MAX_BITS });
        }
        bits = (bits * 2).min(MAX_BITS);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rational_source_has_zero_radius() {
        let v = BigRational::new(1.into(), 3.into());
        let a = v.approx(100).unwrap();
        assert!(a.is_exact());
        assert_eq!(a.center, v);
    }

    #[test]
    fn fixed_enclosure_refuses_finer_requests() {
        let src = FixedEnclosure(ApproxValue::new(
            BigRational::new(1.into(), 3.into()),
            pow2(-10),
        ));
        assert!(src.approx(10).is_ok());
        assert_eq!(
            src.approx(11),
            Err(Error::InsufficientPrecision { needed: 11 })
        );
    }

    #[test]
    fn refine_doubles_until_cap() {
        let mut seen = Vec::new();
        let r: Result<()> = refine(1000, |b| {
            seen.push(b);
            Ok(None)
        });
        assert_eq!(r, Err(Error::PrecisionExhausted { cap: MAX_BITS }));
        assert_eq!(seen, vec![1000, 2000, 4000, 4096]);
        assert_eq!(refine(8, |b| Ok((b >= 30).then_some(b))), Ok(32));
    }
}
