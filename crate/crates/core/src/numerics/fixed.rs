//! Intervals `[lo, hi] * 2^-p` with integer endpoints. No gcd work is ever
//! done, which keeps the per-point hot path cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::approx::ApproxValue;

/// `floor(r * 2^k)`.
pub(crate) fn floor_scaled(r: &BigRational, k: i64) -> BigInt {
    if k >= 0 {
        (r.numer() << k as usize).div_floor(r.denom())
    } else {
        r.numer().div_floor(&(r.denom() << (-k) as usize))
    }
}

/// `ceil(r * 2^k)`.
pub(crate) fn ceil_scaled(r: &BigRational, k: i64) -> BigInt {
    -floor_scaled(&-r, k)
}

/// `n / 2^k` in lowest terms.
pub(crate) fn dyadic(n: BigInt, k: u32) -> BigRational {
    if n.is_zero() {
        return BigRational::zero();
    }
    let tz = n.trailing_zeros().unwrap_or(0).min(k as u64) as u32;
    BigRational::new_raw(n >> tz as usize, BigInt::one() << (k - tz) as usize)
}

/// Rounds `n / 2^s` to the nearest integer, ties to even.
pub(crate) fn round_shift(n: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return n.clone();
    }
    let floor = n >> s as usize; // arithmetic shift floors
    let rem = n - (&floor << s as usize);
    let half = BigInt::one() << (s - 1) as usize;
    match rem.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
}

impl FixedInterval {
    /// Encloses `a * 2^k` in units of one.
    pub fn from_approx(a: &ApproxValue, k: i64) -> Self {
        if a.radius.is_zero() {
            return Self {
                lo: floor_scaled(&a.center, k),
                hi: ceil_scaled(&a.center, k),
            };
        }
        let r = ceil_scaled(&a.radius, k);
        Self {
            lo: floor_scaled(&a.center, k) - &r,
            hi: ceil_scaled(&a.center, k) + r,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Bounds of `x^2` (the unit is squared too).
    pub fn square_bounds(&self) -> (BigInt, BigInt) {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if !self.lo.is_positive() && !self.hi.is_negative() {
            (BigInt::zero(), a.max(b))
        } else if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// `self / den * 2^p` rounded outward; `den` must be positive.
    pub fn div(&self, den: &FixedInterval, p: u32) -> Option<Self> {
        if !den.lo.is_positive() {
            return None;
        }
        let lo_den = if self.lo.is_negative() { &den.lo } else { &den.hi };
        let hi_den = if self.hi.is_negative() { &den.hi } else { &den.lo };
        let lo = (&self.lo << p as usize).div_floor(lo_den);
        let hi = -((-&self.hi << p as usize).div_floor(hi_den));
        Some(Self { lo, hi })
    }

    /// The enclosure as a dyadic center and radius, reading the unit as
    /// `2^-p`.
    pub fn to_approx(&self, p: u32) -> ApproxValue {
        ApproxValue::new(dyadic(&self.lo + &self.hi, p + 1), dyadic(self.width(), p + 1))
    }

    /// Encloses `v`, a value in units of `2^-p`, with the radius at most
    /// `2^-bits`.
    pub fn within_bits(&self, p: u32, bits: u32) -> bool {
        p < bits || self.width() <= BigInt::one() << (p - bits + 1) as usize
    }
}

/// `sqrt(sum v_i^2)` in the same unit as `v`.
pub(crate) fn norm(v: &[FixedInterval]) -> FixedInterval {
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    for c in v {
        let (a, b) = c.square_bounds();
        lo += a;
        hi += b;
    }
    let lo_root = lo.sqrt();
    let mut hi_root = hi.sqrt();
    if &hi_root * &hi_root < hi {
        hi_root += 1;
    }
    FixedInterval { lo: lo_root, hi: hi_root }
}
