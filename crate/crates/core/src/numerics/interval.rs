use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::approx::ApproxValue;
use super::rational::{ceil_sqrt_on_grid, ceil_to_grid, exact_sqrt, floor_sqrt_on_grid, floor_to_grid};

/// Closed interval with rational endpoints.
///
/// Point intervals stay exact through ring operations. [`Interval::round_out`]
/// widens endpoints outward onto the `2^-bits` grid so that repeated
/// operations keep bounded bit sizes; division and square roots round as part
/// of the operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn center(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn radius(&self) -> BigRational {
        self.width() / BigRational::from_integer(2.into())
    }

    pub fn to_approx(&self) -> ApproxValue {
        ApproxValue::new(self.center(), self.radius())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Sign of the interval if it excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo().is_positive() {
            Some(1)
        } else if self.hi().is_negative() {
            Some(-1)
        } else if self.is_point() {
            Some(0)
        } else {
            None
        }
    }

    /// Largest distance from `v` to a point of the interval.
    pub fn max_distance(&self, v: &BigRational) -> BigRational {
        let a = (v - &self.lo).abs();
        let b = (v - &self.hi).abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> BigRational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            Interval::new(BigRational::zero(), self.mag())
        }
    }

    pub fn square(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval::new(BigRational::zero(), if a > b { a } else { b })
        } else if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    /// Widens the endpoints outward onto the `2^-bits` grid. Endpoints that
    /// already sit on the grid are kept.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval {
            lo: floor_to_grid(&self.lo, bits),
            hi: ceil_to_grid(&self.hi, bits),
        }
    }

    /// Like [`Interval::round_out`] but leaves exact points untouched as long
    /// as their bit size stays moderate.
    pub fn tidy(&self, bits: u32) -> Interval {
        if self.is_point() {
            let size = self.lo.numer().bits() + self.lo.denom().bits();
            if size <= 4 * bits as u64 + 64 {
                return self.clone();
            }
        }
        self.round_out(bits)
    }

    /// Quotient rounded outward to `bits`; `None` when the divisor contains 0.
    pub fn div(&self, other: &Interval, bits: u32) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let cands = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        Some(Self::hull(cands).tidy(bits))
    }

    /// Square root rounded outward to `bits`; negative parts are clamped to
    /// zero, `None` when the whole interval is negative.
    pub fn sqrt(&self, bits: u32) -> Option<Interval> {
        if self.hi.is_negative() {
            return None;
        }
        if self.is_point() {
            if let Some(r) = exact_sqrt(&self.lo) {
                return Some(Interval::point(r));
            }
        }
        let lo = if self.lo.is_positive() {
            floor_sqrt_on_grid(&self.lo, bits)
        } else {
            BigRational::zero()
        };
        Some(Interval::new(lo, ceil_sqrt_on_grid(&self.hi, bits)))
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    /// Widens by `r >= 0` on both sides.
    pub fn inflate(&self, r: &BigRational) -> Interval {
        Interval::new(&self.lo - r, &self.hi + r)
    }

    fn hull(cands: [BigRational; 4]) -> Interval {
        let mut it = cands.into_iter();
        let first = it.next().expect("non-empty");
        let (mut lo, mut hi) = (first.clone(), first);
        for c in it {
            if c < lo {
                lo = c;
            } else if c > hi {
                hi = c;
            }
        }
        Interval { lo, hi }
    }
}

impl From<BigRational> for Interval {
    fn from(v: BigRational) -> Self {
        Interval::point(v)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            return Interval::point(&self.lo * &rhs.lo);
        }
        Interval::hull([
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ])
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}
