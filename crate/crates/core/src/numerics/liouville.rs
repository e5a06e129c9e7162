use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::approx::{refine, ApproxSource, ApproxValue};
use super::interval::Interval;
use super::rational::{ceil_sqrt_on_grid, floor_to_grid, pow2};
use crate::error::{Error, Result};

/// Grid for the dyadic lower rounding of Liouville constants.
const CONSTANT_BITS: u32 = 32;

/// `a2 x^2 + a1 x + a0` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPoly {
    pub a2: BigInt,
    pub a1: BigInt,
    pub a0: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Smaller,
    Larger,
}

impl QuadraticPoly {
    pub fn new(a2: i64, a1: i64, a0: i64) -> Self {
        Self {
            a2: a2.into(),
            a1: a1.into(),
            a0: a0.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.a1 * &self.a1 - BigInt::from(4) * &self.a2 * &self.a0
    }

    /// Degree two, two distinct real roots, no rational root.
    pub fn is_irreducible_real(&self) -> bool {
        let d = self.discriminant();
        if self.a2.is_zero() || !d.is_positive() {
            return false;
        }
        let s = d.sqrt();
        s.clone() * s != d
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let c = |v: &BigInt| BigRational::from_integer(v.clone());
        (c(&self.a2) * x + c(&self.a1)) * x + c(&self.a0)
    }

    pub fn root(&self, choice: RootChoice) -> Result<QuadraticRoot> {
        if !self.is_irreducible_real() {
            return Err(Error::ReduciblePolynomial);
        }
        Ok(QuadraticRoot {
            poly: self.clone(),
            choice,
        })
    }
}

/// One real root of an irreducible quadratic, as a refinable source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRoot {
    pub poly: QuadraticPoly,
    pub choice: RootChoice,
}

impl QuadraticRoot {
    pub fn enclose(&self, bits: u32) -> Interval {
        let d = Interval::point(BigRational::from_integer(self.poly.discriminant()));
        let s = d.sqrt(bits + self.poly.a2.bits() as u32 + 4).expect("positive discriminant");
        let two_a = BigRational::from_integer(&self.poly.a2 * 2);
        let minus_b = Interval::point(BigRational::from_integer(-&self.poly.a1));
        let plus = (&minus_b + &s).scale(&two_a.recip());
        let minus = (&minus_b - &s).scale(&two_a.recip());
        // with a2 > 0 the "+" root is the larger one
        let larger_is_plus = self.poly.a2.is_positive();
        match (self.choice, larger_is_plus) {
            (RootChoice::Larger, true) | (RootChoice::Smaller, false) => plus,
            _ => minus,
        }
    }
}

impl ApproxSource for QuadraticRoot {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        let limit = pow2(-(bits as i64));
        refine(bits, |b| {
            let v = self.enclose(b).to_approx();
            Ok((v.radius <= limit).then_some(v))
        })
    }
}

/// Explicit constant `c > 0` with `|r - p/q| >= c / q^2` for every rational
/// `p/q`, where `r` is the chosen root of `poly`.
///
/// `c = min(c2, 1/c1)` with `c1` an upper bound of `|a2 (x - r')|` over
/// `[r - c2, r + c2]` and `r'` the other root; the result is rounded down to a
/// dyadic rational.
pub fn liouville_constant(
    poly: &QuadraticPoly,
    _choice: RootChoice,
    c2: &BigRational,
) -> Result<BigRational> {
    if !poly.is_irreducible_real() {
        return Err(Error::ReduciblePolynomial);
    }
    let disc = BigRational::from_integer(poly.discriminant());
    let lead = BigRational::from_integer(poly.a2.abs());
    // c2 must stay below the root gap sqrt(D) / |a2|
    if !c2.is_positive() || c2 * c2 * &lead * &lead >= disc {
        return Err(Error::IsolationRadiusTooLarge);
    }
    // |a2 (x - r')| <= |a2| (|r - r'| + c2) = sqrt(D) + |a2| c2; the bound is
    // symmetric in the two roots
    let c1 = ceil_sqrt_on_grid(&disc, CONSTANT_BITS) + &lead * c2;
    let inv = floor_to_grid(&c1.recip(), CONSTANT_BITS);
    let c2_low = floor_to_grid(c2, CONSTANT_BITS);
    Ok(if inv < c2_low { inv } else { c2_low })
}
