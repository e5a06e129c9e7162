use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{lcm, reduced};

/// A rational vector of dimension at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartesianPoint {
    coords: Vec<BigRational>,
}

impl CartesianPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        Ok(Self { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> BigRational {
        norm_squared(&self.coords)
    }
}

impl From<UnitSpherePoint> for CartesianPoint {
    fn from(p: UnitSpherePoint) -> Self {
        Self { coords: p.coords }
    }
}

pub(crate) fn norm_squared(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, c| acc + c * c)
}

/// A rational point with `sum x_i^2 = 1` in exact arithmetic.
///
/// The only constructors verify the sphere equation, so every value of this
/// type is exactly on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitSpherePoint {
    coords: Vec<BigRational>,
}

impl UnitSpherePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if !norm_squared(&coords).is_one() {
            return Err(Error::NotOnSphere);
        }
        Ok(Self { coords })
    }

    /// Builds `n_i / m` after checking `sum n_i^2 = m^2` on the integers.
    pub fn from_common(numerators: &[BigInt], m: &BigInt) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numerators.len() < 2 {
            return Err(Error::DimensionTooSmall(numerators.len()));
        }
        let sum = numerators.iter().fold(BigInt::zero(), |acc, n| acc + n * n);
        if sum != m * m {
            return Err(Error::NotOnSphere);
        }
        Ok(Self {
            coords: numerators
                .iter()
                .map(|n| reduced(n.clone(), m.clone()))
                .collect(),
        })
    }

    /// The `i`-th signed unit vector (`sign` is `1` or `-1`).
    pub fn axis(dim: usize, i: usize, sign: i64) -> Self {
        let mut coords = vec![BigRational::zero(); dim];
        coords[i] = BigRational::from_integer(sign.into());
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_pole(&self) -> bool {
        self.coords.last().is_some_and(One::is_one)
    }

    pub fn negated(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Numerators over the least common denominator `m`.
    pub fn common_form(&self) -> (Vec<BigInt>, BigInt) {
        let m = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()));
        let nums = self
            .coords
            .iter()
            .map(|c| c.numer() * (&m / c.denom()))
            .collect();
        (nums, m)
    }

    /// Permutes coordinates / flips signs without re-checking the equation.
    pub(crate) fn map_coords(&self, f: impl FnOnce(&mut Vec<BigRational>)) -> Self {
        let mut coords = self.coords.clone();
        f(&mut coords);
        Self { coords }
    }
}

impl fmt::Display for UnitSpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn construction_checks_sphere_equation() {
        assert!(UnitSpherePoint::new(vec![q(3, 5), q(-4, 5)]).is_ok());
        assert_eq!(
            UnitSpherePoint::new(vec![q(3, 5), q(3, 5)]),
            Err(Error::NotOnSphere)
        );
        assert_eq!(
            UnitSpherePoint::new(vec![q(1, 1)]),
            Err(Error::DimensionTooSmall(1))
        );
        let p = UnitSpherePoint::from_common(&[48.into(), (-55).into()], &73.into()).unwrap();
        assert_eq!(p.coords(), &[q(48, 73), q(-55, 73)]);
    }

    #[test]
    fn common_form_uses_least_common_denominator() {
        let p = UnitSpherePoint::new(vec![q(2, 3), q(2, 3), q(-1, 3)]).unwrap();
        let (n, m) = p.common_form();
        assert_eq!(m, BigInt::from(3));
        assert_eq!(n, vec![2.into(), 2.into(), (-1).into()]);
        let axis = UnitSpherePoint::axis(3, 2, -1);
        assert_eq!(axis.common_form().1, BigInt::one());
    }
}
