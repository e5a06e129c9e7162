use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::point::{CartesianPoint, UnitSpherePoint};
use crate::error::{Error, Result};

/// Basis change that swaps axis `swap_index` with the last axis and then
/// optionally negates the last axis. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisRotation {
    pub dim: usize,
    pub swap_index: usize,
    pub flip_sign: bool,
}

impl AxisRotation {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            swap_index: dim - 1,
            flip_sign: false,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.swap_index == self.dim - 1 && !self.flip_sign
    }

    fn check<T>(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Swap, then flip.
    pub fn apply_in_place<T>(&self, v: &mut [T], neg: impl Fn(&T) -> T) -> Result<()> {
        self.check(v)?;
        let last = self.dim - 1;
        v.swap(self.swap_index, last);
        if self.flip_sign {
            v[last] = neg(&v[last]);
        }
        Ok(())
    }

    /// Flip, then swap.
    pub fn invert_in_place<T>(&self, v: &mut [T], neg: impl Fn(&T) -> T) -> Result<()> {
        self.check(v)?;
        let last = self.dim - 1;
        if self.flip_sign {
            v[last] = neg(&v[last]);
        }
        v.swap(self.swap_index, last);
        Ok(())
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut out = v.to_vec();
        self.apply_in_place(&mut out, |c| -c)?;
        Ok(out)
    }

    pub fn invert(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut out = v.to_vec();
        self.invert_in_place(&mut out, |c| -c)?;
        Ok(out)
    }

    pub fn apply_point(&self, p: &UnitSpherePoint) -> Result<UnitSpherePoint> {
        self.check(p.coords())?;
        Ok(p.map_coords(|c| {
            self.apply_in_place(c, |x| -x).expect("dimension checked");
        }))
    }

    pub fn invert_point(&self, p: &UnitSpherePoint) -> Result<UnitSpherePoint> {
        self.check(p.coords())?;
        Ok(p.map_coords(|c| {
            self.invert_in_place(c, |x| -x).expect("dimension checked");
        }))
    }
}

/// Chooses the rotation after which the last coordinate has the largest
/// magnitude and is negative. Ties go to the smallest index.
pub fn normalize_rotation(x: &CartesianPoint) -> Result<(CartesianPoint, AxisRotation)> {
    let rot = rotation_for(x.coords())?;
    let rotated = CartesianPoint::new(rot.apply(x.coords())?)?;
    Ok((rotated, rot))
}

pub(crate) fn rotation_for(coords: &[BigRational]) -> Result<AxisRotation> {
    let mut best: Option<(usize, BigRational)> = None;
    for (i, c) in coords.iter().enumerate() {
        let a = c.abs();
        if best.as_ref().map_or(true, |(_, b)| &a > b) {
            best = Some((i, a));
        }
    }
    match best {
        Some((i, a)) if !a.is_zero() => Ok(AxisRotation {
            dim: coords.len(),
            swap_index: i,
            flip_sign: coords[i].is_positive(),
        }),
        _ => Err(Error::ZeroDirection),
    }
}
