//! Exact rational arithmetic, certified enclosures, and Diophantine
//! approximation algorithms.

mod approx;
mod chebyshev;
mod continued_fraction;
mod dirichlet;
pub(crate) mod fixed;
mod fixed_point;
mod interval;
mod jacobi_perron;
mod liouville;
pub(crate) mod rational;
pub mod trig;

pub use approx::{refine, ApproxSource, ApproxValue, FixedEnclosure, MAX_BITS};
pub use chebyshev::{chebyshev_u, ChebyshevPoly};
pub use continued_fraction::{continued_fraction_approx, continued_fraction_convergents};
pub use dirichlet::{dirichlet_brute, dirichlet_witness};
pub use fixed_point::fixed_point_round;
pub use interval::Interval;
pub use jacobi_perron::{jacobi_perron_approx, JP_ITERATION_CAP};
pub use liouville::{liouville_constant, QuadraticPoly, QuadraticRoot, RootChoice};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use rational::{
    bit_length, bits_for_target, ceil_sqrt_on_grid, ceil_to_grid, exact_sqrt, floor_sqrt_on_grid,
    floor_to_grid, is_canonical, pow2, rational_canonicalize, round_half_even, to_f64,
};

use num_traits::{Signed, Zero};

/// A simultaneous rational approximation `p / q` of a real vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: Vec<BigInt>,
    pub q: BigInt,
    /// Certified bound on `max_i |alpha_i - p_i / q|`.
    pub error_bound: BigRational,
}

impl Convergent {
    pub fn dim(&self) -> usize {
        self.p.len()
    }

    /// The approximating vector `p / q` in canonical form.
    pub fn values(&self) -> Vec<BigRational> {
        self.p
            .iter()
            .map(|p| BigRational::new(p.clone(), self.q.clone()))
            .collect()
    }

    /// Exact `max_i |alpha_i - p_i / q|` against a rational target.
    pub fn error_against(&self, alpha: &[BigRational]) -> BigRational {
        alpha
            .iter()
            .zip(self.values())
            .map(|(a, v)| (a - v).abs())
            .fold(BigRational::zero(), |acc, e| if e > acc { e } else { acc })
    }
}
