#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Decides `a >= c * sqrt(n)` exactly (`n >= 0`).
pub fn ge_c_sqrt(a: &BigRational, c: &BigRational, n: &BigRational) -> bool {
    let lhs = a * a;
    let rhs = c * c * n;
    if !c.is_positive() {
        !a.is_negative() || lhs <= rhs
    } else {
        !a.is_negative() && lhs >= rhs
    }
}

/// Exact check that every `|p_i - x_i / |x|| <= b`, using
/// `(p_i - b) |x| <= x_i <= (p_i + b) |x|`.
pub fn within_exact(p: &[BigRational], x: &[BigRational], b: &BigRational) -> bool {
    let n = x.iter().fold(BigRational::zero(), |acc, v| acc + v * v);
    p.iter().zip(x).all(|(pi, xi)| {
        ge_c_sqrt(xi, &(pi - b), &n) && ge_c_sqrt(&-xi, &-(pi + b), &n)
    })
}

pub fn on_sphere(p: &[BigRational]) -> bool {
    p.iter().fold(BigRational::zero(), |acc, v| acc + v * v) == q(1, 1)
}

/// Gaussian direction with 53-bit rational coordinates (not normalized).
pub fn random_direction(rng: &mut impl Rng, d: usize) -> Vec<BigRational> {
    loop {
        let v: Vec<f64> = (0..d)
            .map(|_| {
                let (u1, u2): (f64, f64) = (rng.gen_range(f64::EPSILON..1.0), rng.gen());
                (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
            })
            .collect();
        if v.iter().any(|c| c.abs() > 1e-3) {
            return v.into_iter().map(from_f64).collect();
        }
    }
}

pub fn lcm_of_denominators(v: &[BigRational]) -> BigInt {
    v.iter()
        .fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
}
