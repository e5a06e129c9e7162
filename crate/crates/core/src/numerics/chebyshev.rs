use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::Interval;

/// Integer polynomial in one variable; `coefficients[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPoly {
    pub degree: usize,
    pub coefficients: Vec<BigInt>,
}

impl ChebyshevPoly {
    fn from_coefficients(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self {
            degree: coefficients.len().saturating_sub(1),
            coefficients,
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Horner evaluation in interval arithmetic.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coefficients
            .iter()
            .rev()
            .fold(Interval::point(BigRational::zero()), |acc, c| {
                let prod = &acc * x;
                &prod + &Interval::point(BigRational::from_integer(c.clone()))
            })
    }

    pub fn mul(&self, other: &ChebyshevPoly) -> ChebyshevPoly {
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coefficients(out)
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::from_coefficients(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// The Chebyshev polynomial of the second kind `U_n`, from
/// `U_0 = 1`, `U_1 = 2x`, `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn chebyshev_u(n: usize) -> ChebyshevPoly {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return ChebyshevPoly::from_coefficients(prev);
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ChebyshevPoly::from_coefficients(cur)
}
