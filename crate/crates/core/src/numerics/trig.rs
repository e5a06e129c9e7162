//! Certified sine and cosine of angles given in degrees.
//!
//! Angles are exact rationals. The only rational values of sine and cosine at
//! rational degree arguments are 0, ±1/2 and ±1; those are returned exactly.
//! Everything else is an enclosure computed with fixed-point Taylor series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::approx::{refine, ApproxSource, ApproxValue};
use super::interval::Interval;
use super::rational::{pow2, round_half_even};
use crate::error::Result;

const GUARD: u32 = 24;

fn atan_inv_fixed(x: u32, bits: u32) -> (BigInt, BigInt) {
    // sum_k (-1)^k / ((2k+1) x^(2k+1)) scaled by 2^bits, plus an error bound in ulps.
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits as usize) / x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, BigInt::from(3 * k + 2))
}

/// Enclosure of pi with width at most `2^-bits`.
pub fn pi_interval(bits: u32) -> Interval {
    let p = bits + GUARD;
    let (a5, e5) = atan_inv_fixed(5, p);
    let (a239, e239) = atan_inv_fixed(239, p);
    let mid = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    let den = BigInt::one() << p as usize;
    Interval::new(
        BigRational::new(&mid - &err, den.clone()),
        BigRational::new(mid + err, den),
    )
}

/// Fixed-point sine and cosine of a rational `c` with `|c| <= 1`.
fn sin_cos_fixed(c: &BigRational, bits: u32) -> (Interval, Interval) {
    let p = bits + GUARD;
    let one = BigInt::one() << p as usize;
    let shift2 = 2 * p as usize;
    let x = round_half_even(&(c * BigRational::from_integer(one.clone())));
    let x2 = &x * &x;

    let series = |first: BigInt, start: u64| {
        let mut term = first;
        let mut sum = term.clone();
        let mut n = start;
        let mut count: u64 = 0;
        loop {
            // term_{k+1} = -term_k * x^2 / ((n+1)(n+2))
            let num = &term * &x2;
            let den = BigInt::from((n + 1) * (n + 2)) << shift2;
            term = -(num / den);
            n += 2;
            count += 1;
            if term.is_zero() {
                break;
            }
            sum += &term;
        }
        (sum, count)
    };

    let (s, ns) = series(x.clone(), 1);
    let (co, nc) = series(one, 0);
    // truncation of each term plus the rounding of the argument (Lipschitz 1)
    let to_interval = |v: BigInt, n: u64| {
        let err = BigInt::from(2 * n + 4);
        let den = BigInt::one() << p as usize;
        Interval::new(
            BigRational::new(&v - &err, den.clone()),
            BigRational::new(v + err, den),
        )
    };
    (to_interval(s, ns), to_interval(co, nc))
}

fn exact_sin_deg(r: &BigRational) -> Option<BigRational> {
    // r already reduced into [0, 360)
    if !r.is_integer() {
        return None;
    }
    let v: i64 = match r.to_integer().try_into().ok()? {
        0 | 180 => 0,
        90 => 2,
        270 => -2,
        30 | 150 => 1,
        210 | 330 => -1,
        _ => return None,
    };
    Some(BigRational::new(v.into(), 2.into()))
}

fn reduce_degrees(deg: &BigRational) -> BigRational {
    let full = BigRational::from_integer(360.into());
    let k = (deg / &full).floor();
    deg - k * full
}

/// Enclosures of `sin(deg°)` and `cos(deg°)`, each of width at most `2^-bits`
/// unless exact.
pub fn sin_cos_deg(deg: &BigRational, bits: u32) -> (Interval, Interval) {
    let r = reduce_degrees(deg);
    let cos_arg = reduce_degrees(&(BigRational::from_integer(90.into()) - &r));
    if let (Some(s), Some(c)) = (exact_sin_deg(&r), exact_sin_deg(&cos_arg)) {
        return (Interval::point(s), Interval::point(c));
    }
    let p = bits + 4;
    let ninety = BigRational::from_integer(90.into());
    let k = round_half_even(&(&r / &ninety));
    let rest = &r - BigRational::from_integer(k.clone()) * &ninety;
    // |rest| <= 45 degrees, i.e. below pi/4 radians
    let angle = pi_interval(p + 2).scale(&(rest / BigRational::from_integer(180.into())));
    let (s, c) = sin_cos_fixed(&angle.center(), p);
    let rad = angle.radius();
    let (s, c) = (s.inflate(&rad).round_out(p + 2), c.inflate(&rad).round_out(p + 2));
    let (mut sin, mut cos) = match k.mod_floor(&BigInt::from(4)).try_into().unwrap_or(0u8) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    if let Some(v) = exact_sin_deg(&r) {
        sin = Interval::point(v);
    }
    if let Some(v) = exact_sin_deg(&cos_arg) {
        cos = Interval::point(v);
    }
    (clamp_unit(sin), clamp_unit(cos))
}

fn clamp_unit(i: Interval) -> Interval {
    let one = BigRational::one();
    let lo = if i.lo() < &-one.clone() { -one.clone() } else { i.lo().clone() };
    let hi = if i.hi() > &one { one } else { i.hi().clone() };
    Interval::new(lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
}

/// Refinable source for a product of sines and cosines of degree angles,
/// e.g. `cos(lat) * sin(lon)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigProduct {
    pub factors: Vec<(TrigFn, BigRational)>,
}

impl TrigProduct {
    pub fn new(factors: Vec<(TrigFn, BigRational)>) -> Self {
        Self { factors }
    }

    pub fn single(f: TrigFn, deg: BigRational) -> Self {
        Self::new(vec![(f, deg)])
    }

    fn enclose(&self, bits: u32) -> Interval {
        let extra = self.factors.len() as u32 + 2;
        self.factors
            .iter()
            .map(|(f, deg)| {
                let (s, c) = sin_cos_deg(deg, bits + extra);
                match f {
                    TrigFn::Sin => s,
                    TrigFn::Cos => c,
                }
            })
            .fold(Interval::point(BigRational::one()), |acc, v| {
                (&acc * &v).tidy(bits + extra)
            })
    }
}

impl ApproxSource for TrigProduct {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        let limit = pow2(-(bits as i64));
        refine(bits, |b| {
            let v = self.enclose(b).to_approx();
            Ok((v.radius <= limit).then_some(v))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::to_f64;

    fn deg(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn pi_enclosure_is_tight_and_correct() {
        let pi = pi_interval(200);
        assert!(pi.width() <= pow2(-200));
        // 3.14159265358979323846264338327950288419716939937510...
        let digits = BigRational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            BigInt::from(10).pow(50),
        );
        assert!(pi.max_distance(&digits) < BigRational::new(1.into(), BigInt::from(10).pow(49)));
    }

    #[test]
    fn niven_values_are_exact() {
        let (s, c) = sin_cos_deg(&deg(30), 64);
        assert_eq!(s, Interval::point(BigRational::new(1.into(), 2.into())));
        assert!(!c.is_point());
        let (s, c) = sin_cos_deg(&deg(-90), 64);
        assert_eq!(s, Interval::point(deg(-1)));
        assert_eq!(c, Interval::point(deg(0)));
        let (s, c) = sin_cos_deg(&deg(480), 64);
        assert!(!s.is_point());
        assert_eq!(c, Interval::point(BigRational::new((-1).into(), 2.into())));
    }

    #[test]
    fn agrees_with_f64_on_a_sweep() {
        for d in (-720..=720).step_by(7) {
            let a = BigRational::new(d.into(), 3.into());
            let (s, c) = sin_cos_deg(&a, 80);
            assert!(s.width() <= pow2(-80) && c.width() <= pow2(-80));
            let rad = (d as f64 / 3.0).to_radians();
            assert!((to_f64(&s.center()) - rad.sin()).abs() < 1e-14, "sin {d}/3");
            assert!((to_f64(&c.center()) - rad.cos()).abs() < 1e-14, "cos {d}/3");
        }
    }

    #[test]
    fn pythagorean_identity_is_enclosed() {
        let a = BigRational::new(12345.into(), 1000.into());
        let (s, c) = sin_cos_deg(&a, 120);
        let sum = &s.square() + &c.square();
        assert!(sum.contains(&BigRational::one()));
    }

    #[test]
    fn product_source_meets_requested_radius() {
        let src = TrigProduct::new(vec![
            (TrigFn::Cos, BigRational::new(487.into(), 10.into())),
            (TrigFn::Sin, BigRational::new(91.into(), 10.into())),
        ]);
        for bits in [10, 53, 200] {
            assert!(src.approx(bits).unwrap().within_bits(bits));
        }
        let exact = TrigProduct::new(vec![(TrigFn::Cos, deg(0)), (TrigFn::Cos, deg(0))]);
        assert!(exact.approx(500).unwrap().is_exact());
    }
}
