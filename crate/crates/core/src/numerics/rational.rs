use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Builds `num / den` in lowest terms with a positive denominator.
pub fn rational_canonicalize(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// True when `r` is stored in lowest terms with a positive denominator.
pub fn is_canonical(r: &BigRational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// Greatest common divisor by Lehmer's algorithm: runs of Euclidean steps
/// are simulated on the leading 64 bits and applied to the full operands at
/// once. Much faster than the binary algorithm for the few-hundred-bit
/// operands that show up per snapped point.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.magnitude().clone(), b.magnitude().clone());
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while b.bits() > 64 {
        let shift = a.bits() - 64;
        let mut x = (&a >> shift).to_u64().expect("64 leading bits") as i128;
        let mut y = (&b >> shift).to_u64().expect("64 leading bits") as i128;
        let (mut ca, mut cb, mut cc, mut cd) = (1i128, 0i128, 0i128, 1i128);
        // Knuth, Algorithm L: the quotient is certain while both bounds agree
        while y + cc > 0 && y + cd > 0 {
            let q = (x + ca) / (y + cc);
            if q != (x + cb) / (y + cd) {
                break;
            }
            (ca, cc) = (cc, ca - q * cc);
            (cb, cd) = (cd, cb - q * cd);
            (x, y) = (y, x - q * y);
        }
        if cb == 0 {
            let r = &a % &b;
            a = std::mem::replace(&mut b, r);
        } else {
            let (sa, sb) = (BigInt::from(a), BigInt::from(b));
            let na = &sa * ca + &sb * cb;
            let nb = sa * cc + sb * cd;
            a = na.into_parts().1;
            b = nb.into_parts().1;
        }
    }
    if b.is_zero() {
        return a.into();
    }
    let mut x = (a % &b).to_u64().expect("remainder below 2^64");
    let mut y = b.to_u64().expect("fits 64 bits");
    while x != 0 {
        (x, y) = (y % x, x);
    }
    BigInt::from(y)
}

pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd(a, b) * b).abs()
}

/// `n / d` in lowest terms using [`gcd`]; `d` must be nonzero.
pub(crate) fn reduced(n: BigInt, d: BigInt) -> BigRational {
    let g = gcd(&n, &d);
    let (n, d) = if g.is_one() { (n, d) } else { (n / &g, d / &g) };
    if d.is_negative() {
        BigRational::new_raw(-n, -d)
    } else {
        BigRational::new_raw(n, d)
    }
}

/// `2^k` for any signed exponent.
pub fn pow2(k: i64) -> BigRational {
    let mag = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new_raw(BigInt::one(), mag)
    }
}

/// Number of bits in `|n|`; zero has length 0.
pub fn bit_length(n: &BigInt) -> u64 {
    n.bits()
}

/// Nearest integer, ties to even.
pub fn round_half_even(r: &BigRational) -> BigInt {
    let floor = r.floor().to_integer();
    let frac = r - BigRational::from_integer(floor.clone());
    let half = BigRational::new_raw(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
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

/// Largest multiple of `2^-bits` that is `<= r`.
pub fn floor_to_grid(r: &BigRational, bits: u32) -> BigRational {
    if grid_exact(r, bits) {
        return r.clone();
    }
    let scaled = (r.numer() << bits as usize).div_floor(r.denom());
    BigRational::new(scaled, BigInt::one() << bits as usize)
}

/// Smallest multiple of `2^-bits` that is `>= r`.
pub fn ceil_to_grid(r: &BigRational, bits: u32) -> BigRational {
    if grid_exact(r, bits) {
        return r.clone();
    }
    let scaled = (r.numer() << bits as usize).div_ceil(r.denom());
    BigRational::new(scaled, BigInt::one() << bits as usize)
}

fn grid_exact(r: &BigRational, bits: u32) -> bool {
    let den = r.denom();
    // power of two no larger than 2^bits
    den.trailing_zeros().map_or(true, |tz| tz <= bits as u64 && den.bits() == tz + 1)
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    if &(&n * &n) != r.numer() {
        return None;
    }
    let d = r.denom().sqrt();
    if &(&d * &d) != r.denom() {
        return None;
    }
    Some(BigRational::new_raw(n, d))
}

/// A multiple of `2^-bits` that is `<= sqrt(r)`; `r` must be non-negative.
pub fn floor_sqrt_on_grid(r: &BigRational, bits: u32) -> BigRational {
    debug_assert!(!r.is_negative());
    let scaled = (r.numer() << (2 * bits as usize)).div_floor(r.denom());
    BigRational::new(scaled.sqrt(), BigInt::one() << bits as usize)
}

/// A multiple of `2^-bits` that is `>= sqrt(r)`; `r` must be non-negative.
pub fn ceil_sqrt_on_grid(r: &BigRational, bits: u32) -> BigRational {
    debug_assert!(!r.is_negative());
    let scaled = (r.numer() << (2 * bits as usize)).div_ceil(r.denom());
    let mut s = scaled.sqrt();
    if &s * &s < scaled {
        s += 1;
    }
    BigRational::new(s, BigInt::one() << bits as usize)
}

/// Smallest `b` with `2^-b <= target` (0 for targets of at least 1).
/// A zero target maps to `None`.
pub fn bits_for_target(target: &BigRational) -> Option<u32> {
    if !target.is_positive() {
        return None;
    }
    // 2^-b <= n/d  <=>  d <= n * 2^b
    let n = target.numer();
    let d = target.denom();
    if n >= d {
        return Some(0);
    }
    let mut b = (d.bits() - n.bits()).saturating_sub(1) as u32;
    while &(n << b as usize) < d {
        b += 1;
    }
    Some(b)
}

/// Lossy conversion for reporting.
pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // Shift into a range where both parts fit comfortably in an f64.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    let v = scaled.to_f64().unwrap_or(f64::NAN);
    v * 2f64.powi(-shift as i32)
}

pub(crate) fn sign_of(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_examples() {
        let cases = [(0i64, 5i64), (12, 18), (-12, 18), (1 << 40, 3 << 20), (17, 0)];
        for (a, b) in cases {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            assert_eq!(gcd(&a, &b), a.gcd(&b));
        }
        let big = (BigInt::from(3).pow(200) * 7, BigInt::from(3).pow(150) * 11 * 5);
        assert_eq!(gcd(&big.0, &big.1), big.0.gcd(&big.1));
        let fib = |n: usize| {
            let (mut a, mut b) = (BigInt::zero(), BigInt::one());
            for _ in 0..n {
                (a, b) = (b.clone(), a + b);
            }
            a
        };
        assert!(gcd(&fib(400), &fib(401)).is_one());
        assert_eq!(gcd(&fib(400), &fib(300)), fib(100));
        assert_eq!(reduced(BigInt::from(6), BigInt::from(-4)), BigRational::new((-3).into(), 2.into()));
    }

    proptest::proptest! {
        #[test]
        fn lehmer_gcd_matches_library(
            a in proptest::collection::vec(proptest::num::u32::ANY, 1..12),
            b in proptest::collection::vec(proptest::num::u32::ANY, 1..12),
            common in proptest::collection::vec(proptest::num::u32::ANY, 0..5),
        ) {
            let from = |v: &[u32]| BigInt::from(num_bigint::BigUint::new(v.to_vec()));
            let c = from(&common) + 1;
            let (x, y) = (from(&a) * &c, -from(&b) * &c);
            proptest::prop_assert_eq!(gcd(&x, &y), x.gcd(&y));
        }
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(rational_canonicalize(2.into(), 4.into()).unwrap(), q(1, 2));
        let r = rational_canonicalize(3.into(), (-6).into()).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rational_canonicalize(0.into(), 7.into()).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (0.into(), 1.into()));
        assert_eq!(
            rational_canonicalize(1.into(), 0.into()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn rounding_ties_go_to_even() {
        assert_eq!(round_half_even(&q(3, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&q(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&q(-3, 2)), BigInt::from(-2));
        assert_eq!(round_half_even(&q(4, 3)), BigInt::from(1));
        assert_eq!(round_half_even(&q(-4, 3)), BigInt::from(-1));
    }

    #[test]
    fn grid_rounding_brackets_value() {
        let third = q(1, 3);
        let lo = floor_to_grid(&third, 10);
        let hi = ceil_to_grid(&third, 10);
        assert!(lo < third && third < hi);
        assert_eq!(&hi - &lo, pow2(-10));
        assert_eq!(floor_to_grid(&q(3, 4), 10), q(3, 4));
        assert_eq!(floor_to_grid(&q(-1, 3), 2), q(-1, 2));
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(exact_sqrt(&q(9, 25)), Some(q(3, 5)));
        assert_eq!(exact_sqrt(&q(2, 1)), None);
        let two = q(2, 1);
        let lo = floor_sqrt_on_grid(&two, 40);
        let hi = ceil_sqrt_on_grid(&two, 40);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert_eq!(hi - lo, pow2(-40));
    }

    #[test]
    fn target_bits() {
        assert_eq!(bits_for_target(&q(1, 1000)), Some(10));
        assert_eq!(bits_for_target(&q(1, 1024)), Some(10));
        assert_eq!(bits_for_target(&q(1, 1025)), Some(11));
        assert_eq!(bits_for_target(&q(3, 1)), Some(0));
        assert_eq!(bits_for_target(&q(0, 1)), None);
    }

    #[test]
    fn lossy_conversion() {
        assert_eq!(to_f64(&q(3, 4)), 0.75);
        assert!((to_f64(&q(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((to_f64(&pow2(-200)) - 2f64.powi(-200)).abs() < 1e-70);
    }
}
