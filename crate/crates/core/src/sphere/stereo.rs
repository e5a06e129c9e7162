use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::point::UnitSpherePoint;
use crate::error::{Error, Result};
use crate::numerics::rational::lcm;

/// Inverse stereographic projection from the pole `(0, ..., 0, 1)`:
/// `y -> (2y / (1 + S), (S - 1) / (1 + S))` with `S = |y|^2`.
///
/// Total on `Q^(d-1)`; the image never hits the pole.
pub fn sigma(y: &[BigRational]) -> UnitSpherePoint {
    let (nums, m) = sigma_common(y);
    UnitSpherePoint::from_common(&nums, &m).expect("sigma lands on the sphere")
}

/// [`sigma`] in integer form: with `Q = lcm` of the denominators of `y` and
/// `P_i = y_i Q`, the image is `(2 Q P_1, ..., 2 Q P_{d-1}, S - Q^2) / m` where
/// `S = sum P_i^2` and `m = Q^2 + S`. The numerators and `m` are not reduced.
pub fn sigma_common(y: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let q = y.iter().fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()));
    let p: Vec<BigInt> = y.iter().map(|c| c.numer() * (&q / c.denom())).collect();
    let s = p.iter().fold(BigInt::zero(), |acc, v| acc + v * v);
    let q2 = &q * &q;
    let two_q = &q * 2;
    let mut nums: Vec<BigInt> = p.iter().map(|v| &two_q * v).collect();
    nums.push(&s - &q2);
    (nums, q2 + s)
}

/// Stereographic projection `x -> (x_1 / (1 - x_d), ..., x_{d-1} / (1 - x_d))`.
pub fn tau(x: &UnitSpherePoint) -> Result<Vec<BigRational>> {
    if x.is_pole() {
        return Err(Error::PoleInput);
    }
    let coords = x.coords();
    let (last, head) = coords.split_last().expect("dimension >= 2");
    let den = BigRational::one() - last;
    Ok(head.iter().map(|c| c / &den).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&[q(0, 1)]).coords(), &[q(0, 1), q(-1, 1)]);
        assert_eq!(sigma(&[q(1, 3)]).coords(), &[q(3, 5), q(-4, 5)]);
        assert_eq!(
            sigma(&[q(1, 2), q(1, 2)]).coords(),
            &[q(2, 3), q(2, 3), q(-1, 3)]
        );
        assert_eq!(sigma(&[q(3, 8)]).coords(), &[q(48, 73), q(-55, 73)]);
    }

    #[test]
    fn tau_examples() {
        let p = |v: Vec<BigRational>| UnitSpherePoint::new(v).unwrap();
        assert_eq!(tau(&p(vec![q(0, 1), q(-1, 1)])).unwrap(), vec![q(0, 1)]);
        assert_eq!(tau(&p(vec![q(3, 5), q(-4, 5)])).unwrap(), vec![q(1, 3)]);
        assert_eq!(
            tau(&p(vec![q(2, 3), q(2, 3), q(-1, 3)])).unwrap(),
            vec![q(1, 2), q(1, 2)]
        );
        assert_eq!(
            tau(&UnitSpherePoint::axis(3, 2, 1)),
            Err(Error::PoleInput)
        );
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-10_000_000i64..10_000_000, 1i64..1_000_000).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn tau_inverts_sigma(y in prop::collection::vec(rational(), 1..6)) {
            let x = sigma(&y);
            prop_assert_eq!(tau(&x).unwrap(), y);
        }

        #[test]
        fn sigma_inverts_tau(y in prop::collection::vec(rational(), 1..6)) {
            // every non-pole rational sphere point is sigma of something
            let x = sigma(&y);
            prop_assert_eq!(sigma(&tau(&x).unwrap()), x);
        }
    }
}
