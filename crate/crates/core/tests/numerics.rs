mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use spheresnap::numerics::{dirichlet_brute, dirichlet_witness};

fn rational_vec(k: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-10_000i64..10_000, 1i64..10_000), k)
        .prop_map(|v| v.into_iter().map(|(n, d)| q(n, d)).collect())
}

/// max_i |alpha_i - p_i / q| computed directly.
fn error_at(alpha: &[BigRational], p: &[BigInt], qq: &BigInt) -> BigRational {
    let qr = BigRational::from_integer(qq.clone());
    alpha
        .iter()
        .zip(p)
        .map(|(a, pi)| (a - BigRational::from_integer(pi.clone()) / &qr).abs())
        .fold(BigRational::from_integer(0.into()), |m, e| if e > m { e } else { m })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn brute_force_is_optimal_per_range(
        (alpha, n) in (1usize..=3).prop_flat_map(|k| (rational_vec(k), 1u64..=200))
    ) {
        let c = dirichlet_brute(&alpha, n);
        prop_assert!(c.q >= BigInt::one() && c.q <= BigInt::from(n));
        prop_assert_eq!(error_at(&alpha, &c.p, &c.q), c.error_bound.clone());
        for qq in 1..=n {
            let qb = BigInt::from(qq);
            let p: Vec<BigInt> = alpha
                .iter()
                .map(|a| (a * BigRational::from_integer(qb.clone())).round().to_integer())
                .collect();
            prop_assert!(c.error_bound <= error_at(&alpha, &p, &qb));
        }
    }

    #[test]
    fn witness_meets_dirichlet_bound(
        (alpha, n) in (1usize..=3).prop_flat_map(|k| (rational_vec(k), 1u64..=200))
    ) {
        let k = alpha.len();
        let c = dirichlet_witness(&alpha, n);
        prop_assert!(c.q >= BigInt::one() && c.q <= BigInt::from(n));
        prop_assert_eq!(error_at(&alpha, &c.p, &c.q), c.error_bound.clone());
        // (q err)^k n <= 1
        let scaled = &c.error_bound * BigRational::from_integer(c.q.clone());
        let pow = (0..k).fold(BigRational::one(), |acc, _| acc * &scaled);
        prop_assert!(pow * BigRational::from_integer(n.into()) <= BigRational::one());
    }
}

#[test]
fn smallest_error_can_miss_the_dirichlet_bound() {
    let alpha = [q(-1878, 4115)];
    let c = dirichlet_brute(&alpha, 38);
    assert_eq!((c.q.clone(), c.error_bound.clone()), (BigInt::from(35), q(22, 28805)));
    assert!(&c.error_bound * q(35 * 38, 1) > q(1, 1));
    let w = dirichlet_witness(&alpha, 38);
    assert!(&w.error_bound * BigRational::from_integer(&w.q * 38) <= q(1, 1));
}
