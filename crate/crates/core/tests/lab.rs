mod common;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{on_sphere, q};
use spheresnap::lab::{
    congruence_admits, enumerate_float_sphere_points, tau_norm_below_one, random_ball_point, random_sphere_point,
    random_sphere_points, run_benchmark, stretch_check, stretch_ratio, BenchmarkCell, EARTH_RADIUS_M,
};
use spheresnap::par::Execution;
use spheresnap::{snap, Error, SnapConfig, Strategy, StrategyKind};

fn norm_sq(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, c| acc + c * c)
}

#[test]
fn generated_points_are_nearly_unit() {
    let tol = BigRational::new(1.into(), num_bigint::BigInt::from(1u64 << 40));
    for d in [2, 3, 4, 10] {
        for p in random_sphere_points(9, d, 500).unwrap() {
            assert!((norm_sq(p.coords()) - BigRational::one()).abs() <= tol, "d={d}");
        }
    }
}

#[test]
fn generator_is_deterministic() {
    assert_eq!(random_sphere_points(5, 3, 50).unwrap(), random_sphere_points(5, 3, 50).unwrap());
    assert_ne!(random_sphere_points(5, 3, 50).unwrap(), random_sphere_points(6, 3, 50).unwrap());
}

#[test]
fn octants_are_balanced() {
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = [0usize; 8];
    for _ in 0..n {
        let p = random_sphere_point(&mut rng, 3).unwrap();
        let idx = p
            .coords()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, c)| acc | (usize::from(c.is_negative()) << i));
        counts[idx] += 1;
    }
    for c in counts {
        let share = c as f64 / n as f64;
        assert!((share - 0.125).abs() <= 0.01, "{counts:?}");
    }
}

#[test]
fn ball_points_stay_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in [1, 2, 9] {
        for _ in 0..200 {
            let p = random_ball_point(&mut rng, k);
            assert_eq!(p.len(), k);
            assert!(norm_sq(&p) <= BigRational::one());
            // on the 2^-30 grid
            assert!(p.iter().all(|c| c.denom() <= &num_bigint::BigInt::from(1u64 << 30)));
        }
    }
}

#[test]
fn fixed_point_sphere_points() {
    assert_eq!(enumerate_float_sphere_points(2, 6).unwrap().len(), 4);
    assert_eq!(enumerate_float_sphere_points(3, 4).unwrap().len(), 6);
    let four = enumerate_float_sphere_points(4, 1).unwrap();
    let halves = four.iter().filter(|p| p.coords().iter().all(|c| c.abs() == q(1, 2))).count();
    assert_eq!(halves, 16);
    assert_eq!(four.len(), 16 + 8);
    assert!(four.iter().all(|p| on_sphere(p.coords())));
    assert!(matches!(enumerate_float_sphere_points(6, 10), Err(Error::ScanTooLarge { .. })));
    assert_eq!(enumerate_float_sphere_points(1, 1), Err(Error::DimensionTooSmall(1)));
}

#[test]
fn congruence_rejects_everything_nontrivial_in_low_dimension() {
    // sum z_i^2 = 4^E with at most 3 coordinates forces a signed unit vector
    let e = 5;
    let r = 1i64 << e;
    for a in -r..=r {
        for b in -r..=r {
            let z = [a, b, 0];
            let nontrivial = [a, b].iter().filter(|v| **v != 0).count() > 1;
            if nontrivial {
                assert!(!congruence_admits(&z, e), "{z:?}");
            }
        }
    }
    assert!(congruence_admits(&[1, 1, 1, 1], 1));
}

#[test]
fn stretch_bound_and_tightness() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in [1, 2, 9] {
        for _ in 0..300 {
            let (x, y) = (random_ball_point(&mut rng, k), random_ball_point(&mut rng, k));
            assert_eq!(stretch_check(&x, &y), Ok(true));
        }
        let x = random_ball_point(&mut rng, k);
        assert_eq!(stretch_check(&x, &x), Ok(true));
        assert_eq!(stretch_ratio(&x, &x), Ok(None));
    }
    let eps = q(1, 8);
    let want = BigRational::from_integer(4.into()) / (BigRational::one() + &eps * &eps);
    assert_eq!(stretch_ratio(&[q(0, 1)], &[eps.clone()]), Ok(Some(want.clone())));
    assert_eq!(stretch_ratio(&vec![q(0, 1); 9], &vec![&eps / q(3, 1); 9]), Ok(Some(want)));
    assert_eq!(stretch_check(&[q(1, 1), q(1, 1)], &[q(0, 1), q(0, 1)]), Err(Error::OutsideUnitBall));
    assert!(matches!(stretch_check(&[q(0, 1)], &[q(0, 1), q(0, 1)]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn tau_norm_below_one_after_fx() {
    let cfg = SnapConfig::bits(31).with_strategy(Strategy::Fx);
    for d in [2, 3, 5] {
        for p in random_sphere_points(21, d, 100).unwrap() {
            let r = snap(p.coords(), &cfg).unwrap();
            assert!(tau_norm_below_one(&r).unwrap());
        }
    }
}

#[test]
fn benchmark_rows_match_reference_ranges() {
    let cells: Vec<BenchmarkCell> = [(23, Strategy::Fx), (31, Strategy::Fx), (23, Strategy::Jp)]
        .into_iter()
        .map(|(e, strategy)| BenchmarkCell {
            d: 3,
            e,
            strategy,
            count: 1000,
            seed: 42,
        })
        .collect();
    let (rows, scatter) = run_benchmark(&cells, Execution::Parallel).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(scatter.len(), 3000);
    let (fx23, fx31, jp23) = (&rows[0], &rows[1], &rows[2]);
    assert!((44.0..=47.0).contains(&fx23.mean_denominator_bits), "{fx23}");
    assert!((0.1..=2.2).contains(&fx23.mean_delta_meters), "{fx23}");
    assert!((fx31.mean_denominator_bits - 62.0).abs() <= 1.0, "{fx31}");
    assert!(jp23.mean_denominator_bits < fx23.mean_denominator_bits, "{jp23}");
    for row in &rows {
        assert!(row.mean_delta_meters >= 0.0);
        assert_eq!(row.count, 1000);
        assert_eq!(row.dataset, "uniform-S2");
    }
    assert!(fx23.mean_denominator_bits <= 47.0);
    assert!(scatter[..1000].iter().all(|s| s.strategy == StrategyKind::Fx && s.delta >= 0.0));
    assert!(scatter[2000..].iter().all(|s| s.strategy == StrategyKind::Jp));
    // meters are delta scaled by the radius
    let mean_delta = scatter[..1000].iter().map(|s| s.delta).sum::<f64>() / 1000.0;
    assert!((mean_delta * EARTH_RADIUS_M - fx23.mean_delta_meters).abs() < 1e-9);
}

#[test]
fn benchmark_is_independent_of_execution() {
    let cells = [
        BenchmarkCell {
            d: 4,
            e: 17,
            strategy: Strategy::Cf,
            count: 30,
            seed: 1,
        },
        BenchmarkCell {
            d: 3,
            e: 17,
            strategy: Strategy::Auto,
            count: 30,
            seed: 1,
        },
    ];
    let (a, sa) = run_benchmark(&cells, Execution::Sequential).unwrap();
    let (b, sb) = run_benchmark(&cells, Execution::Parallel).unwrap();
    assert_eq!(sa, sb);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.mean_denominator_bits, y.mean_denominator_bits);
        assert_eq!(x.mean_delta_meters, y.mean_delta_meters);
    }
    let bad = BenchmarkCell {
        count: 0,
        ..cells[0].clone()
    };
    assert!(run_benchmark(&[bad], Execution::Sequential).is_err());
}
