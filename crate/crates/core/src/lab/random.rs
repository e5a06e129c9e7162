use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::pow2;
use crate::sphere::CartesianPoint;

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite sample")
}

/// Approximately uniform point on `S^(d-1)` with exact rational (binary64)
/// coordinates. `d = 3` uses Marsaglia's rejection method; other dimensions
/// normalize a vector of Box-Muller Gaussians.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<CartesianPoint> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let coords: Vec<f64> = if d == 3 {
        loop {
            let v1: f64 = rng.gen_range(-1.0..1.0);
            let v2: f64 = rng.gen_range(-1.0..1.0);
            let s = v1 * v1 + v2 * v2;
            if s < 1.0 && s > 0.0 {
                let w = 2.0 * (1.0 - s).sqrt();
                break vec![v1 * w, v2 * w, 1.0 - 2.0 * s];
            }
        }
    } else {
        loop {
            let mut g = Vec::with_capacity(d);
            while g.len() < d {
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen();
                let r = (-2.0 * u1.ln()).sqrt();
                let a = std::f64::consts::TAU * u2;
                g.push(r * a.cos());
                if g.len() < d {
                    g.push(r * a.sin());
                }
            }
            let n = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-6 {
                break g.into_iter().map(|v| v / n).collect();
            }
        }
    };
    CartesianPoint::new(coords.into_iter().map(exact).collect())
}

/// `count` points from one ChaCha8 stream seeded with `seed`.
pub fn random_sphere_points(seed: u64, d: usize, count: usize) -> Result<Vec<CartesianPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_sphere_point(&mut rng, d)).collect()
}

/// Uniform point of the closed unit ball on the `2^-30` grid.
pub fn random_ball_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<BigRational> {
    let scale = 1i64 << 30;
    let unit = pow2(-30);
    loop {
        let z: Vec<i64> = (0..d).map(|_| rng.gen_range(-scale..=scale)).collect();
        let n: i128 = z.iter().map(|&v| v as i128 * v as i128).sum();
        if n <= (scale as i128) * (scale as i128) {
            return z
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)) * &unit)
                .collect();
        }
    }
}
