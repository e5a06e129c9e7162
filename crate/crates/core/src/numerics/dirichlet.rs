use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::round_half_even;
use super::Convergent;

fn candidate(alpha: &[BigRational], q: u64) -> Convergent {
    let qb = BigInt::from(q);
    let qr = BigRational::from_integer(qb.clone());
    let mut err = BigRational::zero();
    let mut p = Vec::with_capacity(alpha.len());
    for a in alpha {
        let scaled = a * &qr;
        let pi = round_half_even(&scaled);
        let e = num_traits::Signed::abs(&(scaled - BigRational::from_integer(pi.clone())));
        if e > err {
            err = e;
        }
        p.push(pi);
    }
    Convergent {
        p,
        q: qb,
        error_bound: err / qr,
    }
}

/// Exhaustive simultaneous approximation: scans `q = 1..=n` with `p_i` the
/// nearest integer to `q * alpha_i` and keeps the `q` of smallest
/// max-coordinate error (ties to the smaller `q`).
///
/// Cost is linear in `n`; it serves as the optimality oracle for the faster
/// strategies. The minimizer need not satisfy `err <= 1/(q n^(1/k))` itself;
/// see [`dirichlet_witness`].
pub fn dirichlet_brute(alpha: &[BigRational], n: u64) -> Convergent {
    assert!(n >= 1, "scan range must be positive");
    let mut best: Option<Convergent> = None;
    for q in 1..=n {
        let c = candidate(alpha, q);
        if best.as_ref().map_or(true, |b| c.error_bound < b.error_bound) {
            let done = c.error_bound.is_zero();
            best = Some(c);
            if done {
                break;
            }
        }
    }
    best.unwrap_or(Convergent {
        p: vec![BigInt::zero(); alpha.len()],
        q: BigInt::one(),
        error_bound: BigRational::zero(),
    })
}

/// Smallest `q <= n` with `err <= 1/(q n^(1/k))`, decided exactly as
/// `(q err)^k n <= 1`. Such a `q` always exists (Minkowski); the scan falls
/// back to [`dirichlet_brute`] only if it somehow does not.
pub fn dirichlet_witness(alpha: &[BigRational], n: u64) -> Convergent {
    assert!(n >= 1, "scan range must be positive");
    let k = alpha.len();
    let nr = BigRational::from_integer(n.into());
    for q in 1..=n {
        let c = candidate(alpha, q);
        let scaled = &c.error_bound * BigRational::from_integer(c.q.clone());
        let pow = (0..k).fold(BigRational::one(), |acc, _| acc * &scaled);
        if pow * &nr <= BigRational::one() {
            return c;
        }
    }
    dirichlet_brute(alpha, n)
}
