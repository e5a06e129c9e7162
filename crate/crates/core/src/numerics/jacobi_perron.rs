use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::approx::{refine, ApproxSource};
use super::rational::bits_for_target;
use super::Convergent;
use crate::error::{Error, Result};

/// Guard against pathological digit sequences.
pub const JP_ITERATION_CAP: usize = 20_000;

/// Integer state of the two-dimensional Jacobi-Perron map.
///
/// `v` is an integer vector proportional to `(1, alpha_1, alpha_2)`; the
/// columns of `basis` are integer vectors `(q, p_1, p_2)` with
/// `v_original = basis * v`. Column 0 is the newest convergent.
struct JacobiPerron {
    v: [BigInt; 3],
    basis: [[BigInt; 3]; 3],
}

impl JacobiPerron {
    fn new(v: [BigInt; 3]) -> Self {
        let z = BigInt::zero;
        let o = BigInt::one;
        Self {
            v,
            basis: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    fn column(&self, c: usize) -> (BigInt, [BigInt; 2]) {
        (
            self.basis[c][0].clone(),
            [self.basis[c][1].clone(), self.basis[c][2].clone()],
        )
    }

    /// Applies one digit step; returns false once the remainder vanishes.
    fn step(&mut self) -> bool {
        if self.v[1].is_zero() && self.v[2].is_zero() {
            return false;
        }
        if self.v[1].is_zero() {
            // permute coordinates 1 and 2 so the map stays defined
            self.v.swap(1, 2);
            self.basis.swap(1, 2);
        }
        let [v0, v1, v2] = &self.v;
        let (a2, r2) = v0.div_mod_floor(v1);
        let (a1, r1) = v2.div_mod_floor(v1);
        // v = M v' with M = [[a2, 0, 1], [1, 0, 0], [a1, 1, 0]]
        let new_v = [v1.clone(), r1, r2];
        let [c0, c1, c2] = &self.basis;
        let n0: [BigInt; 3] = std::array::from_fn(|i| &a2 * &c0[i] + &c1[i] + &a1 * &c2[i]);
        self.basis = [n0, c2.clone(), c0.clone()];
        self.v = new_v;
        true
    }
}

/// Simultaneous approximation of two reals in `[0, 1)` with one common
/// denominator, by the Jacobi-Perron algorithm.
///
/// Digits are taken from the exact rational center of the current enclosure;
/// every candidate is certified against the enclosure itself, so the returned
/// error bound holds for the underlying reals. The first convergent whose
/// certified max-coordinate error is at most `target` is returned.
pub fn jacobi_perron_approx<S: ApproxSource + ?Sized>(
    alpha: [&S; 2],
    target: &BigRational,
) -> Result<Convergent> {
    let start = bits_for_target(target).map_or(64, |b| b + 32);
    refine(start, |bits| {
        let a = alpha[0].approx(bits)?;
        let b = alpha[1].approx(bits)?;
        let one = BigRational::one();
        for c in [&a.center, &b.center] {
            if c.is_negative() || c >= &one {
                return Err(Error::Domain("Jacobi-Perron input outside [0, 1)".into()));
            }
        }
        let slack = if a.radius > b.radius { &a.radius } else { &b.radius };
        let den = a.center.denom().lcm(b.center.denom());
        let scale = BigRational::from_integer(den.clone());
        let v = [
            den,
            (&a.center * &scale).to_integer(),
            (&b.center * &scale).to_integer(),
        ];
        let centers = [a.center.clone(), b.center.clone()];
        let mut jp = JacobiPerron::new(v);
        for _ in 0..JP_ITERATION_CAP {
            let (q, p) = jp.column(0);
            let qr = BigRational::from_integer(q.clone());
            let err = centers
                .iter()
                .zip(&p)
                .map(|(c, pi)| (c - BigRational::from_integer(pi.clone()) / &qr).abs())
                .fold(BigRational::zero(), |m, e| if e > m { e } else { m })
                + slack;
            if &err <= target {
                return Ok(Some(Convergent {
                    p: p.to_vec(),
                    q,
                    error_bound: err,
                }));
            }
            if !jp.step() {
                // exact representation of the center reached; need a tighter enclosure
                return Ok(None);
            }
        }
        Err(Error::IterationCap {
            cap: JP_ITERATION_CAP,
        })
    })
}
