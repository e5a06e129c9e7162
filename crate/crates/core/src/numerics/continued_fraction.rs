use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::approx::{refine, ApproxSource, ApproxValue};
use super::rational::{bits_for_target, reduced};
use super::Convergent;
use crate::error::Result;

/// Unreduced fraction `(numerator, positive denominator)`.
type Frac = (BigInt, BigInt);

/// Endpoints `center -+ radius` of an enclosure, without gcd reduction.
fn endpoints(a: &ApproxValue) -> [Frac; 2] {
    let (cn, cd) = (a.center.numer(), a.center.denom());
    let (rn, rd) = (a.radius.numer(), a.radius.denom());
    let (c, r, d) = (cn * rd, rn * cd, cd * rd);
    [(&c - &r, d.clone()), (c + r, d)]
}

enum Step {
    Convergent(BigInt, BigInt),
    Uncertain,
    Done,
}

/// Expands the continued fraction shared by every real in `[lo, hi]`.
///
/// Cylinder sets of partial quotients are intervals, so a digit is certain as
/// soon as both endpoints agree on it. Endpoints are kept as unreduced
/// fractions with positive denominators.
struct IntervalExpansion {
    lo: (BigInt, BigInt),
    hi: (BigInt, BigInt),
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
    open_tail: bool,
    exhausted: bool,
}

impl IntervalExpansion {
    fn new(ends: &[Frac; 2]) -> Self {
        Self {
            lo: ends[0].clone(),
            hi: ends[1].clone(),
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
            open_tail: false,
            exhausted: false,
        }
    }

    fn next(&mut self) -> Step {
        if self.exhausted {
            return Step::Done;
        }
        if self.open_tail {
            return Step::Uncertain;
        }
        let a = self.lo.0.div_floor(&self.lo.1);
        if a != self.hi.0.div_floor(&self.hi.1) {
            return Step::Uncertain;
        }
        let p = &a * &self.p.1 + &self.p.0;
        let q = &a * &self.q.1 + &self.q.0;
        self.p = (std::mem::replace(&mut self.p.1, p.clone()), p.clone());
        self.q = (std::mem::replace(&mut self.q.1, q.clone()), q.clone());

        let lo = &self.lo.0 - &a * &self.lo.1;
        let hi = &self.hi.0 - &a * &self.hi.1;
        if hi.is_zero() {
            self.exhausted = true;
        } else if lo.is_zero() {
            self.open_tail = true;
        } else {
            // both remainders lie in (0, 1): invert and swap
            let (lo_den, hi_den) = (std::mem::take(&mut self.lo.1), std::mem::take(&mut self.hi.1));
            self.lo = (hi_den, hi);
            self.hi = (lo_den, lo);
        }
        Step::Convergent(p, q)
    }

    /// When the endpoints disagree on the next digit, the smallest integer
    /// above the lower endpoint closes a continued fraction whose value lies
    /// inside the enclosure.
    fn straddle(&self) -> Option<(BigInt, BigInt)> {
        if self.exhausted || self.open_tail {
            return None;
        }
        let a = self.lo.0.div_floor(&self.lo.1) + 1;
        if a > self.hi.0.div_floor(&self.hi.1) {
            return None;
        }
        Some((&a * &self.p.1 + &self.p.0, &a * &self.q.1 + &self.q.0))
    }
}

/// Integer test of `|e - p/q| <= target` and `<= 1/(2q^2)` at both endpoints
/// `e` of the enclosure.
fn meets(ends: &[Frac; 2], p: &BigInt, q: &BigInt, target: &BigRational) -> bool {
    ends.iter().all(|(num, den)| {
        // |p den - q num| / (q den)
        let gap = (p * den - q * num).abs();
        &gap * target.denom() <= target.numer() * q * den && &gap * q * 2 <= *den
    })
}

/// Smallest-index continued-fraction convergent `p/q` of `alpha` whose
/// certified error is at most `target` and at most `1/(2q^2)`.
///
/// The source is refined (doubling precision) whenever the next partial
/// quotient is not determined by the current enclosure. An enclosure that
/// straddles a rational ending the expansion at that digit yields that
/// rational, since refining would never settle the digit.
pub fn continued_fraction_approx<S: ApproxSource + ?Sized>(
    alpha: &S,
    target: &BigRational,
) -> Result<Convergent> {
    let start = bits_for_target(target).map_or(64, |b| b + 32);
    refine(start, |bits| {
        let ends = endpoints(&alpha.approx(bits)?);
        let mut cf = IntervalExpansion::new(&ends);
        loop {
            match cf.next() {
                Step::Convergent(p, q) => {
                    if let Some(c) = accept(&ends, p, q, target) {
                        return Ok(Some(c));
                    }
                }
                Step::Uncertain => {
                    return Ok(cf.straddle().and_then(|(p, q)| accept(&ends, p, q, target)));
                }
                Step::Done => return Ok(None),
            }
        }
    })
}

fn accept(ends: &[Frac; 2], p: BigInt, q: BigInt, target: &BigRational) -> Option<Convergent> {
    if !meets(ends, &p, &q, target) {
        return None;
    }
    // larger of |p den - q num| / (q den) over both endpoints
    let gaps = ends.clone().map(|(num, den)| ((&p * &den - &q * num).abs(), &q * den));
    let [(g0, d0), (g1, d1)] = gaps;
    let (g, d) = if &g0 * &d1 >= &g1 * &d0 { (g0, d0) } else { (g1, d1) };
    Some(Convergent {
        p: vec![p],
        q,
        error_bound: reduced(g, d),
    })
}

/// All convergents `(p, q)` of `alpha` with `q <= max_q`, with every partial
/// quotient certified.
pub fn continued_fraction_convergents<S: ApproxSource + ?Sized>(
    alpha: &S,
    max_q: &BigInt,
) -> Result<Vec<(BigInt, BigInt)>> {
    let start = 2 * max_q.bits() as u32 + 32;
    refine(start, |bits| {
        let ends = endpoints(&alpha.approx(bits)?);
        let mut cf = IntervalExpansion::new(&ends);
        let mut out = Vec::new();
        loop {
            match cf.next() {
                Step::Convergent(p, q) => {
                    if &q > max_q {
                        return Ok(Some(out));
                    }
                    out.push((p, q));
                }
                Step::Done => return Ok(Some(out)),
                Step::Uncertain => return Ok(None),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pow2, ApproxValue, FixedEnclosure, Interval};
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// |cos 108°| = (sqrt 5 - 1) / 4 enclosed to 2^-200
    fn golden_source() -> FixedEnclosure {
        let s5 = Interval::point(q(5, 1)).sqrt(210).unwrap();
        let v = (&s5 - &Interval::point(q(1, 1))).scale(&q(1, 4));
        FixedEnclosure(v.to_approx())
    }

    #[test]
    fn rational_input_terminates_exactly() {
        let c = continued_fraction_approx(&q(1, 3), &q(1, 1_000_000)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), (1.into(), 3.into()));
        assert!(c.error_bound.is_zero());
        let c = continued_fraction_approx(&q(0, 1), &q(1, 10)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), (0.into(), 1.into()));
    }

    #[test]
    fn enclosure_straddling_a_rational() {
        let narrow = FixedEnclosure(ApproxValue::new(q(1, 3), pow2(-200)));
        let c = continued_fraction_approx(&narrow, &q(1, 1 << 30)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), (1.into(), 3.into()));
        let narrow = FixedEnclosure(ApproxValue::new(q(-22, 7), pow2(-200)));
        let c = continued_fraction_approx(&narrow, &q(1, 1 << 30)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), ((-22).into(), 7.into()));
    }

    #[test]
    fn golden_section_example() {
        let c = continued_fraction_approx(&golden_source(), &q(1, 1000)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), (17.into(), 55.into()));
        assert!(c.error_bound <= q(1, 1000));
    }

    #[test]
    fn negative_values_use_floor_digits() {
        let c = continued_fraction_approx(&q(-7, 10), &q(0, 1)).unwrap();
        assert_eq!((c.p[0].clone(), c.q.clone()), ((-7).into(), 10.into()));
    }

    #[test]
    fn refines_when_digits_are_uncertain() {
        // a coarse fixed enclosure cannot reach a tight target
        let coarse = FixedEnclosure(ApproxValue::new(q(1, 3), pow2(-8)));
        assert!(continued_fraction_approx(&coarse, &q(1, 1 << 20)).is_err());
    }

    #[test]
    fn convergent_listing_matches_exact_expansion() {
        // 355/113 = [3; 7, 16]
        let list = continued_fraction_convergents(&q(355, 113), &BigInt::from(1000)).unwrap();
        let want: Vec<(BigInt, BigInt)> = vec![
            (3.into(), 1.into()),
            (22.into(), 7.into()),
            (355.into(), 113.into()),
        ];
        assert_eq!(list, want);
        let g = continued_fraction_convergents(&golden_source(), &BigInt::from(1_000_000)).unwrap();
        assert_eq!(g.len(), 10);
        for (p, qq) in g {
            let e = (BigRational::new(p, qq.clone()) - golden_source().0.center).abs();
            assert!(e * BigRational::from_integer(&qq * &qq) < q(1, 1));
        }
    }
}
