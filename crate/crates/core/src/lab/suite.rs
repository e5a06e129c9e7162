//! Named checks used by the verify command.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{congruence_admits, enumerate_float_sphere_points, is_signed_unit};
use super::random::{random_ball_point, random_sphere_point};
use super::stretch::{tau_norm_below_one, stretch_check, stretch_ratio};
use crate::error::{Error, Result};
use crate::numerics::{
    continued_fraction_approx, continued_fraction_convergents, dirichlet_brute, jacobi_perron_approx,
    liouville_constant, to_f64, QuadraticPoly, RootChoice,
};
use crate::par::{self, Execution};
use crate::snap::{certify_error_at, snap, SnapConfig, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Only signed unit vectors of fixed-point numbers lie on the sphere.
    NoFloats,
    /// The inverse projection stretches distances by at most 2.
    Stretch,
    /// Rotated outputs have `|tau|^2 = (1 + x_d)/(1 - x_d) < 1`.
    TauNorm,
    /// Continued-fraction convergents of cos 108 degrees against the
    /// Liouville lower bound.
    Liouville,
    /// CF and JP outputs are never better than the brute-force optimum.
    Dirichlet,
    /// BD outputs obey the Dirichlet-derived error and denominator bounds.
    BdBound,
    /// Certified and reference errors stay within epsilon.
    ErrorBound,
    /// FX denominators stay below `10 (d-1) / eps^2`.
    DenominatorBound,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::NoFloats,
        Check::Stretch,
        Check::TauNorm,
        Check::Liouville,
        Check::Dirichlet,
        Check::BdBound,
        Check::ErrorBound,
        Check::DenominatorBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::NoFloats => "no-floats",
            Check::Stretch => "stretch",
            Check::TauNorm => "tau-norm",
            Check::Liouville => "liouville",
            Check::Dirichlet => "dirichlet",
            Check::BdBound => "bd-bound",
            Check::ErrorBound => "error-bound",
            Check::DenominatorBound => "denominator-bound",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// Knobs shared by all checks. `None` picks the per-check default.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub d: Option<usize>,
    pub max_exp: Option<u32>,
    pub count: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            d: None,
            max_exp: None,
            count: 1000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub check: Check,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.check)?;
        for line in &self.lines {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

pub fn run_check(check: Check, opts: &SuiteOptions, exec: Execution) -> Result<Outcome> {
    let (passed, lines) = match check {
        Check::NoFloats => no_floats(opts)?,
        Check::Stretch => stretch(opts)?,
        Check::TauNorm => tau_norm(opts, exec)?,
        Check::Liouville => liouville()?,
        Check::Dirichlet => dirichlet(opts, exec)?,
        Check::BdBound => bd_bound(opts, exec)?,
        Check::ErrorBound => error_bound(opts, exec)?,
        Check::DenominatorBound => denominator_bound(opts, exec)?,
    };
    Ok(Outcome { check, passed, lines })
}

type Report = (bool, Vec<String>);

fn rng(opts: &SuiteOptions) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed)
}

fn sphere_points(opts: &SuiteOptions, d: usize) -> Result<Vec<Vec<BigRational>>> {
    let mut rng = rng(opts);
    (0..opts.count)
        .map(|_| random_sphere_point(&mut rng, d).map(|p| p.into_coords()))
        .collect()
}

fn collect_all(results: Vec<Result<bool>>) -> Result<usize> {
    let mut failures = 0;
    for r in results {
        if !r? {
            failures += 1;
        }
    }
    Ok(failures)
}

fn no_floats(opts: &SuiteOptions) -> Result<Report> {
    let cases: Vec<(usize, u32)> = match (opts.d, opts.max_exp) {
        (Some(d), Some(e)) => vec![(d, e)],
        (Some(d), None) => vec![(d, default_exp(d))],
        (None, Some(e)) => vec![(2, e), (3, e)],
        (None, None) => vec![(2, 6), (3, 4), (4, 1)],
    };
    let mut passed = true;
    let mut lines = Vec::new();
    for (d, max_exp) in cases {
        let points = enumerate_float_sphere_points(d, max_exp)?;
        let nontrivial = points
            .iter()
            .filter(|p| p.coords().iter().filter(|c| !c.is_zero()).count() > 1)
            .count();
        let mut line = format!(
            "d={d} E<={max_exp}: {} points, {} with more than one nonzero coordinate",
            points.len(),
            nontrivial
        );
        if d <= 3 {
            let admitted = congruence_survivors(d, max_exp);
            line.push_str(&format!(", {admitted} candidates pass the mod-4 test"));
            passed &= points.len() == 2 * d && nontrivial == 0 && admitted == 0;
        }
        lines.push(line);
    }
    Ok((passed, lines))
}

fn default_exp(d: usize) -> u32 {
    match d {
        2 => 6,
        3 => 4,
        _ => 1,
    }
}

/// Candidates other than signed unit vectors that survive the congruence
/// test; each scale is scanned separately.
fn congruence_survivors(d: usize, max_exp: u32) -> usize {
    let r = 1i64 << max_exp;
    let mut z = vec![-r; d];
    let mut count = 0;
    loop {
        if !is_signed_unit(&z, max_exp) && congruence_admits(&z, max_exp) {
            count += 1;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if z[i] < r {
                z[i] += 1;
                break;
            }
            z[i] = -r;
        }
    }
}

fn stretch(opts: &SuiteOptions) -> Result<Report> {
    let dims: Vec<usize> = opts.d.map_or(vec![2, 3, 10], |d| vec![d]);
    let mut passed = true;
    let mut lines = Vec::new();
    let mut rng = rng(opts);
    for d in dims {
        let k = d - 1;
        let mut failures = 0;
        for _ in 0..opts.count {
            let x = random_ball_point(&mut rng, k);
            let y = random_ball_point(&mut rng, k);
            if !stretch_check(&x, &y)? {
                failures += 1;
            }
        }
        let mut tight = true;
        for eps in [BigRational::new(1.into(), 8.into()), BigRational::new(1.into(), 1000.into())] {
            let ratio = stretch_ratio(&vec![BigRational::zero(); k], &tightness_point(k, &eps))?;
            let expected = BigRational::from_integer(4.into()) / (BigRational::one() + &eps * &eps);
            tight &= ratio == Some(expected);
        }
        passed &= failures == 0 && tight;
        lines.push(format!(
            "ball dimension {k}: {failures} of {} random pairs fail; ratio 4/(1+eps^2) attained: {tight}",
            opts.count
        ));
    }
    Ok((passed, lines))
}

/// A point of norm `eps`. Equal coordinates `eps/sqrt(k)` when `k` is a
/// square, else `eps` on one axis; the ratio only depends on the norm.
fn tightness_point(k: usize, eps: &BigRational) -> Vec<BigRational> {
    let root = (k as f64).sqrt().round() as usize;
    if root * root == k {
        vec![eps / BigRational::from_integer(root.into()); k]
    } else {
        let mut v = vec![BigRational::zero(); k];
        v[0] = eps.clone();
        v
    }
}

fn tau_norm(opts: &SuiteOptions, exec: Execution) -> Result<Report> {
    let d = opts.d.unwrap_or(3);
    let points = sphere_points(opts, d)?;
    let cfg = SnapConfig::bits(opts.max_exp.unwrap_or(31)).with_strategy(Strategy::Fx);
    let failures = collect_all(par::map(&points, exec, |x| tau_norm_below_one(&snap(x, &cfg)?)))?;
    Ok((
        failures == 0,
        vec![format!("d={d}: {failures} of {} FX outputs violate |tau|^2 < 1", points.len())],
    ))
}

/// Convergent statistics for `cos 108 = (1 - sqrt 5)/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvilleReport {
    pub convergents: usize,
    /// The explicit constant from an isolation radius of 1/2.
    pub constant: BigRational,
    /// `min q^2 |r - p/q|` over the convergents, and where it occurs.
    pub min_scaled_error: f64,
    pub min_at: BigInt,
    /// Every convergent keeps `q^2 |r - p/q| >= constant` and `>= 1/7`.
    pub above_constant: bool,
    /// Denominators where `q^2 |r - p/q| < 1/2`.
    pub below_half: Vec<BigInt>,
    /// `(q, q^2 |r - p/q|)` per convergent.
    pub scaled_errors: Vec<(BigInt, f64)>,
}

pub fn liouville_report(max_q: u64) -> Result<LiouvilleReport> {
    let f = QuadraticPoly::new(4, -2, -1);
    let root = f.root(RootChoice::Smaller)?;
    let constant = liouville_constant(&f, RootChoice::Smaller, &BigRational::new(1.into(), 2.into()))?;
    let convergents = continued_fraction_convergents(&root, &BigInt::from(max_q))?;
    let enc = root.enclose(4 * 64 + 64);
    let seventh = BigRational::new(1.into(), 7.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut min: Option<(BigRational, BigInt)> = None;
    let mut above_constant = true;
    let mut below_half = Vec::new();
    let mut scaled_errors = Vec::new();
    for (p, q) in &convergents {
        let x = BigRational::new(p.clone(), q.clone());
        let q2 = BigRational::from_integer(q * q);
        // distance from x to the enclosure gives lower and upper bounds
        let lo = (enc.lo() - &x).abs().min((enc.hi() - &x).abs()) * &q2;
        let hi = (enc.lo() - &x).abs().max((enc.hi() - &x).abs()) * &q2;
        if enc.contains(&x) || lo < constant || lo < seventh {
            above_constant = false;
        }
        if hi < half {
            below_half.push(q.clone());
        }
        scaled_errors.push((q.clone(), to_f64(&lo)));
        if min.as_ref().map_or(true, |(m, _)| &lo < m) {
            min = Some((lo, q.clone()));
        }
    }
    let (min_value, min_at) = min.ok_or_else(|| Error::Invariant("no convergents".into()))?;
    Ok(LiouvilleReport {
        convergents: convergents.len(),
        constant,
        min_scaled_error: to_f64(&min_value),
        min_at,
        above_constant,
        below_half,
        scaled_errors,
    })
}

fn liouville() -> Result<Report> {
    let r = liouville_report(1_000_000)?;
    let list: Vec<String> = r.below_half.iter().map(|q| q.to_string()).collect();
    Ok((
        r.above_constant,
        vec![
            format!(
                "{} convergents with q <= 10^6, constant {} ~ {:.6}",
                r.convergents,
                r.constant,
                to_f64(&r.constant)
            ),
            format!("min q^2 |err| = {:.6} at q = {}", r.min_scaled_error, r.min_at),
            format!("q^2 |err| < 1/2 at q = {}", if list.is_empty() { "none".into() } else { list.join(", ") }),
        ],
    ))
}

/// Random rational in `(0, 1)` with a denominator below `2^bits`.
fn random_fraction<R: Rng>(rng: &mut R, bits: u32) -> BigRational {
    let den: u64 = rng.gen_range(2..(1u64 << bits));
    let num = rng.gen_range(1..den);
    BigRational::new(num.into(), den.into())
}

fn dirichlet(opts: &SuiteOptions, exec: Execution) -> Result<Report> {
    let mut rng = rng(opts);
    let targets: Vec<(Vec<BigRational>, BigRational)> = (0..opts.count)
        .map(|i| {
            let dim = 1 + i % 2;
            let alpha = (0..dim).map(|_| random_fraction(&mut rng, 24)).collect();
            let target = BigRational::new(1.into(), BigInt::from(rng.gen_range(16u64..4096)));
            (alpha, target)
        })
        .collect();
    let failures = collect_all(par::map(&targets, exec, |(alpha, target)| {
        let c = if alpha.len() == 1 {
            continued_fraction_approx(&alpha[0], target)?
        } else {
            jacobi_perron_approx([&alpha[0], &alpha[1]], target)?
        };
        let err = c.error_against(alpha);
        let ok = &err <= target && err <= c.error_bound;
        // the brute force search is optimal over all q' <= q
        let q = c.q.to_u64().ok_or_else(|| Error::Invariant("denominator too large".into()))?;
        Ok(ok && err >= dirichlet_brute(alpha, q).error_against(alpha))
    }))?;
    Ok((
        failures == 0,
        vec![format!(
            "{failures} of {} CF/JP outputs miss their target or beat the brute-force optimum",
            targets.len()
        )],
    ))
}

fn bd_bound(opts: &SuiteOptions, exec: Execution) -> Result<Report> {
    let d = opts.d.unwrap_or(3);
    let n = 100u64;
    let points = sphere_points(opts, d)?;
    let cfg = SnapConfig::bits(opts.max_exp.unwrap_or(31)).with_strategy(Strategy::Bd(n));
    let failures = collect_all(par::map(&points, exec, |x| {
        let r = snap(x, &cfg)?;
        let q = r
            .preimage
            .iter()
            .fold(BigInt::one(), |acc, y| crate::numerics::rational::lcm(&acc, y.denom()));
        let err = certify_error_at(&r.point, x, 128)?;
        // (err q)^(2(d-1)) N^2 <= (4 (d-1))^(d-1)
        let k = (d - 1) as i32;
        let lhs = num_traits::pow::Pow::pow(&err * BigRational::from_integer(q.clone()), 2 * k)
            * BigRational::from_integer(BigInt::from(n * n));
        let rhs = BigRational::from_integer(BigInt::from(4 * (d - 1)).pow(k as u32));
        Ok(q <= BigInt::from(n) && lhs <= rhs && r.denominator <= &q * &q * 2)
    }))?;
    Ok((
        failures == 0,
        vec![format!("d={d} N={n}: {failures} of {} BD outputs violate the bounds", points.len())],
    ))
}

fn error_bound(opts: &SuiteOptions, exec: Execution) -> Result<Report> {
    let d = opts.d.unwrap_or(3);
    let points = sphere_points(opts, d)?;
    let mut passed = true;
    let mut lines = Vec::new();
    let exps: Vec<u32> = opts.max_exp.map_or(vec![23, 31, 53], |e| vec![e]);
    for e in exps {
        let cfg = SnapConfig::bits(e).with_strategy(Strategy::Fx);
        let budget = cfg.budget(d)?;
        let failures = collect_all(par::map(&points, exec, |x| {
            let r = snap(x, &cfg)?;
            let reference = certify_error_at(&r.point, x, 2 * e + 64)?;
            Ok(budget.admits(&r.certified_error) && budget.admits(&reference))
        }))?;
        passed &= failures == 0;
        lines.push(format!("d={d} e={e}: {failures} of {} points exceed eps", points.len()));
    }
    Ok((passed, lines))
}

fn denominator_bound(opts: &SuiteOptions, exec: Execution) -> Result<Report> {
    let d = opts.d.unwrap_or(3);
    let points = sphere_points(opts, d)?;
    let eps = BigRational::new(1.into(), 8.into());
    let cfg = SnapConfig::epsilon(eps.clone())?.with_strategy(Strategy::Fx);
    let budget = cfg.budget(d)?;
    let limit = BigRational::from_integer(BigInt::from(10 * (d - 1))) / (&eps * &eps);
    let failures = collect_all(par::map(&points, exec, |x| {
        let r = snap(x, &cfg)?;
        Ok(BigRational::from_integer(r.denominator.clone()) <= limit && budget.admits(&r.certified_error))
    }))?;
    Ok((
        failures == 0,
        vec![format!(
            "d={d} eps=1/8: {failures} of {} denominators exceed {}",
            points.len(),
            limit
        )],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nine".parse::<Check>().is_err());
    }

    #[test]
    fn every_check_passes_at_small_scale() {
        let opts = SuiteOptions {
            count: 20,
            ..SuiteOptions::default()
        };
        for c in Check::ALL {
            let out = run_check(c, &opts, Execution::Sequential).unwrap();
            assert!(out.passed, "{out}");
        }
    }

    #[test]
    fn circle_reports_four_points() {
        let opts = SuiteOptions {
            d: Some(2),
            max_exp: Some(6),
            ..SuiteOptions::default()
        };
        let out = run_check(Check::NoFloats, &opts, Execution::Sequential).unwrap();
        assert!(out.passed);
        assert!(out.lines[0].contains("4 points"), "{out}");
    }
}
