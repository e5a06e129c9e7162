use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::config::{Budget, Objective, SnapConfig, Strategy, StrategyKind};
use crate::error::{Error, Result};
use crate::numerics::fixed::{dyadic, norm, round_shift, FixedInterval};
use crate::numerics::rational::{gcd, lcm};
use crate::numerics::{
    bit_length, continued_fraction_approx, dirichlet_witness, fixed_point_round, jacobi_perron_approx, refine,
    exact_sqrt, ApproxSource, ApproxValue, FixedEnclosure, MAX_BITS,
};
use crate::sphere::rotation::rotation_for;
use crate::sphere::{sigma_common, AxisRotation, UnitSpherePoint};

/// Outcome of one snap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapResult {
    pub point: UnitSpherePoint,
    pub rotation: AxisRotation,
    pub strategy: StrategyKind,
    /// Rational preimage `y` in the rotated frame; `point` is the inverse
    /// rotation of `sigma(y)`.
    pub preimage: Vec<BigRational>,
    /// Certified upper bound on `max_i |point_i - x_i / |x||`.
    pub certified_error: BigRational,
    /// `point = numerators / denominator`, with `denominator` the least
    /// common denominator.
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
    pub denominator_bits: u64,
}

impl SnapResult {
    /// From the unreduced common form `nums / m` of a point on the sphere.
    fn new(
        nums: Vec<BigInt>,
        m: BigInt,
        rotation: AxisRotation,
        strategy: StrategyKind,
        preimage: Vec<BigRational>,
        certified_error: BigRational,
    ) -> Result<Self> {
        let g = nums.iter().fold(m.clone(), |g, n| if g.is_one() { g } else { gcd(&g, n) });
        let (numerators, denominator) = if g.is_one() {
            (nums, m)
        } else {
            (nums.iter().map(|n| n / &g).collect(), m / &g)
        };
        let point = UnitSpherePoint::from_common(&numerators, &denominator)?;
        let denominator_bits = bit_length(&denominator);
        Ok(Self {
            point,
            rotation,
            strategy,
            preimage,
            certified_error,
            numerators,
            denominator,
            denominator_bits,
        })
    }

    /// `denominator <= 2 Q^2` where `Q` is the common denominator of the
    /// preimage.
    pub fn preimage_denominator_bound_holds(&self) -> bool {
        let q = self
            .preimage
            .iter()
            .fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()));
        self.denominator <= &q * &q * 2
    }
}

/// Snaps `x` (any nonzero vector, not necessarily unit) to a rational point on
/// the unit sphere within the configured tolerance of `x / |x|`.
pub fn snap<S: ApproxSource>(x: &[S], config: &SnapConfig) -> Result<SnapResult> {
    let snapper = Snapper::new(x, config)?;
    match config.strategy {
        Strategy::Fx => snapper.run(StrategyKind::Fx),
        Strategy::Cf => snapper.run(StrategyKind::Cf),
        Strategy::Bd(n) => snapper.run(StrategyKind::Bd(n)),
        Strategy::Jp => match snapper.run(StrategyKind::Jp) {
            Err(Error::IterationCap { .. }) => snapper.run(StrategyKind::Fx),
            other => other,
        },
        Strategy::Auto => snapper.auto(config.objective),
    }
}

/// Runs every applicable strategy and keeps the best by `objective`; ties go
/// to the smaller certified error, then to FX, CF, JP in that order.
pub fn auto_select<S: ApproxSource>(x: &[S], config: &SnapConfig) -> Result<SnapResult> {
    Snapper::new(x, config)?.auto(config.objective)
}

/// Picks a rational `y` near the enclosed `tau`.
///
/// FX rounds to `2^-fx_bits` and needs each radius at most `2^-(fx_bits+2)`; CF and JP refine nothing beyond
/// the given enclosures and fail with [`Error::InsufficientPrecision`] when
/// those are too coarse for `budget.coordinate`.
pub fn choose_y(tau: &[ApproxValue], strategy: StrategyKind, budget: &Budget) -> Result<Vec<BigRational>> {
    let sources: Vec<FixedEnclosure> = tau.iter().cloned().map(FixedEnclosure).collect();
    let d = tau.len() + 1;
    match strategy {
        StrategyKind::Fx => tau.iter().map(|t| fixed_point_round(t, budget.fx_bits)).collect(),
        StrategyKind::Cf => sources
            .iter()
            .map(|s| continued_fraction_approx(s, &budget.coordinate).map(|c| c.values().remove(0)))
            .collect(),
        StrategyKind::Jp => {
            if d != 3 {
                return Err(Error::JacobiPerronDimension { dim: d });
            }
            let abs: Vec<FixedEnclosure> = tau
                .iter()
                .map(|t| FixedEnclosure(ApproxValue::new(t.center.abs(), t.radius.clone())))
                .collect();
            let c = jacobi_perron_approx([&abs[0], &abs[1]], &budget.coordinate)?;
            Ok(restore_signs(c.values(), tau.iter().map(|t| &t.center)))
        }
        StrategyKind::Bd(n) => {
            let centers: Vec<BigRational> = tau.iter().map(|t| t.center.clone()).collect();
            Ok(dirichlet_witness(&centers, n).values())
        }
    }
}

fn restore_signs<'a>(values: Vec<BigRational>, signs: impl Iterator<Item = &'a BigRational>) -> Vec<BigRational> {
    values
        .into_iter()
        .zip(signs)
        .map(|(v, s)| if s.is_negative() { -v } else { v })
        .collect()
}

/// Certified bound on `max_i |p_i - x_i / |x||` from enclosures of `x` at
/// `bits` bits of relative precision.
pub fn certify_error_at<S: ApproxSource>(p: &UnitSpherePoint, x: &[S], bits: u32) -> Result<BigRational> {
    if p.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: p.dim(),
        });
    }
    let view = PointView::locate(x, bits)?;
    let (nums, m) = p.common_form();
    refine(bits + 8, |prec| Ok(view.compute(prec)?.and_then(|c| c.error_bound(&nums, &m))))
}

/// Certified error bound at escalating precision until it is within the
/// configured tolerance; fails with [`Error::ErrorBoundViolated`] otherwise.
pub fn certify_error<S: ApproxSource>(p: &UnitSpherePoint, x: &[S], config: &SnapConfig) -> Result<BigRational> {
    let budget = config.budget(x.len())?;
    let view = PointView::locate(x, budget.e + config.guard_bits)?;
    let field = TauField::new(&view, budget.e + config.guard_bits);
    let (nums, m) = p.common_form();
    field.certify(&nums, &m, &budget)
}

/// Input vector with a power-of-two scale so that its largest coordinate has
/// magnitude in `[1/2, 2]`, and the axis rotation chosen for it.
struct PointView<'a, S> {
    x: &'a [S],
    shift: i64,
    rotation: AxisRotation,
    /// `x / |x|` when the input is exact and its norm is rational.
    exact_unit: Option<Vec<BigRational>>,
}

impl<'a, S: ApproxSource> PointView<'a, S> {
    fn locate(x: &'a [S], start: u32) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::DimensionTooSmall(x.len()));
        }
        let res = refine(start, |bits| {
            let vals = x.iter().map(|s| s.approx(bits)).collect::<Result<Vec<_>>>()?;
            if vals.iter().all(|v| v.is_exact() && v.center.is_zero()) {
                return Err(Error::ZeroDirection);
            }
            let centers: Vec<BigRational> = vals.iter().map(|v| v.center.clone()).collect();
            let rotation = match rotation_for(&centers) {
                Ok(r) => r,
                Err(_) => return Ok(None),
            };
            let lead = &vals[rotation.swap_index];
            let mag = lead.center.abs();
            if mag <= &lead.radius * BigRational::from_integer(2.into()) {
                return Ok(None);
            }
            let shift = mag.numer().bits() as i64 - mag.denom().bits() as i64;
            let exact_unit = if vals.iter().all(ApproxValue::is_exact) {
                exact_unit(&centers)
            } else {
                None
            };
            Ok(Some(PointView {
                x,
                shift,
                rotation,
                exact_unit,
            }))
        });
        match res {
            Err(Error::PrecisionExhausted { .. }) => Err(Error::ZeroDirection),
            other => other,
        }
    }

    /// `x * 2^-shift` in units of `2^-p`, unrotated.
    fn scaled(&self, p: u32) -> Result<Vec<FixedInterval>> {
        let k = p as i64 - self.shift;
        let request = (k + 2).clamp(1, MAX_BITS as i64) as u32;
        self.x
            .iter()
            .map(|s| Ok(FixedInterval::from_approx(&s.approx(request)?, k)))
            .collect()
    }

    /// Enclosures at `p` bits, or `None` when `p` is too low to separate the
    /// norm and the projection denominator from zero.
    fn compute(&self, p: u32) -> Result<Option<Computed>> {
        if let Some(unit) = &self.exact_unit {
            let mut rotated = unit.clone();
            self.rotation.apply_in_place(&mut rotated, |v| -v)?;
            let last = rotated.pop().expect("dimension >= 2");
            let den = BigRational::one() - last;
            let tau = rotated.iter().map(|c| c / &den).collect();
            return Ok(Some(Computed {
                p,
                enc: Enclosure::Exact {
                    unit: unit.clone(),
                    tau,
                },
            }));
        }
        let x = self.scaled(p)?;
        let n = norm(&x);
        if !n.lo.is_positive() {
            return Ok(None);
        }
        let mut rotated = x.clone();
        self.rotation.apply_in_place(&mut rotated, FixedInterval::neg)?;
        let last = rotated.pop().expect("dimension >= 2");
        let den = FixedInterval {
            lo: &n.lo - &last.hi,
            hi: &n.hi - &last.lo,
        };
        let tau = rotated.iter().map(|c| c.div(&den, p)).collect::<Option<Vec<_>>>();
        Ok(tau.map(|tau| Computed {
            p,
            enc: Enclosure::Fixed { x, n, tau },
        }))
    }
}

/// Exact `x / |x|` for exact input, when `|x|` is rational.
fn exact_unit(x: &[BigRational]) -> Option<Vec<BigRational>> {
    let dyadic_input = x.iter().all(|c| c.denom().magnitude().count_ones() == 1);
    if dyadic_input {
        // integer form z / 2^k: the norm is rational iff sum z_i^2 is a square
        let k = x.iter().map(|c| c.denom().bits() - 1).max().unwrap_or(0);
        let z: Vec<BigInt> = x
            .iter()
            .map(|c| c.numer() << (k - (c.denom().bits() - 1)) as usize)
            .collect();
        let s = z.iter().fold(BigInt::zero(), |acc, v| acc + v * v);
        let r = s.sqrt();
        if &r * &r != s {
            return None;
        }
        return Some(z.into_iter().map(|v| BigRational::new(v, r.clone())).collect());
    }
    let s = x.iter().fold(BigRational::zero(), |acc, v| acc + v * v);
    let r = exact_sqrt(&s)?;
    Some(x.iter().map(|c| c / &r).collect())
}

enum Enclosure {
    /// Scaled input, its norm, and `tau`, all in units of `2^-p`.
    Fixed {
        x: Vec<FixedInterval>,
        n: FixedInterval,
        tau: Vec<FixedInterval>,
    },
    Exact {
        unit: Vec<BigRational>,
        tau: Vec<BigRational>,
    },
}

/// Enclosures of the input direction and of `tau` of the rotated unit vector
/// at `p` bits.
struct Computed {
    p: u32,
    enc: Enclosure,
}

impl Computed {
    fn tau_within(&self, bits: u32) -> bool {
        match &self.enc {
            Enclosure::Fixed { tau, .. } => tau.iter().all(|t| t.within_bits(self.p, bits)),
            Enclosure::Exact { .. } => true,
        }
    }

    fn tau_approx(&self, i: usize) -> ApproxValue {
        match &self.enc {
            Enclosure::Fixed { tau, .. } => tau[i].to_approx(self.p),
            Enclosure::Exact { tau, .. } => ApproxValue::exact(tau[i].clone()),
        }
    }

    fn tau_centers(&self) -> Vec<BigRational> {
        match &self.enc {
            Enclosure::Fixed { tau, .. } => tau.iter().map(|t| dyadic(&t.lo + &t.hi, self.p + 1)).collect(),
            Enclosure::Exact { tau, .. } => tau.clone(),
        }
    }

    /// Nearest points of the `2^-e` grid, ties to even; needs `tau_within(e + 2)`.
    fn tau_on_grid(&self, e: u32) -> Result<Vec<BigRational>> {
        match &self.enc {
            Enclosure::Fixed { tau, .. } => Ok(tau
                .iter()
                .map(|t| dyadic(round_shift(&(&t.lo + &t.hi), self.p + 1 - e), e))
                .collect()),
            Enclosure::Exact { tau, .. } => tau
                .iter()
                .map(|t| fixed_point_round(&ApproxValue::exact(t.clone()), e))
                .collect(),
        }
    }

    /// Bound on `max_i |nums_i / m - x_i / |x||`.
    fn error_bound(&self, nums: &[BigInt], m: &BigInt) -> Option<BigRational> {
        match &self.enc {
            Enclosure::Fixed { x, n, .. } => {
                let mut worst = BigInt::zero();
                for (xi, ni) in x.iter().zip(nums) {
                    let u = xi.div(n, self.p)?;
                    let scaled = ni << self.p as usize;
                    let lo = scaled.div_floor(m);
                    let hi = -((-scaled).div_floor(m));
                    for gap in [&hi - &u.lo, &u.hi - &lo] {
                        if gap > worst {
                            worst = gap;
                        }
                    }
                }
                Some(dyadic(worst, self.p))
            }
            Enclosure::Exact { unit, .. } => Some(
                unit.iter()
                    .zip(nums)
                    .map(|(u, ni)| (BigRational::new(ni.clone(), m.clone()) - u).abs())
                    .fold(BigRational::zero(), |acc, e| if e > acc { e } else { acc }),
            ),
        }
    }
}

/// Lazily refined, shared enclosure of `tau`.
struct TauField<'v, 'a, S> {
    view: &'v PointView<'a, S>,
    base: u32,
    cache: Mutex<Option<Arc<Computed>>>,
}

impl<'v, 'a, S: ApproxSource> TauField<'v, 'a, S> {
    fn new(view: &'v PointView<'a, S>, base: u32) -> Self {
        Self {
            view,
            base,
            cache: Mutex::new(None),
        }
    }

    fn store(&self, c: Computed) -> Arc<Computed> {
        let c = Arc::new(c);
        let mut slot = self.cache.lock().expect("cache lock");
        if slot.as_ref().map_or(true, |old| old.p < c.p) {
            *slot = Some(c.clone());
        }
        c
    }

    /// Enclosures whose `tau` radii are at most `2^-bits`.
    fn get(&self, bits: u32) -> Result<Arc<Computed>> {
        if let Some(c) = &*self.cache.lock().expect("cache lock") {
            if c.tau_within(bits) {
                return Ok(c.clone());
            }
        }
        let c = refine((bits + 8).max(self.base + 8), |p| {
            Ok(self.view.compute(p)?.filter(|c| c.tau_within(bits)))
        })?;
        Ok(self.store(c))
    }

    /// Certified error of `nums / m`, refined until it fits the budget.
    fn certify(&self, nums: &[BigInt], m: &BigInt, budget: &Budget) -> Result<BigRational> {
        let start = self.get(0)?;
        if let Some(err) = start.error_bound(nums, m) {
            if budget.admits(&err) {
                return Ok(err);
            }
        }
        let res = refine(start.p * 2, |p| {
            Ok(match self.view.compute(p)? {
                Some(c) => c.error_bound(nums, m).filter(|e| budget.admits(e)),
                None => None,
            })
        });
        match res {
            Err(Error::PrecisionExhausted { .. }) => Err(Error::ErrorBoundViolated),
            other => other,
        }
    }
}

struct TauCoordinate<'f, 'v, 'a, S> {
    field: &'f TauField<'v, 'a, S>,
    index: usize,
    abs: bool,
}

impl<S: ApproxSource> ApproxSource for TauCoordinate<'_, '_, '_, S> {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        let c = self.field.get(bits)?;
        let mut v = c.tau_approx(self.index);
        if self.abs {
            v.center = v.center.abs();
        }
        Ok(v)
    }
}

struct Snapper<'a, S> {
    x: &'a [S],
    view: PointView<'a, S>,
    budget: Budget,
    guard: u32,
}

impl<'a, S: ApproxSource> Snapper<'a, S> {
    fn new(x: &'a [S], config: &'a SnapConfig) -> Result<Self> {
        let budget = config.budget(x.len())?;
        let view = PointView::locate(x, config.guard_bits.max(8))?;
        Ok(Self {
            x,
            view,
            budget,
            guard: config.guard_bits,
        })
    }

    fn choose(&self, kind: StrategyKind, field: &TauField<'_, 'a, S>) -> Result<Vec<BigRational>> {
        let d = self.x.len();
        let e = self.budget.e;
        match kind {
            StrategyKind::Fx => {
                let k = self.budget.fx_bits;
                field.get(k + self.guard)?.tau_on_grid(k)
            }
            StrategyKind::Cf => (0..d - 1)
                .map(|index| {
                    let src = TauCoordinate { field, index, abs: false };
                    continued_fraction_approx(&src, &self.budget.coordinate).map(|c| c.values().remove(0))
                })
                .collect(),
            StrategyKind::Jp => {
                if d != 3 {
                    return Err(Error::JacobiPerronDimension { dim: d });
                }
                let a = TauCoordinate { field, index: 0, abs: true };
                let b = TauCoordinate { field, index: 1, abs: true };
                let c = jacobi_perron_approx([&a, &b], &self.budget.coordinate)?;
                let t = field.get(e + self.guard)?;
                Ok(restore_signs(c.values(), t.tau_centers().iter()))
            }
            StrategyKind::Bd(n) => {
                let t = field.get(e + self.guard)?;
                Ok(dirichlet_witness(&t.tau_centers(), n).values())
            }
        }
    }

    fn finish(&self, kind: StrategyKind, y: Vec<BigRational>, field: &TauField<'_, 'a, S>) -> Result<SnapResult> {
        let (mut nums, m) = sigma_common(&y);
        // last numerator is |P|^2 - Q^2: positive exactly when y leaves the ball
        if nums.last().is_some_and(Signed::is_positive) {
            return Err(Error::OutsideUnitBall);
        }
        self.view.rotation.invert_in_place(&mut nums, |v| -v)?;
        let err = match kind {
            StrategyKind::Bd(_) => field
                .get(0)?
                .error_bound(&nums, &m)
                .ok_or(Error::InsufficientPrecision { needed: self.budget.e + self.guard })?,
            _ => field.certify(&nums, &m, &self.budget)?,
        };
        SnapResult::new(nums, m, self.view.rotation.clone(), kind, y, err)
    }

    fn run_with(&self, kind: StrategyKind, field: &TauField<'_, 'a, S>) -> Result<SnapResult> {
        let y = self.choose(kind, field)?;
        self.finish(kind, y, field)
    }

    fn field(&self) -> TauField<'_, 'a, S> {
        TauField::new(&self.view, self.budget.e + self.guard)
    }

    fn run(&self, kind: StrategyKind) -> Result<SnapResult> {
        self.run_with(kind, &self.field())
    }

    fn auto(&self, objective: Objective) -> Result<SnapResult> {
        let field = self.field();
        let mut kinds = vec![StrategyKind::Fx, StrategyKind::Cf];
        if self.x.len() == 3 {
            kinds.push(StrategyKind::Jp);
        }
        let mut best: Option<SnapResult> = None;
        let mut first_err = None;
        for kind in kinds {
            match self.run_with(kind, &field) {
                Ok(r) => {
                    if best.as_ref().map_or(true, |b| better(&r, b, objective)) {
                        best = Some(r);
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        best.ok_or_else(|| first_err.unwrap_or(Error::Invariant("no strategy ran".into())))
    }
}

/// Strictly better under `objective`; equal candidates keep the earlier one.
fn better(r: &SnapResult, b: &SnapResult, objective: Objective) -> bool {
    let by_bits = r.denominator_bits.cmp(&b.denominator_bits);
    let by_error = r.certified_error.cmp(&b.certified_error);
    match objective {
        Objective::MinDenominatorBits => by_bits.then(by_error).is_lt(),
        Objective::MinError => by_error.then(by_bits).is_lt(),
    }
}
