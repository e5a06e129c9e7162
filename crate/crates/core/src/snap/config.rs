use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numerics::{ceil_sqrt_on_grid, exact_sqrt, floor_sqrt_on_grid, pow2};

/// Default scan limit for the brute-force Dirichlet strategy.
pub const DEFAULT_BD_LIMIT: u64 = 1_000_000;

/// Requested accuracy: significand bits `e` of the preimage grid, or an
/// explicit infinity-norm tolerance.
///
/// The two are related by `e = ceil(-log2(eps / (2 sqrt(d-1))))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Accuracy {
    Bits(u32),
    Epsilon(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Fx,
    Cf,
    Jp,
    /// Brute-force Dirichlet scan over denominators `1..=N`.
    Bd(u64),
    Auto,
}

/// The strategy that actually produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyKind {
    Fx,
    Cf,
    Jp,
    Bd(u64),
}

impl StrategyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Fx => "fx",
            StrategyKind::Cf => "cf",
            StrategyKind::Jp => "jp",
            StrategyKind::Bd(_) => "bd",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "fx" => Strategy::Fx,
            "cf" => Strategy::Cf,
            "jp" => Strategy::Jp,
            "bd" => Strategy::Bd(DEFAULT_BD_LIMIT),
            "auto" => Strategy::Auto,
            other => match other.strip_prefix("bd:").map(str::parse::<u64>) {
                Some(Ok(n)) if n >= 1 => Strategy::Bd(n),
                _ => return Err(Error::Parse(format!("unknown strategy '{s}'"))),
            },
        })
    }
}

/// What [`Strategy::Auto`] minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    #[default]
    MinDenominatorBits,
    MinError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapConfig {
    pub accuracy: Accuracy,
    pub strategy: Strategy,
    pub guard_bits: u32,
    pub objective: Objective,
}

impl Default for SnapConfig {
    fn default() -> Self {
        Self::bits(31)
    }
}

impl SnapConfig {
    pub fn bits(e: u32) -> Self {
        Self {
            accuracy: Accuracy::Bits(e),
            strategy: Strategy::Auto,
            guard_bits: 32,
            objective: Objective::MinDenominatorBits,
        }
    }

    /// Explicit tolerance; must lie in `(0, 1/8]`.
    pub fn epsilon(eps: BigRational) -> Result<Self> {
        check_epsilon(&eps)?;
        Ok(Self {
            accuracy: Accuracy::Epsilon(eps),
            ..Self::bits(0)
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_guard_bits(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits.max(1);
        self
    }

    /// Error budget for dimension `d`.
    pub fn budget(&self, d: usize) -> Result<Budget> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let dm1 = BigRational::from_integer(BigInt::from(d - 1));
        let four = BigRational::from_integer(4.into());
        match &self.accuracy {
            Accuracy::Bits(e) => {
                if *e == 0 {
                    return Err(Error::Domain("significand bits must be positive".into()));
                }
                let coordinate = pow2(-(*e as i64));
                let epsilon_sq = &four * dm1 * &coordinate * &coordinate;
                Ok(Budget {
                    e: *e,
                    fx_bits: *e,
                    epsilon_sq,
                    coordinate,
                })
            }
            Accuracy::Epsilon(eps) => {
                check_epsilon(eps)?;
                let epsilon_sq = eps * eps;
                let coord_sq = &epsilon_sq / (four * dm1);
                // smallest e with 4^-e <= coord_sq
                let mut e: u32 = 0;
                while pow2(-2 * e as i64) > coord_sq {
                    e += 1;
                }
                let coordinate = exact_sqrt(&coord_sq).unwrap_or_else(|| {
                    floor_sqrt_on_grid(&coord_sq, e + self.guard_bits)
                });
                // rounding to 2^-k costs at most 2^-(k+1), plus the enclosure
                // radius of 2^-(k+guard); the coarsest such grid keeps
                // 2 Q^2 below 8 (d-1) / eps^2
                let slack = BigRational::one() + pow2(-(self.guard_bits as i64));
                let mut fx_bits = 1;
                while pow2(-(fx_bits as i64 + 1)) * &slack > coordinate {
                    fx_bits += 1;
                }
                Ok(Budget {
                    e,
                    fx_bits,
                    epsilon_sq,
                    coordinate,
                })
            }
        }
    }
}

fn check_epsilon(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() || eps > &BigRational::new(BigInt::one(), 8.into()) {
        return Err(Error::EpsilonOutOfRange);
    }
    Ok(())
}

/// Error budget of one snap in a fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Significand bits `e` matching the accuracy.
    pub e: u32,
    /// Grid `2^-fx_bits` used by FX. Equals `e` in bits mode; one bit
    /// coarser when an explicit epsilon leaves room for it.
    pub fx_bits: u32,
    /// `eps^2`, exact.
    pub epsilon_sq: BigRational,
    /// Rational lower bound on the per-coordinate tolerance
    /// `eps / (2 sqrt(d-1))` for the preimage.
    pub coordinate: BigRational,
}

impl Budget {
    /// `err <= eps`, decided exactly.
    pub fn admits(&self, err: &BigRational) -> bool {
        !err.is_negative() && err * err <= self.epsilon_sq
    }

    /// Dyadic upper bound on `eps` for display.
    pub fn epsilon_upper(&self) -> BigRational {
        exact_sqrt(&self.epsilon_sq).unwrap_or_else(|| ceil_sqrt_on_grid(&self.epsilon_sq, 64))
    }

    /// `m <= 10 (d-1) / eps^2`, decided exactly.
    pub fn denominator_within_fx_bound(&self, m: &BigInt, d: usize) -> bool {
        BigRational::from_integer(m.clone()) * &self.epsilon_sq
            <= BigRational::from_integer(BigInt::from(10 * (d - 1)))
    }
}
