use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::random_sphere_point;
use super::stretch::tau_norm_below_one;
use crate::error::{Error, Result};
use crate::numerics::to_f64;
use crate::par::{self, Execution};
use crate::snap::{certify_error_at, snap, SnapConfig, SnapResult, Strategy, StrategyKind};

/// Mean Earth radius used to express errors in meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkCell {
    pub d: usize,
    pub e: u32,
    pub strategy: Strategy,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub dataset: String,
    pub d: usize,
    pub e: u32,
    pub strategy: String,
    pub mean_delta_meters: f64,
    pub mean_denominator_bits: f64,
    pub mean_time_us: f64,
    pub count: usize,
}

impl BenchmarkRow {
    pub const TSV_HEADER: &'static str = "dataset\td\te\tstrategy\tdelta_m\tq_bits\tt_us\tcount";
}

impl fmt::Display for BenchmarkRow {
    /// One tab-separated line matching [`BenchmarkRow::TSV_HEADER`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{:.4}\t{:.2}\t{:.1}\t{}",
            self.dataset,
            self.d,
            self.e,
            self.strategy,
            self.mean_delta_meters,
            self.mean_denominator_bits,
            self.mean_time_us,
            self.count
        )
    }
}

/// One snapped point of a benchmark: error against the reference direction and
/// common denominator size.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub d: usize,
    pub e: u32,
    pub strategy: StrategyKind,
    pub delta: f64,
    pub denominator_bits: u64,
}

impl fmt::Display for ScatterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}\t{}", self.delta, self.denominator_bits)
    }
}

fn strategy_label(s: &Strategy) -> String {
    match s {
        Strategy::Fx => "fx".into(),
        Strategy::Cf => "cf".into(),
        Strategy::Jp => "jp".into(),
        Strategy::Bd(n) => format!("bd:{n}"),
        Strategy::Auto => "auto".into(),
    }
}

fn check_run(cfg: &SnapConfig, d: usize, r: &SnapResult) -> Result<()> {
    let budget = cfg.budget(d)?;
    let fail = |what: &str| Err(Error::Invariant(format!("{what} violated (d={d}, e={})", budget.e)));
    if !matches!(r.strategy, StrategyKind::Bd(_)) && !budget.admits(&r.certified_error) {
        return fail("certified error bound");
    }
    if !r.preimage_denominator_bound_holds() {
        return fail("common denominator <= 2Q^2");
    }
    if r.strategy == StrategyKind::Fx {
        if !budget.denominator_within_fx_bound(&r.denominator, d) || r.denominator_bits > 2 * budget.e as u64 + 1 {
            return fail("fixed-point denominator bound");
        }
        if !tau_norm_below_one(r)? {
            return fail("|tau|^2 < 1");
        }
    }
    Ok(())
}

/// Snaps `count` random points per cell and summarizes each cell.
///
/// Points of cell `i` come from a ChaCha8 stream seeded with the cell's seed on
/// stream `i`, so results do not depend on `exec`. Every run is checked against
/// the per-point guarantees; a violation aborts with [`Error::Invariant`].
/// The error `delta` is certified against the input at `2e + 64` bits.
pub fn run_benchmark(cells: &[BenchmarkCell], exec: Execution) -> Result<(Vec<BenchmarkRow>, Vec<ScatterPoint>)> {
    let mut rows = Vec::with_capacity(cells.len());
    let mut scatter = Vec::new();
    for (index, cell) in cells.iter().enumerate() {
        if cell.count == 0 || cell.e == 0 {
            return Err(Error::Domain("benchmark cells need positive count and e".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cell.seed);
        rng.set_stream(index as u64);
        let points = (0..cell.count)
            .map(|_| random_sphere_point(&mut rng, cell.d).map(|p| p.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        let cfg = SnapConfig::bits(cell.e).with_strategy(cell.strategy);
        let runs = par::map(&points, exec, |x| -> Result<(SnapResult, f64, f64)> {
            let start = Instant::now();
            let r = snap(x, &cfg)?;
            let micros = start.elapsed().as_secs_f64() * 1e6;
            check_run(&cfg, cell.d, &r)?;
            let delta = certify_error_at(&r.point, x, 2 * cell.e + 64)?;
            Ok((r, to_f64(&delta), micros))
        });
        let (mut sum_delta, mut sum_bits, mut sum_time) = (0.0, 0.0, 0.0);
        for run in runs {
            let (r, delta, micros) = run?;
            sum_delta += delta;
            sum_bits += r.denominator_bits as f64;
            sum_time += micros;
            scatter.push(ScatterPoint {
                d: cell.d,
                e: cell.e,
                strategy: r.strategy,
                delta,
                denominator_bits: r.denominator_bits,
            });
        }
        let n = cell.count as f64;
        rows.push(BenchmarkRow {
            dataset: format!("uniform-S{}", cell.d - 1),
            d: cell.d,
            e: cell.e,
            strategy: strategy_label(&cell.strategy),
            mean_delta_meters: sum_delta / n * EARTH_RADIUS_M,
            mean_denominator_bits: sum_bits / n,
            mean_time_us: sum_time / n,
            count: cell.count,
        });
    }
    Ok((rows, scatter))
}
