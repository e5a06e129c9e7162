use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spheresnap::io::{format_result, parse_record, CoordinateSource, InputKind, OutputFormat};
use spheresnap::lab::suite::{run_check, Check, SuiteOptions};
use spheresnap::lab::{run_benchmark, BenchmarkCell, BenchmarkRow};
use spheresnap::par::{self, Execution};
use spheresnap::sphere::{intersection_direction, point_on_minor_arc};
use spheresnap::{snap, Error, Objective, SnapConfig, Strategy};

/// Snap points to exact rational points on the unit sphere.
#[derive(Parser)]
#[command(name = "spheresnap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Snap one point per input line.
    Snap(SnapArgs),
    /// Snap random points and print mean error and denominator size per cell.
    Bench(BenchArgs),
    /// Run the built-in checks.
    Verify(VerifyArgs),
    /// Snap the intersection of two great-circle segments.
    Intersect(IntersectArgs),
}

#[derive(Args)]
struct Accuracy {
    /// Fixed-point significand bits e (default 31).
    #[arg(long, conflicts_with = "epsilon")]
    bits: Option<u32>,
    /// Error bound in (0, 1/8], e.g. 1e-9 or 1/1000.
    #[arg(long)]
    epsilon: Option<String>,
    /// fx, cf, jp, bd, bd:N or auto.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// What auto minimizes: bits or error.
    #[arg(long, default_value = "bits")]
    objective: String,
}

impl Accuracy {
    fn config(&self) -> Result<SnapConfig, Error> {
        let base = match &self.epsilon {
            Some(eps) => SnapConfig::epsilon(spheresnap::io::parse_number(eps)?)?,
            None => SnapConfig::bits(self.bits.unwrap_or(31)),
        };
        let objective = match self.objective.as_str() {
            "bits" => Objective::MinDenominatorBits,
            "error" => Objective::MinError,
            other => return Err(Error::Parse(format!("unknown objective '{other}'"))),
        };
        Ok(base
            .with_strategy(self.strategy.parse()?)
            .with_objective(objective))
    }
}

#[derive(Args)]
struct SnapArgs {
    /// Input file; stdin when absent.
    file: Option<PathBuf>,
    /// geo, spherical or cartesian.
    #[arg(long = "in", default_value = "cartesian")]
    kind: String,
    /// Point dimension; taken from the first record when absent.
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    accuracy: Accuracy,
    /// fractions, common, decimal:N or stats.
    #[arg(long, default_value = "common")]
    out: String,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    d: Vec<usize>,
    /// Significand bits, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "23,31,53")]
    e: Vec<u32>,
    /// Strategies, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "fx,cf,jp")]
    strategy: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write (error, denominator bits) pairs here.
    #[arg(long)]
    scatter: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check name, or all.
    #[arg(long, default_value = "all")]
    theorem: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long = "max-exp")]
    max_exp: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct IntersectArgs {
    /// Segment A start, e.g. "52.5 13.4" for geo input.
    #[arg(long, allow_hyphen_values = true)]
    a1: String,
    /// Segment A end.
    #[arg(long, allow_hyphen_values = true)]
    a2: String,
    /// Segment B start.
    #[arg(long, allow_hyphen_values = true)]
    b1: String,
    /// Segment B end.
    #[arg(long, allow_hyphen_values = true)]
    b2: String,
    /// geo, spherical or cartesian.
    #[arg(long = "in", default_value = "geo")]
    kind: String,
    #[command(flatten)]
    accuracy: Accuracy,
    #[arg(long, default_value = "common")]
    out: String,
}

/// Exit status for a library error: 2 when precision ran out, 1 otherwise.
fn status(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. }
        | Error::ErrorBoundViolated
        | Error::IterationCap { .. }
        | Error::InsufficientPrecision { .. }
        | Error::Invariant(_) => 2,
        _ => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: status(&e),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let jobs = match &cli.command {
        Command::Snap(a) => a.jobs,
        Command::Bench(a) => a.jobs,
        Command::Verify(a) => a.jobs,
        Command::Intersect(_) => None,
    };
    if let Some(n) = jobs {
        par::set_global_jobs(n);
    }
    let result = match cli.command {
        Command::Snap(a) => run_snap(a),
        Command::Bench(a) => run_bench(a),
        Command::Verify(a) => run_verify(a),
        Command::Intersect(a) => run_intersect(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("spheresnap: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

const CHUNK: usize = 1024;

fn run_snap(a: SnapArgs) -> Result<u8, Failure> {
    let kind: InputKind = a.kind.parse()?;
    let config = a.accuracy.config()?;
    let format: OutputFormat = a.out.parse()?;
    let input: Box<dyn BufRead> = match &a.file {
        Some(path) => Box::new(BufReader::new(File::open(path)?)),
        None => Box::new(io::stdin().lock()),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    let mut dim = a.dim;
    let mut lines = input.lines().enumerate();
    loop {
        // (line number, text) of the next chunk of records
        let mut chunk = Vec::with_capacity(CHUNK);
        for (i, line) in lines.by_ref() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            chunk.push((i + 1, text.to_string()));
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            out.flush()?;
            return Ok(0);
        }
        if dim.is_none() {
            dim = Some(
                parse_record(&chunk[0].1, kind, None)
                    .map_err(|e| at(chunk[0].0, e))?
                    .len(),
            );
        }
        let results = par::map(&chunk, Execution::Parallel, |(n, text)| {
            parse_record(text, kind, dim)
                .and_then(|x| snap(&x, &config))
                .map(|r| format_result(&r, &format))
                .map_err(|e| at(*n, e))
        });
        for r in results {
            match r {
                Ok(line) => writeln!(out, "{line}")?,
                Err(f) => {
                    out.flush()?;
                    return Err(f);
                }
            }
        }
    }
}

fn at(line: usize, e: Error) -> Failure {
    Failure {
        code: status(&e),
        message: format!("line {line}: {e}"),
    }
}

fn run_bench(a: BenchArgs) -> Result<u8, Failure> {
    let strategies = a
        .strategy
        .iter()
        .map(|s| s.parse::<Strategy>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut cells = Vec::new();
    for &d in &a.d {
        for &e in &a.e {
            for &strategy in &strategies {
                // JP is defined for S^2 only
                if strategy == Strategy::Jp && d != 3 {
                    continue;
                }
                cells.push(BenchmarkCell {
                    d,
                    e,
                    strategy,
                    count: a.count,
                    seed: a.seed,
                });
            }
        }
    }
    let (rows, scatter) = run_benchmark(&cells, Execution::Parallel)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "{}", BenchmarkRow::TSV_HEADER)?;
    for row in &rows {
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    if let Some(path) = a.scatter {
        let mut f = BufWriter::new(File::create(path)?);
        writeln!(f, "# d\te\tstrategy\tdelta\tq_bits")?;
        for p in &scatter {
            writeln!(f, "{}\t{}\t{}\t{p}", p.d, p.e, p.strategy)?;
        }
        f.flush()?;
    }
    Ok(0)
}

fn run_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let checks: Vec<Check> = if a.theorem.eq_ignore_ascii_case("all") {
        Check::ALL.to_vec()
    } else {
        vec![a.theorem.parse()?]
    };
    let opts = SuiteOptions {
        d: a.d,
        max_exp: a.max_exp,
        count: a.count,
        seed: a.seed,
    };
    let mut all_passed = true;
    for check in checks {
        let outcome = run_check(check, &opts, Execution::Parallel)?;
        all_passed &= outcome.passed;
        println!("{outcome}");
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run_intersect(a: IntersectArgs) -> Result<u8, Failure> {
    let kind: InputKind = a.kind.parse()?;
    let config = a.accuracy.config()?;
    let format: OutputFormat = a.out.parse()?;
    // endpoints are snapped first so the construction itself is exact
    let ends = [&a.a1, &a.a2, &a.b1, &a.b2]
        .into_iter()
        .map(|p| -> Result<_, Error> {
            let x: Vec<CoordinateSource> = parse_record(p, kind, Some(3))?;
            Ok(snap(&x, &config)?.point)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dir = intersection_direction(&ends[0], &ends[1], &ends[2], &ends[3])?;
    let neg: Vec<_> = dir.coords().iter().map(|c| -c).collect();
    let inside =
        |v: &[_]| -> Result<bool, Error> {
            Ok(point_on_minor_arc(&ends[0], &ends[1], v)?
                && point_on_minor_arc(&ends[2], &ends[3], v)?)
        };
    let v = if inside(dir.coords())? {
        dir.coords().to_vec()
    } else if inside(&neg)? {
        neg
    } else {
        return Err(Error::NoSegmentIntersection.into());
    };
    let r = snap(&v, &config)?;
    println!("{}", format_result(&r, &format));
    Ok(0)
}
