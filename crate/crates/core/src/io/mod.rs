//! Text records in and out.
//!
//! Numbers are parsed exactly: `3/5`, `-0.25`, `1.5e-3` all become rationals.
//! Angles are in degrees and feed [`TrigProduct`] sources, so a geographic or
//! spherical record can be refined to any precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{round_half_even, to_f64};
use crate::numerics::trig::{TrigFn, TrigProduct};
use crate::numerics::{ApproxSource, ApproxValue};
use crate::snap::SnapResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    /// `lat lon` in degrees; x toward 0N 0E, z toward the north pole.
    Geo,
    /// `d - 1` angles in degrees. For `d = 3` these are the colatitude from
    /// +z and the azimuth from +x.
    Spherical,
    /// `d` coordinates.
    Cartesian,
}

impl FromStr for InputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "geo" => Ok(InputKind::Geo),
            "spherical" => Ok(InputKind::Spherical),
            "cartesian" => Ok(InputKind::Cartesian),
            other => Err(Error::Parse(format!("unknown input kind '{other}'"))),
        }
    }
}

/// One input coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordinateSource {
    Exact(BigRational),
    Trig(TrigProduct),
}

impl CoordinateSource {
    pub fn exact_value(&self) -> Option<&BigRational> {
        match self {
            CoordinateSource::Exact(v) => Some(v),
            CoordinateSource::Trig(_) => None,
        }
    }
}

impl ApproxSource for CoordinateSource {
    fn approx(&self, bits: u32) -> Result<ApproxValue> {
        match self {
            CoordinateSource::Exact(v) => Ok(ApproxValue::exact(v.clone())),
            CoordinateSource::Trig(t) => t.approx(bits),
        }
    }
}

/// Parses an integer, fraction or decimal (optionally with exponent) exactly.
pub fn parse_number(token: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed number '{token}'"));
    if let Some((n, d)) = token.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match token.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = token[i + 1..].parse().map_err(|_| bad())?;
            (&token[..i], e)
        }
        None => (token, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !(int.bytes().chain(frac.bytes())).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let all: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        BigRational::from_integer(all * ten.pow(scale as u32))
    } else {
        BigRational::new(all, ten.pow((-scale) as u32))
    };
    if negative {
        v = -v;
    }
    Ok(v)
}

fn tokens(line: &str) -> Vec<&str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect()
}

fn arity(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn trig(factors: &[(TrigFn, &BigRational)]) -> CoordinateSource {
    CoordinateSource::Trig(TrigProduct::new(factors.iter().map(|(f, a)| (*f, (*a).clone())).collect()))
}

/// Parses one record into coordinate sources. `d` fixes the output dimension;
/// `None` takes it from the record.
pub fn parse_record(line: &str, kind: InputKind, d: Option<usize>) -> Result<Vec<CoordinateSource>> {
    let values = tokens(line).into_iter().map(parse_number).collect::<Result<Vec<_>>>()?;
    match kind {
        InputKind::Cartesian => {
            arity(d.unwrap_or(values.len()), values.len())?;
            if values.len() < 2 {
                return Err(Error::DimensionTooSmall(values.len()));
            }
            Ok(values.into_iter().map(CoordinateSource::Exact).collect())
        }
        InputKind::Geo => {
            arity(3, d.unwrap_or(3))?;
            arity(2, values.len())?;
            let (lat, lon) = (&values[0], &values[1]);
            let deg = |v: i64| BigRational::from_integer(v.into());
            if lat.abs() > deg(90) {
                return Err(Error::Domain(format!("latitude {lat} outside [-90, 90]")));
            }
            if lon.abs() > deg(180) {
                return Err(Error::Domain(format!("longitude {lon} outside [-180, 180]")));
            }
            use TrigFn::{Cos, Sin};
            Ok(vec![
                trig(&[(Cos, lat), (Cos, lon)]),
                trig(&[(Cos, lat), (Sin, lon)]),
                trig(&[(Sin, lat)]),
            ])
        }
        InputKind::Spherical => {
            let d = d.unwrap_or(values.len() + 1);
            arity(d.saturating_sub(1), values.len())?;
            if d < 2 {
                return Err(Error::DimensionTooSmall(d));
            }
            Ok(spherical(&values))
        }
    }
}

/// `x_1 = s_1..s_{n-1} c_n`, `x_2 = s_1..s_n`, and for `k >= 3`
/// `x_k = s_1..s_{n-k+1} c_{n-k+2}`, where `n = d - 1` and `s_i, c_i` are the
/// sine and cosine of the i-th angle.
fn spherical(angles: &[BigRational]) -> Vec<CoordinateSource> {
    use TrigFn::{Cos, Sin};
    let n = angles.len();
    let sines = |k: usize| angles[..k].iter().map(|a| (Sin, a)).collect::<Vec<_>>();
    let mut out = Vec::with_capacity(n + 1);
    let mut first = sines(n - 1);
    first.push((Cos, &angles[n - 1]));
    out.push(trig(&first));
    out.push(trig(&sines(n)));
    for k in 3..=n + 1 {
        let mut f = sines(n + 1 - k);
        f.push((Cos, &angles[n + 1 - k]));
        out.push(trig(&f));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// `n/m` per coordinate, each reduced.
    Fractions,
    /// `n_1 .. n_d m` over the shared reduced denominator.
    Common,
    /// Fixed number of decimal places, rounded half to even.
    Decimal(usize),
    /// Strategy, denominator bits and certified error.
    Stats,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "fractions" => Ok(OutputFormat::Fractions),
            "common" => Ok(OutputFormat::Common),
            "stats" => Ok(OutputFormat::Stats),
            "decimal" => Ok(OutputFormat::Decimal(17)),
            _ => match s.strip_prefix("decimal:").map(str::parse) {
                Some(Ok(n)) => Ok(OutputFormat::Decimal(n)),
                _ => Err(Error::Parse(format!("unknown output format '{s}'"))),
            },
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Fractions => f.write_str("fractions"),
            OutputFormat::Common => f.write_str("common"),
            OutputFormat::Decimal(n) => write!(f, "decimal:{n}"),
            OutputFormat::Stats => f.write_str("stats"),
        }
    }
}

/// `r` rounded half to even at `places` decimals, without exponent.
pub fn format_decimal(r: &BigRational, places: usize) -> String {
    let scaled = round_half_even(&(r * BigRational::from_integer(BigInt::from(10).pow(places as u32))));
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = scaled.abs().to_string();
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{int}.{frac}")
}

pub fn format_result(r: &SnapResult, format: &OutputFormat) -> String {
    let join = |parts: Vec<String>| parts.join(" ");
    match format {
        OutputFormat::Fractions => join(
            r.point
                .coords()
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        ),
        OutputFormat::Common => {
            let mut parts: Vec<String> = r.numerators.iter().map(|n| n.to_string()).collect();
            parts.push(r.denominator.to_string());
            join(parts)
        }
        OutputFormat::Decimal(n) => join(r.point.coords().iter().map(|c| format_decimal(c, *n)).collect()),
        OutputFormat::Stats => format!(
            "{}\t{}\t{:e}",
            r.strategy,
            r.denominator_bits,
            to_f64(&r.certified_error)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snap::{snap, SnapConfig, Strategy};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_number("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_number("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_number("+2E2").unwrap(), q(200, 1));
        assert_eq!(parse_number(".5").unwrap(), q(1, 2));
        assert_eq!(parse_number("7.").unwrap(), q(7, 1));
        for bad in ["", "-", "1/0", "a", "1e", "1.2.3", "--1", "1e99999"] {
            assert!(parse_number(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn geo_axes_are_exact() {
        let at = |line: &str| -> Vec<BigRational> {
            parse_record(line, InputKind::Geo, None)
                .unwrap()
                .iter()
                .map(|s| {
                    let v = s.approx(8).unwrap();
                    assert!(v.radius.is_zero(), "{line}");
                    v.center
                })
                .collect()
        };
        assert_eq!(at("0 0"), vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(at("90 0"), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(at("0, 90"), vec![q(0, 1), q(1, 1), q(0, 1)]);
    }

    #[test]
    fn geo_rejects_bad_records() {
        assert!(matches!(parse_record("91 0", InputKind::Geo, None), Err(Error::Domain(_))));
        assert!(matches!(parse_record("0 -180.5", InputKind::Geo, None), Err(Error::Domain(_))));
        assert!(parse_record("1 2 3", InputKind::Geo, None).is_err());
        assert!(parse_record("1 2", InputKind::Geo, Some(4)).is_err());
        assert!(parse_record("1 x", InputKind::Geo, None).is_err());
    }

    #[test]
    fn spherical_convention() {
        let v = |line: &str, d| -> Vec<f64> {
            parse_record(line, InputKind::Spherical, d)
                .unwrap()
                .iter()
                .map(|s| to_f64(&s.approx(60).unwrap().center))
                .collect()
        };
        let (t, p) = (40f64.to_radians(), 25f64.to_radians());
        let got = v("40 25", Some(3));
        let want = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(v("0 0", None), vec![0.0, 0.0, 1.0]);
        assert_eq!(v("90", None), vec![0.0, 1.0]);
        let four = v("30 60 45", None);
        assert_eq!(four.len(), 4);
        assert!((four.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cartesian_arity() {
        let s = parse_record("1/3 2/3 -2/3", InputKind::Cartesian, Some(3)).unwrap();
        assert_eq!(s[2].exact_value(), Some(&q(-2, 3)));
        assert!(matches!(
            parse_record("1 2", InputKind::Cartesian, Some(3)),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
        assert!(parse_record("1", InputKind::Cartesian, None).is_err());
    }

    #[test]
    fn formats() {
        let x = [q(3, 5), q(-4, 5)];
        let r = snap(&x, &SnapConfig::bits(20).with_strategy(Strategy::Cf)).unwrap();
        assert_eq!(format_result(&r, &OutputFormat::Decimal(10)), "0.6000000000 -0.8000000000");
        assert_eq!(format_result(&r, &OutputFormat::Fractions), "3/5 -4/5");
        assert_eq!(format_result(&r, &OutputFormat::Common), "3 -4 5");
        let pole = [q(0, 1), q(0, 1), q(-2, 1)];
        let r = snap(&pole, &SnapConfig::bits(20)).unwrap();
        assert_eq!(format_result(&r, &OutputFormat::Fractions), "0/1 0/1 -1/1");
        assert!(format_result(&r, &OutputFormat::Stats).starts_with("fx\t"));
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&q(1, 8), 2), "0.12");
        assert_eq!(format_decimal(&q(3, 8), 2), "0.38");
        assert_eq!(format_decimal(&q(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&q(5, 2), 0), "2");
        assert_eq!(format_decimal(&q(-7, 1), 1), "-7.0");
    }

    #[test]
    fn output_format_names() {
        for f in [
            OutputFormat::Fractions,
            OutputFormat::Common,
            OutputFormat::Decimal(4),
            OutputFormat::Stats,
        ] {
            assert_eq!(f.to_string().parse::<OutputFormat>().unwrap(), f);
        }
        assert!("decimal:x".parse::<OutputFormat>().is_err());
    }
}
