//! Parsing of parameter grids given on the command line.
//!
//! Integers: `a..b` (inclusive), a single value, or a comma list.
//! Reals: `a:b:step`, a single value, or a comma list.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridError(String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

fn err(msg: impl Into<String>) -> GridError {
    GridError(msg.into())
}

pub fn parse_int_range(s: &str) -> Result<Vec<u32>, GridError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let lo = parse_u32(a)?;
        let hi = parse_u32(b)?;
        if lo > hi {
            return Err(err(format!("empty range {s}")));
        }
        return Ok((lo..=hi).collect());
    }
    let values = s.split(',').map(parse_u32).collect::<Result<Vec<_>, _>>()?;
    Ok(values)
}

fn parse_u32(s: &str) -> Result<u32, GridError> {
    s.trim()
        .parse()
        .map_err(|_| err(format!("not a non-negative integer: {:?}", s.trim())))
}

fn parse_f64(s: &str) -> Result<f64, GridError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| err(format!("not a number: {:?}", s.trim())))?;
    if !v.is_finite() {
        return Err(err(format!("not a finite number: {:?}", s.trim())));
    }
    Ok(v)
}

/// Grids longer than this are rejected rather than allocated.
const MAX_GRID_POINTS: f64 = 1e6;

pub fn parse_real_grid(s: &str) -> Result<Vec<f64>, GridError> {
    let s = s.trim();
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (parse_f64(a)?, parse_f64(b)?, parse_f64(step)?);
            if step <= 0.0 {
                return Err(err(format!("step must be positive in {s}")));
            }
            if b < a {
                return Err(err(format!("empty grid {s}")));
            }
            let intervals = ((b - a) / step).round();
            if intervals > MAX_GRID_POINTS {
                return Err(err(format!("grid {s} is too long")));
            }
            if ((a + intervals * step) - b).abs() > 1e-9 * step.max(b.abs()) {
                return Err(err(format!("step does not divide the interval in {s}")));
            }
            let n = intervals as usize;
            Ok((0..=n)
                .map(|i| if i == n { b } else { a + i as f64 * step })
                .collect())
        }
        [_] => s.split(',').map(parse_f64).collect(),
        _ => Err(err(format!("expected a:b:step or a comma list, got {s}"))),
    }
}
