//! Turán-type inequality and log-convexity of `ν ↦ K_ν(z)`.
//!
//! With `X ~ X_{1/2,z}` the moment formula gives
//! `K_{ν+1/2}(z) ∝ z^{-ν-1/2} E X^ν`, so Hölder's inequality on powers of
//! `X` yields `K_{x/p+y/q}(z) ≤ K_x(z)^{1/p} K_y(z)^{1/q}` for conjugate
//! exponents `1/p + 1/q = 1`. The checks below evaluate both sides with the
//! quadrature route for `K_ν`.

use serde::Serialize;

use crate::specialfun::{check_positive, ln_bessel_k_real, QuadratureSpec};
use crate::{Error, Result};

/// Relative slack allowed on the right side of the Turán check.
pub const TURAN_RELATIVE_SLACK: f64 = 1e-9;

/// Smallest accepted second difference of `ln K_ν` in the log-convexity scan.
pub const LOGCONVEX_FLOOR: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuranReport {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    pub z: f64,
    /// `K_{x/p + y/q}(z)`
    pub lhs: f64,
    /// `K_x(z)^{1/p} K_y(z)^{1/q}`
    pub rhs: f64,
    pub passed: bool,
}

pub fn check_turan(x: f64, y: f64, p: f64, z: f64) -> Result<TuranReport> {
    check_positive("z", z)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must exceed 1, got {p}")));
    }
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain("orders must be finite".into()));
    }
    let q = p / (p - 1.0);
    if !(x / p > -0.5) {
        return Err(Error::Domain(format!(
            "x/p must exceed -1/2, got {}",
            x / p
        )));
    }
    if !(y / q > -0.5) {
        return Err(Error::Domain(format!(
            "y/q must exceed -1/2, got {}",
            y / q
        )));
    }
    let spec = QuadratureSpec::default();
    let ln_lhs = ln_bessel_k_real(x / p + y / q, z, &spec)?;
    let ln_rhs = ln_bessel_k_real(x, z, &spec)? / p + ln_bessel_k_real(y, z, &spec)? / q;
    let (lhs, rhs) = (ln_lhs.exp(), ln_rhs.exp());
    Ok(TuranReport {
        x,
        y,
        p,
        q,
        z,
        lhs,
        rhs,
        passed: lhs <= rhs * (1.0 + TURAN_RELATIVE_SLACK),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogConvexityReport {
    pub z: f64,
    /// Equally spaced consecutive triples that were tested.
    pub triples_checked: usize,
    /// Smallest `ln K_{ν-h} + ln K_{ν+h} - 2 ln K_ν` seen (`+∞` if none).
    pub min_second_difference: f64,
    /// Centre `ν` of the smallest second difference.
    pub worst_nu: Option<f64>,
    pub passed: bool,
}

/// Second differences of `ln K_ν(z)` over every equally spaced consecutive
/// triple of the sorted grid; unequal spacings are skipped.
pub fn check_logconvexity(nu_grid: &[f64], z: f64) -> Result<LogConvexityReport> {
    check_positive("z", z)?;
    if nu_grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("grid values must be finite".into()));
    }
    if nu_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    let spec = QuadratureSpec::default();
    let ln_k = nu_grid
        .iter()
        .map(|&nu| ln_bessel_k_real(nu, z, &spec))
        .collect::<Result<Vec<_>>>()?;

    let mut triples = 0;
    let mut min_d = f64::INFINITY;
    let mut worst = None;
    for i in 1..nu_grid.len().saturating_sub(1) {
        let h1 = nu_grid[i] - nu_grid[i - 1];
        let h2 = nu_grid[i + 1] - nu_grid[i];
        if (h1 - h2).abs() > 1e-9 * h1.max(h2) {
            continue;
        }
        triples += 1;
        let d = ln_k[i - 1] + ln_k[i + 1] - 2.0 * ln_k[i];
        if d < min_d {
            min_d = d;
            worst = Some(nu_grid[i]);
        }
    }
    Ok(LogConvexityReport {
        z,
        triples_checked: triples,
        min_second_difference: min_d,
        worst_nu: worst,
        passed: min_d >= LOGCONVEX_FLOOR,
    })
}
