//! Macdonald functions `K_ν(z)` in double precision and numeric checks of the
//! transcendental forms of the multi-sum identities.
//!
//! Two independent routes to `K_ν`:
//!
//! * half-integer order from the Bessel polynomial closed form
//!   `K_{k+1/2}(z) = √(π/2) e^{-z} z^{-k-1/2} θ_k(z)`, and
//! * any real order from `K_ν(z) = ∫_0^∞ e^{-z cosh t} cosh(νt) dt`, by
//!   composite Gauss–Legendre quadrature.
//!
//! `I_{±(k+1/2)}` are never formed separately; their difference is obtained
//! from `I_{-k-1/2}(z) - I_{k+1/2}(z) = (2/π)(-1)^k K_{k+1/2}(z)`.

use std::f64::consts::{FRAC_2_PI, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::besselpoly::theta_poly;
use crate::exact::{binomial, factorial, pochhammer_half, weak_compositions};
use crate::quadrature::integrate_doubling;
use crate::{Error, Result};

/// Floor on the denominator of [`relative_residual`].
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// Controls for the real-order quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance between successive panel doublings.
    pub tolerance: f64,
    /// Upper integration limit in `t`; chosen automatically when `None` so the
    /// neglected integrand is below `tolerance · 1e-3` of its peak.
    pub truncation: Option<f64>,
    /// Largest panel count tried before giving up.
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            tolerance: 1e-13,
            truncation: None,
            max_panels: 4096,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(t) = self.truncation {
            if !(t > 0.0) {
                return Err(Error::Domain(format!(
                    "truncation point must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite)
    }
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
}

/// `ln K_{k+1/2}(z)` from the closed form.
pub fn ln_bessel_k_half(k: u32, z: f64) -> Result<f64> {
    check_positive("z", z)?;
    let theta = horner(&theta_poly(k).to_f64_coeffs(), z);
    finite(0.5 * (0.5 * PI).ln() - z - (f64::from(k) + 0.5) * z.ln() + theta.ln())
}

/// `K_{k+1/2}(z)`, `z > 0`.
pub fn bessel_k_half(k: u32, z: f64) -> Result<f64> {
    check_positive("z", z)?;
    let theta = horner(&theta_poly(k).to_f64_coeffs(), z);
    let scaled = (0.5 * PI).sqrt() * (-z).exp() * theta;
    finite(scaled * z.powf(-(f64::from(k) + 0.5)))
}

/// `ln cosh x` without overflow.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln K_ν(z)` from the cosh integral.
///
/// The integrand is written as `e^{-z} e^{g(t)}` with
/// `g(t) = -z (cosh t - 1) + ln cosh(νt)` and normalized by its peak, so
/// neither very small `K` (large `z`) nor very large `K` (large `ν`, small
/// `z`) under- or overflows.
pub fn ln_bessel_k_real(nu: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("z", z)?;
    if !nu.is_finite() {
        return Err(Error::Domain(format!("order must be finite, got {nu}")));
    }
    spec.validate()?;
    let a = nu.abs();
    let g = |t: f64| -z * (t.cosh() - 1.0) + ln_cosh(a * t);

    // g is unimodal on [0, ∞); it rises at the origin iff ν² > z.
    let mut peak = 0.0;
    if a * a > z {
        let slope = |t: f64| -z * t.sinh() + a * (a * t).tanh();
        let (mut lo, mut hi) = (0.0, (a / z).asinh() + 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        peak = 0.5 * (lo + hi);
    }
    let gmax = g(peak);
    let cutoff = (spec.tolerance * 1e-3).ln();

    let upper = match spec.truncation {
        Some(t) => t,
        None => {
            let mut step = 1.0;
            while g(peak + step) - gmax > cutoff {
                step *= 2.0;
            }
            let (mut lo, mut hi) = (peak + 0.5 * step, peak + step);
            if step == 1.0 {
                lo = peak;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if g(mid) - gmax > cutoff {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };

    let integral = integrate_doubling(
        |t| (g(t) - gmax).exp(),
        0.0,
        upper,
        spec.tolerance,
        4,
        spec.max_panels,
    )?;
    finite(-z + gmax + integral.value.ln())
}

/// `K_ν(z)` for real `ν` by quadrature; `K_{-ν} = K_ν`.
pub fn bessel_k_real(nu: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    finite(ln_bessel_k_real(nu, z, spec)?.exp())
}

/// `ln K_ν(z)`, using the closed form at half-integer order and quadrature
/// with the default spec otherwise.
pub fn ln_bessel_k(nu: f64, z: f64) -> Result<f64> {
    let twice = 2.0 * nu.abs();
    if twice.fract() == 0.0 && twice % 2.0 == 1.0 && twice < 200.0 {
        ln_bessel_k_half(((twice - 1.0) / 2.0) as u32, z)
    } else {
        ln_bessel_k_real(nu, z, &QuadratureSpec::default())
    }
}

/// `I_{-k-1/2}(z) - I_{k+1/2}(z) = (2/π)(-1)^k K_{k+1/2}(z)`.
pub fn bessel_i_half_diff(k: u32, z: f64) -> Result<f64> {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * FRAC_2_PI * bessel_k_half(k, z)?)
}

/// `|a - b| / max(|a|, |b|, 1e-300)`.
pub fn relative_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(RESIDUAL_FLOOR)
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::TooFewVariables { min: 2, got: m });
    }
    Ok(())
}

fn half(m: usize) -> BigRational {
    BigRational::new(BigInt::from(m - 1), BigInt::from(2))
}

fn inv_factorial_f64(k: u32) -> f64 {
    to_f64(&BigRational::new(BigInt::from(1), factorial(k)))
}

/// `Σ_{k_1+…+k_m=n} Π_i term[k_i]`.
fn composition_sum(m: usize, n: u32, term: &[f64]) -> f64 {
    weak_compositions(n, m)
        .map(|c| c.parts().iter().map(|&k| term[k as usize]).product::<f64>())
        .sum()
}

/// Relative residual of the multi-sum of `I_{-k-1/2} - I_{k+1/2}` against
/// its single-sum form at argument `mz`.
pub fn verify_brychkov_numeric(m: usize, n: u32, z: f64) -> Result<f64> {
    check_m(m)?;
    check_positive("z", z)?;
    let term = (0..=n)
        .map(|k| Ok(bessel_i_half_diff(k, z)? * inv_factorial_f64(k)))
        .collect::<Result<Vec<_>>>()?;
    let lhs = composition_sum(m, n, &term);

    let mf = m as f64;
    let mz = mf * z;
    let mut inner = 0.0;
    for k in 0..=n {
        // C(n,k) ((m-1)/2)_{n-k}, exact then rounded once
        let c =
            BigRational::from_integer(binomial(n, i64::from(k))) * pochhammer_half(&half(m), n - k);
        inner += to_f64(&c) * (-0.5 * mz).powi(k as i32) * bessel_i_half_diff(k, mz)?;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let expo = 0.5 * (1.0 - mf) - f64::from(n);
    let rhs = sign
        * mf.sqrt()
        * inv_factorial_f64(n)
        * PI.powf(0.5 * (1.0 - mf))
        * (0.5 * z).powf(expo)
        * inner;
    Ok(relative_residual(finite(lhs)?, finite(rhs)?))
}

/// `x^{k+1/2} K_{k+1/2}(x)`.
fn scaled_k_half(k: u32, x: f64) -> Result<f64> {
    Ok(x.powf(f64::from(k) + 0.5) * bessel_k_half(k, x)?)
}

/// Relative residual of
/// `Σ Π z^{k_i+1/2} K_{k_i+1/2}(z)/k_i! = (π/2)^{(m-1)/2} Σ_k 2^{n-k} ((m-1)/2)_{n-k}/(n-k)! · (mz)^{k+1/2} K_{k+1/2}(mz)/k!`.
///
/// This is the theta identity multiplied through by `(π/2)^{m/2} e^{-mz}`,
/// using `x^{k+1/2} K_{k+1/2}(x) = √(π/2) e^{-x} θ_k(x)`.
pub fn verify_k_identity_numeric(m: usize, n: u32, z: f64) -> Result<f64> {
    check_m(m)?;
    check_positive("z", z)?;
    let term = (0..=n)
        .map(|k| Ok(scaled_k_half(k, z)? * inv_factorial_f64(k)))
        .collect::<Result<Vec<_>>>()?;
    let lhs = composition_sum(m, n, &term);

    let mz = m as f64 * z;
    let mut rhs = 0.0;
    for k in 0..=n {
        let j = n - k;
        let c = pochhammer_half(&half(m), j)
            * BigRational::new(BigInt::from(1) << j as usize, factorial(j) * factorial(k));
        rhs += to_f64(&c) * scaled_k_half(k, mz)?;
    }
    rhs *= (0.5 * PI).powf(0.5 * (m as f64 - 1.0));
    Ok(relative_residual(finite(lhs)?, finite(rhs)?))
}

/// `K_{k-1/2}(x)`, using `K_{-1/2} = K_{1/2}`.
fn k_minus_half(k: u32, x: f64) -> Result<f64> {
    bessel_k_half(k.saturating_sub(1), x)
}

/// Relative residual of
/// `Σ Π z_i^{k_i+1/2} K_{k_i-1/2}(z_i)/k_i! = (2/π)^{(1-m)/2} z^{n+1/2} K_{n-1/2}(z)/n!`
/// with `z = Σ z_i` and `m = z_vec.len()`.
pub fn verify_fk_identity_numeric(n: u32, z_vec: &[f64]) -> Result<f64> {
    let m = z_vec.len();
    check_m(m)?;
    for &zi in z_vec {
        check_positive("z_i", zi)?;
    }
    let terms = z_vec
        .iter()
        .map(|&zi| {
            (0..=n)
                .map(|k| {
                    Ok(zi.powf(f64::from(k) + 0.5) * k_minus_half(k, zi)? * inv_factorial_f64(k))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs: f64 = weak_compositions(n, m)
        .map(|c| {
            c.parts()
                .iter()
                .zip(&terms)
                .map(|(&k, t)| t[k as usize])
                .product::<f64>()
        })
        .sum();

    let z: f64 = z_vec.iter().sum();
    let rhs = (FRAC_2_PI).powf(0.5 * (1.0 - m as f64))
        * z.powf(f64::from(n) + 0.5)
        * k_minus_half(n, z)?
        * inv_factorial_f64(n);
    Ok(relative_residual(finite(lhs)?, finite(rhs)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const K_HALF_AT_ONE: f64 = 0.46106850444789445;

    fn rel(a: f64, b: f64) -> f64 {
        relative_residual(a, b)
    }

    #[test]
    fn half_integer_closed_form_examples() {
        assert!(rel(bessel_k_half(0, 1.0).unwrap(), K_HALF_AT_ONE) < 1e-15);
        assert!(
            rel(
                bessel_k_half(0, 1.0).unwrap(),
                (PI / 2.0).sqrt() / 1f64.exp()
            ) < 1e-15
        );
        assert!(rel(bessel_k_half(1, 1.0).unwrap(), 0.9221370088957889) < 1e-15);
        let z = 50.0;
        let asym = (PI / (2.0 * z)).sqrt() * (-z).exp();
        assert!(rel(bessel_k_half(0, z).unwrap(), asym) < 1e-10);
    }

    #[test]
    fn half_integer_against_upward_recurrence() {
        // K_{ν+1}(z) = K_{ν-1}(z) + (2ν/z) K_ν(z): all terms positive, so the
        // upward recurrence from K_{±1/2} is stable.
        for z in [0.1, 0.5, 1.0, 3.7, 10.0, 25.0, 50.0] {
            let mut prev = (PI / (2.0 * z)).sqrt() * (-z).exp(); // K_{-1/2}
            let mut cur = prev; // K_{1/2}
            for k in 0..=20u32 {
                let got = bessel_k_half(k, z).unwrap();
                assert!(rel(got, cur) < 1e-12, "k={k} z={z}: {got} vs {cur}");
                let nu = f64::from(k) + 0.5;
                let next = prev + 2.0 * nu / z * cur;
                prev = cur;
                cur = next;
            }
        }
    }

    #[test]
    fn log_closed_form_consistent() {
        for k in [0, 3, 11, 20] {
            for z in [0.1, 2.0, 50.0] {
                let a = ln_bessel_k_half(k, z).unwrap();
                let b = bessel_k_half(k, z).unwrap().ln();
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn nonpositive_argument_is_rejected() {
        assert!(matches!(
            bessel_k_half(0, 0.0),
            Err(Error::NonPositive { .. })
        ));
        assert!(matches!(
            bessel_k_half(0, -1.0),
            Err(Error::NonPositive { .. })
        ));
        let spec = QuadratureSpec::default();
        assert!(bessel_k_real(0.5, -2.0, &spec).is_err());
        assert!(bessel_k_real(0.5, f64::NAN, &spec).is_err());
        assert!(bessel_i_half_diff(1, 0.0).is_err());
        assert!(verify_fk_identity_numeric(2, &[1.0, 0.0]).is_err());
        let bad = QuadratureSpec {
            tolerance: 0.0,
            ..spec
        };
        assert!(bessel_k_real(0.5, 1.0, &bad).is_err());
    }

    #[test]
    fn real_order_matches_closed_form() {
        let spec = QuadratureSpec::default();
        assert!(rel(bessel_k_real(0.5, 1.0, &spec).unwrap(), K_HALF_AT_ONE) < 1e-12);
        let a = bessel_k_real(2.5, 3.0, &spec).unwrap();
        assert!(rel(a, bessel_k_half(2, 3.0).unwrap()) < 1e-10);
        for k in 0..=10u32 {
            for z in [0.5, 1.0, 2.0, 5.0, 10.0] {
                let q = bessel_k_real(f64::from(k) + 0.5, z, &spec).unwrap();
                let c = bessel_k_half(k, z).unwrap();
                assert!(rel(q, c) < 1e-10, "k={k} z={z}: {q} vs {c}");
            }
        }
    }

    #[test]
    fn real_order_wide_range() {
        let spec = QuadratureSpec::default();
        for k in [15u32, 20, 29] {
            for z in [0.1, 1.0, 50.0] {
                let q = ln_bessel_k_real(f64::from(k) + 0.5, z, &spec).unwrap();
                let c = ln_bessel_k_half(k, z).unwrap();
                assert!((q - c).abs() < 1e-10 * c.abs().max(1.0), "k={k} z={z}");
            }
        }
    }

    #[test]
    fn integer_order_reference_values() {
        // K_0(1), K_1(1), K_2(1) to 16 digits
        let spec = QuadratureSpec::default();
        for (nu, want) in [
            (0.0, 0.42102443824070834),
            (1.0, 0.6019072301972346),
            (2.0, 1.6248388986351774),
        ] {
            assert!(
                rel(bessel_k_real(nu, 1.0, &spec).unwrap(), want) < 1e-13,
                "nu={nu}"
            );
        }
    }

    #[test]
    fn symmetric_in_order() {
        let spec = QuadratureSpec::default();
        assert_eq!(
            bessel_k_real(-0.5, 2.0, &spec).unwrap(),
            bessel_k_real(0.5, 2.0, &spec).unwrap()
        );
        for nu in [0.3, 1.7, 4.2] {
            for z in [1.0, 3.0] {
                let a = bessel_k_real(nu, z, &spec).unwrap();
                let b = bessel_k_real(-nu, z, &spec).unwrap();
                assert!(rel(a, b) < 1e-12);
            }
        }
    }

    #[test]
    fn positive_and_decreasing_in_argument() {
        let spec = QuadratureSpec::default();
        for nu in [0.0, 0.3, 1.7, 4.2] {
            let vals: Vec<f64> = (1..=20)
                .map(|i| bessel_k_real(nu, 0.5 * i as f64, &spec).unwrap())
                .collect();
            assert!(vals.iter().all(|&v| v > 0.0));
            assert!(vals.windows(2).all(|w| w[1] < w[0]), "nu={nu}");
        }
    }

    #[test]
    fn explicit_truncation_is_honored() {
        let spec = QuadratureSpec {
            truncation: Some(8.0),
            ..QuadratureSpec::default()
        };
        let v = bessel_k_real(0.5, 1.0, &spec).unwrap();
        assert!(rel(v, K_HALF_AT_ONE) < 1e-12);
        let short = QuadratureSpec {
            truncation: Some(0.5),
            ..QuadratureSpec::default()
        };
        assert!(bessel_k_real(0.5, 1.0, &short).unwrap() < 0.9 * K_HALF_AT_ONE);
    }

    #[test]
    fn i_difference_examples() {
        let d = bessel_i_half_diff(0, 1.0).unwrap();
        assert!(rel(d, 2.0 / PI * K_HALF_AT_ONE) < 1e-15);
        assert!((d - 0.29352532634747974).abs() < 1e-15);
        for z in [0.5f64, 1.0, 2.0] {
            // I_{-1/2} = √(2/(πz)) cosh z, I_{1/2} = √(2/(πz)) sinh z
            let elem = (2.0 / (PI * z)).sqrt() * (z.cosh() - z.sinh());
            assert!(rel(bessel_i_half_diff(0, z).unwrap(), elem) < 1e-12);
        }
        for k in 0..=10 {
            let d = bessel_i_half_diff(k, 1.0).unwrap();
            assert_eq!(d.signum(), if k % 2 == 0 { 1.0 } else { -1.0 });
        }
    }

    #[test]
    fn numeric_identity_examples() {
        assert!(verify_brychkov_numeric(2, 0, 1.0).unwrap() <= 1e-10);
        assert!(verify_brychkov_numeric(3, 4, 2.0).unwrap() <= 1e-9);
        assert!(verify_brychkov_numeric(2, 1, 0.5).unwrap() <= 1e-10);
        assert!(verify_k_identity_numeric(2, 0, 1.0).unwrap() <= 1e-10);
        assert!(verify_k_identity_numeric(4, 3, 1.0).unwrap() <= 1e-9);
        assert!(verify_k_identity_numeric(2, 2, 5.0).unwrap() <= 1e-10);
        assert!(verify_fk_identity_numeric(0, &[1.0, 1.0]).unwrap() <= 1e-10);
        assert!(verify_fk_identity_numeric(3, &[0.5, 1.5]).unwrap() <= 1e-9);
        assert!(verify_fk_identity_numeric(2, &[1.0, 2.0, 3.0]).unwrap() <= 1e-9);
        assert!(verify_brychkov_numeric(1, 2, 1.0).is_err());
        assert!(verify_fk_identity_numeric(2, &[1.0]).is_err());
    }

    #[test]
    fn quarter_pi_prefactor_misses_a_power_of_two() {
        // Right side written with (√π/2)^{m-1} and (mz/2)^{k+1/2} in place of
        // (π/2)^{(m-1)/2} and 2^{n-k}(mz)^{k+1/2}: off by exactly 2^{n+m/2}.
        for (m, n, z) in [
            (2usize, 0u32, 1.0f64),
            (2, 1, 0.7),
            (3, 2, 1.3),
            (4, 3, 2.0),
        ] {
            let term: Vec<f64> = (0..=n)
                .map(|k| scaled_k_half(k, z).unwrap() * inv_factorial_f64(k))
                .collect();
            let lhs = composition_sum(m, n, &term);
            let mz = m as f64 * z;
            let mut rhs = 0.0;
            for k in 0..=n {
                let j = n - k;
                let c = pochhammer_half(&half(m), j)
                    * BigRational::new(BigInt::from(1), factorial(j) * factorial(k));
                rhs += to_f64(&c)
                    * (0.5 * mz).powf(f64::from(k) + 0.5)
                    * bessel_k_half(k, mz).unwrap();
            }
            rhs *= (PI.sqrt() / 2.0).powi(m as i32 - 1);
            let ratio = lhs / rhs;
            let want = 2f64.powf(f64::from(n) + m as f64 / 2.0);
            assert!(rel(ratio, want) < 1e-12, "m={m} n={n}: {ratio} vs {want}");
        }
    }
}
