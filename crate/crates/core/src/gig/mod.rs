//! Generalized inverse Gaussian (GIG) laws.
//!
//! Density, for `x > 0`:
//!
//! ```text
//! f(x; ψ, χ, λ) = (ψ/χ)^{λ/2} / (2 K_λ(√(ψχ))) · x^{λ-1} exp(-χ/(2x) - ψx/2)
//! ```
//!
//! `X_{λ,z}` is shorthand for `ψ = 1, χ = z²`. Two members matter here:
//! `X_{-1/2,z}` is the inverse Gaussian law with mean `z` and shape `z²`,
//! and its moments are the Carlitz polynomials `f_n(z)`; `X_{1/2,z}` has
//! moments `θ_n(z)`. At `χ = 0` the density degenerates to a Gamma law with
//! shape `λ` and scale `2/ψ`, so `X_{(m-1)/2,0}` is Gamma(shape `(m-1)/2`,
//! scale 2), i.e. chi-square (not chi) with `m - 1` degrees of freedom.

mod inequality;
mod ks;
mod mc;
mod sampling;

pub use inequality::{
    check_logconvexity, check_turan, LogConvexityReport, TuranReport, LOGCONVEX_FLOOR,
    TURAN_RELATIVE_SLACK,
};
pub use ks::{ks_threshold, ks_two_sample, KS_C_ALPHA_001};
pub use mc::{
    mc_moment_check, mc_verify_extension, mc_verify_lemma2, mc_verify_stability, KsReport,
    MomentReport, MAX_MC_MOMENT,
};
pub use sampling::{
    derive_seed, sample_gamma, sample_half_gig, sample_inverse_gaussian, SampleSet,
};

use std::f64::consts::PI;

use serde::Serialize;

use crate::quadrature::integrate_doubling;
use crate::specialfun::{check_positive, ln_bessel_k, ln_bessel_k_real, QuadratureSpec};
use crate::{Error, Result};

/// Parameter triple `(ψ, χ, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GigParams {
    psi: f64,
    chi: f64,
    lambda: f64,
}

impl GigParams {
    /// Requires `ψ > 0`, `χ ≥ 0`; `λ > 0` when `χ = 0` (Gamma limit) and
    /// `λ > -1` otherwise.
    pub fn new(psi: f64, chi: f64, lambda: f64) -> Result<Self> {
        if !(psi > 0.0 && psi.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "psi must be positive, got {psi}"
            )));
        }
        if !(chi >= 0.0 && chi.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "chi must be non-negative, got {chi}"
            )));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lambda must be finite, got {lambda}"
            )));
        }
        if chi == 0.0 && lambda <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "chi = 0 requires lambda > 0, got {lambda}"
            )));
        }
        if chi > 0.0 && lambda <= -1.0 {
            return Err(Error::InvalidParams(format!(
                "lambda must exceed -1, got {lambda}"
            )));
        }
        Ok(GigParams { psi, chi, lambda })
    }

    /// `X_{λ,z}`: `ψ = 1`, `χ = z²`.
    pub fn standard(lambda: f64, z: f64) -> Result<Self> {
        if !(z >= 0.0) {
            return Err(Error::Negative {
                name: "z",
                value: z,
            });
        }
        Self::new(1.0, z * z, lambda)
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HalfOrder {
    /// `λ = -1/2`: inverse Gaussian.
    Minus,
    /// `λ = +1/2`.
    Plus,
}

impl HalfOrder {
    pub fn lambda(self) -> f64 {
        match self {
            HalfOrder::Minus => -0.5,
            HalfOrder::Plus => 0.5,
        }
    }
}

/// `X_{±1/2, z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfGig {
    order: HalfOrder,
    z: f64,
}

impl HalfGig {
    /// `z = 0` is only meaningful for `+1/2` (the chi-square limit).
    pub fn new(order: HalfOrder, z: f64) -> Result<Self> {
        match order {
            HalfOrder::Minus => check_positive("z", z)?,
            HalfOrder::Plus if !(z >= 0.0 && z.is_finite()) => {
                return Err(Error::Negative {
                    name: "z",
                    value: z,
                })
            }
            HalfOrder::Plus => {}
        }
        Ok(HalfGig { order, z })
    }

    pub fn order(&self) -> HalfOrder {
        self.order
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn params(&self) -> GigParams {
        GigParams {
            psi: 1.0,
            chi: self.z * self.z,
            lambda: self.order.lambda(),
        }
    }
}

/// Log-density at `x > 0`.
pub fn gig_ln_density(p: &GigParams, x: f64) -> Result<f64> {
    check_positive("x", x)?;
    let GigParams { psi, chi, lambda } = *p;
    let v = if chi == 0.0 {
        lambda * (0.5 * psi).ln() + (lambda - 1.0) * x.ln() - 0.5 * psi * x - libm::lgamma(lambda)
    } else {
        0.5 * lambda * (psi / chi).ln()
            - std::f64::consts::LN_2
            - ln_bessel_k(lambda, (psi * chi).sqrt())?
            + (lambda - 1.0) * x.ln()
            - 0.5 * chi / x
            - 0.5 * psi * x
    };
    if v.is_nan() {
        return Err(Error::NonFinite);
    }
    Ok(v)
}

pub fn gig_density(p: &GigParams, x: f64) -> Result<f64> {
    Ok(gig_ln_density(p, x)?.exp())
}

/// `E X_{1/2,z}^ν = √(2/π) e^z z^{ν+1/2} K_{ν+1/2}(z)`, with `K` from
/// quadrature.
pub fn gig_moment_real(nu: f64, z: f64) -> Result<f64> {
    check_positive("z", z)?;
    let ln_k = ln_bessel_k_real(nu + 0.5, z, &QuadratureSpec::default())?;
    let v = (0.5 * (2.0 / PI).ln() + z + (nu + 0.5) * z.ln() + ln_k).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite)
    }
}

/// `∫_0^∞ x^order f(x; p) dx` by direct quadrature of the density.
///
/// Integrates in `u = ln x` over the window where the integrand is within
/// `1e-16` of its peak.
pub fn gig_moment_quadrature(p: &GigParams, order: f64) -> Result<f64> {
    let GigParams { psi, chi, lambda } = *p;
    let a = order + lambda;
    if chi == 0.0 && a <= 0.0 {
        return Err(Error::Domain(format!(
            "moment of order {order} diverges for the Gamma limit with shape {lambda}"
        )));
    }
    // log integrand in u, up to the normalizing constant
    let shape = |u: f64| a * u - 0.5 * chi * (-u).exp() - 0.5 * psi * u.exp();
    let y_peak = (a + (a * a + psi * chi).sqrt()) / psi;
    let u_peak = y_peak.ln();
    let top = shape(u_peak);
    let cutoff = (1e-16f64).ln();
    let edge = |dir: f64| {
        let mut step = 1.0;
        while shape(u_peak + dir * step) - top > cutoff {
            step *= 2.0;
        }
        u_peak + dir * step
    };
    let (lo, hi) = (edge(-1.0), edge(1.0));
    // ln f(x) = constant + shape(ln x) - ln x - order·ln x; read it off at x = 1
    let constant = gig_ln_density(p, 1.0)? - shape(0.0);
    let integral = integrate_doubling(|u| (shape(u) - top).exp(), lo, hi, 1e-14, 8, 1 << 14)?;
    let v = (constant + top).exp() * integral.value;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite)
    }
}
