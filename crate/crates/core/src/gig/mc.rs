//! Seeded Monte Carlo checks of the distributional identities.
//!
//! Each check draws a "sum" side and a "direct" side from independent child
//! seeds of one master seed and compares them with a two-sample KS test at
//! `α = 0.01`. The exact common mean of both sides is reported alongside the
//! empirical means as a sanity bound.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::ks::{ks_threshold, ks_two_sample, KS_C_ALPHA_001};
use super::sampling::{
    derive_seed, sample_gamma, sample_half_gig, sample_inverse_gaussian, SampleSet,
};
use crate::besselpoly::moment_theta;
use crate::specialfun::check_positive;
use crate::{Error, Result};

/// Highest moment order [`mc_moment_check`] accepts; the variance of `X^n`
/// makes larger orders impractical at desk-scale sample sizes.
pub const MAX_MC_MOMENT: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsReport {
    pub test: &'static str,
    pub z: Vec<f64>,
    pub count: usize,
    pub seed: u64,
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Exact mean shared by both sides.
    pub exact_mean: f64,
    pub sum_mean: f64,
    pub sum_se: f64,
    pub direct_mean: f64,
    pub direct_se: f64,
}

impl KsReport {
    /// Both empirical means lie within three standard errors of the exact mean.
    pub fn means_consistent(&self) -> bool {
        (self.sum_mean - self.exact_mean).abs() <= 3.0 * self.sum_se
            && (self.direct_mean - self.exact_mean).abs() <= 3.0 * self.direct_se
    }
}

fn ks_report(
    test: &'static str,
    z: &[f64],
    seed: u64,
    exact_mean: f64,
    sum: SampleSet,
    direct: SampleSet,
) -> KsReport {
    let statistic = ks_two_sample(&sum.values, &direct.values);
    let threshold = ks_threshold(sum.count(), direct.count(), KS_C_ALPHA_001);
    let (sum_mean, sum_se) = sum.moment_with_se(1);
    let (direct_mean, direct_se) = direct.moment_with_se(1);
    KsReport {
        test,
        z: z.to_vec(),
        count: sum.count(),
        seed,
        statistic,
        threshold,
        passed: statistic < threshold,
        exact_mean,
        sum_mean,
        sum_se,
        direct_mean,
        direct_se,
    }
}

/// One independent summand of a composite law.
#[derive(Debug, Clone, Copy)]
enum Part {
    InverseGaussian(f64),
    HalfGig(f64),
    Gamma(f64),
}

impl Part {
    fn draw(self, count: usize, seed: u64) -> Result<SampleSet> {
        match self {
            Part::InverseGaussian(z) => sample_inverse_gaussian(z, count, seed),
            Part::HalfGig(z) => sample_half_gig(z, count, seed),
            Part::Gamma(shape) => sample_gamma(shape, count, seed),
        }
    }
}

/// Element-wise sum of independent draws, part `i` using child seed `i`.
fn independent_sum(parts: &[Part], count: usize, seed: u64) -> Result<SampleSet> {
    let mut acc = SampleSet {
        values: vec![0.0; count],
        seed,
    };
    for (i, part) in parts.iter().enumerate() {
        acc = acc.plus(&part.draw(count, derive_seed(seed, i as u64))?);
    }
    Ok(acc)
}

// Child-seed offset separating the direct side from the summed side.
const DIRECT: u64 = 1 << 32;

fn check_count(count: usize) -> Result<()> {
    if count < 2 {
        return Err(Error::Domain(format!("need at least 2 draws, got {count}")));
    }
    Ok(())
}

/// `X_{-1/2,z₁} + X_{-1/2,z₂} ~ X_{-1/2,z₁+z₂}`.
pub fn mc_verify_stability(z1: f64, z2: f64, count: usize, seed: u64) -> Result<KsReport> {
    check_positive("z1", z1)?;
    check_positive("z2", z2)?;
    check_count(count)?;
    let sum = independent_sum(
        &[Part::InverseGaussian(z1), Part::InverseGaussian(z2)],
        count,
        seed,
    )?;
    let direct = sample_inverse_gaussian(z1 + z2, count, derive_seed(seed, DIRECT))?;
    Ok(ks_report(
        "stability",
        &[z1, z2],
        seed,
        z1 + z2,
        sum,
        direct,
    ))
}

/// `X_{1/2,z₁} + X_{1/2,z₂} ~ X_{1/2,0} + X_{1/2,z₁+z₂}`.
pub fn mc_verify_lemma2(z1: f64, z2: f64, count: usize, seed: u64) -> Result<KsReport> {
    check_positive("z1", z1)?;
    check_positive("z2", z2)?;
    check_count(count)?;
    let sum = independent_sum(&[Part::HalfGig(z1), Part::HalfGig(z2)], count, seed)?;
    let direct = independent_sum(
        &[Part::Gamma(0.5), Part::HalfGig(z1 + z2)],
        count,
        derive_seed(seed, DIRECT),
    )?;
    // θ_1(z₁) + θ_1(z₂) = 1 + θ_1(z₁ + z₂) = 2 + z₁ + z₂
    Ok(ks_report(
        "lemma2",
        &[z1, z2],
        seed,
        2.0 + z1 + z2,
        sum,
        direct,
    ))
}

/// `Σ X_{1/2,z_i} ~ X_{1/2,Σz_i} + X_{(m-1)/2,0}`.
pub fn mc_verify_extension(z_vec: &[f64], count: usize, seed: u64) -> Result<KsReport> {
    let m = z_vec.len();
    if m < 2 {
        return Err(Error::TooFewVariables { min: 2, got: m });
    }
    for &z in z_vec {
        check_positive("z_i", z)?;
    }
    check_count(count)?;
    let parts: Vec<Part> = z_vec.iter().map(|&z| Part::HalfGig(z)).collect();
    let sum = independent_sum(&parts, count, seed)?;
    let total: f64 = z_vec.iter().sum();
    let direct = independent_sum(
        &[Part::HalfGig(total), Part::Gamma(0.5 * (m as f64 - 1.0))],
        count,
        derive_seed(seed, DIRECT),
    )?;
    Ok(ks_report(
        "extension",
        z_vec,
        seed,
        m as f64 + total,
        sum,
        direct,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub z: f64,
    pub n: u32,
    pub count: usize,
    pub seed: u64,
    pub empirical: f64,
    /// `θ_n(z)`, evaluated exactly and rounded once.
    pub target: f64,
    pub standard_error: f64,
    pub passed: bool,
}

/// Empirical `E X_{1/2,z}^n` against `θ_n(z)`, passing within three
/// standard errors.
pub fn mc_moment_check(z: f64, n: u32, count: usize, seed: u64) -> Result<MomentReport> {
    check_positive("z", z)?;
    check_count(count)?;
    if n > MAX_MC_MOMENT {
        return Err(Error::Domain(format!(
            "moment order {n} exceeds the supported maximum {MAX_MC_MOMENT}"
        )));
    }
    let exact_z = BigRational::from_float(z).ok_or(Error::NonFinite)?;
    let target = moment_theta(n, &exact_z).to_f64().ok_or(Error::NonFinite)?;
    let samples = sample_half_gig(z, count, seed)?;
    let (empirical, standard_error) = samples.moment_with_se(n);
    Ok(MomentReport {
        z,
        n,
        count,
        seed,
        empirical,
        target,
        standard_error,
        passed: (empirical - target).abs() <= 3.0 * standard_error,
    })
}
