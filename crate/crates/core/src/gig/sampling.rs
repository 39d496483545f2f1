use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::Serialize;

use crate::specialfun::check_positive;
use crate::{Error, Result};

/// Draws from one distribution together with the seed that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub seed: u64,
}

impl SampleSet {
    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn mean(&self) -> f64 {
        self.moment_with_se(1).0
    }

    /// Empirical `E[X^n]` and its standard error, estimated from the sample
    /// variance of `X^n`.
    pub fn moment_with_se(&self, n: u32) -> (f64, f64) {
        let count = self.values.len() as f64;
        let powers = self.values.iter().map(|&x| x.powi(n as i32));
        let mean = powers.clone().sum::<f64>() / count;
        let var = powers.map(|p| (p - mean) * (p - mean)).sum::<f64>() / (count - 1.0);
        (mean, (var / count).sqrt())
    }

    /// Element-wise sum with another set of the same length.
    pub(crate) fn plus(mut self, other: &SampleSet) -> SampleSet {
        debug_assert_eq!(self.values.len(), other.values.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        self
    }
}

/// SplitMix64 finalizer of `seed` and `index`: independent child seeds for
/// the components of a composite experiment.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut x = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Inverse Gaussian draw with the given mean and shape, by transformation
/// with rejection: one normal and one uniform per draw.
fn draw_inverse_gaussian<R: Rng + ?Sized>(rng: &mut R, mean: f64, shape: f64) -> f64 {
    let v: f64 = rng.sample(StandardNormal);
    let a = mean * v * v / (2.0 * shape);
    // smaller root of the quadratic, written without cancellation
    let x = mean / (1.0 + a + (a * a + 2.0 * a).sqrt());
    let u: f64 = rng.random();
    if u <= mean / (mean + x) {
        x
    } else {
        mean * mean / x
    }
}

/// `X_{-1/2,z}`: inverse Gaussian with mean `z` and shape `z²`.
pub fn sample_inverse_gaussian(z: f64, count: usize, seed: u64) -> Result<SampleSet> {
    check_positive("z", z)?;
    let mut rng = stream(seed, 0);
    let values = (0..count)
        .map(|_| draw_inverse_gaussian(&mut rng, z, z * z))
        .collect();
    Ok(SampleSet { values, seed })
}

/// Gamma with the given shape and scale 2, i.e. `X_{shape,0}`.
pub fn sample_gamma(shape: f64, count: usize, seed: u64) -> Result<SampleSet> {
    check_positive("shape", shape)?;
    let dist = Gamma::new(shape, 2.0).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let mut rng = stream(seed, 0);
    let values = (0..count).map(|_| dist.sample(&mut rng)).collect();
    Ok(SampleSet { values, seed })
}

/// `X_{1/2,z}` as the independent sum `X_{-1/2,z} + X_{1/2,0}`.
///
/// The Gamma part uses the same stream as [`sample_gamma`], so `z = 0`
/// returns exactly `sample_gamma(0.5, count, seed)`.
pub fn sample_half_gig(z: f64, count: usize, seed: u64) -> Result<SampleSet> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(Error::Negative {
            name: "z",
            value: z,
        });
    }
    let gamma = sample_gamma(0.5, count, seed)?;
    if z == 0.0 {
        return Ok(gamma);
    }
    let mut rng = stream(seed, 1);
    let values = gamma
        .values
        .iter()
        .map(|g| g + draw_inverse_gaussian(&mut rng, z, z * z))
        .collect();
    Ok(SampleSet { values, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = sample_half_gig(1.3, 1000, 99).unwrap();
        let b = sample_half_gig(1.3, 1000, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_half_gig(1.3, 1000, 100).unwrap();
        assert_ne!(a.values, c.values);
        assert_eq!(
            sample_inverse_gaussian(2.0, 10, 5).unwrap(),
            sample_inverse_gaussian(2.0, 10, 5).unwrap()
        );
    }

    #[test]
    fn support_is_positive() {
        assert!(sample_inverse_gaussian(0.05, 20_000, 1)
            .unwrap()
            .values
            .iter()
            .all(|&x| x > 0.0));
        assert!(sample_gamma(0.5, 20_000, 2)
            .unwrap()
            .values
            .iter()
            .all(|&x| x > 0.0));
        assert!(sample_half_gig(3.0, 20_000, 3)
            .unwrap()
            .values
            .iter()
            .all(|&x| x > 0.0));
    }

    #[test]
    fn zero_z_reduces_to_gamma() {
        assert_eq!(
            sample_half_gig(0.0, 500, 17).unwrap(),
            sample_gamma(0.5, 500, 17).unwrap()
        );
    }

    #[test]
    fn bad_arguments() {
        assert!(sample_inverse_gaussian(0.0, 10, 1).is_err());
        assert!(sample_gamma(-1.0, 10, 1).is_err());
        assert!(sample_half_gig(-0.5, 10, 1).is_err());
    }

    fn within(set: &SampleSet, n: u32, target: f64) -> bool {
        let (m, se) = set.moment_with_se(n);
        (m - target).abs() <= 3.0 * se
    }

    #[test]
    fn inverse_gaussian_first_two_moments() {
        let s = sample_inverse_gaussian(2.0, 1_000_000, 2024).unwrap();
        assert!(within(&s, 1, 2.0)); // f_1(2)
        assert!(within(&s, 2, 6.0)); // f_2(2) = 2 + 4
    }

    #[test]
    fn gamma_means() {
        assert!(within(&sample_gamma(0.5, 200_000, 8).unwrap(), 1, 1.0));
        assert!(within(&sample_gamma(1.5, 200_000, 9).unwrap(), 1, 3.0));
    }

    #[test]
    fn half_gig_moments() {
        let s = sample_half_gig(1.0, 1_000_000, 12).unwrap();
        assert!(within(&s, 1, 2.0)); // θ_1(1)
        let s = sample_half_gig(2.0, 1_000_000, 13).unwrap();
        assert!(within(&s, 3, 77.0)); // θ_3(2) = 15 + 30 + 24 + 8
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..64).map(|i| derive_seed(42, i)).collect();
        assert_eq!(seeds.len(), 64);
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }
}
