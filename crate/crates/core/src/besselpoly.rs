//! The three Bessel polynomial families and the Laguerre specialization
//! that carries them.
//!
//! * `q_k(z) = Σ_{l=0}^{k} C(k,l)/C(2k,l) · (2z)^l / l!`, normalized so
//!   `q_k(0) = 1`. It gives the closed form of the half-integer Macdonald
//!   function: `e^{-z} q_k(z) = 2^{1/2-k}/Γ(k+1/2) · z^{k+1/2} K_{k+1/2}(z)`.
//! * `θ_n(z) = (2n)!/(n! 2^n) · q_n(z)`, the monic reverse Bessel
//!   polynomial, equal to `E[X^n]` for `X ~ GIG(ψ=1, χ=z², λ=1/2)`.
//! * `f_0 = 1`, `f_n(z) = z θ_{n-1}(z)`, equal to `E[X^n]` for the inverse
//!   Gaussian `GIG(ψ=1, χ=z², λ=-1/2)`.
//!
//! Everything is derived from the explicit `q` sum. Results are memoized
//! per index; the caches only ever hold the value the constructor would
//! return.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::One;

use crate::exact::{binomial, factorial, UniPoly};

struct Family {
    cache: OnceLock<Mutex<HashMap<u32, UniPoly>>>,
}

impl Family {
    const fn new() -> Self {
        Family {
            cache: OnceLock::new(),
        }
    }

    fn get(&self, k: u32, build: impl FnOnce(u32) -> UniPoly) -> UniPoly {
        let cache = self.cache.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(p) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&k) {
            return p.clone();
        }
        // Built outside the lock so recursive family lookups cannot deadlock.
        let p = build(k);
        cache
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .entry(k)
            .or_insert(p)
            .clone()
    }
}

static Q: Family = Family::new();
static THETA: Family = Family::new();
static F: Family = Family::new();
static LAGUERRE: Family = Family::new();

/// Bessel polynomial `q_k`, degree `k`, constant term 1.
pub fn q_poly(k: u32) -> UniPoly {
    Q.get(k, |k| {
        let coeffs = (0..=k)
            .map(|l| {
                let num = binomial(k, i64::from(l)) << l as usize;
                let den = binomial(2 * k, i64::from(l)) * factorial(l);
                BigRational::new(num, den)
            })
            .collect();
        UniPoly::new(coeffs)
    })
}

/// `(2n)! / (n! 2^n)`, the factor taking `q_n` to `θ_n`.
fn theta_scale(n: u32) -> BigRational {
    BigRational::new(factorial(2 * n), factorial(n) << n as usize)
}

/// Reverse Bessel polynomial `θ_n`: monic, non-negative integer coefficients.
pub fn theta_poly(n: u32) -> UniPoly {
    THETA.get(n, |n| q_poly(n).scale(&theta_scale(n)))
}

/// Carlitz polynomial `f_n`: `f_0 = 1`, `f_n = z θ_{n-1}` otherwise.
pub fn f_poly(n: u32) -> UniPoly {
    F.get(n, |n| match n {
        0 => UniPoly::one(),
        _ => theta_poly(n - 1).mul_var(),
    })
}

/// `L_n^{(-2n-1)}(2z)` as a polynomial in `z`, via
/// `L_n^{(-2n-1)}(2z) = (-1)^n C(2n,n) q_n(z)`.
///
/// The variable is the half-argument `z`, not the Laguerre argument `2z`.
pub fn laguerre_special(n: u32) -> UniPoly {
    LAGUERRE.get(n, |n| {
        let mut c = binomial(2 * n, i64::from(n));
        if n % 2 == 1 {
            c = -c;
        }
        q_poly(n).scale(&BigRational::from_integer(c))
    })
}

/// `θ_n(z)` evaluated exactly; this is the `n`-th moment of `X_{1/2,z}`.
pub fn moment_theta(n: u32, z: &BigRational) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    theta_poly(n).eval(z)
}
