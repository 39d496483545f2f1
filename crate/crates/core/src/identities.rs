//! Exact verification of the Bessel-polynomial multi-sum identities.
//!
//! Each identity is an equality between two polynomials in `z_1, …, z_m`.
//! Both sides are built over the rationals and compared term by term, so a
//! pass is a proof for that `(m, n)`: an identity between polynomials of
//! bounded degree holds for every complex substitution once the
//! coefficients agree.
//!
//! With `z = z_1 + … + z_m` and `P_j = ((m-1)/2)_j / j!`:
//!
//! | identity | left side | right side |
//! |---|---|---|
//! | general Bessel | `Σ Π C(2k_i,k_i) q_{k_i}(z_i)` | `Σ_k C(2k,k) 4^{n-k} P_{n-k} q_k(z)` |
//! | convolution form | same with every `z_i = z` | same with `q_k(mz)` |
//! | theta | `Σ Π θ_{k_i}(z_i)/k_i!` | `Σ_k 2^{n-k} P_{n-k} θ_k(z)/k!` |
//! | f multinomial | `Σ Π f_{k_i}(z_i)/k_i!` | `f_n(z)/n!` |
//! | Laguerre | `Σ Π L_{k_i}^{(-2k_i-1)}(z_i)` | `Σ_k (-4)^{n-k} P_{n-k} L_k^{(-2k-1)}(z)` |
//!
//! The outer sums on the left run over weak compositions `k_1 + … + k_m = n`.
//!
//! The Laguerre coefficient is `(-4)^{n-k} P_{n-k}`. It follows from the
//! general Bessel identity through `L_k^{(-2k-1)}(2w) = (-1)^k C(2k,k) q_k(w)`.
//! An additional `4^{n-k}` in that coefficient makes the identity false
//! already at `m = 2, n = 1`.
//!
//! Practical bound: `m ≤ 5`, `n ≤ 12` runs in well under a minute. Beyond that
//! the `C(n+m-1, m-1)` compositions and the multinomial expansion of the right
//! side grow quickly, but nothing else limits the range.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::besselpoly::{f_poly, laguerre_special, q_poly, theta_poly};
use crate::exact::{
    binomial, embed_univariate, factorial, pochhammer_half, substitute_sum, weak_compositions,
    Exponent, MultiPoly, UniPoly,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    GeneralBessel,
    ConvolutionForm,
    Theta,
    FMultinomial,
    Laguerre,
    Prudnikov,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::GeneralBessel,
        Identity::ConvolutionForm,
        Identity::Theta,
        Identity::FMultinomial,
        Identity::Laguerre,
        Identity::Prudnikov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::GeneralBessel => "general_bessel",
            Identity::ConvolutionForm => "convolution_form",
            Identity::Theta => "theta",
            Identity::FMultinomial => "f_multinomial",
            Identity::Laguerre => "laguerre",
            Identity::Prudnikov => "prudnikov",
        }
    }

    /// Whether the identity is indexed by `m` (everything but Prudnikov).
    pub fn takes_m(self) -> bool {
        self != Identity::Prudnikov
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

fn as_string<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// Both sides agree; size of the common polynomial.
    Agreement { max_degree: u32, term_count: usize },
    /// Lexicographically smallest exponent where the sides differ.
    Mismatch {
        exponent: Exponent,
        #[serde(serialize_with = "as_string")]
        lhs: BigRational,
        #[serde(serialize_with = "as_string")]
        rhs: BigRational,
    },
}

/// Outcome of one exact identity check.
///
/// `status` is `Pass` exactly when `lhs - rhs` is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub m: Option<usize>,
    pub n: u32,
    pub status: Status,
    pub witness: Witness,
    /// Largest `|lhs_e - rhs_e|` over all exponents; zero on a pass.
    pub max_difference: BigRational,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn max_difference_f64(&self) -> f64 {
        self.max_difference.to_f64().unwrap_or(f64::INFINITY)
    }

    fn compare(
        identity: Identity,
        m: Option<usize>,
        n: u32,
        lhs: &MultiPoly,
        rhs: &MultiPoly,
    ) -> Result<Self> {
        let diff = lhs.sub(rhs)?;
        let (status, witness) = match lhs.first_difference(rhs)? {
            None => (
                Status::Pass,
                Witness::Agreement {
                    max_degree: lhs.total_degree().unwrap_or(0),
                    term_count: lhs.term_count(),
                },
            ),
            Some((exponent, l, r)) => (
                Status::Fail,
                Witness::Mismatch {
                    exponent,
                    lhs: l,
                    rhs: r,
                },
            ),
        };
        Ok(VerificationReport {
            identity,
            m,
            n,
            status,
            witness,
            max_difference: diff.max_abs_coeff(),
        })
    }
}

/// Left and right side of one identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides<P> {
    pub lhs: P,
    pub rhs: P,
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::TooFewVariables { min: 2, got: m });
    }
    Ok(())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn inv_factorial(n: u32) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

fn pow2(e: u32) -> BigRational {
    int(BigInt::one() << e as usize)
}

/// `((m-1)/2)_j / j!`.
fn half_shift_weight(m: usize, j: u32) -> BigRational {
    let a = BigRational::new(BigInt::from(m - 1), BigInt::from(2));
    pochhammer_half(&a, j) * inv_factorial(j)
}

/// `Σ_{k_1+…+k_m=n} Π_i factor(k_i)(z_i)`.
fn composition_sum(m: usize, n: u32, factor: impl Fn(u32) -> UniPoly) -> Result<MultiPoly> {
    let factors: Vec<UniPoly> = (0..=n).map(&factor).collect();
    let mut acc = MultiPoly::zero(m);
    for comp in weak_compositions(n, m) {
        let mut term = MultiPoly::one(m);
        for (slot, &k) in comp.parts().iter().enumerate() {
            if factors[k as usize] == UniPoly::one() {
                continue;
            }
            term = term.mul(&embed_univariate(&factors[k as usize], m, slot)?)?;
        }
        acc.add_assign(&term)?;
    }
    Ok(acc)
}

/// `Σ_{k_1+…+k_m=n} Π_i factor(k_i)(z)`, univariate.
fn composition_sum_uni(m: usize, n: u32, factor: impl Fn(u32) -> UniPoly) -> UniPoly {
    let factors: Vec<UniPoly> = (0..=n).map(&factor).collect();
    weak_compositions(n, m).fold(UniPoly::zero(), |acc, comp| {
        let term = comp
            .parts()
            .iter()
            .fold(UniPoly::one(), |t, &k| &t * &factors[k as usize]);
        &acc + &term
    })
}

/// `Σ_{k=0}^{n} weight(k) · poly(k)` as a univariate polynomial.
fn weighted_sum(
    n: u32,
    weight: impl Fn(u32) -> BigRational,
    poly: impl Fn(u32) -> UniPoly,
) -> UniPoly {
    (0..=n).fold(UniPoly::zero(), |acc, k| &acc + &poly(k).scale(&weight(k)))
}

fn central_binomial(k: u32) -> BigRational {
    int(binomial(2 * k, i64::from(k)))
}

fn general_bessel_factor(k: u32) -> UniPoly {
    q_poly(k).scale(&central_binomial(k))
}

/// Right side as a polynomial in the single variable `z = z_1 + … + z_m`.
fn general_bessel_rhs_uni(m: usize, n: u32) -> UniPoly {
    weighted_sum(
        n,
        |k| central_binomial(k) * pow2(2 * (n - k)) * half_shift_weight(m, n - k),
        q_poly,
    )
}

pub fn general_bessel_sides(m: usize, n: u32) -> Result<Sides<MultiPoly>> {
    check_m(m)?;
    Ok(Sides {
        lhs: composition_sum(m, n, general_bessel_factor)?,
        rhs: substitute_sum(&general_bessel_rhs_uni(m, n), m)?,
    })
}

/// The general Bessel identity with all `z_i` equal, as a polynomial in `z`.
pub fn convolution_form_sides(m: usize, n: u32) -> Result<Sides<UniPoly>> {
    check_m(m)?;
    let scale = int(m as u64);
    Ok(Sides {
        lhs: composition_sum_uni(m, n, general_bessel_factor),
        rhs: general_bessel_rhs_uni(m, n).scale_arg(&scale),
    })
}

pub fn theta_sides(m: usize, n: u32) -> Result<Sides<MultiPoly>> {
    check_m(m)?;
    let rhs = weighted_sum(
        n,
        |k| pow2(n - k) * half_shift_weight(m, n - k) * inv_factorial(k),
        theta_poly,
    );
    Ok(Sides {
        lhs: composition_sum(m, n, |k| theta_poly(k).scale(&inv_factorial(k)))?,
        rhs: substitute_sum(&rhs, m)?,
    })
}

pub fn f_multinomial_sides(m: usize, n: u32) -> Result<Sides<MultiPoly>> {
    check_m(m)?;
    Ok(Sides {
        lhs: composition_sum(m, n, |k| f_poly(k).scale(&inv_factorial(k)))?,
        rhs: substitute_sum(&f_poly(n).scale(&inv_factorial(n)), m)?,
    })
}

/// Laguerre form in the half-arguments `w_i = z_i / 2`.
///
/// [`laguerre_special`] returns `L_k^{(-2k-1)}(2w)` as a polynomial in `w`,
/// and `2 Σ w_i = Σ z_i`, so checking the identity in `w` is equivalent.
pub fn laguerre_sides(m: usize, n: u32) -> Result<Sides<MultiPoly>> {
    check_m(m)?;
    let rhs = weighted_sum(
        n,
        |k| {
            let j = n - k;
            let mut c = pow2(2 * j) * half_shift_weight(m, j);
            if j % 2 == 1 {
                c = -c;
            }
            c
        },
        laguerre_special,
    );
    Ok(Sides {
        lhs: composition_sum(m, n, laguerre_special)?,
        rhs: substitute_sum(&rhs, m)?,
    })
}

/// `L_n^{(-2n-1)}(z)` in the Laguerre argument itself.
fn laguerre_in_argument(n: u32, sign: i64) -> UniPoly {
    laguerre_special(n).scale_arg(&BigRational::new(BigInt::from(sign), BigInt::from(2)))
}

/// `Σ_k L_k^{(-2k-1)}(z) L_{n-k}^{(-2n+2k-1)}(-z)` as a polynomial in `z`.
pub fn prudnikov_lhs(n: u32) -> UniPoly {
    (0..=n).fold(UniPoly::zero(), |acc, k| {
        &acc + &(&laguerre_in_argument(k, 1) * &laguerre_in_argument(n - k, -1))
    })
}

/// `(-4)^n`.
pub fn prudnikov_value(n: u32) -> BigRational {
    let v = int(BigInt::from(4).pow(n));
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

fn as_multi(p: &UniPoly) -> Result<MultiPoly> {
    embed_univariate(p, 1, 0)
}

pub fn verify_general_bessel(m: usize, n: u32) -> Result<VerificationReport> {
    let s = general_bessel_sides(m, n)?;
    VerificationReport::compare(Identity::GeneralBessel, Some(m), n, &s.lhs, &s.rhs)
}

pub fn verify_convolution_form(m: usize, n: u32) -> Result<VerificationReport> {
    let s = convolution_form_sides(m, n)?;
    VerificationReport::compare(
        Identity::ConvolutionForm,
        Some(m),
        n,
        &as_multi(&s.lhs)?,
        &as_multi(&s.rhs)?,
    )
}

pub fn verify_theta_identity(m: usize, n: u32) -> Result<VerificationReport> {
    let s = theta_sides(m, n)?;
    VerificationReport::compare(Identity::Theta, Some(m), n, &s.lhs, &s.rhs)
}

pub fn verify_f_multinomial(m: usize, n: u32) -> Result<VerificationReport> {
    let s = f_multinomial_sides(m, n)?;
    VerificationReport::compare(Identity::FMultinomial, Some(m), n, &s.lhs, &s.rhs)
}

pub fn verify_laguerre_identity(m: usize, n: u32) -> Result<VerificationReport> {
    let s = laguerre_sides(m, n)?;
    VerificationReport::compare(Identity::Laguerre, Some(m), n, &s.lhs, &s.rhs)
}

pub fn verify_prudnikov(n: u32) -> Result<VerificationReport> {
    let lhs = as_multi(&prudnikov_lhs(n))?;
    let rhs = as_multi(&UniPoly::constant(prudnikov_value(n)))?;
    VerificationReport::compare(Identity::Prudnikov, None, n, &lhs, &rhs)
}

/// Runs `identity` at `(m, n)`; `m` is ignored for Prudnikov.
pub fn verify(identity: Identity, m: usize, n: u32) -> Result<VerificationReport> {
    match identity {
        Identity::GeneralBessel => verify_general_bessel(m, n),
        Identity::ConvolutionForm => verify_convolution_form(m, n),
        Identity::Theta => verify_theta_identity(m, n),
        Identity::FMultinomial => verify_f_multinomial(m, n),
        Identity::Laguerre => verify_laguerre_identity(m, n),
        Identity::Prudnikov => verify_prudnikov(n),
    }
}
