//! Exact rational arithmetic: scalars, polynomials in one or several
//! variables, and the combinatorial factors that appear in the multi-sums.

mod combinat;
mod multipoly;
mod unipoly;

pub use combinat::{
    binomial, factorial, gamma_half_ratio, multinomial, pochhammer_half, weak_compositions,
    Composition, WeakCompositions,
};
pub use multipoly::{embed_univariate, substitute_sum, Exponent, MultiPoly};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use unipoly::UniPoly;

/// Integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[inline]
pub(crate) fn debug_check_canonical(r: &BigRational) {
    debug_assert!(
        num_traits::Signed::is_positive(r.denom()),
        "non-positive denominator in {r}"
    );
    debug_assert!(
        num_integer::Integer::gcd(r.numer(), r.denom()) == BigInt::from(1)
            || num_traits::Zero::is_zero(r.numer()) && *r.denom() == BigInt::from(1),
        "unreduced rational {r}"
    );
}
