use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::combinat::{multinomial, weak_compositions};
use super::{debug_check_canonical, UniPoly};
use crate::{Error, Result};

/// Exponent vector `(e_1, …, e_m)` of a monomial `z_1^{e_1} ⋯ z_m^{e_m}`.
pub type Exponent = Vec<u32>;

/// Polynomial in `m` variables with exact rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so iteration is
/// lexicographic and deterministic. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest total degree over stored terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        debug_check_canonical(&c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_arity(other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                term *= num_traits::pow(x.clone(), k as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Sets every variable equal to a single `z`: the result is a
    /// univariate polynomial in the total degree.
    pub fn collapse(&self) -> UniPoly {
        let deg = self.total_degree().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![BigRational::zero(); deg];
        for (e, c) in &self.terms {
            coeffs[e.iter().sum::<u32>() as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    /// Lexicographically smallest exponent where `self` and `other` differ,
    /// with both coefficients.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Result<Option<(Exponent, BigRational, BigRational)>> {
        let diff = self.sub(other)?;
        Ok(diff
            .terms
            .keys()
            .next()
            .map(|e| (e.clone(), self.coeff(e), other.coeff(e))))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Lifts `p(z)` to the `m`-variable ring as `p(z_{slot+1})`.
pub fn embed_univariate(p: &UniPoly, arity: usize, slot: usize) -> Result<MultiPoly> {
    if slot >= arity {
        return Err(Error::SlotOutOfRange { slot, arity });
    }
    let terms = p.coeffs().iter().enumerate().map(|(d, c)| {
        let mut e = vec![0; arity];
        e[slot] = d as u32;
        (e, c.clone())
    });
    MultiPoly::from_terms(arity, terms)
}

/// Expands `p(z_1 + … + z_m)` by the multinomial theorem.
pub fn substitute_sum(p: &UniPoly, arity: usize) -> Result<MultiPoly> {
    if arity == 0 {
        return Err(Error::TooFewVariables { min: 1, got: 0 });
    }
    let mut out = MultiPoly::zero(arity);
    for (d, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for comp in weak_compositions(d as u32, arity) {
            let coef = c * BigRational::from_integer(multinomial(comp.parts()));
            out.add_term(comp.parts().to_vec(), coef);
        }
    }
    Ok(out)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*z{}", v + 1)?,
                    _ => write!(f, "*z{}^{k}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}
