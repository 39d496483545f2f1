//! Bessel polynomial families, generalized inverse Gaussian (GIG) laws, and
//! the multi-sum identities that connect them.
//!
//! The crate has two halves:
//!
//! * an exact half ([`exact`], [`besselpoly`], [`identities`]) that builds
//!   both sides of each polynomial identity over the rationals and compares
//!   them coefficient by coefficient, and
//! * a numeric half ([`quadrature`], [`specialfun`], [`gig`]) that evaluates
//!   Macdonald functions `K_ν`, GIG densities and moments, runs seeded Monte
//!   Carlo checks of the distributional identities, and scans the Turán-type
//!   inequality for `K_ν`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod besselpoly;
pub mod exact;
pub mod gig;
pub mod identities;
pub mod quadrature;
pub mod specialfun;

mod error;

pub use error::{Error, Result};
