//! Exact q-series engine for Rogers–Ramanujan type identities.
//!
//! Everything computes in the ring of truncated power series in `q` with
//! arbitrary-precision rational coefficients ([`series::FormalSeries`]).
//! On top of that sit the standard q-functions, Chebyshev polynomials of
//! the third kind, Bailey pairs with their weak-form transforms, and a
//! registry of identities that can each be verified to a chosen order.

pub mod bailey;
pub mod chebyshev;
pub mod corpus;
pub mod error;
pub mod qfunctions;
pub mod series;

pub use error::{Error, Result};
pub use qfunctions::SignedMonomial;
pub use series::{equal_to_order, Agreement, FormalSeries, Mismatch, Rational, Term};
