//! Exact computational tropical geometry for plane curves, together with the
//! divisor-class algebra needed to check balancing of tropical curves living
//! in torus bundles.
//!
//! The library is organised around a pipeline:
//!
//! * [`puiseux`]: finite Puiseux series over the rationals and their
//!   valuation (the leading exponent).
//! * [`troppoly`]: Laurent polynomials with Puiseux coefficients, their
//!   max-plus tropicalizations, and the corner-locus predicate.
//! * [`newton`]: Newton polygons, regular subdivisions, and the weighted
//!   tropical curves dual to them.
//! * [`fanbundle`]: fan 1-skeletons, torus-bundle descriptors, and the
//!   divisor-class relations on toric variety bundles.
//! * [`balance`]: local and bundle-level balancing checks plus exhaustive
//!   enumeration of admissible weight functions.
//! * [`json`]: the JSON wire formats shared by the CLI and bindings.
//!
//! All arithmetic is exact: rationals everywhere, no floating point.

pub mod balance;
mod error;
pub mod fanbundle;
pub mod json;
pub mod newton;
pub mod puiseux;
pub mod troppoly;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
