//! Integral representations of Catalan's constant.
//!
//! This crate derives, in exact rational arithmetic, the closed forms of the
//! Lerch-type kernels that appear in a family of integral representations of
//! Catalan's constant, and verifies every representation numerically against
//! a high-precision reference value:
//!
//! * single integrals of `G(x) * arctan(x)/x` over symmetric CDFs,
//! * double integrals of `G1(x) G2(y) / (1 + x^2 y^2)` over scaled boxes,
//! * multidimensional integrals with negative-order Lerch kernels, up to
//!   dimension twelve, via deterministic or randomized quasi-Monte Carlo
//!   quadrature.
//!
//! The `cli` module exposes the `catalankit` binary with `verify`,
//! `integrate`, and `lerch` subcommands.

pub mod cdf;
pub mod cli;
pub mod constants;
mod kahan;
pub mod lerch;
pub mod quadrature;
pub mod representations;

pub use cdf::SymmetricCdf;
pub use lerch::{derive_closed_form, LerchClosedForm};
pub use quadrature::{Integrand, QuadratureResult};
pub use representations::EngineParams;
