//! Exact computation of generalized Stirling numbers of the second kind,
//! generalized Eulerian numbers and polynomials, and the classical special
//! numbers they extend, together with a mechanically verified catalog of
//! the identities relating them.
//!
//! Everything runs over exact rationals ([`Rational`]) or sparse
//! multivariate polynomials ([`MultiPoly`]); there is no floating point in
//! any computation path. The main layers:
//!
//! - [`scalar`]: the [`Scalar`] value (rational or polynomial) plus
//!   factorials and generalized binomials;
//! - [`basis`]: Taylor shift to powers of `z-1` and binomial-basis
//!   expansion via forward differences;
//! - [`classic`]: Stirling numbers of both kinds and Eulerian numbers,
//!   each with two independent computation routes;
//! - [`gsn`]: the general parameter family (GEN, GEP, GSN, conversions,
//!   boundary values);
//! - [`bivariate`]: the two-family specialization and its transformation,
//!   convolution and power-sum identities;
//! - [`weyl`]: normal ordering for `x`/`D` words and the differential
//!   characterization of the `a = 1` family;
//! - [`registry`]: the executable identity catalog with numeric and
//!   symbolic drivers and deterministic reports;
//! - [`grid`]: the deterministic parameter grids the drivers run over.

pub mod basis;
pub mod bivariate;
pub mod classic;
pub mod error;
pub mod grid;
pub mod gsn;
pub mod poly;
pub mod rational;
pub mod registry;
pub mod scalar;
pub mod weyl;

pub use basis::{expand_in_binomial_basis, rebase_z_to_zm1, shift_from_zm1, shift_to_zm1};
pub use bivariate::{gsn2, gsn2_recurrence, gsn_single, triangle, BivariateParams, TargetParams};
pub use classic::{
    eulerian, stirling1_unsigned, stirling2, NumberTable, Route, TableKind,
};
pub use error::GsnError;
pub use gsn::{
    boundary_values, gen_explicit, gen_from_gsn, gep, gsn_explicit, gsn_from_gen, gsn_table,
    Factor, GepPolynomial, ParamSpec,
};
pub use poly::MultiPoly;
pub use rational::Rational;
pub use registry::{run_all, run_identity, Bounds, IdentityCheck, Mode, VerifyReport};
pub use scalar::{binom_int, binom_scalar, factorial, power_scalar, Scalar};
pub use weyl::{operator_lhs, recurrence_51, verify_operator_identity, WeylWord};
