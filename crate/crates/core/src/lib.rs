//! Exact algebra and arbitrary-precision numerics for multiple zeta values.
//!
//! The crate covers the stuffle (`*`) and shuffle (`ш`) products on indices,
//! the two polynomial regularizations `ζ*(k;T)` and `ζ^ш(k;T)`, the
//! correction maps `ρ` and `ρ_{x,y}`, the bivariate polynomials
//! `ζ_{x,y}^•(k;T)`, a Hölder-split series evaluator for admissible values,
//! and sweep checkers that verify the regularization identities index by
//! index.

pub mod algebra;
pub mod bivariate;
pub mod cli;
pub mod error;
pub mod expr;
pub mod index;
pub mod numeric;
pub mod regularization;
pub mod rho;
pub mod verification;

pub use algebra::{combine, product, product_linear, shuffle, stuffle, IndexCombination, Product};
pub use bivariate::{zeta_xy, zeta_xy_linear, BivariatePolynomial};
pub use error::{MzvError, Result};
pub use expr::{flatten_products, MzvExpr, MzvMonomial};
pub use index::{enumerate_indices, parse_index, Index, Word};
pub use numeric::{BigFloat, EvalCache, Evaluator};
pub use regularization::{poly_multiply, regularize, regularize_linear, RegPolynomial};
pub use rho::{
    a_coefficients, a_coefficients_xy, apply_rho, apply_rho_xy, RationalFnCoeff, XyPoly,
};
pub use verification::VerificationReport;

/// Exact rational coefficients used throughout.
pub type Rational = num_rational::BigRational;
