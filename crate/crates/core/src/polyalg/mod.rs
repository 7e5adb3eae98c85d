//! Exact multivariate polynomial arithmetic over the Gaussian rationals,
//! with formal derivatives and the bivariate elimination toolkit (GCD,
//! resultants, square-free parts, divisibility) used by the variety and
//! stratification machinery.

mod elim;
mod gaussian;
mod poly;
mod text;

pub use elim::{
    as_univariate, coeffs_in_var, coprime_square_free_factors, divides, division, exact_div,
    from_coeffs_in_var, gcd, gcd_bivariate, resultant_eliminate, square_free_part, UniPoly,
};
pub use gaussian::{rational_to_f64, GaussianRational, Rational};
pub use poly::{poly_arith, wirtinger_derivative, HoloPoly, Monomial, RingOp};
pub use text::{parse_poly, ParseError};

use std::fmt;

/// Structural failures in the exact-algebra layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    VarMismatch { left: usize, right: usize },
    VarIndex { index: usize, num_vars: usize },
    GcdOfZeros,
    ZeroInput(&'static str),
    TooManyVars { supported: usize, got: usize },
    Parse(ParseError),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VarMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            PolyError::VarIndex { index, num_vars } => {
                write!(f, "variable index {index} out of range for {num_vars} variables")
            }
            PolyError::GcdOfZeros => write!(f, "gcd of two zero polynomials is undefined"),
            PolyError::ZeroInput(op) => write!(f, "{op}: zero polynomial input"),
            PolyError::TooManyVars { supported, got } => {
                write!(f, "operation supports at most {supported} variables, got {got}")
            }
            PolyError::Parse(e) => write!(f, "polynomial parse error: {e}"),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<ParseError> for PolyError {
    fn from(e: ParseError) -> Self {
        PolyError::Parse(e)
    }
}
