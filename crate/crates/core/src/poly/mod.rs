//! Exact sparse multivariate integer polynomials, univariate resultants and
//! discriminants via the Sylvester matrix, and binary forms y^2 = f(x,z).

mod binary;
mod intpoly;
mod parse;
mod resultant;

pub use binary::{binary_disc_mod_p, BinaryForm};
pub use intpoly::IntPoly;
pub use parse::parse_poly;
pub use resultant::{bareiss_det, discriminant, sylvester_resultant};

use thiserror::Error;

/// Hard caps from the desk-scale design: Sylvester matrices stay small.
pub const MAX_UNIVARIATE_DEGREE: u32 = 64;
pub const MAX_PARAMETERS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomials must be univariate in the same variable")]
    NotUnivariate,
    #[error("degree {0} exceeds the supported maximum {MAX_UNIVARIATE_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("discriminant requires degree >= 2, got {0}")]
    DegreeBelowMinimum(u32),
    #[error("target degree {target} is below the polynomial degree {actual}")]
    TargetDegreeTooSmall { target: u32, actual: u32 },
    #[error("resultant requires deg f + deg g >= 1")]
    BothConstant,
}
