//! Exact Gaussian-rational and complex-float arithmetic, polynomials in `x`,
//! discriminants and rational approximation.

mod approx;
mod discriminant;
mod gaussian;
mod poly;
mod scalar;

pub use approx::{best_rational, rationalize_value};
pub use discriminant::{discriminant_of, newton_interpolate, numeric_discriminant};
pub use gaussian::GaussianRational;
pub use num_complex::Complex64;
pub use poly::{poly_eval, Kind, PolyX};
pub use scalar::{determinant, solve, Scalar};


/// Rejects NaN and infinite values.
pub fn check_finite(c: Complex64) -> crate::Result<Complex64> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(crate::Error::NonFinite(c.to_string()))
    }
}

/// Horner evaluation of a floating coefficient slice, lowest degree first.
pub fn poly_eval_slice(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * x + v)
}
