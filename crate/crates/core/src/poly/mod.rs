//! Exact sparse multivariate polynomials over the rationals and Gaussian rationals.
//!
//! Every algorithm downstream is exact, so coefficients are arbitrary-precision
//! rationals throughout. Gaussian-rational polynomials are carried as a real and an
//! imaginary [`Poly`].

mod cpoly;
mod monomial;
#[allow(clippy::module_inception)]
mod poly;

pub use cpoly::{gauss, imag_unit, CPoly};
pub use monomial::{var_name, Monomial};
pub use poly::{int, rat, render_rational, Poly};

/// Gaussian rational `a + b i` with `a, b` exact rationals.
pub type GaussRat = num_complex::Complex<num_rational::BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("evaluation point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("expected a real polynomial, imaginary part is {imaginary}")]
    NotReal { imaginary: String },
}
