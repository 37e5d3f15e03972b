//! Minnaert resonances of gas bubbles from boundary integral equations.
//!
//! The crate discretizes the two-dimensional transmission problem for one or
//! two bubbles with a Nyström scheme (log-split trapezoidal quadrature on
//! smooth closed curves), assembles the block operator whose characteristic
//! values are the bubble resonances, and locates those values with Muller's
//! method applied to the minimum-modulus eigenvalue. Closed-form resonance
//! formulas (three-dimensional leading order and the two-dimensional
//! transcendental equation) are provided alongside, so numerics and
//! asymptotics can be compared directly.
//!
//! Module map:
//!
//! | module       | contents                                                      |
//! |--------------|---------------------------------------------------------------|
//! | [`special`]  | complex Bessel/Hankel functions of order 0 and 1, η_k, b_j, c_j |
//! | [`geometry`] | parametric curves, discretization, area, equilibrium density   |
//! | [`layerpot`] | Nyström layer-potential matrices and field evaluation          |
//! | [`spectral`] | dense solves, eigenvalues, singular values, Muller's method    |
//! | [`bubble`]   | materials, block systems, resonances, scattering, monopoles    |
//! | [`exec`]     | data-parallel helpers with a sequential fallback               |

pub mod bubble;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod layerpot;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};

/// Complex scalar used for frequencies, wavenumbers, densities and eigenvalues.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix.
pub type CMat = faer::Mat<C64>;

/// A point (or vector) in the plane.
pub type Point = [f64; 2];

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
