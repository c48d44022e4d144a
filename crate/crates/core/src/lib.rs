//! Generalized binomial coefficient `C(w, z)` for complex arguments.
//!
//! Three evaluation routes are provided: the gamma ratio, the finite sinc sum
//! for nonnegative integer `w`, and the infinite sinc series valid for
//! `Re(w) > -1`. On top of these sit an integral-to-series evaluator for
//! `∫ C(w, x) f(x) dx` (via the Fourier transform of `f` restricted to
//! `[-1/2, 1/2]`), independent adaptive quadrature used as an oracle, and a
//! suite of executable identity checks.
//!
//! ```
//! use sincbinom::{binomial, Complex};
//!
//! let v = binomial::binom_gamma(Complex::new(4.0, 0.0), Complex::new(2.0, 0.0)).unwrap();
//! assert!((v.re - 6.0).abs() < 1e-12);
//! ```

pub mod binomial;
pub mod error;
pub mod eval;
pub mod identities;
pub mod json;
pub mod numeric;
pub mod quadrature;
mod series;
pub mod special;

pub use error::{Error, Result};
pub use eval::{EvalOptions, Evaluation, Method};

/// Double-precision complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
