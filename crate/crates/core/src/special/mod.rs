//! Gamma family, beta, sinc, Si and rect.

mod beta;
pub mod gamma;
mod sinc;

pub use beta::{beta_gamma, beta_series};
pub use gamma::{gamma, log_gamma, reciprocal_gamma_weierstrass, EULER_GAMMA};
pub(crate) use sinc::si_minus_half_pi;
pub use sinc::{rect, si, sinc};
