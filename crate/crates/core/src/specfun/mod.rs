//! Special functions: complex log-gamma, digamma, second polygamma,
//! Kummer's M in scaled form, generalized Laguerre polynomials, and the
//! constants they share.

mod dd;
mod gamma;
mod kummer;
mod laguerre;
mod scaled;

pub use gamma::{constants, digamma, log_gamma, polygamma2, Constants, EULER_GAMMA, ZETA_3};
pub(crate) use gamma::{digamma_with_window, polygamma2_with_window};
pub use kummer::{kummer_m, kummer_m_tol};
pub use laguerre::laguerre;
pub use scaled::ScaledComplex;
