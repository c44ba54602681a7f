//! Arithmetic substrate: exact rationals and Bernoulli numbers, jets,
//! Laurent series at infinity, polynomial roots, log-Gamma, quadrature.

pub mod bernoulli;
pub mod gamma;
pub mod jet;
pub mod laurent;
pub mod quad;
pub mod roots;

pub use bernoulli::{bernoulli, bernoulli_table, Rational};
pub use gamma::log_gamma;
pub use jet::Jet;
pub use laurent::LaurentAtInfinity;
pub use num_complex::Complex64 as C64;
pub use quad::{integrate, QuadOptions};
pub use roots::{poly_roots, relative_residual};

/// Shorthand for a complex literal.
pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
