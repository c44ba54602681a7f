//! Exact-WKB analysis of the third Painlevé equation of types D6 and D7.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`] — jets, exact rationals, Bernoulli numbers, roots, log Γ;
//! - [`algebra`] — parameters, the quartic for λ₀, turning points, u-chart;
//! - [`series`] — formal series in η⁻¹: λ⁽⁰⁾, the Riccati solutions, Bäcklund maps;
//! - [`asymptotics`] — expansions near t = ∞ and t = 0 and their checks;
//! - [`geometry`] — Stokes curves on the u-plane and their degenerations;
//! - [`voros`] — Voros coefficients in closed form and by contour integration;
//! - [`borel`] — Borel sums of the building blocks F and G;
//! - [`scaling`] — the homogeneity table under (t, c, η) ↦ (r⁻²t, r⁻¹c, rη);
//! - [`walls`] — walls and chambers in parameter space.

pub mod algebra;
pub mod asymptotics;
pub mod borel;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod scaling;
pub mod series;
pub mod voros;
pub mod walls;

pub use algebra::{Equation, Parameters};
pub use error::{Error, Result};
pub use numerics::{c64, Jet, Rational, C64};
