//! Closed-form primitive of R₋₁ for D6:
//!
//! φ = 4tR₋₁ − c∞ log((2λ₀ − c∞ + tR₋₁)/(2λ₀ − c∞ − tR₋₁))
//!       − c₀ log((2t² − c₀tλ₀ + t²λ₀R₋₁)/(2t² − c₀tλ₀ − t²λ₀R₋₁)),
//!
//! with dφ/dt = 2R₋₁.

use std::f64::consts::PI;

use crate::algebra::{BranchPoint, Equation, Parameters};
use crate::error::{Error, Result};
use crate::numerics::{Jet, C64};

fn log_args(p: &Parameters, t: C64, lam: C64, r: C64) -> Result<[C64; 2]> {
    let a = 2.0 * lam - p.c_inf;
    let b = 2.0 * t * t - p.c_0 * t * lam;
    let c = t * t * lam * r;
    let ratios = [(a + t * r) / (a - t * r), (b + c) / (b - c)];
    for z in ratios {
        if !z.is_finite() || z.norm() == 0.0 {
            return Err(Error::Domain(format!("φ: logarithm argument degenerates at t = {t}")));
        }
    }
    Ok(ratios)
}

/// φ at (t, λ₀, R₋₁) with principal logarithms.
pub fn phi_value(p: &Parameters, t: C64, lam: C64, r: C64) -> Result<C64> {
    let [x, y] = log_args(p, t, lam, r)?;
    Ok(4.0 * t * r - p.c_inf * x.ln() - p.c_0 * y.ln())
}

/// φ on a branch point, with R₋₁ = sign·√Δ (principal root).
pub fn phi_primitive(eq: &Equation, b: &BranchPoint) -> Result<C64> {
    let Equation::D6(p) = eq else {
        return Err(Error::Unsupported("φ primitive is only available for D6".into()));
    };
    let r = f64::from(b.sign) * eq.f_lambda(b.lambda0, b.t).sqrt();
    phi_value(p, b.t, b.lambda0, r)
}

/// φ as a jet, given jets of t, λ₀ and R₋₁ at a common base point.
pub fn phi_jet(p: &Parameters, t: &Jet, lam: &Jet, r: &Jet) -> Result<Jet> {
    let a = (lam * 2.0).add_scalar(-p.c_inf);
    let tr = t * r;
    let tt = t * t;
    let b = &(&tt * 2.0) - &(&(t * lam) * p.c_0);
    let c = &(&tt * lam) * r;
    let l1 = (&a + &tr).try_div(&(&a - &tr))?.ln()?;
    let l2 = (&b + &c).try_div(&(&b - &c))?.ln()?;
    Ok(&(&(&tr * 4.0) - &(&l1 * p.c_inf)) - &(&l2 * p.c_0))
}

/// φ along a path, keeping both logarithms continuous.
#[derive(Clone, Debug)]
pub struct PhiPath {
    p: Parameters,
    logs: Option<[C64; 2]>,
}

impl PhiPath {
    pub fn new(p: Parameters) -> Self {
        PhiPath { p, logs: None }
    }

    pub fn push(&mut self, t: C64, lam: C64, r: C64) -> Result<C64> {
        let args = log_args(&self.p, t, lam, r)?;
        let mut logs = [args[0].ln(), args[1].ln()];
        if let Some(prev) = self.logs {
            for k in 0..2 {
                let turns = ((prev[k].im - logs[k].im) / (2.0 * PI)).round();
                logs[k].im += 2.0 * PI * turns;
            }
        }
        self.logs = Some(logs);
        Ok(4.0 * t * r - self.p.c_inf * logs[0] - self.p.c_0 * logs[1])
    }
}
