//! Homogeneity under (t, c∞, c₀, η) ↦ (r⁻²t, r⁻¹c∞, r⁻¹c₀, rη).
//!
//! Each quantity Q of degree d satisfies Q(r⁻²t, r⁻¹c, rη) = r^d·Q(t, c, η).
//! [`homogeneity_report`] evaluates both sides independently (fresh root
//! finding, fresh series recursions) and reports the relative mismatch.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::algebra::{lambda0_branches, turning_points, BranchPoint, Equation, Parameters};
use crate::error::{Error, Result};
use crate::geometry::phi_primitive;
use crate::series::{odd_even, riccati_solution, zero_param_solution, EtaSeries, DEFAULT_ETA_ORDER};
use crate::voros::{voros_closed_form, EndpointSpec, Target};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityRow {
    pub quantity: String,
    pub degree: i32,
    pub rel_err: f64,
}

/// The degrees being checked, in report order.
pub const DEGREES: [(&str, i32); 13] = [
    ("lambda0", -1),
    ("mu0", 0),
    ("Delta", 2),
    ("turning point", -2),
    ("R", 2),
    ("R_odd", 2),
    ("phi", -1),
    ("lambda", -1),
    ("mu", 0),
    ("W_inf", 0),
    ("W_0cinf", 0),
    ("W_0c0", 0),
    ("R_-1", 1),
];

fn rel(x: C64, y: C64) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}

/// Largest distance from a point of `a` to the nearest point of `b`, relative.
fn set_err(a: &[C64], b: &[C64]) -> f64 {
    a.iter().map(|x| b.iter().map(|y| rel(*y, *x)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

fn eval_at(s: &EtaSeries, eta: f64) -> C64 {
    s.values().iter().map(|(p, v)| v * eta.powi(*p)).sum()
}

struct Sample {
    mu0: C64,
    delta: C64,
    r_m1: C64,
    r: C64,
    r_odd: C64,
    phi: C64,
    lambda: C64,
    mu: C64,
}

fn sample(p: &Parameters, b: &BranchPoint, eta: f64) -> Result<Sample> {
    let eq = Equation::D6(*p);
    let zp = zero_param_solution(&eq, b, DEFAULT_ETA_ORDER, DEFAULT_ETA_ORDER + 4)?;
    let r_m1 = f64::from(b.sign) * zp.delta.value().sqrt();
    let rp = riccati_solution(&zp, 1, Some(r_m1), DEFAULT_ETA_ORDER)?;
    let rm = riccati_solution(&zp, -1, Some(-r_m1), DEFAULT_ETA_ORDER)?;
    let (odd, _) = odd_even(&rp, &rm);
    Ok(Sample {
        mu0: eq.mu0(b.lambda0, b.t)?,
        delta: zp.delta.value(),
        r_m1,
        r: eval_at(&rp, eta),
        r_odd: eval_at(&odd, eta),
        phi: phi_primitive(&eq, b)?,
        lambda: eval_at(&zp.lambda, eta),
        mu: eval_at(&zp.mu, eta),
    })
}

/// Both sides of every row of the homogeneity table at (p, t, η) and scale r.
pub fn homogeneity_report(p: &Parameters, t: C64, eta: f64, r: f64) -> Result<Vec<HomogeneityRow>> {
    if !(r > 0.0) || !(eta > 0.0) {
        return Err(Error::Domain(format!("scale r = {r} and η = {eta} must be positive")));
    }
    let ps = p.scaled(r);
    let ts = t / (r * r);
    let eta_s = eta * r;
    let mut worst = [0.0f64; 13];

    // λ₀ as a set: every scaled root is r⁻¹ times an unscaled root.
    let roots = lambda0_branches(&Equation::D6(*p), t)?;
    let roots_s = lambda0_branches(&Equation::D6(ps), ts)?;
    let scaled: Vec<C64> = roots.iter().map(|b| b.lambda0 / r).collect();
    let found: Vec<C64> = roots_s.iter().map(|b| b.lambda0).collect();
    worst[0] = set_err(&scaled, &found);

    for b in &roots {
        // the scaled branch point is the scaled root nearest r⁻¹λ₀
        let bs0 = roots_s
            .iter()
            .min_by(|x, y| (x.lambda0 - b.lambda0 / r).norm().total_cmp(&(y.lambda0 - b.lambda0 / r).norm()))
            .copied()
            .ok_or_else(|| Error::Internal("no roots at the scaled point".into()))?;
        for sign in [1i8, -1] {
            let b = b.with_sign(sign);
            let x = sample(p, &b, eta)?;
            // R₋₁ has degree +1 and carries the sign: choose the scaled sign by it
            let probe = sample(&ps, &bs0.with_sign(1), eta_s)?;
            let s = if (probe.r_m1 - r * x.r_m1).norm() <= (probe.r_m1 + r * x.r_m1).norm() { 1 } else { -1 };
            let y = if s == 1 { probe } else { sample(&ps, &bs0.with_sign(-1), eta_s)? };
            let rows = [
                (1, y.mu0, x.mu0),
                (2, y.delta, x.delta * r * r),
                (4, y.r, x.r * r * r),
                (5, y.r_odd, x.r_odd * r * r),
                (6, y.phi, x.phi / r),
                (7, y.lambda, x.lambda / r),
                (8, y.mu, x.mu),
                (12, y.r_m1, x.r_m1 * r),
            ];
            for (k, lhs, rhs) in rows {
                worst[k] = worst[k].max(rel(lhs, rhs));
            }
        }
    }

    let tp = turning_points(p)?;
    let tp_s = turning_points(&ps)?;
    let scaled: Vec<C64> = tp.t.iter().map(|t| t / (r * r)).collect();
    worst[3] = set_err(&scaled, &tp_s.t);

    for (k, target) in [(9, Target::Inf(3)), (10, Target::ZeroCInf), (11, Target::ZeroC0)] {
        for sign in [1i8, -1] {
            let w = voros_closed_form(&EndpointSpec::new(Equation::D6(*p), target, sign)?, 6)?;
            let ws = voros_closed_form(&EndpointSpec::new(Equation::D6(ps), target, sign)?, 6)?;
            worst[k] = worst[k].max(rel(ws.eval(C64::new(eta_s, 0.0)), w.eval(C64::new(eta, 0.0))));
        }
    }

    Ok(DEGREES
        .iter()
        .zip(worst)
        .map(|((q, d), e)| HomogeneityRow { quantity: q.to_string(), degree: *d, rel_err: e })
        .collect())
}
