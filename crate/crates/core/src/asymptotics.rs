//! Expansions of λ₀, μ₀, λ⁽⁰⁾, μ⁽⁰⁾, R₋₁ and R± near the singular points
//! of D6, and their comparison with the values computed by [`crate::series`].
//!
//! The reference expansions are stated for the `+` end points; the `−` end
//! points follow by R₋₁ ↦ −R₋₁ and R± ↦ R∓.
//!
//! [`Form::Printed`] is the reference list taken literally. A handful of its
//! subleading terms do not match the series (they are invisible at the
//! 10·ε^{1/2} tolerance but show up as a too-slow remainder decay);
//! [`Form::Corrected`] replaces exactly those terms:
//!
//! - ∞₂: the t⁻¹ term of R± is −(±c∞η ± c₀η − 1)/4;
//! - ∞₃: the t^{−3/2} term of R± carries +6c₀η, as on ∞₄;
//! - 0_{c∞}: the t² term of λ⁽⁰⁾ has −c₀²η⁻² in the numerator, and the t term
//!   of R± is r∓/(2c∞²(c∞ ± η⁻¹)³(c∞ ∓ η⁻¹)²(c∞² − 4η⁻²));
//! - 0_{c₀}: the constant term of R± is ∓2c∞η/(c₀(c₀ ± η⁻¹)), and the t term
//!   is r±/(2c₀²(c₀ ∓ η⁻¹)(c₀ ± η⁻¹)³(c₀ ± 2η⁻¹)).

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::algebra::{lambda0_branches, mu0, BranchPoint, Equation, Parameters, SheetTag};
use crate::error::{Error, Result};
use crate::series::{riccati_solution, zero_param_solution, EtaSeries};
use crate::voros::Target;

/// Names of the compared quantities, in [`Quantities::as_array`] order.
pub const QUANTITY_NAMES: [&str; 7] = ["lambda0", "mu0", "lambda", "mu", "R_-1", "R_+", "R_-"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantities {
    pub lambda0: C64,
    pub mu0: C64,
    /// λ⁽⁰⁾ at the given η.
    pub lambda: C64,
    /// μ⁽⁰⁾ at the given η.
    pub mu: C64,
    pub r_m1: C64,
    pub r_plus: C64,
    pub r_minus: C64,
}

impl Quantities {
    pub fn as_array(&self) -> [C64; 7] {
        [self.lambda0, self.mu0, self.lambda, self.mu, self.r_m1, self.r_plus, self.r_minus]
    }

    fn flipped(self) -> Self {
        Quantities { r_m1: -self.r_m1, r_plus: self.r_minus, r_minus: self.r_plus, ..self }
    }
}

fn tag_of(target: Target) -> Result<SheetTag> {
    match target {
        Target::Inf(j @ 1..=4) => Ok(SheetTag::Inf(j)),
        Target::ZeroCInf => Ok(SheetTag::ZeroCInf),
        Target::ZeroC0 => Ok(SheetTag::ZeroC0),
        _ => Err(Error::Unsupported(format!("no D6 expansion at {target}"))),
    }
}

/// Small parameter of the expansion: |t|⁻¹ at ∞, |t| at 0.
pub fn small_parameter(target: Target, t: C64) -> f64 {
    match target {
        Target::Inf(_) => 1.0 / t.norm(),
        _ => t.norm(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    Printed,
    Corrected,
}

/// The reference expansions, truncated where they stop.
///
/// t^{1/2} is the principal root, which is the one the ∞ⱼ labels of
/// [`lambda0_branches`] refer to.
pub fn expansion(p: &Parameters, target: Target, sign: i8, t: C64, eta: f64, form: Form) -> Result<Quantities> {
    let fix = form == Form::Corrected;
    let (a, b) = (p.c_inf, p.c_0);
    let e = 1.0 / eta;
    let s = t.sqrt();
    let i = C64::i();
    let q = match target {
        Target::Inf(j @ 1..=2) => {
            let k = if j == 1 { 1.0 } else { -1.0 };
            let lam = k * s + (a - b) / 4.0 + k * (a - b) * (3.0 * a + b) / 32.0 / s;
            let r = |pm: f64| {
                let c0sign = if j == 1 || fix { pm } else { -pm };
                k * pm * 2.0 * eta / s - (pm * a * eta + c0sign * b * eta - 1.0) / 4.0 / t
                    + k * (pm * 3.0 * a * a * eta * eta - pm * 10.0 * a * b * eta * eta + pm * 3.0 * b * b * eta * eta
                        - 10.0 * a * eta
                        + 6.0 * b * eta
                        - pm)
                        / (64.0 * eta)
                        / (s * t)
            };
            Quantities {
                lambda0: lam,
                mu0: k * (a + b) / 4.0 / s,
                lambda: lam,
                mu: k * (a + b - e) / 4.0 / s,
                r_m1: k * 2.0 / s - (a + b) / 4.0 / t + k * (3.0 * a - b) * (a - 3.0 * b) / 64.0 / (s * t),
                r_plus: r(1.0),
                r_minus: r(-1.0),
            }
        }
        Target::Inf(j @ 3..=4) => {
            let k = if j == 3 { 1.0 } else { -1.0 };
            let lam = k * i * s + (a + b) / 4.0 - k * i * (a + b) * (3.0 * a - b) / 32.0 / s;
            let r = |pm: f64| {
                let six = if j == 3 && !fix { -6.0 } else { 6.0 };
                k * pm * 2.0 * i * eta / s
                    + (-pm * a * eta + pm * b * eta + 1.0) / 4.0 / t
                    + k * i
                        * (-pm * 3.0 * a * a * eta * eta - pm * 10.0 * a * b * eta * eta - pm * 3.0 * b * b * eta * eta
                            + 10.0 * a * eta
                            + six * b * eta
                            + pm)
                        / (64.0 * eta)
                        / (s * t)
            };
            Quantities {
                lambda0: lam,
                mu0: 1.0 + k * i * (a - b) / 4.0 / s,
                lambda: lam,
                mu: 1.0 + k * i * (a - b + e) / 4.0 / s,
                r_m1: k * 2.0 * i / s - (a - b) / 4.0 / t - k * i * (3.0 * a + b) * (a + 3.0 * b) / 64.0 / (s * t),
                r_plus: r(1.0),
                r_minus: r(-1.0),
            }
        }
        Target::ZeroCInf => {
            let (a2, b2, e2) = (a * a, b * b, e * e);
            let r = |pm: f64| {
                // the corrected R± takes r∓
                let pm_r = if fix { -pm } else { pm };
                let num = pm_r * eta * (-5.0 * a2 * a2 * a2 + 9.0 * a2 * a2 * b2)
                    + (4.0 * a2 * a2 * a - 6.0 * a2 * a * b2)
                    + pm_r * e * (14.0 * a2 * a2 + a2 * b2)
                    + e2 * (-8.0 * a2 * a - 12.0 * a * b2)
                    + pm_r * e2 * e * (-13.0 * a2 - 4.0 * b2)
                    + 4.0 * e2 * e2 * a
                    + pm_r * 4.0 * e2 * e2 * e;
                let den = if fix {
                    2.0 * a2 * (a + pm * e).powi(3) * (a - pm * e).powi(2) * (a2 - 4.0 * e2)
                } else {
                    2.0 * a2 * (a - e).powi(3) * (a + e).powi(2) * (a2 - 4.0 * e2)
                };
                pm * a * eta / t - pm * 2.0 * b * eta / (a2 - e2) + num / den * t
            };
            Quantities {
                lambda0: a - b / a2 * t + (a2 - 2.0 * b2) / a.powi(5) * t * t,
                mu0: (a + b) / (2.0 * a)
                    - (a2 - b2) / (2.0 * a2 * a2) * t
                    - 3.0 * b * (a2 - b2) / (2.0 * a.powi(7)) * t * t,
                lambda: a - b / (a2 - e2) * t
                    + (a2 * a2 - 2.0 * a2 * b2 - 2.0 * a2 * e2 + if fix { -b2 * e2 } else { b2 * e2 } + e2 * e2)
                        / (a * (a2 - 4.0 * e2) * (a2 - e2).powi(2))
                        * t
                        * t,
                mu: (a + b - e) / (2.0 * a)
                    - (a2 - (b - e).powi(2)) / (2.0 * a2 * (a2 - e2)) * t
                    - 3.0 * (a2 * b - b2 * b - a2 * e + 3.0 * b2 * e - 3.0 * b * e2 + e2 * e)
                        / (2.0 * a2 * a * (a2 - 4.0 * e2) * (a2 - e2))
                        * t
                        * t,
                r_m1: a / t - 2.0 * b / a2 + (5.0 * a2 - 9.0 * b2) / (2.0 * a.powi(5)) * t,
                r_plus: r(1.0),
                r_minus: r(-1.0),
            }
        }
        Target::ZeroC0 => {
            let (a2, b2, e2) = (a * a, b * b, e * e);
            let r = |pm: f64| {
                let num = pm * eta * (5.0 * b2 * b2 - 9.0 * a2 * b2)
                    + (11.0 * b2 * b - 13.0 * a2 * b)
                    + pm * e * (-2.0 * a2 + b2)
                    - 11.0 * e2 * b
                    - pm * 6.0 * e2 * e;
                let (den, c_den) = if fix {
                    (2.0 * b2 * (b - pm * e) * (b + pm * e).powi(3) * (b + pm * 2.0 * e), b * (b + pm * e))
                } else {
                    (2.0 * b2 * (a - e).powi(3) * (a + e) * (a2 - 2.0 * e2), b * (b + e))
                };
                (pm * b * eta + 1.0) / t - pm * 2.0 * a * eta / c_den + num / den * t
            };
            Quantities {
                lambda0: t / b + a / (b2 * b2) * t * t + (3.0 * a2 - b2) / b.powi(7) * t * t * t,
                mu0: (a + b) / (2.0 * b) + (a2 - b2) / (2.0 * b2 * b2) * t,
                lambda: t / b
                    + a / (b2 * (b2 - e2)) * t * t
                    + (3.0 * a2 - b2 + e2) / (b2 * b * (b2 - 4.0 * e2) * (b2 - e2)) * t * t * t,
                mu: (a + b - e) / (2.0 * (b - e))
                    + (a2 - (b - e).powi(2)) / (2.0 * b * (b - 2.0 * e) * (b - e).powi(2)) * t,
                r_m1: b / t - 2.0 * a / b2 + (5.0 * b2 - 9.0 * a2) / (2.0 * b.powi(5)) * t,
                r_plus: r(1.0),
                r_minus: r(-1.0),
            }
        }
        _ => return Err(Error::Unsupported(format!("no D6 expansion at {target}"))),
    };
    Ok(if sign < 0 { q.flipped() } else { q })
}

fn eval_at(s: &EtaSeries, eta: f64) -> C64 {
    s.values().iter().map(|(p, v)| v * eta.powi(*p)).sum()
}

/// The branch point at t carrying the label of `target`.
pub fn labelled_branch(p: &Parameters, target: Target, t: C64) -> Result<BranchPoint> {
    let tag = tag_of(target)?;
    lambda0_branches(&Equation::D6(*p), t)?
        .into_iter()
        .find(|b| b.tag == tag)
        .ok_or_else(|| Error::Domain(format!("t = {t} is not close enough to {target} to label the branches")))
}

/// The same quantities from the series engine: λ₀ by root finding, λ⁽⁰⁾
/// and μ⁽⁰⁾ through η^{−eta_order}, R± through the same order. The sign of
/// R₋₁ = ±√Δ is the one whose leading behaviour matches the `sign` end point.
pub fn computed(p: &Parameters, target: Target, sign: i8, t: C64, eta: f64, eta_order: usize) -> Result<Quantities> {
    let eq = Equation::D6(*p);
    let b = labelled_branch(p, target, t)?;
    let zp = zero_param_solution(&eq, &b, eta_order, eta_order + 4)?;
    let root = zp.delta.value().sqrt();
    let lead = expansion(p, target, sign, t, eta, Form::Printed)?.r_m1;
    let r_m1 = if (root - lead).norm() <= (root + lead).norm() { root } else { -root };
    let rp = riccati_solution(&zp, 1, Some(r_m1), eta_order)?;
    let rm = riccati_solution(&zp, -1, Some(-r_m1), eta_order)?;
    Ok(Quantities {
        lambda0: b.lambda0,
        mu0: mu0(&eq, &b)?,
        lambda: eval_at(&zp.lambda, eta),
        mu: eval_at(&zp.mu, eta),
        r_m1,
        r_plus: eval_at(&rp, eta),
        r_minus: eval_at(&rm, eta),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AsymptoticCheck {
    pub target: Target,
    pub sign: i8,
    pub t: C64,
    pub eta: f64,
    pub form: Form,
    pub reference: Quantities,
    pub computed: Quantities,
    /// |computed − reference|/|computed| per quantity.
    pub rel_err: [f64; 7],
    /// 10·ε^{1/2} with ε the small parameter.
    pub tolerance: f64,
}

impl AsymptoticCheck {
    pub fn passed(&self) -> bool {
        self.rel_err.iter().all(|e| *e < self.tolerance)
    }

    pub fn worst(&self) -> (&'static str, f64) {
        let (k, e) = self.rel_err.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("seven quantities");
        (QUANTITY_NAMES[k], *e)
    }
}

pub const DEFAULT_ETA: f64 = 10.0;
pub const DEFAULT_ETA_ORDER: usize = 6;

pub fn check(p: &Parameters, target: Target, sign: i8, t: C64, eta: f64, form: Form) -> Result<AsymptoticCheck> {
    let pr = expansion(p, target, sign, t, eta, form)?;
    let co = computed(p, target, sign, t, eta, DEFAULT_ETA_ORDER)?;
    let mut rel_err = [0.0; 7];
    for (k, (x, y)) in pr.as_array().iter().zip(co.as_array()).enumerate() {
        rel_err[k] = (x - y).norm() / y.norm();
    }
    Ok(AsymptoticCheck {
        target,
        sign,
        t,
        eta,
        form,
        reference: pr,
        computed: co,
        rel_err,
        tolerance: 10.0 * small_parameter(target, t).sqrt(),
    })
}

/// The six labelled D6 end points.
pub const D6_TARGETS: [Target; 6] =
    [Target::Inf(1), Target::Inf(2), Target::Inf(3), Target::Inf(4), Target::ZeroCInf, Target::ZeroC0];

/// Observed decay exponent of |computed − reference| between two radii along
/// the same ray, per quantity: log(e₁/e₂)/log(ε₁/ε₂).
pub fn remainder_exponents(
    p: &Parameters,
    target: Target,
    sign: i8,
    t1: C64,
    t2: C64,
    eta: f64,
    form: Form,
) -> Result<[f64; 7]> {
    let err = |t: C64| -> Result<[f64; 7]> {
        let pr = expansion(p, target, sign, t, eta, form)?.as_array();
        let co = computed(p, target, sign, t, eta, DEFAULT_ETA_ORDER)?.as_array();
        Ok(std::array::from_fn(|k| (pr[k] - co[k]).norm()))
    };
    let (e1, e2) = (err(t1)?, err(t2)?);
    let ratio = (small_parameter(target, t1) / small_parameter(target, t2)).ln();
    Ok(std::array::from_fn(|k| (e1[k] / e2[k]).ln() / ratio))
}

/// Order in ε of the first omitted term, per quantity.
pub fn remainder_orders(target: Target) -> [f64; 7] {
    match target {
        Target::Inf(_) => [1.0, 1.5, 1.0, 1.5, 2.0, 2.0, 2.0],
        Target::ZeroCInf => [3.0, 3.0, 3.0, 3.0, 2.0, 2.0, 2.0],
        _ => [4.0, 2.0, 4.0, 2.0, 2.0, 2.0, 2.0],
    }
}
