//! The algebraic layer: parameters, branches of λ₀, Δ = ∂F/∂λ, μ₀,
//! turning points and the u-plane uniformisation with its quadratic
//! differential q(u) du².
//!
//! Both equations share one interface through [`Equation`]:
//!
//! * D6: F = λ³/t² − c∞λ²/t² + c₀/t − 1/λ, λ₀ solves λ⁴ − c∞λ³ + c₀tλ − t² = 0;
//! * D7: F = −2λ²/t² + c/t − 1/λ, λ₀ solves 2λ³ − ctλ + t² = 0.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{poly_roots, Jet, C64};

const GENERICITY_TOL: f64 = 1e-12;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// The parameter pair (c∞, c₀) of the D6 equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub c_inf: C64,
    pub c_0: C64,
}

impl Parameters {
    /// Checked constructor: refuses the non-generic loci.
    pub fn new(c_inf: C64, c_0: C64) -> Result<Self> {
        let p = Parameters { c_inf, c_0 };
        p.check_generic()?;
        Ok(p)
    }

    /// No genericity check; for callers that explore degenerate strata.
    pub fn new_unchecked(c_inf: C64, c_0: C64) -> Self {
        Parameters { c_inf, c_0 }
    }

    pub fn c_p(&self) -> C64 {
        (self.c_inf + self.c_0) * 0.5
    }

    pub fn c_m(&self) -> C64 {
        (self.c_inf - self.c_0) * 0.5
    }

    fn scale(&self) -> f64 {
        self.c_inf.norm().max(self.c_0.norm())
    }

    /// The four genericity quantities relative to the parameter scale:
    /// |c∞|, |c₀|, |c∞²−c₀²|, |c∞²+c₀²| (the last two divided by scale²).
    pub fn genericity_margins(&self) -> [f64; 4] {
        let s = self.scale().max(f64::MIN_POSITIVE);
        let a = self.c_inf * self.c_inf;
        let b = self.c_0 * self.c_0;
        [self.c_inf.norm() / s, self.c_0.norm() / s, (a - b).norm() / (s * s), (a + b).norm() / (s * s)]
    }

    pub fn check_generic(&self) -> Result<()> {
        let names = ["c∞ = 0", "c₀ = 0", "c∞² = c₀²", "c∞² = −c₀²"];
        if self.scale() == 0.0 || !self.c_inf.is_finite() || !self.c_0.is_finite() {
            return Err(Error::DegenerateParameters("c∞ = c₀ = 0".into()));
        }
        for (m, name) in self.genericity_margins().iter().zip(names) {
            if *m < GENERICITY_TOL {
                return Err(Error::DegenerateParameters(format!(
                    "(c∞, c₀) = ({}, {}) lies on {name}",
                    self.c_inf, self.c_0
                )));
            }
        }
        Ok(())
    }

    /// Human-readable notes for parameters that pass the gate narrowly.
    pub fn warnings(&self) -> Vec<String> {
        let names = ["c∞", "c₀", "c∞² − c₀²", "c∞² + c₀²"];
        self.genericity_margins()
            .iter()
            .zip(names)
            .filter(|(m, _)| **m < 1e-6)
            .map(|(m, n)| format!("near-degenerate parameters: |{n}| is only {m:e} of the scale"))
            .collect()
    }

    /// The homogeneity action c ↦ r⁻¹c.
    pub fn scaled(&self, r: f64) -> Self {
        Parameters { c_inf: self.c_inf / r, c_0: self.c_0 / r }
    }

    /// The exchange c∞ ↔ c₀.
    pub fn swapped(&self) -> Self {
        Parameters { c_inf: self.c_0, c_0: self.c_inf }
    }
}

/// Which equation, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Equation {
    D6(Parameters),
    D7 { c: C64 },
}

impl Equation {
    pub fn d7(c: C64) -> Result<Self> {
        if c.norm() == 0.0 || !c.is_finite() {
            return Err(Error::DegenerateParameters("the D7 parameter c must be nonzero".into()));
        }
        Ok(Equation::D7 { c })
    }

    /// Scale of the parameters (used to set relative tolerances).
    pub fn scale(&self) -> f64 {
        match self {
            Equation::D6(p) => p.c_inf.norm().max(p.c_0.norm()),
            Equation::D7 { c } => c.norm(),
        }
    }

    /// F(λ, t).
    pub fn f(&self, lam: C64, t: C64) -> C64 {
        match self {
            Equation::D6(p) => lam * lam * (lam - p.c_inf) / (t * t) + p.c_0 / t - 1.0 / lam,
            Equation::D7 { c } => -2.0 * lam * lam / (t * t) + c / t - 1.0 / lam,
        }
    }

    /// Δ = ∂F/∂λ.
    pub fn f_lambda(&self, lam: C64, t: C64) -> C64 {
        match self {
            Equation::D6(p) => (3.0 * lam * lam - 2.0 * p.c_inf * lam) / (t * t) + 1.0 / (lam * lam),
            Equation::D7 { .. } => -4.0 * lam / (t * t) + 1.0 / (lam * lam),
        }
    }

    /// Polynomial in λ (ascending coefficients) whose roots are λ₀(t).
    pub fn branch_polynomial(&self, t: C64) -> Vec<C64> {
        match self {
            Equation::D6(p) => vec![-t * t, p.c_0 * t, zero(), -p.c_inf, one()],
            Equation::D7 { c } => vec![t * t, -c * t, zero(), C64::new(2.0, 0.0)],
        }
    }

    /// The branch polynomial as a function of jets (λ and t both jets).
    pub fn branch_polynomial_jet(&self, lam: &Jet, t: &Jet) -> (Jet, Jet) {
        match self {
            Equation::D6(p) => {
                let l2 = lam * lam;
                let l3 = &l2 * lam;
                let val = &(&(&l2 * &l2) - &(&l3 * p.c_inf)) + &(&(&(t * lam) * p.c_0) - &(t * t));
                let der = &(&(&l3 * 4.0) - &(&l2 * (3.0 * p.c_inf))) + &(t * p.c_0);
                (val, der)
            }
            Equation::D7 { c } => {
                let l2 = lam * lam;
                let val = &(&(&(&l2 * lam) * 2.0) - &(&(t * lam) * *c)) + &(t * t);
                let der = &(&l2 * 6.0) - &(t * *c);
                (val, der)
            }
        }
    }

    /// μ₀ from λ₀ (D6: 1/2 + c₀/(2λ₀) − t/(2λ₀²); D7: (cλ₀ − t)/(2λ₀²)).
    pub fn mu0(&self, lam: C64, t: C64) -> Result<C64> {
        if lam.norm() == 0.0 {
            return Err(Error::Singular("μ₀ needs λ₀ ≠ 0".into()));
        }
        Ok(match self {
            Equation::D6(p) => 0.5 + p.c_0 / (2.0 * lam) - t / (2.0 * lam * lam),
            Equation::D7 { c } => (c * lam - t) / (2.0 * lam * lam),
        })
    }
}

/// Labels of the distinguished branches of λ₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SheetTag {
    /// ∞ⱼ (j = 1..4 for D6, 1..3 for D7).
    Inf(u8),
    /// 0_{c∞}: λ₀ → c∞ as t → 0.
    ZeroCInf,
    /// 0_{c₀}: λ₀ ~ t/c₀ as t → 0 (D7: 0_c, λ₀ ~ t/c).
    ZeroC0,
    /// λ₀ ~ ±√(c₀/c∞)·t^{1/2} as t → 0.
    SimplePole,
    Generic,
}

/// One root of the branch polynomial at a point t, with R₋₁ = sign·√Δ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub t: C64,
    pub lambda0: C64,
    pub tag: SheetTag,
    pub sign: i8,
}

impl BranchPoint {
    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = if sign < 0 { -1 } else { 1 };
        self
    }
}

/// The roots of the branch polynomial at t (four for D6, three for D7).
///
/// Labels are attached only far out (|t| ≥ 100·(1 + scale²)) or close to
/// zero (|t| ≤ 10⁻²·scale²·min(1, scale²)); elsewhere every root is `Generic`.
pub fn lambda0_branches(eq: &Equation, t: C64) -> Result<Vec<BranchPoint>> {
    if t.norm() == 0.0 {
        return Err(Error::Singular("t = 0 is a singular point of the equation".into()));
    }
    let roots = poly_roots(&eq.branch_polynomial(t))?;
    let s = eq.scale();
    let large = t.norm() >= 100.0 * (1.0 + s * s);
    let small = t.norm() <= 1e-2 * s * s * (s * s).min(1.0);
    let mut out: Vec<BranchPoint> =
        roots.iter().map(|&l| BranchPoint { t, lambda0: l, tag: SheetTag::Generic, sign: 1 }).collect();
    match eq {
        Equation::D6(p) if large => {
            let r = t.sqrt();
            let targets = [r, -r, C64::new(0.0, 1.0) * r, C64::new(0.0, -1.0) * r];
            for (j, w) in targets.iter().enumerate() {
                let k = nearest(&roots, *w);
                out[k].tag = SheetTag::Inf(j as u8 + 1);
            }
            let _ = p;
        }
        Equation::D6(p) if small => {
            let k = nearest(&roots, p.c_inf);
            out[k].tag = SheetTag::ZeroCInf;
            let k0 = nearest(&roots, t / p.c_0);
            out[k0].tag = SheetTag::ZeroC0;
            for b in out.iter_mut() {
                if b.tag == SheetTag::Generic {
                    b.tag = SheetTag::SimplePole;
                }
            }
        }
        Equation::D7 { .. } if large => {
            // λ₀ ≈ (−2)^{−1/3} ωʲ t^{2/3}
            let base = C64::from_polar(2f64.powf(-1.0 / 3.0), PI / 3.0) * (t.ln() * (2.0 / 3.0)).exp();
            for j in 1..=3u8 {
                let w = base * C64::from_polar(1.0, 2.0 * PI * j as f64 / 3.0);
                let k = nearest(&roots, w);
                out[k].tag = SheetTag::Inf(j);
            }
        }
        Equation::D7 { c } if small => {
            let k0 = nearest(&roots, t / c);
            out[k0].tag = SheetTag::ZeroC0;
            for b in out.iter_mut() {
                if b.tag == SheetTag::Generic {
                    b.tag = SheetTag::SimplePole;
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

fn nearest(roots: &[C64], w: C64) -> usize {
    roots
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - w).norm().partial_cmp(&(b.1 - w).norm()).unwrap())
        .map(|(k, _)| k)
        .expect("non-empty root list")
}

/// Δ(λ₀, t) for a branch point.
pub fn delta(eq: &Equation, b: &BranchPoint) -> Result<C64> {
    if b.lambda0.norm() == 0.0 {
        return Err(Error::Singular("Δ needs λ₀ ≠ 0".into()));
    }
    Ok(eq.f_lambda(b.lambda0, b.t))
}

pub fn mu0(eq: &Equation, b: &BranchPoint) -> Result<C64> {
    eq.mu0(b.lambda0, b.t)
}

/// Taylor jet of λ₀ around `b.t` on the branch `b`, by Newton iteration in
/// jet arithmetic on the branch polynomial.
pub fn lambda0_jet(eq: &Equation, b: &BranchPoint, order: usize) -> Result<Jet> {
    let t = Jet::variable(b.t, order);
    let mut lam = Jet::constant(b.t, b.lambda0, order);
    // quadratic convergence: each sweep doubles the number of exact terms
    let sweeps = 2 + (usize::BITS - (order + 1).leading_zeros()) as usize;
    for _ in 0..sweeps {
        let (p, dp) = eq.branch_polynomial_jet(&lam, &t);
        lam = &lam
            - &p.try_div(&dp)
                .map_err(|_| Error::Conditioning(format!("λ₀ is a multiple root at t = {} (turning point)", b.t)))?;
    }
    Ok(lam)
}

/// Turning points of D6 with their double roots λ₀ and u-coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurningPointSet {
    pub t: Vec<C64>,
    pub lambda0: Vec<C64>,
    pub u: Vec<C64>,
    /// u-coordinate of the simple-pole.
    pub simple_pole_u: C64,
}

/// Coefficients (ascending) of Disc(t, c)/t³ for D6.
pub fn discriminant_cubic(p: &Parameters) -> [C64; 4] {
    let (a, b) = (p.c_inf, p.c_0);
    [
        4.0 * a * a * a * b * b * b,
        6.0 * a * a * b * b - 27.0 * a.powi(4) - 27.0 * b.powi(4),
        192.0 * a * b,
        C64::new(-256.0, 0.0),
    ]
}

/// Discriminant of a cubic a₀ + a₁x + a₂x² + a₃x³.
pub fn cubic_discriminant(c: &[C64; 4]) -> C64 {
    let (d, cc, b, a) = (c[0], c[1], c[2], c[3]);
    18.0 * a * b * cc * d - 4.0 * b * b * b * d + b * b * cc * cc - 4.0 * a * cc * cc * cc - 27.0 * a * a * d * d
}

pub fn turning_points(p: &Parameters) -> Result<TurningPointSet> {
    p.check_generic()?;
    let eq = Equation::D6(*p);
    let cubic = discriminant_cubic(p);
    let ts = poly_roots(&cubic)?;
    let chart = UChart::new(eq)?;
    let mut lambda0 = Vec::new();
    let mut us = Vec::new();
    for &t in &ts {
        let roots = poly_roots(&eq.branch_polynomial(t))?;
        let mut best = (f64::INFINITY, zero());
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = (roots[i] - roots[j]).norm();
                if d < best.0 {
                    best = (d, 0.5 * (roots[i] + roots[j]));
                }
            }
        }
        lambda0.push(best.1);
        let mu = eq.mu0(best.1, t)?;
        us.push((1.0 - mu) / mu);
    }
    // Align with the exact u-plane roots so the three lists share an order.
    let exact = chart.turning_points_u();
    let mut order = Vec::new();
    for u in &exact {
        order.push(nearest(&us, *u));
    }
    Ok(TurningPointSet {
        t: order.iter().map(|&k| ts[k]).collect(),
        lambda0: order.iter().map(|&k| lambda0[k]).collect(),
        u: exact,
        simple_pole_u: chart.simple_pole_u(),
    })
}

/// A pole of the quadratic differential on the u-plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleInfo {
    /// Position; `None` for u = ∞.
    pub u: Option<C64>,
    /// Conventional label: "0_cinf", "0_c0", "inf_34" (u = 0 in D6), "inf" …
    pub label: String,
    /// Pole order of q (2 for double poles, 4 at u = 0 and u = ∞ for D6).
    pub order: u32,
    /// Residue of √q du, up to the sign of the square root.
    pub residue: C64,
}

/// The u-plane uniformisation of the λ₀-surface and its quadratic
/// differential q(u) du² = Δ dt², written as q = N(u)³ / ((u − u_sp)·E(u)).
#[derive(Clone, Debug, PartialEq)]
pub struct UChart {
    pub eq: Equation,
}

impl UChart {
    pub fn new(eq: Equation) -> Result<Self> {
        match &eq {
            Equation::D6(p) => p.check_generic()?,
            Equation::D7 { c } => {
                if c.norm() == 0.0 {
                    return Err(Error::DegenerateParameters("c = 0".into()));
                }
            }
        }
        Ok(UChart { eq })
    }

    fn sums(&self) -> (C64, C64) {
        match &self.eq {
            Equation::D6(p) => (p.c_inf + p.c_0, p.c_inf - p.c_0),
            Equation::D7 { c } => (*c, *c),
        }
    }

    /// u = (1 − μ₀)/μ₀ (D6) or 1/μ₀ (D7).
    pub fn u_of_branch(&self, b: &BranchPoint) -> Result<C64> {
        let mu = self.eq.mu0(b.lambda0, b.t)?;
        if mu.norm() == 0.0 {
            return Err(Error::Singular("μ₀ = 0 has no finite u".into()));
        }
        Ok(match self.eq {
            Equation::D6(_) => (1.0 - mu) / mu,
            Equation::D7 { .. } => 1.0 / mu,
        })
    }

    pub fn t_of_u(&self, u: C64) -> C64 {
        let (a, b) = self.sums();
        match self.eq {
            Equation::D6(_) => (u + 1.0) * (u + 1.0) * (a * a * u * u - b * b) / (16.0 * u * u),
            Equation::D7 { c } => u * u * (c - u) * 0.5,
        }
    }

    pub fn lambda0_of_u(&self, u: C64) -> C64 {
        let (a, b) = self.sums();
        match self.eq {
            Equation::D6(_) => (u + 1.0) * (a * u + b) / (4.0 * u),
            Equation::D7 { c } => u * (c - u) * 0.5,
        }
    }

    /// dt/du.
    pub fn dt_du(&self, u: C64) -> C64 {
        let (a, b) = self.sums();
        match self.eq {
            // inverse of du/dt = 8u³/((1+u)((c∞+c₀)²u³ + (c∞−c₀)²))
            Equation::D6(_) => (1.0 + u) * (a * a * u * u * u + b * b) / (8.0 * u * u * u),
            Equation::D7 { c } => u * (2.0 * c - 3.0 * u) * 0.5,
        }
    }

    /// Jets of (t, λ₀) as functions of a u-jet.
    pub fn t_lambda0_jets(&self, u: &Jet) -> Result<(Jet, Jet)> {
        let (a, b) = self.sums();
        Ok(match self.eq {
            Equation::D6(_) => {
                let up1 = u.add_scalar(one());
                let inv_u = u.recip()?;
                let lam = &(&up1 * &(u * a).add_scalar(b)) * &(&inv_u * 0.25);
                let w = &(&(u * u) * (a * a)) + &Jet::constant(u.base(), -b * b, u.order());
                let t = &(&(&up1 * &up1) * &w) * &(&(&inv_u * &inv_u) * (1.0 / 16.0));
                (t, lam)
            }
            Equation::D7 { c } => {
                let cu = &Jet::constant(u.base(), c, u.order()) - u;
                let lam = &(u * &cu) * 0.5;
                let t = &(&lam * u) * 1.0;
                (t, lam)
            }
        })
    }

    /// N(u) with q = N³/D.
    fn numer(&self, u: C64) -> C64 {
        let (a, b) = self.sums();
        match self.eq {
            Equation::D6(_) => a * a * u * u * u + b * b,
            Equation::D7 { c } => 3.0 * u - 2.0 * c,
        }
    }

    fn numer_prime(&self, u: C64) -> C64 {
        let (a, _) = self.sums();
        match self.eq {
            Equation::D6(_) => 3.0 * a * a * u * u,
            Equation::D7 { .. } => C64::new(3.0, 0.0),
        }
    }

    /// E(u) = D(u)/(u − u_sp).
    fn denom_rest(&self, u: C64) -> C64 {
        let (a, b) = self.sums();
        match self.eq {
            Equation::D6(_) => {
                let w = a * a * u * u - b * b;
                u.powi(4) * w * w
            }
            Equation::D7 { c } => (u - c) * (u - c),
        }
    }

    /// The quadratic differential coefficient q(u).
    pub fn q(&self, u: C64) -> C64 {
        let n = self.numer(u);
        n * n * n / ((u - self.simple_pole_u()) * self.denom_rest(u))
    }

    /// Zeros of q (the turning points on the u-plane).
    pub fn turning_points_u(&self) -> Vec<C64> {
        let (a, b) = self.sums();
        match self.eq {
            Equation::D6(_) => {
                // u³ = −(c∞−c₀)²/(c∞+c₀)²
                let w = -(b * b) / (a * a);
                let r = (w.ln() / 3.0).exp();
                (0..3).map(|j| r * C64::from_polar(1.0, 2.0 * PI * j as f64 / 3.0)).collect()
            }
            Equation::D7 { c } => vec![2.0 * c / 3.0],
        }
    }

    pub fn simple_pole_u(&self) -> C64 {
        match self.eq {
            Equation::D6(_) => C64::new(-1.0, 0.0),
            Equation::D7 { .. } => zero(),
        }
    }

    /// q ≈ C·(u − u₀)³ at a turning point u₀.
    pub fn turning_point_constant(&self, u0: C64) -> C64 {
        let np = self.numer_prime(u0);
        np * np * np / ((u0 - self.simple_pole_u()) * self.denom_rest(u0))
    }

    /// q ≈ C/(u − u_sp) at the simple-pole.
    pub fn simple_pole_constant(&self) -> C64 {
        let u = self.simple_pole_u();
        let n = self.numer(u);
        n * n * n / self.denom_rest(u)
    }

    /// Poles of order ≥ 2 with their closed-form residues.
    pub fn poles(&self) -> Vec<PoleInfo> {
        match self.eq {
            Equation::D6(p) => {
                let ratio = p.c_m() / p.c_p();
                vec![
                    PoleInfo { u: Some(ratio), label: "0_cinf".into(), order: 2, residue: p.c_inf },
                    PoleInfo { u: Some(-ratio), label: "0_c0".into(), order: 2, residue: p.c_0 },
                    PoleInfo { u: Some(zero()), label: "inf_34".into(), order: 4, residue: p.c_m() },
                    PoleInfo { u: None, label: "inf_12".into(), order: 4, residue: p.c_p() },
                ]
            }
            Equation::D7 { c } => vec![
                PoleInfo { u: Some(c), label: "0_c".into(), order: 2, residue: c },
                // q → 27 at ∞: an order-4 pole of q du² with zero residue.
                PoleInfo { u: None, label: "inf".into(), order: 4, residue: zero() },
            ],
        }
    }

    /// Every finite special point (zeros and poles), for distance queries.
    pub fn finite_special_points(&self) -> Vec<C64> {
        let mut v = self.turning_points_u();
        v.push(self.simple_pole_u());
        v.extend(self.poles().iter().filter_map(|p| p.u));
        v
    }

    /// A length scale for the configuration on the u-plane.
    pub fn u_scale(&self) -> f64 {
        self.finite_special_points().iter().map(|u| u.norm()).fold(1.0, f64::max)
    }

    /// (1/2πi)∮√q du on a circle (trapezoid rule with sign continuation).
    /// Counter-clockwise for finite centres; for `center = None` a large
    /// circle is used and the residue at ∞ (clockwise orientation) returned.
    pub fn contour_residue(&self, center: Option<C64>, radius: f64, nodes: usize) -> Result<C64> {
        let (c0, r, orient) = match center {
            Some(c) => (c, radius, 1.0),
            None => (zero(), radius, -1.0),
        };
        let mut prev: Option<C64> = None;
        let mut acc = zero();
        for k in 0..=nodes {
            let th = 2.0 * PI * k as f64 / nodes as f64;
            let e = C64::from_polar(1.0, th);
            let u = c0 + r * e;
            let qv = self.q(u);
            if !qv.is_finite() || qv.norm() == 0.0 {
                return Err(Error::Geometry(format!("contour meets a zero or pole of q at u = {u}")));
            }
            let mut s = qv.sqrt();
            if let Some(p) = prev {
                if (s - p).norm() > (s + p).norm() {
                    s = -s;
                }
            }
            prev = Some(s);
            if k == nodes {
                break;
            }
            // du = i r e dθ
            acc += s * C64::new(0.0, 1.0) * r * e;
        }
        let integral = acc * (2.0 * PI / nodes as f64);
        Ok(orient * integral / C64::new(0.0, 2.0 * PI))
    }

    /// Residues with the numerically confirmed value next to the closed form.
    pub fn residues(&self) -> Result<Vec<(PoleInfo, C64)>> {
        let pts = self.finite_special_points();
        let mut out = Vec::new();
        for pole in self.poles() {
            let numeric = match pole.u {
                Some(u0) => {
                    let d = pts
                        .iter()
                        .filter(|p| (**p - u0).norm() > 0.0)
                        .map(|p| (p - u0).norm())
                        .fold(f64::INFINITY, f64::min);
                    let mut r = 0.4 * d;
                    let mut res = self.contour_residue(Some(u0), r, 2048);
                    while res.is_err() && r > 1e-6 * d {
                        r *= 0.5;
                        res = self.contour_residue(Some(u0), r, 2048);
                    }
                    res?
                }
                None => self.contour_residue(None, 4.0 * self.u_scale(), 4096)?,
            };
            out.push((pole, numeric));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn residues_match_closed_forms_up_to_sign() {
        for (ci, c0) in [(c(2.0, 1.0), c(3.0, 0.0)), (c(2.0, 0.0), c(2.0, -1.0)), (c(-3.0, 1.0), c(0.0, 0.5))] {
            let uc = UChart::new(Equation::D6(Parameters::new(ci, c0).unwrap())).unwrap();
            for (pole, numeric) in uc.residues().unwrap() {
                let d = (numeric - pole.residue).norm().min((numeric + pole.residue).norm());
                assert!(d < 1e-8 * pole.residue.norm().max(1.0), "{}: {numeric} vs {}", pole.label, pole.residue);
            }
        }
        let uc = UChart::new(Equation::d7(c(2.0, 1.0)).unwrap()).unwrap();
        for (pole, numeric) in uc.residues().unwrap() {
            let d = (numeric - pole.residue).norm().min((numeric + pole.residue).norm());
            assert!(d < 1e-8 * pole.residue.norm().max(1.0), "{}: {numeric} vs {}", pole.label, pole.residue);
        }
    }

    #[test]
    fn genericity_gate() {
        assert!(Parameters::new(c(2.0, 0.0), c(2.0, 0.0)).is_err());
        assert!(Parameters::new(c(1.0, 0.0), c(0.0, 1.0)).is_err());
        assert!(Parameters::new(c(0.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(Parameters::new(c(2.0, 0.0), c(2.0, -1.0)).is_ok());
    }

    #[test]
    fn vieta_on_branches() {
        let p = Parameters::new(c(2.0, 1.0), c(3.0, 0.0)).unwrap();
        let eq = Equation::D6(p);
        let t = c(0.7, -0.4);
        let bs = lambda0_branches(&eq, t).unwrap();
        let sum: C64 = bs.iter().map(|b| b.lambda0).sum();
        let prod: C64 = bs.iter().map(|b| b.lambda0).product();
        assert!((sum - p.c_inf).norm() < 1e-12);
        assert!((prod + t * t).norm() < 1e-12);
    }

    #[test]
    fn u_chart_round_trip() {
        let p = Parameters::new(c(2.0, 1.0), c(3.0, 0.0)).unwrap();
        let ch = UChart::new(Equation::D6(p)).unwrap();
        let u = c(0.3, 0.8);
        let b = BranchPoint { t: ch.t_of_u(u), lambda0: ch.lambda0_of_u(u), tag: SheetTag::Generic, sign: 1 };
        assert!((ch.u_of_branch(&b).unwrap() - u).norm() < 1e-12);
        assert!(ch.eq.f(b.lambda0, b.t).norm() < 1e-12);
    }

    #[test]
    fn d7_chart_solves_cubic() {
        let ch = UChart::new(Equation::D7 { c: c(2.0, 1.0) }).unwrap();
        let u = c(-0.4, 1.3);
        let (t, l) = (ch.t_of_u(u), ch.lambda0_of_u(u));
        assert!(ch.eq.f(l, t).norm() < 1e-12);
        let d = ch.eq.f_lambda(l, t) * ch.dt_du(u) * ch.dt_du(u);
        assert!((d - ch.q(u)).norm() < 1e-12 * d.norm());
    }
}
