//! Formal series in η⁻¹ with jet coefficients.
//!
//! Every t-dependent coefficient is a [`Jet`] in some local coordinate s,
//! and a [`Chart`] records how s relates to t (d/dt = (ds/dt)·d/ds). The
//! t-chart uses s = t − t₀; the u-chart of [`crate::algebra::UChart`]
//! uses s = u − u₀, where λ₀ and t are explicit rational functions.
//!
//! All recursions here are "solve for the next coefficient": the unknown
//! term is appended as zero, the full residual is evaluated, and the lowest
//! coefficient that the unknown controls is read off and divided by the
//! linearisation. This reproduces the printed low-order formulas and keeps
//! working when the parameters themselves depend on η (Bäcklund shifts).

use num_complex::Complex64 as C64;

use crate::algebra::{lambda0_jet, BranchPoint, Equation, UChart};
use crate::error::{Error, Result};
use crate::numerics::Jet;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Local coordinate data: t as a jet in s and ds/dt as a jet in s.
#[derive(Clone, Debug)]
pub struct Chart {
    pub t: Jet,
    pub dsdt: Jet,
}

impl Chart {
    /// s = t − t₀.
    pub fn t_chart(t0: C64, order: usize) -> Self {
        Chart { t: Jet::variable(t0, order), dsdt: Jet::constant(t0, C64::new(1.0, 0.0), order) }
    }

    /// s = u − u₀ on the u-plane; also returns the λ₀ jet.
    pub fn u_chart(chart: &UChart, u0: C64, order: usize) -> Result<(Self, Jet)> {
        let u = Jet::variable(u0, order);
        let (t, lam) = chart.t_lambda0_jets(&u)?;
        let dsdt = t
            .derive()
            .recip()
            .map_err(|_| Error::Conditioning(format!("dt/du vanishes at u = {u0} (turning point or double pole)")))?;
        Ok((Chart { t, dsdt }, lam))
    }

    /// s = v − v₀ with u = 1/v, for work near u = ∞.
    pub fn v_chart(chart: &UChart, v0: C64, order: usize) -> Result<(Self, Jet)> {
        let v = Jet::variable(v0, order);
        let u = v.recip()?;
        let (t, lam) = chart.t_lambda0_jets(&u)?;
        let dsdt = t.derive().recip().map_err(|_| Error::Conditioning(format!("dt/dv vanishes at v = {v0}")))?;
        Ok((Chart { t, dsdt }, lam))
    }

    pub fn base(&self) -> C64 {
        self.t.base()
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    /// d/dt of a jet in this chart.
    pub fn d(&self, f: &Jet) -> Jet {
        &self.dsdt * &f.derive()
    }

    pub fn constant(&self, v: C64) -> Jet {
        Jet::constant(self.base(), v, self.order())
    }
}

/// Σₖ terms[k]·η^{lead−k}, exact for powers ≥ `low()`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaSeries {
    lead: i32,
    terms: Vec<Jet>,
}

/// Which η-powers carry nonzero coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Mixed,
}

impl EtaSeries {
    pub fn new(lead: i32, terms: Vec<Jet>) -> Self {
        assert!(!terms.is_empty(), "an η-series needs at least one term");
        EtaSeries { lead, terms }
    }

    /// A series with constant (t-independent) coefficients.
    pub fn constants(lead: i32, values: &[C64], chart: &Chart) -> Self {
        EtaSeries::new(lead, values.iter().map(|&v| chart.constant(v)).collect())
    }

    /// The jet `j` as an η⁰ series known down to η^{low}.
    pub fn from_jet(j: Jet, low: i32) -> Self {
        let n = (1 - low).max(1) as usize;
        let base = j.base();
        let ord = j.order();
        let mut terms = vec![j];
        terms.resize(n, Jet::constant(base, zero(), ord));
        EtaSeries { lead: 0, terms }
    }

    pub fn lead(&self) -> i32 {
        self.lead
    }

    /// Lowest η-power whose coefficient is known.
    pub fn low(&self) -> i32 {
        self.lead - self.terms.len() as i32 + 1
    }

    pub fn terms(&self) -> &[Jet] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient of η^p (zero above the lead, `None` below `low()`).
    pub fn coeff(&self, p: i32) -> Option<Jet> {
        if p > self.lead {
            Some(Jet::constant(self.terms[0].base(), zero(), self.terms[0].order()))
        } else if p < self.low() {
            None
        } else {
            Some(self.terms[(self.lead - p) as usize].clone())
        }
    }

    /// Coefficient of η^p by reference; panics outside the known range.
    pub fn at(&self, p: i32) -> &Jet {
        &self.terms[(self.lead - p) as usize]
    }

    pub fn parity(&self) -> Parity {
        let odd_zero = self
            .terms
            .iter()
            .enumerate()
            .filter(|(k, _)| (self.lead - *k as i32).rem_euclid(2) == 1)
            .all(|(_, j)| j.is_zero());
        let even_zero = self
            .terms
            .iter()
            .enumerate()
            .filter(|(k, _)| (self.lead - *k as i32).rem_euclid(2) == 0)
            .all(|(_, j)| j.is_zero());
        match (odd_zero, even_zero) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    /// Multiply by η^k.
    pub fn shift(&self, k: i32) -> Self {
        EtaSeries { lead: self.lead + k, terms: self.terms.clone() }
    }

    /// Keep only powers ≥ low.
    pub fn truncate(&self, low: i32) -> Self {
        let n = ((self.lead - low + 1).max(1) as usize).min(self.terms.len());
        EtaSeries { lead: self.lead, terms: self.terms[..n].to_vec() }
    }

    /// Append an exact zero coefficient one power below `low()`.
    pub fn push_zero(&mut self) {
        let j = &self.terms[0];
        let z = Jet::constant(j.base(), zero(), j.order());
        self.terms.push(z);
    }

    pub fn set(&mut self, p: i32, j: Jet) {
        let idx = (self.lead - p) as usize;
        self.terms[idx] = j;
    }

    pub fn add(&self, o: &Self) -> Self {
        let lead = self.lead.max(o.lead);
        let low = self.low().max(o.low());
        let terms = (low..=lead)
            .rev()
            .map(|p| match (p <= self.lead, p <= o.lead) {
                (true, true) => self.at(p) + o.at(p),
                (true, false) => self.at(p).clone(),
                (false, true) => o.at(p).clone(),
                (false, false) => unreachable!(),
            })
            .collect();
        EtaSeries { lead, terms }
    }

    pub fn neg(&self) -> Self {
        EtaSeries { lead: self.lead, terms: self.terms.iter().map(|j| -j).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.terms.len().min(o.terms.len());
        let terms = (0..n)
            .map(|k| {
                let mut acc = &self.terms[0] * &o.terms[k];
                for i in 1..=k {
                    acc += &(&self.terms[i] * &o.terms[k - i]);
                }
                acc
            })
            .collect();
        EtaSeries { lead: self.lead + o.lead, terms }
    }

    pub fn mul_jet(&self, j: &Jet) -> Self {
        EtaSeries { lead: self.lead, terms: self.terms.iter().map(|a| a * j).collect() }
    }

    pub fn scale(&self, k: C64) -> Self {
        EtaSeries { lead: self.lead, terms: self.terms.iter().map(|a| a * k).collect() }
    }

    pub fn recip(&self) -> Result<Self> {
        let r0 = self.terms[0].recip()?;
        let mut r = vec![r0.clone()];
        for k in 1..self.terms.len() {
            let mut acc = &self.terms[1] * &r[k - 1];
            for j in 2..=k {
                acc += &(&self.terms[j] * &r[k - j]);
            }
            r.push(-(&r0 * &acc));
        }
        Ok(EtaSeries { lead: -self.lead, terms: r })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Square root with the principal branch for the leading constant, or
    /// with a prescribed leading constant.
    pub fn sqrt(&self, leading: Option<C64>) -> Result<Self> {
        if self.lead % 2 != 0 {
            return Err(Error::Domain("square root of an η-series with odd leading power".into()));
        }
        let a0 = &self.terms[0];
        let r0 = match leading {
            Some(v) => a0.sqrt_with(v)?,
            None => a0.sqrt()?,
        };
        let inv2r0 = (&r0 * 2.0).recip()?;
        let mut r = vec![r0];
        for k in 1..self.terms.len() {
            let mut acc = self.terms[k].clone();
            for j in 1..k {
                acc = &acc - &(&r[j] * &r[k - j]);
            }
            r.push(&acc * &inv2r0);
        }
        Ok(EtaSeries { lead: self.lead / 2, terms: r })
    }

    /// d/dt termwise.
    pub fn d(&self, chart: &Chart) -> Self {
        EtaSeries { lead: self.lead, terms: self.terms.iter().map(|j| chart.d(j)).collect() }
    }

    /// Values of all coefficients at the base point.
    pub fn values(&self) -> Vec<(i32, C64)> {
        self.terms.iter().enumerate().map(|(k, j)| (self.lead - k as i32, j.value())).collect()
    }

    /// Largest |coefficient value| relative to `scale` over the powers in [lo, hi].
    pub fn max_value(&self, lo: i32, hi: i32) -> f64 {
        (lo..=hi).filter_map(|p| self.coeff(p)).map(|j| j.value().norm()).fold(0.0, f64::max)
    }
}

/// Parameters as power series in η⁻¹ (entry k multiplies η^{−k}).
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesParams {
    D6 { c_inf: Vec<C64>, c_0: Vec<C64> },
    D7 { c: Vec<C64> },
}

impl SeriesParams {
    pub fn from_equation(eq: &Equation) -> Self {
        match eq {
            Equation::D6(p) => SeriesParams::D6 { c_inf: vec![p.c_inf], c_0: vec![p.c_0] },
            Equation::D7 { c } => SeriesParams::D7 { c: vec![*c] },
        }
    }

    /// (c∞ + a·η⁻¹, c₀ + b·η⁻¹).
    pub fn shifted_d6(eq: &Equation, a: f64, b: f64) -> Result<Self> {
        match eq {
            Equation::D6(p) => {
                Ok(SeriesParams::D6 { c_inf: vec![p.c_inf, C64::new(a, 0.0)], c_0: vec![p.c_0, C64::new(b, 0.0)] })
            }
            Equation::D7 { .. } => Err(Error::Domain("D6 parameter shift applied to D7".into())),
        }
    }

    /// The η⁰ parts as an [`Equation`].
    pub fn leading(&self) -> Equation {
        match self {
            SeriesParams::D6 { c_inf, c_0 } => {
                Equation::D6(crate::algebra::Parameters::new_unchecked(c_inf[0], c_0[0]))
            }
            SeriesParams::D7 { c } => Equation::D7 { c: c[0] },
        }
    }
}

fn param_series(v: &[C64], len: usize, chart: &Chart) -> EtaSeries {
    let mut vals: Vec<C64> = v.to_vec();
    vals.resize(len.max(1), zero());
    EtaSeries::constants(0, &vals, chart)
}

/// F(λ) and ∂F/∂λ(λ) for an η-series λ with lead 0.
fn f_series(params: &SeriesParams, lam: &EtaSeries, chart: &Chart) -> Result<(EtaSeries, EtaSeries)> {
    let n = lam.len();
    let inv_t = chart.t.recip()?;
    let inv_t2 = &inv_t * &inv_t;
    let inv_lam = lam.recip()?;
    let inv_lam2 = inv_lam.mul(&inv_lam);
    let l2 = lam.mul(lam);
    match params {
        SeriesParams::D6 { c_inf, c_0 } => {
            let ci = param_series(c_inf, n, chart);
            let c0 = param_series(c_0, n, chart);
            // λ²(λ − c∞)/t² + c₀/t − 1/λ
            let f = l2.mul(&lam.sub(&ci)).mul_jet(&inv_t2).add(&c0.mul_jet(&inv_t)).sub(&inv_lam);
            // (3λ² − 2c∞λ)/t² + 1/λ²
            let fl = l2
                .scale(C64::new(3.0, 0.0))
                .sub(&ci.mul(lam).scale(C64::new(2.0, 0.0)))
                .mul_jet(&inv_t2)
                .add(&inv_lam2);
            Ok((f, fl))
        }
        SeriesParams::D7 { c } => {
            let cs = param_series(c, n, chart);
            let f = l2.scale(C64::new(-2.0, 0.0)).mul_jet(&inv_t2).add(&cs.mul_jet(&inv_t)).sub(&inv_lam);
            let fl = lam.scale(C64::new(-4.0, 0.0)).mul_jet(&inv_t2).add(&inv_lam2);
            Ok((f, fl))
        }
    }
}

/// The 0-parameter solution together with the data it was built from.
#[derive(Clone, Debug)]
pub struct ZeroParamSolution {
    pub chart: Chart,
    pub params: SeriesParams,
    /// λ⁽⁰⁾ = Σ λ_ℓ η^{−ℓ}.
    pub lambda: EtaSeries,
    /// μ⁽⁰⁾ from the first Hamilton equation.
    pub mu: EtaSeries,
    /// Δ = ∂F/∂λ(λ₀).
    pub delta: Jet,
}

/// Left side of the equation minus η²F, as an η-series:
/// λ'' − λ'²/λ + λ'/t − η²F(λ).
pub fn painleve_residual(params: &SeriesParams, lam: &EtaSeries, chart: &Chart) -> Result<EtaSeries> {
    let d1 = lam.d(chart);
    let d2 = d1.d(chart);
    let inv_t = chart.t.recip()?;
    let (f, _) = f_series(params, lam, chart)?;
    Ok(d2.sub(&d1.mul(&d1).div(lam)?).add(&d1.mul_jet(&inv_t)).sub(&f.shift(2)))
}

/// λ⁽⁰⁾ through η^{−n} from the λ₀ jet, and μ⁽⁰⁾.
pub fn zero_param_solution_in_chart(
    params: &SeriesParams,
    chart: Chart,
    lambda0: Jet,
    n: usize,
) -> Result<ZeroParamSolution> {
    let eq0 = params.leading();
    let delta = {
        let lam0 = EtaSeries::new(0, vec![lambda0.clone()]);
        let (_, fl) = f_series(&SeriesParams::from_equation(&eq0), &lam0, &chart)?;
        fl.terms()[0].clone()
    };
    let scale = eq0.scale().max(1.0);
    if delta.value().norm() < 1e-8 * scale * scale / chart.t.value().norm().max(1e-300).powi(1) {
        return Err(Error::Conditioning(format!(
            "|Δ| = {:e} at t = {}: too close to a turning point",
            delta.value().norm(),
            chart.t.value()
        )));
    }
    let inv_delta = delta.recip()?;
    let mut lam = EtaSeries::new(0, vec![lambda0]);
    for l in 1..=n as i32 {
        lam.push_zero();
        let e = painleve_residual(params, &lam, &chart)?;
        let rhs = e.coeff(2 - l).ok_or_else(|| Error::Internal(format!("residual lost η^{}", 2 - l)))?;
        if rhs.order() == 0 && l > 1 && chart.order() > 0 {
            return Err(Error::Order(format!(
                "jet order {} exhausted at η^-{l}; increase the jet order",
                chart.order()
            )));
        }
        lam.set(-l, &rhs * &inv_delta);
    }
    let mu = mu_series(params, &lam, &chart)?;
    Ok(ZeroParamSolution { chart, params: params.clone(), lambda: lam, mu, delta })
}

/// λ⁽⁰⁾ at a base point t₀ on the branch `b`, via the t-chart.
pub fn zero_param_solution(
    eq: &Equation,
    b: &BranchPoint,
    eta_order: usize,
    jet_order: usize,
) -> Result<ZeroParamSolution> {
    zero_param_solution_shifted(&SeriesParams::from_equation(eq), b, eta_order, jet_order)
}

/// As [`zero_param_solution`] with η-dependent parameters.
pub fn zero_param_solution_shifted(
    params: &SeriesParams,
    b: &BranchPoint,
    eta_order: usize,
    jet_order: usize,
) -> Result<ZeroParamSolution> {
    if jet_order < eta_order + 2 {
        return Err(Error::Order(format!(
            "jet order {jet_order} is below the derivative budget η-order + 2 = {}",
            eta_order + 2
        )));
    }
    if b.t.norm() == 0.0 {
        return Err(Error::Singular("t = 0".into()));
    }
    let eq0 = params.leading();
    let lam0 = lambda0_jet(&eq0, b, jet_order)?;
    zero_param_solution_in_chart(params, Chart::t_chart(b.t, jet_order), lam0, eta_order)
}

/// μ from λ via λ' = η∂H/∂μ:
/// D6: μ = (η⁻¹tλ' + λ² + (c₀ − η⁻¹)λ − t)/(2λ²);
/// D7: μ = (η⁻¹tλ' + (c − η⁻¹)λ − t)/(2λ²).
pub fn mu_series(params: &SeriesParams, lam: &EtaSeries, chart: &Chart) -> Result<EtaSeries> {
    let n = lam.len();
    let d1 = lam.d(chart);
    let tj = EtaSeries::from_jet(chart.t.clone(), lam.low());
    let l2 = lam.mul(lam);
    let num = match params {
        SeriesParams::D6 { c_0, .. } => {
            let mut c = c_0.clone();
            c.resize(n.max(2), zero());
            c[1] -= 1.0;
            let cs = param_series(&c, n, chart);
            d1.mul_jet(&chart.t).shift(-1).add(&l2).add(&cs.mul(lam)).sub(&tj)
        }
        SeriesParams::D7 { c } => {
            let mut cc = c.clone();
            cc.resize(n.max(2), zero());
            cc[1] -= 1.0;
            let cs = param_series(&cc, n, chart);
            d1.mul_jet(&chart.t).shift(-1).add(&cs.mul(lam)).sub(&tj)
        }
    };
    num.div(&l2.scale(C64::new(2.0, 0.0)))
}

/// Riccati residual R² + R′ − (2λ′/λ − 1/t)R − η²{F_λ(λ) − η⁻²(λ′/λ)²}.
pub fn riccati_residual(zp: &ZeroParamSolution, r: &EtaSeries) -> Result<EtaSeries> {
    let chart = &zp.chart;
    let lam = &zp.lambda;
    let dl = lam.d(chart);
    let ratio = dl.div(lam)?;
    let inv_t = chart.t.recip()?;
    let a = ratio.scale(C64::new(2.0, 0.0)).sub(&EtaSeries::from_jet(inv_t, lam.low()));
    let (_, fl) = f_series(&zp.params, lam, chart)?;
    let b = fl.shift(2).sub(&ratio.mul(&ratio));
    Ok(r.mul(r).add(&r.d(chart)).sub(&a.mul(r)).sub(&b))
}

/// R± through η^{1−m}. `leading` fixes R₋₁ at the base point (must square
/// to Δ); `None` takes sign·(principal √Δ).
pub fn riccati_solution(zp: &ZeroParamSolution, sign: i8, leading: Option<C64>, m: usize) -> Result<EtaSeries> {
    let r0 = match leading {
        Some(v) => v,
        None => {
            let s = zp.delta.value().sqrt();
            if sign < 0 {
                -s
            } else {
                s
            }
        }
    };
    let rm1 = zp.delta.sqrt_with(r0)?;
    let inv2 = (&rm1 * 2.0).recip()?;
    let mut r = EtaSeries::new(1, vec![rm1]);
    let limit = (zp.lambda.len() as i32 - 1).min(m as i32 - 1);
    for l in 0..=limit {
        r.push_zero();
        let e = riccati_residual(zp, &r)?;
        let rhs = e.coeff(1 - l).ok_or_else(|| Error::Internal(format!("Riccati residual lost η^{}", 1 - l)))?;
        r.set(-l, -(&rhs * &inv2));
    }
    Ok(r)
}

/// (R_odd, R_even) = ((R₊ − R₋)/2, (R₊ + R₋)/2).
pub fn odd_even(r_plus: &EtaSeries, r_minus: &EtaSeries) -> (EtaSeries, EtaSeries) {
    let half = C64::new(0.5, 0.0);
    let mut odd = r_plus.sub(r_minus).scale(half);
    let even = r_plus.add(r_minus).scale(half);
    // Even powers of R_odd cancel exactly in exact arithmetic; in floating
    // point R₊ and R₋ are built independently, so zero them explicitly.
    for k in 0..odd.len() {
        let p = odd.lead() - k as i32;
        if p.rem_euclid(2) == 0 {
            let j = &odd.terms()[k];
            let z = Jet::constant(j.base(), zero(), j.order());
            odd.set(p, z);
        }
    }
    (odd, even)
}

pub fn r_odd(zp: &ZeroParamSolution, m: usize) -> Result<EtaSeries> {
    let rp = riccati_solution(zp, 1, None, m)?;
    let rm = riccati_solution(zp, -1, None, m)?;
    Ok(odd_even(&rp, &rm).0)
}

pub fn r_even(zp: &ZeroParamSolution, m: usize) -> Result<EtaSeries> {
    let rp = riccati_solution(zp, 1, None, m)?;
    let rm = riccati_solution(zp, -1, None, m)?;
    Ok(odd_even(&rp, &rm).1)
}

/// λ⁽⁰⁾/√(η⁻¹ t R_odd); the omitted η^{−1/2} is the explicit prefactor of
/// the one-instanton term.
#[derive(Clone, Debug)]
pub struct InstantonPrefactor {
    pub prefactor: EtaSeries,
    /// √(η⁻¹ t R_odd), stored so the defining identity can be checked.
    pub root: EtaSeries,
    /// d φ/dt = R₋₁ data at the base point.
    pub phase_derivative: Jet,
}

pub fn instanton1_prefactor(zp: &ZeroParamSolution, r_odd: &EtaSeries) -> Result<InstantonPrefactor> {
    let tr = r_odd.mul_jet(&zp.chart.t).shift(-1);
    let root = tr.sqrt(None)?;
    let lam = zp.lambda.truncate(root.low());
    let prefactor = lam.div(&root)?;
    Ok(InstantonPrefactor { prefactor, root, phase_derivative: r_odd.terms()[0].clone() })
}

/// X = η⁻¹tR/(2λ²) − η⁻¹tλ′/λ³ − (c₀ − η⁻¹)/(2λ²) + t/λ³ (D6).
pub fn x_factor(zp: &ZeroParamSolution, r: &EtaSeries) -> Result<EtaSeries> {
    let c_0 = match &zp.params {
        SeriesParams::D6 { c_0, .. } => c_0,
        SeriesParams::D7 { .. } => return Err(Error::Domain("the X factor is defined for D6".into())),
    };
    let chart = &zp.chart;
    let lam = zp.lambda.truncate(r.low() - 1);
    let n = lam.len();
    let l2 = lam.mul(&lam);
    let inv_l2 = l2.recip()?;
    let inv_l3 = inv_l2.div(&lam)?;
    let dl = lam.d(chart);
    let mut c = c_0.clone();
    c.resize(n.max(2), zero());
    c[1] -= 1.0;
    let cs = param_series(&c, n, chart);
    let half = C64::new(0.5, 0.0);
    let x = r
        .mul_jet(&chart.t)
        .shift(-1)
        .mul(&inv_l2)
        .scale(half)
        .sub(&dl.mul_jet(&chart.t).shift(-1).mul(&inv_l3))
        .sub(&cs.mul(&inv_l2).scale(half))
        .add(&inv_l3.mul_jet(&chart.t));
    Ok(x)
}

/// Residuals of the Hamiltonian system with
/// tH = λ²μ² − (λ² + (c₀ − η⁻¹)λ − t)μ + ½(c∞ + c₀ − η⁻¹)λ (D6)
/// at the given (possibly η-dependent) parameters:
/// (λ′ − η∂H/∂μ, μ′ + η∂H/∂λ).
pub fn hamiltonian_residual(
    params: &SeriesParams,
    lam: &EtaSeries,
    mu: &EtaSeries,
    chart: &Chart,
) -> Result<(EtaSeries, EtaSeries)> {
    let (c_inf, c_0) = match params {
        SeriesParams::D6 { c_inf, c_0 } => (c_inf, c_0),
        SeriesParams::D7 { c } => return hamiltonian_residual_d7(c, lam, mu, chart),
    };
    let n = lam.len().min(mu.len());
    let mut a = c_0.clone();
    a.resize(n.max(2), zero());
    a[1] -= 1.0;
    let mut s = vec![zero(); n.max(2)];
    for (k, v) in c_inf.iter().enumerate().take(s.len()) {
        s[k] += v;
    }
    for (k, v) in c_0.iter().enumerate().take(s.len()) {
        s[k] += v;
    }
    s[1] -= 1.0;
    let a = param_series(&a, n, chart);
    let s = param_series(&s, n, chart);
    let inv_t = chart.t.recip()?;
    let tj = EtaSeries::from_jet(chart.t.clone(), lam.low().max(mu.low()));
    let two = C64::new(2.0, 0.0);
    let l2 = lam.mul(lam);
    // t ∂H/∂μ = 2λ²μ − λ² − aλ + t
    let h_mu = l2.mul(mu).scale(two).sub(&l2).sub(&a.mul(lam)).add(&tj);
    // t ∂H/∂λ = 2λμ² − (2λ + a)μ + s/2
    let h_lam = lam.mul(mu).mul(mu).scale(two).sub(&lam.scale(two).add(&a).mul(mu)).add(&s.scale(C64::new(0.5, 0.0)));
    let r1 = lam.d(chart).sub(&h_mu.mul_jet(&inv_t).shift(1));
    let r2 = mu.d(chart).add(&h_lam.mul_jet(&inv_t).shift(1));
    Ok((r1, r2))
}

/// D7: tH = λ²μ² − (c − η⁻¹)λμ + tμ + λ.
fn hamiltonian_residual_d7(
    c: &[C64],
    lam: &EtaSeries,
    mu: &EtaSeries,
    chart: &Chart,
) -> Result<(EtaSeries, EtaSeries)> {
    let n = lam.len().min(mu.len());
    let mut a = c.to_vec();
    a.resize(n.max(2), zero());
    a[1] -= 1.0;
    let a = param_series(&a, n, chart);
    let inv_t = chart.t.recip()?;
    let low = lam.low().max(mu.low());
    let tj = EtaSeries::from_jet(chart.t.clone(), low);
    let one = EtaSeries::from_jet(chart.constant(C64::new(1.0, 0.0)), low);
    let two = C64::new(2.0, 0.0);
    let h_mu = lam.mul(lam).mul(mu).scale(two).sub(&a.mul(lam)).add(&tj);
    let h_lam = lam.mul(mu).mul(mu).scale(two).sub(&a.mul(mu)).add(&one);
    let r1 = lam.d(chart).sub(&h_mu.mul_jet(&inv_t).shift(1));
    let r2 = mu.d(chart).add(&h_lam.mul_jet(&inv_t).shift(1));
    Ok((r1, r2))
}

/// D7 Bäcklund map Λ = −tμ + ct/λ − t²/λ², M = λ/t; the image solves the
/// system at c + η⁻¹.
fn backlund_d7(c: &[C64], zp: &ZeroParamSolution) -> Result<(EtaSeries, EtaSeries, SeriesParams)> {
    let chart = &zp.chart;
    let lam = &zp.lambda;
    let mu = &zp.mu.truncate(lam.low());
    let n = lam.len().min(mu.len());
    let lam = &lam.truncate(lam.lead() - n as i32 + 1);
    let cs = param_series(c, n, chart);
    let tj = EtaSeries::from_jet(chart.t.clone(), lam.low());
    let inv_t = chart.t.recip()?;
    let t_over_l = tj.div(lam)?;
    let big_l = mu.mul(&tj).neg().add(&cs.mul(&t_over_l)).sub(&t_over_l.mul(&t_over_l));
    let big_m = lam.mul_jet(&inv_t);
    let mut shifted = c.to_vec();
    shifted.resize(2, zero());
    shifted[1] += 1.0;
    Ok((big_l, big_m, SeriesParams::D7 { c: shifted }))
}

/// Bäcklund transformation T₁ (j = 1) or T₂ (j = 2) applied to (λ⁽⁰⁾, μ⁽⁰⁾).
/// Returns the image pair and the shifted parameters Tⱼ(c). For D7 there is
/// a single map and `j` is ignored.
pub fn backlund_apply(j: u8, zp: &ZeroParamSolution) -> Result<(EtaSeries, EtaSeries, SeriesParams)> {
    let (c_inf, c_0) = match &zp.params {
        SeriesParams::D6 { c_inf, c_0 } => (c_inf.clone(), c_0.clone()),
        SeriesParams::D7 { c } => return backlund_d7(c, zp),
    };
    let chart = &zp.chart;
    let lam = &zp.lambda;
    let mu = &zp.mu.truncate(lam.low());
    let n = lam.len().min(mu.len());
    let lam = &lam.truncate(lam.lead() - n as i32 + 1);
    let mut cp = vec![zero(); n.max(2)];
    let mut cm = vec![zero(); n.max(2)];
    for (k, v) in c_inf.iter().enumerate().take(cp.len()) {
        cp[k] += v;
        cm[k] += v;
    }
    for (k, v) in c_0.iter().enumerate().take(cp.len()) {
        cp[k] += v;
        cm[k] -= v;
    }
    let one = chart.constant(C64::new(1.0, 0.0));
    let tj = EtaSeries::from_jet(chart.t.clone(), lam.low());
    let inv_t = chart.t.recip()?;
    let mu_m1 = mu.sub(&EtaSeries::from_jet(one, lam.low()));
    let two = C64::new(2.0, 0.0);
    let half = C64::new(0.5, 0.0);
    let shift_param = |v: &Vec<C64>, d: f64| {
        let mut w = v.clone();
        w.resize(n.max(2), zero());
        w[1] += d;
        w
    };
    match j {
        1 => {
            // c∞ − c₀ + η⁻¹ and c∞ + c₀ + η⁻¹
            let cm1 = param_series(&shift_param(&cm, 1.0), n, chart);
            let cp1 = param_series(&shift_param(&cp, 1.0), n, chart);
            let den = lam.mul(lam).mul(&mu_m1).scale(two).add(&cm1.mul(lam)).add(&tj.scale(two));
            let big_l = tj.div(lam)?.neg().add(&cp1.mul(&tj).div(&den)?);
            let big_m = lam
                .mul(lam)
                .mul(&mu_m1)
                .mul_jet(&inv_t)
                .add(&cm1.mul(lam).mul_jet(&inv_t).scale(half))
                .add(&EtaSeries::from_jet(chart.constant(C64::new(1.0, 0.0)), lam.low()));
            let shifted = SeriesParams::D6 { c_inf: shift_param(&c_inf, 1.0), c_0: shift_param(&c_0, 1.0) };
            Ok((big_l, big_m, shifted))
        }
        2 => {
            let cm1 = param_series(&shift_param(&cm, 1.0), n, chart);
            let cpm = param_series(&shift_param(&cp, -1.0), n, chart);
            let den = lam.mul(&mu_m1).scale(two).add(&cm1);
            let big_l = tj.mul(&mu_m1).scale(two).div(&den)?;
            // P = λ + (c∞ − c₀ + η⁻¹)/(2(μ − 1))
            let p = lam.add(&cm1.div(&mu_m1.scale(two))?);
            let big_m = cpm.mul(&p).scale(half).sub(&p.mul(&p).mul(mu)).mul_jet(&inv_t);
            let shifted = SeriesParams::D6 { c_inf: shift_param(&c_inf, 1.0), c_0: shift_param(&c_0, -1.0) };
            Ok((big_l, big_m, shifted))
        }
        _ => Err(Error::Domain(format!("Bäcklund index {j} (expected 1 or 2)"))),
    }
}

/// Default η-order and jet order.
pub const DEFAULT_ETA_ORDER: usize = 6;
pub const DEFAULT_JET_ORDER: usize = DEFAULT_ETA_ORDER + 4;
