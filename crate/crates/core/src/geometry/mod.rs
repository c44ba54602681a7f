//! Stokes geometry on the u-plane.
//!
//! A Stokes curve is a trajectory of the quadratic differential q(u) du²
//! leaving a turning point (a triple zero of q) or the simple-pole. Along it
//! Φ(u) = ∫ √q du is real and increasing, so the tracer integrates
//! du/dΦ = 1/√q(u) with Φ as the time variable and, after every step,
//! pushes the new point back onto Im Φ = 0.

mod phi;
mod render;

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Equation, Parameters, UChart};
use crate::error::{Error, Result};
use crate::numerics::{c64, C64};

pub use phi::{phi_jet, phi_primitive, phi_value, PhiPath};
pub use render::{parse_json, render, render_json, render_svg, Format};

/// Where a Stokes curve starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Origin {
    /// Index into the diagram's turning points.
    Turning(usize),
    SimplePole,
}

/// How a traced curve ended.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Terminus {
    /// Captured by a pole of q of order ≥ 2 (label as in [`crate::algebra::PoleInfo`]).
    Pole(String),
    TurningPoint(usize),
    SimplePole,
    /// Came back to its own starting segment.
    Closed,
    /// Arc-length or step budget exhausted (typically a slow spiral).
    Spiral,
    /// Tracing broke down; the polyline is what was traced so far.
    Failed(String),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Turning(i) => write!(f, "tau{}", i + 1),
            Origin::SimplePole => f.write_str("sp"),
        }
    }
}

fn parse_tau(s: &str) -> Option<usize> {
    s.strip_prefix("tau")?.parse::<usize>().ok().filter(|k| *k >= 1).map(|k| k - 1)
}

impl std::str::FromStr for Origin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "sp" {
            return Ok(Origin::SimplePole);
        }
        parse_tau(s).map(Origin::Turning).ok_or_else(|| Error::Domain(format!("bad origin '{s}'")))
    }
}

impl From<Origin> for String {
    fn from(o: Origin) -> String {
        o.to_string()
    }
}

impl TryFrom<String> for Origin {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Terminus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminus::Pole(l) => write!(f, "pole:{l}"),
            Terminus::TurningPoint(i) => write!(f, "turning:tau{}", i + 1),
            Terminus::SimplePole => f.write_str("simple-pole"),
            Terminus::Closed => f.write_str("closed"),
            Terminus::Spiral => f.write_str("spiral"),
            Terminus::Failed(m) => write!(f, "error:{m}"),
        }
    }
}

impl std::str::FromStr for Terminus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(l) = s.strip_prefix("pole:") {
            return Ok(Terminus::Pole(l.to_string()));
        }
        if let Some(m) = s.strip_prefix("error:") {
            return Ok(Terminus::Failed(m.to_string()));
        }
        if let Some(t) = s.strip_prefix("turning:") {
            return parse_tau(t)
                .map(Terminus::TurningPoint)
                .ok_or_else(|| Error::Domain(format!("bad terminus '{s}'")));
        }
        match s {
            "simple-pole" => Ok(Terminus::SimplePole),
            "closed" => Ok(Terminus::Closed),
            "spiral" => Ok(Terminus::Spiral),
            _ => Err(Error::Domain(format!("bad terminus '{s}'"))),
        }
    }
}

impl From<Terminus> for String {
    fn from(t: Terminus) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Terminus {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Allowed |Im Φ| per unit of (1 + arc length).
    pub eps_trace: f64,
    /// Capture radius, relative to the smallest distance between special points.
    pub r_cap: f64,
    /// Escape radius, in units of the u-plane scale.
    pub escape: f64,
    /// Arc-length budget, in units of the u-plane scale.
    pub arc_budget: f64,
    /// Step length as a fraction of the distance to the nearest special point.
    pub step_frac: f64,
    pub max_steps: usize,
    /// Threshold for the degeneration tests.
    pub eps_deg: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            eps_trace: 1e-6,
            r_cap: 1e-3,
            escape: 1e3,
            arc_budget: 5000.0,
            step_frac: 0.05,
            max_steps: 200_000,
            eps_deg: 1e-4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesCurve {
    pub origin: Origin,
    pub ray: usize,
    /// u-samples, starting at the origin.
    pub points: Vec<C64>,
    pub terminus: Terminus,
    /// ∫ √q du from the origin to the last point.
    #[serde(default)]
    pub phi: C64,
    #[serde(default)]
    pub arc_length: f64,
    /// max |Im Φ| seen along the polyline.
    #[serde(default)]
    pub im_defect: f64,
}

impl StokesCurve {
    /// The polyline pushed to the t-plane.
    pub fn t_points(&self, chart: &UChart) -> Vec<C64> {
        self.points.iter().map(|u| chart.t_of_u(*u)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegenerationKind {
    Triangle,
    Loop,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerationRecord {
    pub kind: DegenerationKind,
    /// Turning points (and, for a loop, the enclosed pole label).
    pub participants: Vec<String>,
    /// Largest |Im ∫√q du| over the connections (triangle) or
    /// |Re res|/|res| at the enclosed pole (loop).
    pub diagnostic: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramParameters {
    D6 { c_inf: C64, c_0: C64 },
    D7 { c: C64 },
}

impl DiagramParameters {
    pub fn of(eq: &Equation) -> Self {
        match eq {
            Equation::D6(p) => DiagramParameters::D6 { c_inf: p.c_inf, c_0: p.c_0 },
            Equation::D7 { c } => DiagramParameters::D7 { c: *c },
        }
    }

    pub fn equation(&self) -> Result<Equation> {
        Ok(match self {
            DiagramParameters::D6 { c_inf, c_0 } => Equation::D6(Parameters::new(*c_inf, *c_0)?),
            DiagramParameters::D7 { c } => Equation::D7 { c: *c },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesDiagram {
    pub parameters: DiagramParameters,
    pub turning_points_u: Vec<C64>,
    #[serde(default)]
    pub simple_pole_u: C64,
    #[serde(default)]
    pub double_poles_u: Vec<C64>,
    pub curves: Vec<StokesCurve>,
    pub degenerations: Vec<DegenerationRecord>,
}

impl StokesDiagram {
    /// Sorted terminus labels, one per curve.
    pub fn terminus_multiset(&self) -> Vec<String> {
        let mut v: Vec<String> = self.curves.iter().map(|c| c.terminus.to_string()).collect();
        v.sort();
        v
    }

    /// Unordered pairs of distinct turning points joined by a traced curve.
    pub fn connections(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .curves
            .iter()
            .filter_map(|c| match (c.origin, &c.terminus) {
                (Origin::Turning(i), Terminus::TurningPoint(j)) if i != *j => Some((i.min(*j), i.max(*j))),
                _ => None,
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

// ---------------------------------------------------------------------------
// Local analysis

fn sqrt_aligned(q: C64, reference: C64) -> C64 {
    let s = q.sqrt();
    if (s - reference).norm() > (s + reference).norm() {
        -s
    } else {
        s
    }
}

fn origin_point(chart: &UChart, origin: Origin) -> Result<C64> {
    match origin {
        Origin::SimplePole => Ok(chart.simple_pole_u()),
        Origin::Turning(i) => chart
            .turning_points_u()
            .get(i)
            .copied()
            .ok_or_else(|| Error::Domain(format!("no turning point tau{}", i + 1))),
    }
}

/// Leading coefficient C and exponent m of q ≈ C (u − u₀)^m at the origin.
fn local_model(chart: &UChart, origin: Origin) -> Result<(C64, C64, i32)> {
    let u0 = origin_point(chart, origin)?;
    Ok(match origin {
        Origin::Turning(_) => (u0, chart.turning_point_constant(u0), 3),
        Origin::SimplePole => (u0, chart.simple_pole_constant(), -1),
    })
}

/// Unit tangent directions of the Stokes curves at `origin`: five at a
/// turning point, one at the simple-pole.
pub fn emanation_directions(chart: &UChart, origin: Origin) -> Result<Vec<C64>> {
    Ok(rays(chart, origin)?.into_iter().map(|(e, _)| e).collect())
}

/// Directions with the sign σ = ±1 of √q (relative to √C·(u−u₀)^{m/2}) that
/// makes Φ increase along the ray.
fn rays(chart: &UChart, origin: Origin) -> Result<Vec<(C64, f64)>> {
    let (_, c, m) = local_model(chart, origin)?;
    if !c.is_finite() || c.norm() == 0.0 {
        return Err(Error::Domain(format!("{origin} is not a simple zero or pole of the local model")));
    }
    let a = c.sqrt().arg();
    // Φ ≈ (2/(m+2)) √C (u−u₀)^{(m+2)/2}; real on θ with a + (m+2)θ/2 ≡ 0 mod π
    let k = (m + 2) as f64 / 2.0;
    let n = if m == 3 { 5 } else { 1 };
    Ok((0..n)
        .map(|j| {
            let jj = if m == 3 { j as f64 } else { 0.0 };
            let e = C64::from_polar(1.0, (PI * jj - a) / k);
            // sign of Φ for the branch √C·(u−u₀)^{m/2} taken with the principal arg of e
            let phase = c.sqrt() * C64::from_polar(1.0, e.arg() * k);
            (e, phase.re.signum())
        })
        .collect())
}

const GL8_X: [f64; 4] =
    [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL8_W: [f64; 4] =
    [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

/// ∫₀¹ f, 8-point Gauss–Legendre.
fn gl8<F: FnMut(f64) -> C64>(mut f: F) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..4 {
        acc += GL8_W[j] * (f(0.5 - 0.5 * GL8_X[j]) + f(0.5 + 0.5 * GL8_X[j]));
    }
    acc * 0.5
}

/// ∫_{u₀}^{u} √q du where √q(u) = `s_at_u` and q ~ (u−u₀)^m; the substitution
/// u₀ + (u−u₀)s² makes the integrand analytic in s.
fn endpoint_integral(chart: &UChart, u0: C64, u: C64, s_at_u: C64, m: i32) -> C64 {
    let d = u - u0;
    gl8(|x| {
        let model = s_at_u * x.powi(m);
        let w = u0 + d * (x * x);
        sqrt_aligned(chart.q(w), model) * d * (2.0 * x)
    })
}

/// ∫ √q du along the chord a → b.
fn chord_integral(chart: &UChart, a: C64, b: C64, s_ref: C64) -> C64 {
    let d = b - a;
    gl8(|x| sqrt_aligned(chart.q(a + d * x), s_ref)) * d
}

fn winding_number(poly: &[C64], p: C64) -> i64 {
    let mut total = 0.0;
    for w in poly.windows(2) {
        total += ((w[1] - p) / (w[0] - p)).arg();
    }
    if let (Some(a), Some(b)) = (poly.last(), poly.first()) {
        total += ((b - p) / (a - p)).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

// ---------------------------------------------------------------------------
// Tracing

struct Scene {
    turning: Vec<C64>,
    simple: C64,
    /// Finite poles of q of order ≥ 2.
    poles: Vec<(C64, String)>,
    inf_label: String,
    special: Vec<C64>,
    r_cap: f64,
    r_esc: f64,
    budget: f64,
}

impl Scene {
    fn new(chart: &UChart, opts: &TraceOptions) -> Scene {
        let special = chart.finite_special_points();
        let mut spacing = f64::INFINITY;
        for (i, a) in special.iter().enumerate() {
            for b in &special[i + 1..] {
                spacing = spacing.min((a - b).norm());
            }
        }
        let scale = chart.u_scale();
        let poles = chart.poles();
        Scene {
            turning: chart.turning_points_u(),
            simple: chart.simple_pole_u(),
            poles: poles.iter().filter_map(|p| p.u.map(|u| (u, p.label.clone()))).collect(),
            inf_label: poles.iter().find(|p| p.u.is_none()).map(|p| p.label.clone()).unwrap_or_else(|| "inf".into()),
            special,
            r_cap: opts.r_cap * spacing,
            r_esc: opts.escape * scale,
            budget: opts.arc_budget * scale,
        }
    }

    fn distance(&self, u: C64) -> f64 {
        self.special.iter().map(|p| (u - p).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Trace the Stokes curve leaving `origin` along ray `ray`.
pub fn trace_curve(chart: &UChart, origin: Origin, ray: usize, opts: &TraceOptions) -> Result<StokesCurve> {
    let scene = Scene::new(chart, opts);
    trace_in(chart, &scene, origin, ray, opts)
}

fn trace_in(chart: &UChart, scene: &Scene, origin: Origin, ray: usize, opts: &TraceOptions) -> Result<StokesCurve> {
    let (u_origin, c, m) = local_model(chart, origin)?;
    let (dir, sigma) =
        *rays(chart, origin)?.get(ray).ok_or_else(|| Error::Domain(format!("{origin} has no ray {ray}")))?;

    let d_origin = scene
        .special
        .iter()
        .filter(|p| (**p - u_origin).norm() > 0.0)
        .map(|p| (p - u_origin).norm())
        .fold(f64::INFINITY, f64::min);
    let r0 = 1e-2 * d_origin;
    let mut u = u_origin + dir * r0;
    // √q on the ray, branch fixed by the local model
    let model = sigma * c.sqrt() * r0.powf(m as f64 / 2.0) * C64::from_polar(1.0, dir.arg() * m as f64 / 2.0);
    let mut s = sqrt_aligned(chart.q(u), model);
    let mut phi = endpoint_integral(chart, u_origin, u, s, m);
    // the local model is only approximate: pull the start onto Im Φ = 0
    for _ in 0..4 {
        u -= c64(0.0, phi.im) / s;
        s = sqrt_aligned(chart.q(u), s);
        phi = endpoint_integral(chart, u_origin, u, s, m);
    }

    let mut points = vec![u_origin, u];
    let mut arc = r0;
    let mut im_defect = phi.im.abs();
    let start_dir = dir;
    let start_point = u;
    let i_origin = match origin {
        Origin::Turning(i) => Some(i),
        Origin::SimplePole => None,
    };

    let finish = |points: Vec<C64>, terminus: Terminus, phi: C64, arc: f64, im_defect: f64| StokesCurve {
        origin,
        ray,
        points,
        terminus,
        phi,
        arc_length: arc,
        im_defect,
    };

    for _ in 0..opts.max_steps {
        let hu = opts.step_frac * scene.distance(u);
        if !(hu > 1e-14 * (1.0 + u.norm())) {
            return Ok(finish(points, Terminus::Failed("step underflow".into()), phi, arc, im_defect));
        }
        let h = hu * s.norm();
        // RK4 for du/dΦ = 1/√q
        let f = |w: C64| 1.0 / sqrt_aligned(chart.q(w), s);
        let k1 = 1.0 / s;
        let k2 = f(u + 0.5 * h * k1);
        let k3 = f(u + 0.5 * h * k2);
        let k4 = f(u + h * k3);
        let mut un = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // back onto Im Φ = 0
        let sn = sqrt_aligned(chart.q(un), s);
        let miss = (phi + chord_integral(chart, u, un, s)).im;
        un -= c64(0.0, miss) / sn;
        let sn = sqrt_aligned(chart.q(un), s);
        let inc = chord_integral(chart, u, un, s);
        if !(inc.re > 0.0) || !un.is_finite() {
            return Ok(finish(points, Terminus::Failed("Φ stopped increasing".into()), phi, arc, im_defect));
        }
        arc += (un - u).norm();
        phi += inc;
        im_defect = im_defect.max(phi.im.abs());
        u = un;
        s = sn;
        points.push(u);

        let away = arc > 0.5 * d_origin;
        for (j, tj) in scene.turning.iter().enumerate() {
            if (u - tj).norm() < scene.r_cap && (Some(j) != i_origin || away) {
                phi -= endpoint_integral(chart, *tj, u, s, 3);
                points.push(*tj);
                return Ok(finish(points, Terminus::TurningPoint(j), phi, arc, im_defect));
            }
        }
        if (u - scene.simple).norm() < scene.r_cap && (i_origin.is_some() || away) {
            phi -= endpoint_integral(chart, scene.simple, u, s, -1);
            points.push(scene.simple);
            return Ok(finish(points, Terminus::SimplePole, phi, arc, im_defect));
        }
        if let Some((_, label)) = scene.poles.iter().find(|(p, _)| (u - p).norm() < scene.r_cap) {
            return Ok(finish(points, Terminus::Pole(label.clone()), phi, arc, im_defect));
        }
        if u.norm() > scene.r_esc {
            return Ok(finish(points, Terminus::Pole(scene.inf_label.clone()), phi, arc, im_defect));
        }
        if away && (u - start_point).norm() < scene.r_cap {
            let tangent = (1.0 / s) / (1.0 / s).norm();
            if (tangent * start_dir.conj()).re > 0.99 {
                return Ok(finish(points, Terminus::Closed, phi, arc, im_defect));
            }
        }
        if arc > scene.budget {
            return Ok(finish(points, Terminus::Spiral, phi, arc, im_defect));
        }
    }
    Ok(finish(points, Terminus::Spiral, phi, arc, im_defect))
}

/// Every Stokes curve (five per turning point, one from the simple-pole),
/// traced in parallel, with degenerations detected.
pub fn stokes_diagram(eq: &Equation, opts: &TraceOptions) -> Result<StokesDiagram> {
    let chart = UChart::new(*eq)?;
    let scene = Scene::new(&chart, opts);
    let mut jobs: Vec<(Origin, usize)> = Vec::new();
    for i in 0..scene.turning.len() {
        for r in 0..5 {
            jobs.push((Origin::Turning(i), r));
        }
    }
    jobs.push((Origin::SimplePole, 0));
    let curves = jobs.par_iter().map(|(o, r)| trace_in(&chart, &scene, *o, *r, opts)).collect::<Result<Vec<_>>>()?;
    let double_poles_u = chart.poles().iter().filter(|p| p.order == 2).filter_map(|p| p.u).collect();
    let mut d = StokesDiagram {
        parameters: DiagramParameters::of(eq),
        turning_points_u: scene.turning.clone(),
        simple_pole_u: scene.simple,
        double_poles_u,
        curves,
        degenerations: vec![],
    };
    d.degenerations = detect_degenerations(&d, opts.eps_deg)?;
    Ok(d)
}

/// Triangle- and loop-type degenerations of a traced diagram.
pub fn detect_degenerations(d: &StokesDiagram, eps_deg: f64) -> Result<Vec<DegenerationRecord>> {
    let chart = UChart::new(d.parameters.equation()?)?;
    let mut out = Vec::new();

    // connections between distinct turning points, with |Im ∫| per pair
    let n = d.turning_points_u.len();
    let mut pair_defect = vec![vec![f64::INFINITY; n]; n];
    for c in &d.curves {
        if let (Origin::Turning(i), Terminus::TurningPoint(j)) = (c.origin, &c.terminus) {
            if i != *j {
                let defect = c.phi.im.abs() / c.phi.norm().max(1.0);
                let (a, b) = (i.min(*j), i.max(*j));
                pair_defect[a][b] = pair_defect[a][b].min(defect);
            }
        }
    }
    if n == 3 {
        let worst = [(0, 1), (0, 2), (1, 2)].iter().map(|(a, b)| pair_defect[*a][*b]).fold(0.0, f64::max);
        if worst < eps_deg {
            out.push(DegenerationRecord {
                kind: DegenerationKind::Triangle,
                participants: (0..3).map(|i| Origin::Turning(i).to_string()).collect(),
                diagnostic: worst,
            });
        }
    }

    // closed curves around exactly one finite pole with imaginary residue
    let poles = chart.poles();
    for c in &d.curves {
        let closes = match (c.origin, &c.terminus) {
            (Origin::Turning(i), Terminus::TurningPoint(j)) => i == *j,
            (_, Terminus::Closed) => true,
            _ => false,
        };
        if !closes {
            continue;
        }
        let enclosed: Vec<_> = poles
            .iter()
            .filter_map(|p| p.u.map(|u| (p, winding_number(&c.points, u))))
            .filter(|(_, w)| *w != 0)
            .collect();
        if enclosed.len() != 1 || enclosed[0].1.abs() != 1 {
            continue;
        }
        let pole = enclosed[0].0;
        let defect = pole.residue.re.abs() / pole.residue.norm();
        if defect >= eps_deg {
            continue;
        }
        let participants = vec![c.origin.to_string(), pole.label.clone()];
        if !out.iter().any(|r: &DegenerationRecord| r.kind == DegenerationKind::Loop && r.participants == participants)
        {
            out.push(DegenerationRecord { kind: DegenerationKind::Loop, participants, diagnostic: defect });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d6(a: C64, b: C64) -> Equation {
        Equation::D6(Parameters::new(a, b).unwrap())
    }

    #[test]
    fn ray_counts_and_spacing() {
        let chart = UChart::new(d6(c64(2.0, 1.0), c64(3.0, 0.0))).unwrap();
        for i in 0..3 {
            let dirs = emanation_directions(&chart, Origin::Turning(i)).unwrap();
            assert_eq!(dirs.len(), 5);
            let mut args: Vec<f64> = dirs.iter().map(|d| d.arg().rem_euclid(2.0 * PI)).collect();
            args.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for w in args.windows(2) {
                assert!((w[1] - w[0] - 0.4 * PI).abs() < 1e-12);
            }
        }
        assert_eq!(emanation_directions(&chart, Origin::SimplePole).unwrap().len(), 1);
        assert!(emanation_directions(&chart, Origin::Turning(3)).is_err());
    }

    #[test]
    fn traced_curves_stay_on_the_level_set() {
        let eq = d6(c64(2.0, 1.0), c64(3.0, 0.0));
        let opts = TraceOptions::default();
        let d = stokes_diagram(&eq, &opts).unwrap();
        assert_eq!(d.curves.len(), 16);
        for c in &d.curves {
            assert!(!matches!(c.terminus, Terminus::Failed(_)), "{c:?}");
            assert!(c.im_defect < opts.eps_trace * (1.0 + c.arc_length), "{} {}", c.origin, c.im_defect);
        }
        assert!(d.connections().is_empty());
        assert!(d.degenerations.is_empty());
    }

    #[test]
    fn labels_round_trip() {
        for t in [Terminus::Pole("0_c0".into()), Terminus::TurningPoint(2), Terminus::SimplePole, Terminus::Spiral] {
            assert_eq!(t.to_string().parse::<Terminus>().unwrap(), t);
        }
        assert_eq!("tau2".parse::<Origin>().unwrap(), Origin::Turning(1));
    }
}
