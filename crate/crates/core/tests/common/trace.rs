//! A second Stokes-curve tracer, written independently of the library one:
//! it integrates the unit-speed field du/dτ = conj(√q)/|√q| with plain RK4,
//! without projecting back onto Im Φ = 0, and classifies where each curve
//! ends. Only q and the positions of its special points come from the
//! library.

use std::f64::consts::PI;

use p3wkb::algebra::UChart;
use p3wkb::{Equation, C64};

fn aligned(q: C64, r: C64) -> C64 {
    let s = q.sqrt();
    if (s - r).norm() > (s + r).norm() {
        -s
    } else {
        s
    }
}

struct Points {
    turning: Vec<C64>,
    simple: C64,
    poles: Vec<(C64, String)>,
    inf: String,
    all: Vec<C64>,
    spacing: f64,
    scale: f64,
}

impl Points {
    fn new(chart: &UChart) -> Points {
        let turning = chart.turning_points_u();
        let simple = chart.simple_pole_u();
        let poles: Vec<(C64, String)> =
            chart.poles().iter().filter_map(|p| p.u.map(|u| (u, format!("pole:{}", p.label)))).collect();
        let inf = chart.poles().iter().find(|p| p.u.is_none()).map(|p| format!("pole:{}", p.label)).unwrap();
        let mut all = turning.clone();
        all.push(simple);
        all.extend(poles.iter().map(|p| p.0));
        let mut spacing = f64::INFINITY;
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                spacing = spacing.min((a - b).norm());
            }
        }
        let scale = all.iter().map(|u| u.norm()).fold(1.0, f64::max);
        Points { turning, simple, poles, inf, all, spacing, scale }
    }

    fn distance(&self, u: C64) -> f64 {
        self.all.iter().map(|p| (u - p).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Starting directions at a point where q ≈ C(u − u₀)^m: Φ ≈ √C x^{(m+2)/2}/((m+2)/2)
/// is real and positive along arg x = θ with arg √C + (m+2)θ/2 ∈ 2πℤ.
fn directions(chart: &UChart, u0: C64, m: i32, probe: f64) -> Vec<(f64, C64)> {
    let x = C64::new(probe, 0.0);
    let c = chart.q(u0 + x) / x.powi(m);
    let rc = c.sqrt();
    let k = (m + 2) as f64 / 2.0;
    let count = (m + 2).max(1) as usize;
    (0..count)
        .map(|j| {
            let th = (2.0 * PI * j as f64 - rc.arg()) / k;
            (th, rc)
        })
        .collect()
}

fn label(p: &Points, u: C64, origin: Option<usize>, away: bool, cap: f64) -> Option<String> {
    for (j, t) in p.turning.iter().enumerate() {
        if (u - t).norm() < cap && (Some(j) != origin || away) {
            return Some(format!("turning:tau{}", j + 1));
        }
    }
    if (u - p.simple).norm() < cap && (origin.is_some() || away) {
        return Some("simple-pole".into());
    }
    for (q, l) in &p.poles {
        if (u - q).norm() < cap {
            return Some(l.clone());
        }
    }
    None
}

fn trace_one(chart: &UChart, p: &Points, u0: C64, origin: Option<usize>, m: i32, th: f64, rc: C64) -> String {
    let d0 = p.all.iter().filter(|q| (**q - u0).norm() > 0.0).map(|q| (q - u0).norm()).fold(f64::INFINITY, f64::min);
    // start close enough that the leading-order local model is exact to rounding
    let r0 = 1e-6 * d0;
    let dir = C64::from_polar(1.0, th);
    let mut u = u0 + dir * r0;
    let model = rc * r0.powf(m as f64 / 2.0) * C64::from_polar(1.0, th * m as f64 / 2.0);
    let mut s = aligned(chart.q(u), model);
    let cap = 5e-3 * p.spacing;
    let mut arc = r0;
    for _ in 0..400_000 {
        let h = 0.005 * p.distance(u);
        let f = |w: C64, r: C64| {
            let sw = aligned(chart.q(w), r);
            (sw.conj() / sw.norm(), sw)
        };
        let (k1, _) = f(u, s);
        let (k2, _) = f(u + 0.5 * h * k1, s);
        let (k3, _) = f(u + 0.5 * h * k2, s);
        let (k4, _) = f(u + h * k3, s);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s = aligned(chart.q(u), s);
        arc += h;
        if let Some(l) = label(p, u, origin, arc > 0.5 * d0, cap) {
            return l;
        }
        if u.norm() > 1e3 * p.scale {
            return p.inf.clone();
        }
        if arc > 5e3 * p.scale {
            return "spiral".into();
        }
    }
    "spiral".into()
}

/// Sorted end labels of every Stokes curve of `eq`.
pub fn terminus_multiset(eq: &Equation) -> Vec<String> {
    let chart = UChart::new(*eq).unwrap();
    let p = Points::new(&chart);
    let probe = 1e-7 * p.spacing;
    let mut out = Vec::new();
    for (i, t) in p.turning.iter().enumerate() {
        for (th, rc) in directions(&chart, *t, 3, probe) {
            out.push(trace_one(&chart, &p, *t, Some(i), 3, th, rc));
        }
    }
    for (th, rc) in directions(&chart, p.simple, -1, probe) {
        out.push(trace_one(&chart, &p, p.simple, None, -1, th, rc));
    }
    out.sort();
    out
}
