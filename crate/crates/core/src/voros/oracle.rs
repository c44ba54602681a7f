//! Independent numeric evaluation of Voros coefficients by contour
//! integration on the u-plane.
//!
//! On the u-plane R_{2n−1}(t) dt = R_{2n−1}·t′(u) du, and every odd
//! coefficient is √q times a rational function of u. The integral from the
//! turning point τ is taken as half of a contour integral: starting at a
//! point p on a small circle around τ on the opposite sheet, once around τ
//! (which restores the sheet), plus the ordinary integral from p to the
//! target. Near the target the integrand is analytic in the local
//! coordinate (u − u_P, or 1/u at ∞), so the last stretch is integrated
//! term by term from a Laurent expansion sampled on a circle.
//!
//! The sheet of √q is tracked by continuity along every piece of the path;
//! the sign convention at the target is read off from the limit of R₋₁·t
//! (double poles) or R₋₁·λ₀ (infinity), as in the definitions.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{EndpointSpec, Provenance, Target, VorosSeries};
use crate::algebra::{Equation, UChart};
use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadOptions};
use crate::series::{riccati_solution, zero_param_solution_in_chart, Chart, SeriesParams};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Highest n (the coefficient of η^{1−2n}); capped at 3.
    pub nmax: usize,
    /// Index into the turning points used as the lower end; `None` picks the
    /// one nearest to the target.
    pub tau: Option<usize>,
    pub rel_tol: f64,
    /// Samples on the end circle.
    pub circle_nodes: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { nmax: 2, tau: None, rel_tol: 1e-11, circle_nodes: 128 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub series: VorosSeries,
    /// Sign convention found at the target before any flip.
    pub detected_sign: i8,
    pub tau_u: C64,
    /// Vertices of the straight part of the path.
    pub path: Vec<C64>,
    /// Largest negative-power Laurent coefficient seen at the target,
    /// relative to the integrand size (should be at rounding level).
    pub end_singularity: f64,
    /// Sum of quadrature error estimates.
    pub quad_error: f64,
}

struct Integrand<'a> {
    uc: &'a UChart,
    params: SeriesParams,
    nmax: usize,
    memo: RefCell<HashMap<(u64, u64, bool), Vec<C64>>>,
}

impl<'a> Integrand<'a> {
    fn new(uc: &'a UChart, nmax: usize) -> Self {
        Integrand { uc, params: SeriesParams::from_equation(&uc.eq), nmax, memo: RefCell::new(HashMap::new()) }
    }

    /// [R_{2n−1}·t′(u)] for n = 1..=nmax, on the sheet where √q = `root`.
    fn eval(&self, u: C64, root: C64) -> Result<Vec<C64>> {
        let key = (u.re.to_bits(), u.im.to_bits(), root.re.is_sign_negative());
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let n = 2 * self.nmax;
        let (chart, lam) = Chart::u_chart(self.uc, u, n + 3)?;
        let tp = self.uc.dt_du(u);
        let zp = zero_param_solution_in_chart(&self.params, chart, lam, n)?;
        let r = riccati_solution(&zp, 1, Some(root / tp), n)?;
        let out: Vec<C64> = (1..=self.nmax).map(|k| r.at(1 - 2 * k as i32).value() * tp).collect();
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }
}

/// A path piece parametrised by s ∈ [0, 1].
#[derive(Clone, Copy, Debug)]
enum Piece {
    Line(C64, C64),
    /// Circle arc: centre, radius, start angle, end angle.
    Arc(C64, f64, f64, f64),
}

impl Piece {
    fn point(&self, s: f64) -> C64 {
        match *self {
            Piece::Line(a, b) => a + (b - a) * s,
            Piece::Arc(c, r, a, b) => c + C64::from_polar(r, a + (b - a) * s),
        }
    }

    fn deriv(&self, s: f64) -> C64 {
        match *self {
            Piece::Line(a, b) => b - a,
            Piece::Arc(_, r, a, b) => C64::new(0.0, b - a) * C64::from_polar(r, a + (b - a) * s),
        }
    }
}

/// Continuous √q along a piece, sampled on a grid fine enough to follow it.
struct SheetTable {
    s: Vec<f64>,
    root: Vec<C64>,
}

impl SheetTable {
    fn build(uc: &UChart, piece: &Piece, start: C64, special: &[C64]) -> Result<Self> {
        let mut s = vec![0.0];
        let mut root = vec![start];
        let mut cur = 0.0;
        while cur < 1.0 {
            let u = piece.point(cur);
            let d = special.iter().map(|p| (p - u).norm()).fold(f64::INFINITY, f64::min);
            let speed = piece.deriv(cur).norm().max(1e-300);
            let h = (0.01 * d / speed).clamp(1e-7, 0.01);
            cur = (cur + h).min(1.0);
            let q = uc.q(piece.point(cur));
            if !q.is_finite() || q.norm() == 0.0 {
                return Err(Error::Integration(format!(
                    "path meets a zero or pole of q near u = {}",
                    piece.point(cur)
                )));
            }
            let mut r = q.sqrt();
            let prev = *root.last().expect("non-empty");
            if (r - prev).norm() > (r + prev).norm() {
                r = -r;
            }
            s.push(cur);
            root.push(r);
        }
        Ok(SheetTable { s, root })
    }

    fn root_at(&self, uc: &UChart, piece: &Piece, s: f64) -> C64 {
        let i = match self.s.binary_search_by(|x| x.partial_cmp(&s).expect("finite")) {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.s.len() {
                    self.s.len() - 1
                } else if s - self.s[i - 1] < self.s[i] - s {
                    i - 1
                } else {
                    i
                }
            }
        };
        let r = uc.q(piece.point(s)).sqrt();
        let w = self.root[i];
        if (r - w).norm() > (r + w).norm() {
            -r
        } else {
            r
        }
    }

    fn end(&self) -> C64 {
        *self.root.last().expect("non-empty")
    }
}

fn seg_dist(a: C64, b: C64, p: C64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * d.conj()).re / l2).clamp(0.0, 1.0);
    (a + d * s - p).norm()
}

fn nearest_other(pts: &[C64], x: C64) -> f64 {
    pts.iter()
        .filter(|p| (**p - x).norm() > 1e-12 * (1.0 + x.norm()))
        .map(|p| (p - x).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Integrate every component of the integrand along a piece.
fn integrate_piece(
    f: &Integrand,
    piece: &Piece,
    table: &SheetTable,
    special: &[C64],
    rel_tol: f64,
) -> Result<(Vec<C64>, f64)> {
    let mut out = Vec::with_capacity(f.nmax);
    let mut err = 0.0;
    for k in 0..f.nmax {
        let mut failure: Option<Error> = None;
        let g = |s: f64| {
            let u = piece.point(s);
            let root = table.root_at(f.uc, piece, s);
            match f.eval(u, root) {
                Ok(v) => v[k] * piece.deriv(s),
                Err(e) => {
                    failure.get_or_insert(e);
                    C64::new(0.0, 0.0)
                }
            }
        };
        let opts = QuadOptions { abs_tol: 1e-14, rel_tol, max_intervals: 2000 };
        let res = integrate(g, 0.0, 1.0, opts);
        if let Some(e) = failure {
            return Err(e);
        }
        let (v, e) = res.map_err(|e| {
            let u0 = piece.point(0.0);
            let d = special.iter().map(|p| (p - u0).norm()).fold(f64::INFINITY, f64::min);
            Error::Integration(format!("{e} (piece starting at u = {u0}, clearance {d:.3e})"))
        })?;
        out.push(v);
        err += e;
    }
    Ok((out, err))
}

/// Pick a polyline from p (on the τ circle) to u_e (on the target circle)
/// that keeps clear of every other special point.
#[allow(clippy::too_many_arguments)]
fn choose_path(
    tau: C64,
    r_tau: f64,
    target: Option<C64>,
    rho: f64,
    special: &[C64],
    clearance: &dyn Fn(C64) -> f64,
) -> Result<Vec<C64>> {
    let aim = match target {
        Some(p) => p - tau,
        None => {
            if tau.norm() > 0.0 {
                tau
            } else {
                C64::new(1.0, 0.0)
            }
        }
    };
    let dir0 = aim / aim.norm();
    let angles = [0.0, 0.4, -0.4, 0.8, -0.8, 1.2, -1.2, 1.6, -1.6, 2.2, -2.2];
    let offsets = [0.0, 0.4, -0.4, 0.8, -0.8, 1.5, -1.5];
    let ok = |pts: &[C64]| {
        pts.windows(2).all(|w| {
            special.iter().all(|s| {
                let d = seg_dist(w[0], w[1], *s);
                if (*s - tau).norm() < 1e-12 {
                    d >= 0.9 * r_tau
                } else if target.map_or(false, |t| (*s - t).norm() < 1e-12) {
                    d >= 0.9 * rho
                } else {
                    d >= clearance(*s)
                }
            })
        }) && target.is_some()
            || (target.is_none()
                && pts.windows(2).all(|w| {
                    special.iter().all(|s| {
                        let d = seg_dist(w[0], w[1], *s);
                        if (*s - tau).norm() < 1e-12 {
                            d >= 0.9 * r_tau
                        } else {
                            d >= clearance(*s)
                        }
                    })
                }))
    };
    for &a in &angles {
        let p = tau + r_tau * dir0 * C64::from_polar(1.0, a);
        for &b in &angles {
            let ue = match target {
                Some(t) => t + rho * (-dir0) * C64::from_polar(1.0, b),
                None => (1.0 / rho) * dir0 * C64::from_polar(1.0, b),
            };
            for &k in &offsets {
                let mut pts = vec![p];
                if k != 0.0 {
                    let mid = 0.5 * (p + ue);
                    let perp = (ue - p) * C64::new(0.0, 1.0);
                    pts.push(mid + perp * k);
                }
                pts.push(ue);
                if ok(&pts) {
                    return Ok(pts);
                }
            }
        }
    }
    Err(Error::Integration("no clear integration path found between the turning point and the target".into()))
}

struct EndPiece {
    values: Vec<C64>,
    /// Limit of R₋₁·t or R₋₁·λ₀ at the target.
    limit: C64,
    singular: f64,
    closing_root: C64,
}

/// Laurent data on the circle around the target and the term-by-term
/// integral from the circle point back to the target.
fn end_piece(
    f: &Integrand,
    target: Option<C64>,
    rho: f64,
    start_local: C64,
    start_root: C64,
    m: usize,
    limit_factor: &dyn Fn(C64) -> C64,
) -> Result<EndPiece> {
    let uc = f.uc;
    let th0 = start_local.arg();
    let to_u = |z: C64| match target {
        Some(p) => p + z,
        None => 1.0 / z,
    };
    // dense sheet tracking around the circle
    let fine = 8 * m;
    let mut roots = Vec::with_capacity(fine + 1);
    let mut prev = start_root;
    for j in 0..=fine {
        let z = C64::from_polar(rho, th0 + 2.0 * PI * j as f64 / fine as f64);
        let mut r = uc.q(to_u(z)).sqrt();
        if (r - prev).norm() > (r + prev).norm() {
            r = -r;
        }
        roots.push(r);
        prev = r;
    }
    let closing_root = roots[fine];
    if (closing_root - start_root).norm() > 1e-6 * start_root.norm() {
        return Err(Error::Branch("√q is not single-valued around the target; wrong end point".into()));
    }
    let mut samples: Vec<Vec<C64>> = vec![Vec::with_capacity(m); f.nmax];
    let mut lim_samples = Vec::with_capacity(m);
    for j in 0..m {
        let z = C64::from_polar(rho, th0 + 2.0 * PI * j as f64 / m as f64);
        let u = to_u(z);
        let root = roots[j * 8];
        let v = f.eval(u, root)?;
        let jac = match target {
            Some(_) => C64::new(1.0, 0.0),
            None => -1.0 / (z * z),
        };
        for k in 0..f.nmax {
            samples[k].push(v[k] * jac);
        }
        lim_samples.push(root / uc.dt_du(u) * limit_factor(u));
    }
    let coeff = |data: &[C64], k: i64| -> C64 {
        // a_k with z = ρe^{i(θ₀ + θ)}
        let mut acc = C64::new(0.0, 0.0);
        for (j, d) in data.iter().enumerate() {
            let th = 2.0 * PI * j as f64 / m as f64;
            acc += d * C64::from_polar(1.0, -(k as f64) * th);
        }
        acc / m as f64 * C64::from_polar(rho.powi(-(k as i32)), -(k as f64) * th0)
    };
    let half = (m / 2) as i64;
    let mut values = Vec::with_capacity(f.nmax);
    let mut singular: f64 = 0.0;
    for data in &samples {
        let size = data.iter().map(|d| d.norm()).fold(0.0, f64::max).max(1e-300);
        for k in 1..half {
            let a = coeff(data, -k);
            singular = singular.max(a.norm() * rho.powi(-(k as i32)) / size);
        }
        // ∫_{z_e}^{0} Σ a_k z^k dz = −Σ a_k z_e^{k+1}/(k+1)
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..half {
            acc -= coeff(data, k) * start_local.powi(k as i32 + 1) / (k as f64 + 1.0);
        }
        values.push(acc);
    }
    let limit = coeff(&lim_samples, 0);
    Ok(EndPiece { values, limit, singular, closing_root })
}

/// W_{2n−1} for n = 1..=nmax by contour integration.
pub fn voros_numeric_oracle(spec: &EndpointSpec, opts: &OracleOptions) -> Result<OracleReport> {
    let spec = EndpointSpec::new(spec.equation, spec.target, spec.sign)?;
    if opts.nmax == 0 || opts.nmax > 3 {
        return Err(Error::Order(format!("oracle order n must be 1..=3, got {}", opts.nmax)));
    }
    let uc = UChart::new(spec.equation)?;
    // target location on the u-plane and the limit rule there
    let (target, kappa, factor): (Option<C64>, Option<C64>, Box<dyn Fn(C64) -> C64>) =
        match (&spec.equation, spec.target) {
            (Equation::D6(p), Target::Inf(1 | 2)) => {
                let _ = p;
                let u2 = uc.clone();
                (None, Some(C64::new(2.0, 0.0)), Box::new(move |u| u2.lambda0_of_u(u)))
            }
            (Equation::D6(_), Target::Inf(_)) => {
                let u2 = uc.clone();
                (Some(C64::new(0.0, 0.0)), Some(C64::new(-2.0, 0.0)), Box::new(move |u| u2.lambda0_of_u(u)))
            }
            (Equation::D6(p), Target::ZeroCInf) => {
                let u2 = uc.clone();
                (Some(p.c_m() / p.c_p()), Some(p.c_inf), Box::new(move |u| u2.t_of_u(u)))
            }
            (Equation::D6(p), Target::ZeroC0) => {
                let u2 = uc.clone();
                (Some(-p.c_m() / p.c_p()), Some(p.c_0), Box::new(move |u| u2.t_of_u(u)))
            }
            (Equation::D7 { c }, Target::ZeroC) => {
                let u2 = uc.clone();
                (Some(*c), Some(*c), Box::new(move |u| u2.t_of_u(u)))
            }
            (Equation::D7 { .. }, Target::Inf(_)) => (None, None, Box::new(|_| C64::new(1.0, 0.0))),
            _ => return Err(Error::Domain("end point does not belong to the equation".into())),
        };
    let special = uc.finite_special_points();
    let tps = uc.turning_points_u();
    let tau = match opts.tau {
        Some(i) => *tps.get(i).ok_or_else(|| Error::Domain(format!("turning point index {i} out of range")))?,
        None => *tps
            .iter()
            .min_by(|a, b| {
                let da = target.map_or(-a.norm(), |t| (*a - t).norm());
                let db = target.map_or(-b.norm(), |t| (*b - t).norm());
                da.partial_cmp(&db).expect("finite")
            })
            .expect("at least one turning point"),
    };
    let r_tau = 0.3 * nearest_other(&special, tau);
    let scale = special.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-3);
    let rho = match target {
        Some(t) => 0.3 * nearest_other(&special, t),
        // circle |u| = 3·scale, i.e. |v| = 1/(3·scale)
        None => 1.0 / (3.0 * scale),
    };
    let clearance = |s: C64| 0.25 * nearest_other(&special, s);
    let path = choose_path(tau, r_tau, target, rho, &special, &clearance)?;

    let f = Integrand::new(&uc, opts.nmax);
    let mut total = vec![C64::new(0.0, 0.0); opts.nmax];
    let mut quad_error = 0.0;

    // straight part, starting on the principal sheet at p
    let p = path[0];
    let mut root = uc.q(p).sqrt();
    let root_p = root;
    for w in path.windows(2) {
        let piece = Piece::Line(w[0], w[1]);
        let table = SheetTable::build(&uc, &piece, root, &special)?;
        let (v, e) = integrate_piece(&f, &piece, &table, &special, opts.rel_tol)?;
        for k in 0..opts.nmax {
            total[k] += v[k];
        }
        quad_error += e;
        root = table.end();
    }

    // end piece
    let ue = *path.last().expect("non-empty path");
    let start_local = match target {
        Some(t) => ue - t,
        None => 1.0 / ue,
    };
    let end = end_piece(&f, target, rho, start_local, root, opts.circle_nodes, &*factor)?;
    let _ = end.closing_root;
    for k in 0..opts.nmax {
        total[k] += end.values[k];
    }

    // half of the loop around τ, starting on the opposite sheet at p
    let th_p = (p - tau).arg();
    let arc = Piece::Arc(tau, r_tau, th_p, th_p + 2.0 * PI);
    let table = SheetTable::build(&uc, &arc, -root_p, &special)?;
    if (table.end() - root_p).norm() > 1e-6 * root_p.norm() {
        return Err(Error::Branch("the loop around the turning point did not change the sheet".into()));
    }
    let (v, e) = integrate_piece(&f, &arc, &table, &special, opts.rel_tol)?;
    for k in 0..opts.nmax {
        total[k] += 0.5 * v[k];
    }
    quad_error += 0.5 * e;

    let detected_sign = match kappa {
        Some(k) => {
            let plus = (end.limit - k).norm();
            let minus = (end.limit + k).norm();
            if plus.min(minus) > 1e-4 * k.norm().max(1.0) {
                return Err(Error::Branch(format!("limit {} at the target matches neither ±{k}", end.limit)));
            }
            if plus <= minus {
                1
            } else {
                -1
            }
        }
        None => spec.sign,
    };
    let flip = if detected_sign == spec.sign { 1.0 } else { -1.0 };
    let terms = total.iter().enumerate().map(|(k, v)| (k + 1, v * flip)).collect();
    Ok(OracleReport {
        series: VorosSeries { terms, provenance: Provenance::NumericOracle },
        detected_sign,
        tau_u: tau,
        path,
        end_singularity: end.singular,
        quad_error,
    })
}
