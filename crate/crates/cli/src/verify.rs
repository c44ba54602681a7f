//! The verification suites behind `p3wkb verify`. Each check prints one JSON
//! line; nothing random and no timings, so output is byte-for-byte stable.

use std::f64::consts::{FRAC_PI_4, PI};

use anyhow::{bail, Result};
use p3wkb::algebra::{lambda0_branches, BranchPoint};
use p3wkb::asymptotics::{check, Form, D6_TARGETS};
use p3wkb::borel::{
    closed_form, connection_multiplier, expected_jump_ratio, jump_ratio, laplace_oracle, summability_report,
    MultiplierExpr, Position, Side,
};
use p3wkb::geometry::{stokes_diagram, DegenerationKind, StokesDiagram, Terminus, TraceOptions};
use p3wkb::numerics::log_gamma;
use p3wkb::scaling::homogeneity_report;
use p3wkb::series::{
    backlund_apply, hamiltonian_residual, painleve_residual, riccati_residual, riccati_solution, zero_param_solution,
    zero_param_solution_shifted,
};
use p3wkb::voros::{
    duplication_check, uniqueness_check, verify_difference_equation, voros_closed_form, voros_numeric_oracle, Block,
    DifferenceKind, EndpointSpec, OracleOptions, Target,
};
use p3wkb::walls::{classify, Stratum, Wall};
use p3wkb::{c64, Equation, Error, Parameters, C64};
use serde_json::json;

use crate::commands::{emit, equation_json};
use crate::config::RunConfig;
use crate::Exit;

type Outcome = std::result::Result<String, String>;
type Check = (&'static str, fn(&RunConfig) -> Outcome);

pub const SUITES: [&str; 5] = ["series", "voros", "borel", "geometry", "asymptotics"];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(x: C64, y: C64) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}

fn d6(a: f64, b: f64, c: f64, d: f64) -> Parameters {
    Parameters::new(c64(a, b), c64(c, d)).expect("generic")
}

fn lib(e: Error) -> String {
    e.to_string()
}

pub fn run(suite: &str, cfg: &RunConfig) -> Result<()> {
    let suites: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => bail!(Exit::usage(format!("unknown suite '{s}' (all, {})", SUITES.join(", ")))),
    };
    if !(1..=3).contains(&cfg.orders.nmax) {
        bail!(Exit::usage("--nmax must be 1, 2 or 3"));
    }
    let (mut passed, mut failed) = (0usize, 0usize);
    for s in suites {
        let checks: Vec<Check> = match s {
            "series" => vec![
                ("residuals and printed low orders", series_residuals),
                ("Backlund transformations", series_backlund),
            ],
            "voros" => vec![
                ("closed form vs numeric oracle", voros_oracle),
                ("difference equations and uniqueness", voros_difference),
                ("F = G(2.) - G(.) exactly", voros_duplication),
            ],
            "borel" => vec![
                ("Legendre duplication of the sums", borel_legendre),
                ("Laplace oracle", borel_laplace),
                ("jump ratios", borel_jumps),
                ("summability and connection multipliers", borel_multipliers),
            ],
            "geometry" => vec![("Stokes figures", geometry_figures), ("wall placements", geometry_walls)],
            "asymptotics" => vec![
                ("expansions at the labelled branches", asymptotic_expansions),
                ("homogeneity", asymptotic_homogeneity),
            ],
            _ => unreachable!("checked above"),
        };
        for (name, f) in checks {
            let outcome = std::panic::catch_unwind(|| f(cfg)).unwrap_or_else(|_| Err("panicked".into()));
            let line = match &outcome {
                Ok(detail) => json!({"suite": s, "check": name, "passed": true, "detail": detail}),
                Err(why) => json!({"suite": s, "check": name, "passed": false, "detail": why}),
            };
            if outcome.is_ok() {
                passed += 1;
            } else {
                failed += 1;
            }
            emit(line);
        }
    }
    emit(json!({"suite": suite, "passed": passed, "failed": failed}));
    if failed > 0 {
        bail!(Exit::failed(format!("{failed} check(s) failed")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// series

/// Fixed regular base points: four t values, every branch with |F_λ| > 0.1.
fn base_points(eq: &Equation) -> Vec<BranchPoint> {
    let mut out = Vec::new();
    for t in [c64(1.3, 0.4), c64(-2.0, 1.7), c64(0.6, -2.2), c64(2.4, 0.9)] {
        for b in lambda0_branches(eq, t).expect("regular t") {
            if eq.f_lambda(b.lambda0, t).norm() > 0.1 {
                out.push(b);
            }
        }
    }
    out
}

fn series_residuals(cfg: &RunConfig) -> Outcome {
    let p = d6(2.0, 1.0, 3.0, 0.0);
    let eq = Equation::D6(p);
    let tol = &cfg.tolerances;
    let (mut res, mut printed) = (0.0f64, 0.0f64);
    let points = base_points(&eq);
    for b in &points {
        let zp = zero_param_solution(&eq, b, cfg.orders.eta_order, cfg.orders.jet_order).map_err(lib)?;
        for l in (1..=cfg.orders.eta_order as i32).step_by(2) {
            ensure(zp.lambda.at(-l).is_zero(), || format!("lambda_{l} is not exactly zero"))?;
        }
        for (_, v) in painleve_residual(&zp.params, &zp.lambda, &zp.chart).map_err(lib)?.values() {
            res = res.max(v.norm());
        }
        let r = riccati_solution(&zp, 1, None, cfg.orders.eta_order).map_err(lib)?;
        for (k, v) in riccati_residual(&zp, &r).map_err(lib)?.values() {
            // the last two orders lack the terms they would need from R
            if k >= 2 - cfg.orders.eta_order as i32 {
                res = res.max(v.norm());
            }
        }
        let ch = &zp.chart;
        let t = b.t;
        let l0 = zp.lambda.at(0);
        let (l, dl, ddl) = (l0.value(), ch.d(l0).value(), ch.d(&ch.d(l0)).value());
        let l2 = (ddl - dl * dl / l + dl / t) / zp.delta.value();
        printed = printed.max(rel(zp.lambda.at(-2).value(), l2));
        let rm1 = r.at(1);
        let r0 = -ch.d(rm1).value() / (2.0 * rm1.value()) + dl / l - 1.0 / (2.0 * t);
        printed = printed.max(rel(r.at(0).value(), r0));
        let r0v = r.at(0).value();
        let r1 = (-r0v * r0v - ch.d(r.at(0)).value()
            + (2.0 * dl / l - 1.0 / t) * r0v
            + (6.0 * l / (t * t) - 2.0 * p.c_inf / (t * t) - 2.0 / (l * l * l)) * l2
            - (dl / l) * (dl / l))
            / (2.0 * rm1.value());
        printed = printed.max(rel(r.at(-1).value(), r1));
    }
    ensure(res < tol.residual, || format!("residual {res:.3e}"))?;
    ensure(printed < tol.printed, || format!("low-order formulas off by {printed:.3e}"))?;
    Ok(format!("{} base points, residual {res:.1e}, low orders {printed:.1e}, odd lambda exactly 0", points.len()))
}

fn series_backlund(cfg: &RunConfig) -> Outcome {
    let eq = Equation::D6(d6(2.0, 1.0, 3.0, 0.0));
    let jet = cfg.orders.jet_order.max(14);
    let (mut ham, mut lam) = (0.0f64, 0.0f64);
    for t in [c64(1.3, 0.4), c64(-2.0, 1.7), c64(0.6, -2.2)] {
        for b in lambda0_branches(&eq, t).map_err(lib)? {
            let zp = zero_param_solution(&eq, &b, cfg.orders.eta_order, jet).map_err(lib)?;
            for j in [1u8, 2] {
                let (bl, bm, shifted) = backlund_apply(j, &zp).map_err(lib)?;
                let (h1, h2) = hamiltonian_residual(&shifted, &bl, &bm, &zp.chart).map_err(lib)?;
                for (_, v) in h1.values().into_iter().chain(h2.values()) {
                    ham = ham.max(v.norm());
                }
                let nb = BranchPoint { lambda0: bl.at(0).value(), ..b };
                let other = zero_param_solution_shifted(&shifted, &nb, 4, jet).map_err(lib)?;
                for k in 0..=4 {
                    let (a, c) = (bl.at(-k).value(), other.lambda.at(-k).value());
                    lam = lam.max((a - c).norm() / (1.0 + c.norm()));
                }
            }
        }
    }
    let tol = cfg.tolerances.residual;
    ensure(ham < tol, || format!("Hamiltonian residual {ham:.3e}"))?;
    ensure(lam < tol, || format!("transformed lambda differs by {lam:.3e}"))?;
    Ok(format!("Hamiltonian residual {ham:.1e}, lambda through eta^-4 {lam:.1e}"))
}

// ---------------------------------------------------------------------------
// voros

/// One parameter in the middle of each chamber.
pub fn chamber_representatives() -> Vec<Parameters> {
    (0..8)
        .map(|k| {
            let th = (k as f64 + 0.5) * FRAC_PI_4;
            d6(2.0 * th.cos(), 0.7, 2.0 * th.sin(), -0.4)
        })
        .collect()
}

fn voros_oracle(cfg: &RunConfig) -> Outcome {
    let mut specs = Vec::new();
    for p in chamber_representatives() {
        for target in [Target::Inf(3), Target::ZeroCInf, Target::ZeroC0] {
            for sign in [1, -1] {
                specs.push(EndpointSpec::new(Equation::D6(p), target, sign).map_err(lib)?);
            }
        }
    }
    for c in [c64(2.0, 1.0), c64(-2.0, 1.0)] {
        for sign in [1, -1] {
            specs.push(EndpointSpec::new(Equation::d7(c).map_err(lib)?, Target::ZeroC, sign).map_err(lib)?);
        }
    }
    let nmax = cfg.orders.nmax;
    let mut worst = 0.0f64;
    for spec in &specs {
        let o = voros_numeric_oracle(spec, &OracleOptions { nmax, ..Default::default() }).map_err(lib)?;
        let c = voros_closed_form(spec, nmax).map_err(lib)?;
        for n in 1..=nmax {
            let e = rel(o.series.coeff(n).expect("computed"), c.coeff(n).expect("computed"));
            worst = worst.max(e);
            ensure(e < cfg.tolerances.voros, || {
                format!("{} {}{:+} n = {n}: rel err {e:.3e}", equation_json(&spec.equation), spec.target, spec.sign)
            })?;
        }
    }
    Ok(format!("{} end points, n <= {nmax}, worst rel err {worst:.1e}", specs.len()))
}

fn voros_difference(_: &RunConfig) -> Outcome {
    let eq = Equation::d7(c64(1.0, 0.0)).map_err(lib)?;
    let mut depth = 0;
    for kind in [DifferenceKind::F, DifferenceKind::G, DifferenceKind::GBackward] {
        let r = verify_difference_equation(kind, 10, &eq).map_err(lib)?;
        ensure(r.ok(), || format!("{}: {:?}", r.kind, r.first_mismatch))?;
        depth = r.depth;
    }
    for block in [Block::F, Block::G] {
        ensure(uniqueness_check(block, 10).is_none(), || format!("{block:?} reconstruction differs"))?;
    }
    Ok(format!("exact through z^-{depth}; reconstruction unique"))
}

fn voros_duplication(_: &RunConfig) -> Outcome {
    match duplication_check(20) {
        None => Ok("exact for n <= 20".into()),
        Some(n) => Err(format!("mismatch at n = {n}")),
    }
}

// ---------------------------------------------------------------------------
// borel

fn borel_legendre(cfg: &RunConfig) -> Outcome {
    let mut worst = 0.0f64;
    let mod_2pi_i = |d: C64| {
        let k = (d.im / (2.0 * PI)).round();
        d - c64(0.0, 2.0 * PI * k)
    };
    for z in [c64(0.7, 0.0), c64(3.0, 2.0), c64(12.0, -5.0), c64(1.5, 8.0), c64(40.0, 1.0)] {
        let l = log_gamma(z).map_err(lib)? + log_gamma(z + 0.5).map_err(lib)?;
        let r = (1.0 - 2.0 * z) * 2f64.ln() + 0.5 * PI.ln() + log_gamma(2.0 * z).map_err(lib)?;
        worst = worst.max(mod_2pi_i(l - r).norm() / r.norm().max(1.0));
        for side in [Side::Minus, Side::Plus] {
            let f = closed_form(Block::F, z, side).map_err(lib)?;
            let g = closed_form(Block::G, 2.0 * z, side).map_err(lib)? - closed_form(Block::G, z, side).map_err(lib)?;
            worst = worst.max(mod_2pi_i(f - g).norm() / f.norm().max(1.0));
        }
    }
    ensure(worst < cfg.tolerances.legendre, || format!("off by {worst:.3e}"))?;
    Ok(format!("5 points, both sides, {worst:.1e}"))
}

fn borel_laplace(cfg: &RunConfig) -> Outcome {
    let mut worst = 0.0f64;
    for z in [c64(3.0, 0.0), c64(7.0, 2.0), c64(1.5, -0.7), c64(0.8, 4.0), c64(12.0, -5.0)] {
        for kind in [Block::F, Block::G] {
            let l = laplace_oracle(kind, z, 1.0).map_err(lib)?;
            let s = closed_form(kind, z, Side::Minus).map_err(lib)?;
            worst = worst.max((l.value - s).norm());
        }
    }
    ensure(worst < cfg.tolerances.laplace, || format!("off by {worst:.3e}"))?;
    Ok(format!("5 points, F and G, {worst:.1e}"))
}

fn borel_jumps(cfg: &RunConfig) -> Outcome {
    let mut worst = 0.0f64;
    for z in [c64(0.1, 0.8), c64(0.3, 2.5), c64(0.05, 5.0), c64(-0.2, 9.0), c64(0.01, 1.3)] {
        for kind in [Block::F, Block::G] {
            let a = jump_ratio(kind, z, 1.0).map_err(lib)?;
            worst = worst.max(rel(a, expected_jump_ratio(kind, z, 1.0)));
        }
    }
    ensure(worst < cfg.tolerances.jump, || format!("off by {worst:.3e}"))?;
    Ok(format!("5 points near the imaginary axis, {worst:.1e}"))
}

fn borel_multipliers(_: &RunConfig) -> Outcome {
    for p in chamber_representatives() {
        ensure(summability_report(&p).all(), || format!("not summable inside a chamber: {p:?}"))?;
    }
    let p = d6(2.0, 0.0, 2.0, -1.0);
    ensure(!summability_report(&p).f_cm, || "F(c_m) summable on W2".into())?;
    let eta = 1.7;
    let ipi = c64(0.0, PI * eta);
    let cases = [
        (Wall::W2, Position::InsideTriangle, MultiplierExpr::OnePlusExpDiff, 1.0 + (ipi * (p.c_inf - p.c_0)).exp()),
        (Wall::W2, Position::OutsideTriangle, MultiplierExpr::One, c64(1.0, 0.0)),
        (Wall::W4, Position::OutsideTriangle, MultiplierExpr::OnePlusExpSumPm, 1.0 + (ipi * (p.c_inf + p.c_0)).exp()),
        (Wall::W3, Position::OutsideLoop, MultiplierExpr::One, c64(1.0, 0.0)),
    ];
    for (w, pos, expr, value) in cases {
        let m = connection_multiplier(w, pos, &p, eta).map_err(lib)?;
        ensure(m.expression == expr && rel(m.value, value) < 1e-14, || format!("{w} {pos}: {m:?}"))?;
    }
    for w in [Wall::W1, Wall::W3, Wall::W5, Wall::W7] {
        match connection_multiplier(w, Position::InsideLoop, &p, eta) {
            Err(Error::Unsupported(_)) => {}
            other => return Err(format!("{w} inside the loop gave {other:?}")),
        }
    }
    Ok("chambers summable, W2 jump, multipliers on W2/W3/W4, inside-loop refused".into())
}

// ---------------------------------------------------------------------------
// geometry

#[derive(Clone, Copy, Debug, PartialEq)]
enum Verdict {
    None,
    Triangle,
    Loop(&'static str),
}

fn figures() -> Vec<(Equation, Verdict)> {
    use Verdict::*;
    let e = |a, b, c, d| Equation::D6(d6(a, b, c, d));
    vec![
        (e(2.0, 1.0, 3.0, 0.0), None),
        (e(2.0, 1.0, 0.0, 3.0), Loop("0_c0")),
        (e(1.9, 0.0, 2.0, -1.0), None),
        (e(2.0, 0.0, 2.0, -1.0), Triangle),
        (e(2.1, 0.0, 2.0, -1.0), None),
        (e(3.0, 0.0, 3.0, -1.0), Triangle),
        (e(0.0, 3.0, 1.0, -2.0), Loop("0_cinf")),
        (e(5.0, 1.0, 0.0, 2.0), Loop("0_c0")),
        (e(-2.1, 1.0, 2.0, 0.5), None),
        (e(-2.0, 1.0, 2.0, 0.5), Triangle),
        (e(-1.9, 1.0, 2.0, 0.5), None),
        (e(-0.2, 1.0, 3.0, 0.5), None),
        (e(0.0, 1.0, 3.0, 0.5), Loop("0_cinf")),
        (e(0.2, 1.0, 3.0, 0.5), None),
        (e(2.0, 1.0, 2.0, 0.5), Triangle),
        (e(1.0, 1.0, 3.0, 0.5), None),
        (e(-1.0, 1.0, 3.0, 0.5), None),
        (e(-3.0, 1.0, 1.0, 0.5), None),
        (e(-3.0, 1.0, 0.0, 0.5), Loop("0_c0")),
        (e(-3.0, 1.0, -1.0, 0.5), None),
        (e(-2.0, 1.0, -2.0, 0.5), Triangle),
        (Equation::D7 { c: c64(0.2, 1.0) }, None),
        (Equation::D7 { c: c64(0.0, 1.0) }, Loop("0_c")),
        (Equation::D7 { c: c64(-0.2, 1.0) }, None),
    ]
}

fn verdict_matches(d: &StokesDiagram, want: Verdict) -> bool {
    match (d.degenerations.as_slice(), want) {
        ([], Verdict::None) => true,
        ([r], Verdict::Triangle) => r.kind == DegenerationKind::Triangle,
        ([r], Verdict::Loop(pole)) => {
            r.kind == DegenerationKind::Loop && r.participants.get(1).map(String::as_str) == Some(pole)
        }
        _ => false,
    }
}

fn geometry_figures(cfg: &RunConfig) -> Outcome {
    let opts = TraceOptions { eps_deg: cfg.tolerances.eps_deg, ..TraceOptions::default() };
    let figs = figures();
    for (eq, want) in &figs {
        let d = stokes_diagram(eq, &opts).map_err(lib)?;
        let n = if matches!(eq, Equation::D6(_)) { 16 } else { 6 };
        let label = equation_json(eq);
        ensure(d.curves.len() == n, || format!("{label}: {} curves", d.curves.len()))?;
        ensure(d.curves.iter().all(|c| !matches!(c.terminus, Terminus::Failed(_))), || {
            format!("{label}: trace failed")
        })?;
        ensure(verdict_matches(&d, *want), || format!("{label}: got {:?}, expected {want:?}", d.degenerations))?;
    }
    Ok(format!("{} figures: curve counts, every curve finished, verdicts", figs.len()))
}

fn geometry_walls(_: &RunConfig) -> Outcome {
    for (p, w) in [
        (d6(2.0, 0.0, 2.0, -1.0), Wall::W2),
        (d6(0.0, 1.0, 3.0, 0.5), Wall::W3),
        (d6(-2.0, 1.0, 2.0, 0.5), Wall::W4),
        (d6(-3.0, 1.0, 0.0, 0.5), Wall::W5),
    ] {
        let s = classify(&p).map_err(lib)?;
        ensure(s == Stratum::Wall(w), || format!("{p:?} placed in {s}, expected {w}"))?;
        ensure(classify(&p.swapped()).map_err(lib)? == s.swapped(), || {
            format!("{w}: exchange c_inf <-> c_0 inconsistent")
        })?;
    }
    for p in chamber_representatives() {
        let s = classify(&p).map_err(lib)?;
        ensure(matches!(s, Stratum::Chamber(_)), || format!("{p:?} placed in {s}"))?;
        let d = stokes_diagram(&Equation::D6(p), &TraceOptions::default()).map_err(lib)?;
        ensure(d.degenerations.is_empty(), || format!("degeneration inside {s}"))?;
    }
    Ok("W2/W3/W4/W5 placements, exchange symmetry, 8 chambers without degeneration".into())
}

// ---------------------------------------------------------------------------
// asymptotics

fn asymptotic_expansions(_: &RunConfig) -> Outcome {
    let (mut n, mut worst) = (0, 0.0f64);
    for p in [d6(2.0, 1.0, 3.0, 0.0), d6(1.5, -0.5, -0.7, 1.2)] {
        for target in D6_TARGETS {
            for modulus in [1e3, 1e4] {
                let r = match target {
                    Target::Inf(_) => modulus,
                    _ => 1.0 / modulus,
                };
                for th in [0.3, 1.9, -2.4] {
                    for sign in [1, -1] {
                        let c = check(&p, target, sign, C64::from_polar(r, th), 10.0, Form::Printed).map_err(lib)?;
                        let (q, e) = c.worst();
                        worst = worst.max(e / c.tolerance);
                        ensure(c.passed(), || {
                            format!(
                                "{target}{sign:+} |t| = {r:e} arg = {th}: {q} rel err {e:.3e} >= {:.3e}",
                                c.tolerance
                            )
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} checks at |t| in {{1e3, 1e4}} (1e-3, 1e-4 at t = 0), worst err/tol {worst:.2}"))
}

fn asymptotic_homogeneity(cfg: &RunConfig) -> Outcome {
    let mut worst = 0.0f64;
    for p in [d6(2.0, 1.0, 3.0, 0.0), d6(1.5, -0.5, -0.7, 1.2)] {
        for t in [c64(1.3, 0.4), c64(-2.0, 1.7)] {
            for r in [2.0, 1.0 / 3.0] {
                for row in homogeneity_report(&p, t, 10.0, r).map_err(lib)? {
                    worst = worst.max(row.rel_err);
                    ensure(row.rel_err < cfg.tolerances.homogeneity, || {
                        format!("{} at r = {r}: {:.3e}", row.quantity, row.rel_err)
                    })?;
                }
            }
        }
    }
    Ok(format!("every tabulated degree, {worst:.1e}"))
}
