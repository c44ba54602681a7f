use anyhow::{bail, Context, Result};
use p3wkb::borel::{borel_sum, connection_multiplier, laplace_oracle, summability_report, Position, Side};
use p3wkb::geometry::{render, stokes_diagram, DegenerationKind, Format, StokesDiagram, Terminus, TraceOptions};
use p3wkb::voros::{voros_closed_form, voros_numeric_oracle, Block, EndpointSpec, OracleOptions, Target};
use p3wkb::walls::{classify, jumping_coefficients, Jumping, Stratum};
use p3wkb::{Equation, Parameters, C64};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::Exit;

pub fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn emit(v: Value) {
    println!("{v}");
}

pub fn equation_json(eq: &Equation) -> Value {
    match eq {
        Equation::D6(p) => json!({"type": "D6", "c_inf": cjson(p.c_inf), "c_0": cjson(p.c_0)}),
        Equation::D7 { c } => json!({"type": "D7", "c": cjson(*c)}),
    }
}

pub fn jumping_name(j: Jumping) -> &'static str {
    match j {
        Jumping::FCp => "F(c_p)",
        Jumping::FCm => "F(c_m)",
        Jumping::GCInf => "G(c_inf)",
        Jumping::GC0 => "G(c_0)",
    }
}

/// One-line description of what degenerated.
pub fn degeneration_summary(d: &StokesDiagram) -> String {
    if d.degenerations.is_empty() {
        return "no degeneration".into();
    }
    let parts: Vec<String> = d
        .degenerations
        .iter()
        .map(|r| match r.kind {
            DegenerationKind::Triangle => format!("triangle-type ({})", r.participants.join(", ")),
            DegenerationKind::Loop => format!("loop-type ({})", r.participants.join(", ")),
        })
        .collect();
    parts.join("; ")
}

pub fn geometry(cfg: &RunConfig) -> Result<()> {
    let eq = cfg.equation()?;
    let format = match &cfg.out {
        None => None,
        Some(path) => match path.extension().and_then(|e| e.to_str()) {
            Some(ext @ ("svg" | "json")) => Some(ext.parse::<Format>()?),
            _ => bail!(Exit::usage(format!("--out must end in .svg or .json: {}", path.display()))),
        },
    };
    let opts = TraceOptions { eps_deg: cfg.tolerances.eps_deg, ..TraceOptions::default() };
    let d = stokes_diagram(&eq, &opts)?;
    if let (Some(path), Some(format)) = (&cfg.out, format) {
        std::fs::write(path, render(&d, format)?).with_context(|| format!("writing {}", path.display()))?;
    }
    let failed: Vec<String> = d
        .curves
        .iter()
        .filter_map(|c| match &c.terminus {
            Terminus::Failed(why) => Some(format!("curve {} ray {}: {why}", c.origin, c.ray)),
            _ => None,
        })
        .collect();
    let degenerations: Vec<Value> = d
        .degenerations
        .iter()
        .map(|r| json!({"kind": r.kind, "participants": r.participants, "diagnostic": r.diagnostic}))
        .collect();
    emit(json!({
        "command": "geometry",
        "equation": equation_json(&eq),
        "curves": d.curves.len(),
        "termini": d.terminus_multiset(),
        "degenerations": degenerations,
        "summary": degeneration_summary(&d),
        "out": cfg.out.as_ref().map(|p| p.display().to_string()),
    }));
    if !failed.is_empty() {
        for f in &failed {
            eprintln!("{f}");
        }
        bail!(Exit::failed(format!("{} Stokes curve(s) could not be traced", failed.len())));
    }
    Ok(())
}

/// Highest n whose oracle value is held to the tolerance.
const GATED_N: usize = 2;

/// `d6:inf3:+` → (is D7, target, sign).
pub fn parse_endpoint(s: &str) -> Result<(bool, Target, i8)> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [kind, target, sign] = parts.as_slice() else {
        bail!(Exit::usage(format!("end point '{s}' is not of the form d6:inf3:+")));
    };
    let d7 = match kind.to_ascii_lowercase().as_str() {
        "d6" => false,
        "d7" => true,
        _ => bail!(Exit::usage(format!("unknown equation '{kind}' in '{s}'"))),
    };
    let target: Target = target.parse()?;
    let sign = match *sign {
        "+" => 1,
        "-" => -1,
        _ => bail!(Exit::usage(format!("sign must be + or -, got '{sign}'"))),
    };
    Ok((d7, target, sign))
}

pub fn voros(cfg: &RunConfig, endpoint: &str, n: usize, oracle: bool) -> Result<()> {
    let (d7, target, sign) = parse_endpoint(endpoint)?;
    let eq = cfg.equation()?;
    if d7 != matches!(eq, Equation::D7 { .. }) {
        bail!(Exit::usage(format!("end point '{endpoint}' does not match the parameters given")));
    }
    if n == 0 {
        bail!(Exit::usage("--n must be at least 1"));
    }
    let spec = EndpointSpec::new(eq, target, sign)?;
    let closed = voros_closed_form(&spec, n)?;
    let numeric = if oracle {
        let opts = OracleOptions { nmax: n.min(3), ..OracleOptions::default() };
        Some(voros_numeric_oracle(&spec, &opts)?)
    } else {
        None
    };
    let mut worst = 0.0f64;
    for (k, w) in &closed.terms {
        let mut line = json!({
            "command": "voros",
            "endpoint": endpoint,
            "equation": equation_json(&eq),
            "n": k,
            "coefficient": cjson(*w),
        });
        if let Some(report) = &numeric {
            if let Some(o) = report.series.coeff(*k) {
                let rel = (o - w).norm() / w.norm().max(f64::MIN_POSITIVE);
                // the quadrature loses accuracy at n = 3; report it, don't gate on it
                let gated = *k <= GATED_N;
                if gated {
                    worst = worst.max(rel);
                }
                line["oracle"] = cjson(o);
                line["rel_err"] = json!(rel);
                line["quad_error"] = json!(report.quad_error);
                line["gated"] = json!(gated);
            }
        }
        emit(line);
    }
    if worst >= cfg.tolerances.voros {
        bail!(Exit::failed(format!("oracle disagrees: rel err {worst:.3e} ≥ {:e}", cfg.tolerances.voros)));
    }
    Ok(())
}

pub fn borel(cfg: &RunConfig, kind: &str, c: C64, side: &str, oracle: bool) -> Result<()> {
    let block: Block = kind.parse()?;
    let side: Side = side.parse()?;
    let s = borel_sum(block, c, cfg.eta, side)?;
    let mut line = json!({
        "command": "borel",
        "kind": kind.to_ascii_uppercase(),
        "c": cjson(c),
        "eta": cfg.eta,
        "side": side.to_string(),
        "z": cjson(s.z),
        "summable": s.summable,
        "value": s.value.map(cjson),
    });
    let mut err = None;
    if oracle {
        if side != Side::Minus || !s.summable || s.z.re <= 0.0 {
            bail!(Exit::unsupported("the Laplace oracle covers the '-' side with Re(c eta) > 0 only"));
        }
        let l = laplace_oracle(block, c, cfg.eta)?;
        let e = (l.value - s.value.expect("summable when Re z > 0")).norm();
        line["oracle"] = cjson(l.value);
        line["abs_err"] = json!(e);
        line["quad_error"] = json!(l.quad_error);
        line["tail_bound"] = json!(l.tail_bound);
        err = Some(e);
    }
    emit(line);
    if let Some(e) = err {
        if e >= cfg.tolerances.laplace {
            bail!(Exit::failed(format!("Laplace oracle differs by {e:.3e}")));
        }
    }
    Ok(())
}

fn candidate_positions(s: Stratum) -> Vec<Position> {
    match s {
        // even-numbered walls carry a triangle, odd-numbered ones a loop
        Stratum::Wall(w) if w.index() % 2 == 1 => vec![Position::InsideTriangle, Position::OutsideTriangle],
        Stratum::Wall(_) => vec![Position::InsideLoop, Position::OutsideLoop],
        _ => vec![],
    }
}

pub fn walls(cfg: &RunConfig, position: Option<&str>) -> Result<()> {
    let p: Parameters = cfg.parameters()?;
    let s = classify(&p)?;
    let sm = summability_report(&p);
    emit(json!({
        "command": "walls",
        "c_inf": cjson(p.c_inf),
        "c_0": cjson(p.c_0),
        "stratum": s.to_string(),
        "jumping": jumping_coefficients(s).into_iter().map(jumping_name).collect::<Vec<_>>(),
        "summable": {"F(c_p)": sm.f_cp, "F(c_m)": sm.f_cm, "G(c_inf)": sm.g_cinf, "G(c_0)": sm.g_c0},
    }));
    let Stratum::Wall(w) = s else {
        if position.is_some() {
            bail!(Exit::usage(format!("--position needs parameters on a wall; these lie in {s}")));
        }
        return Ok(());
    };
    let multiplier = |pos: Position| {
        connection_multiplier(w, pos, &p, cfg.eta).map(|m| {
            json!({
                "command": "walls",
                "wall": w.to_string(),
                "position": pos.to_string(),
                "eta": cfg.eta,
                "expression": m.expression.to_string(),
                "value": cjson(m.value),
                "inverse_value": cjson(m.inverse_value()),
            })
        })
    };
    match position {
        Some(pos) => emit(multiplier(pos.parse()?)?),
        None => {
            for pos in candidate_positions(s) {
                match multiplier(pos) {
                    Ok(v) => emit(v),
                    Err(p3wkb::Error::Unsupported(why)) => emit(json!({
                        "command": "walls",
                        "wall": w.to_string(),
                        "position": pos.to_string(),
                        "unsupported": why,
                    })),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(())
}
