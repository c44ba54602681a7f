//! SVG and JSON output for Stokes diagrams.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Origin, StokesDiagram};
use crate::algebra::UChart;
use crate::error::{Error, Result};
use crate::numerics::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Svg,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            _ => Err(Error::Domain(format!("unknown format '{s}'"))),
        }
    }
}

pub fn render(d: &StokesDiagram, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Svg => render_svg(d)?.into_bytes(),
        Format::Json => render_json(d)?.into_bytes(),
    })
}

pub fn render_json(d: &StokesDiagram) -> Result<String> {
    serde_json::to_string(d).map_err(|e| Error::Internal(e.to_string()))
}

pub fn parse_json(s: &str) -> Result<StokesDiagram> {
    serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad diagram JSON: {e}")))
}

const SIZE: f64 = 800.0;

fn colour(o: Origin) -> &'static str {
    match o {
        Origin::Turning(0) => "#1f77b4",
        Origin::Turning(1) => "#d62728",
        Origin::Turning(2) => "#2ca02c",
        Origin::Turning(_) => "#9467bd",
        Origin::SimplePole => "#ff7f0e",
    }
}

/// 800×800 picture centred on the centroid of the turning points.
pub fn render_svg(d: &StokesDiagram) -> Result<String> {
    let poles: Vec<C64> = match d.parameters.equation().and_then(UChart::new) {
        Ok(chart) => chart.poles().iter().filter_map(|p| p.u).collect(),
        Err(_) => d.double_poles_u.clone(),
    };
    let n = d.turning_points_u.len().max(1) as f64;
    let centre = d.turning_points_u.iter().sum::<C64>() / n;
    let reach = d
        .turning_points_u
        .iter()
        .chain(poles.iter())
        .chain(std::iter::once(&d.simple_pole_u))
        .map(|u| (u - centre).norm())
        .fold(0.0, f64::max);
    let half = 1.5 * reach.max(0.5);
    let map = |u: C64| {
        let x = SIZE / 2.0 + (u.re - centre.re) / half * SIZE / 2.0;
        let y = SIZE / 2.0 - (u.im - centre.im) / half * SIZE / 2.0;
        (x, y)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
    for c in &d.curves {
        let mut path = String::new();
        let mut pen_down = false;
        for u in &c.points {
            // far-away samples only stretch the path; lift the pen
            if (u - centre).norm() > 20.0 * half {
                pen_down = false;
                continue;
            }
            let (x, y) = map(*u);
            let _ = write!(path, "{}{x:.2},{y:.2} ", if pen_down { "L" } else { "M" });
            pen_down = true;
        }
        if !path.is_empty() {
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.2"><title>{} ray {} → {}</title></path>"#,
                path.trim_end(),
                colour(c.origin),
                c.origin,
                c.ray,
                c.terminus
            );
        }
    }
    for u in &poles {
        let (x, y) = map(*u);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
    }
    let (x, y) = map(d.simple_pole_u);
    let _ = writeln!(
        s,
        r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="black"/>"#,
        x,
        y - 5.0,
        x - 5.0,
        y + 4.0,
        x + 5.0,
        y + 4.0
    );
    for u in &d.turning_points_u {
        let (x, y) = map(*u);
        let _ = writeln!(
            s,
            r#"<path d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="black" stroke-width="2"/>"#,
            x - 5.0,
            y - 5.0,
            x + 5.0,
            y + 5.0,
            x - 5.0,
            y + 5.0,
            x + 5.0,
            y - 5.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
