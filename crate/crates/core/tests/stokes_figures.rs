mod common;

use common::figures::{d6, figures, verdict, Verdict};
use p3wkb::algebra::UChart;
use p3wkb::geometry::*;
use p3wkb::{Equation, C64};

#[test]
fn printed_figures_are_reproduced() {
    let opts = TraceOptions::default();
    for (eq, want) in figures() {
        let d = stokes_diagram(&eq, &opts).unwrap();
        let expected_curves = if matches!(eq, Equation::D6(_)) { 16 } else { 6 };
        assert_eq!(d.curves.len(), expected_curves, "{eq:?}");
        for c in &d.curves {
            assert!(!matches!(c.terminus, Terminus::Failed(_)), "{eq:?}: {}", c.terminus);
            assert!(c.im_defect < opts.eps_trace * (1.0 + c.arc_length));
        }
        assert_eq!(verdict(&d), want, "{eq:?}");
        if want == Verdict::Triangle {
            assert_eq!(d.connections(), vec![(0, 1), (0, 2), (1, 2)]);
        }
    }
}

#[test]
fn connections_are_found_from_both_ends() {
    for eq in [d6(2.0, 0.0, 2.0, -1.0), d6(-2.0, 1.0, 2.0, 0.5), d6(-2.0, 1.0, -2.0, 0.5)] {
        let d = stokes_diagram(&eq, &TraceOptions::default()).unwrap();
        let mut directed: Vec<(usize, usize)> = d
            .curves
            .iter()
            .filter_map(|c| match (c.origin, &c.terminus) {
                (Origin::Turning(i), Terminus::TurningPoint(j)) if i != *j => Some((i, *j)),
                _ => None,
            })
            .collect();
        directed.sort();
        let mut reversed: Vec<(usize, usize)> = directed.iter().map(|(a, b)| (*b, *a)).collect();
        reversed.sort();
        assert_eq!(directed, reversed);
        // each connection has Φ = 2π|c_m| or 2π|c_p|, the |residue| on the wall
        for c in d.curves.iter().filter(|c| matches!(c.terminus, Terminus::TurningPoint(_))) {
            let Equation::D6(p) = eq else { unreachable!() };
            let want = 2.0 * std::f64::consts::PI * p.c_m().norm().min(p.c_p().norm());
            assert!((c.phi.re - want).abs() < 1e-8, "{} vs {want}", c.phi);
        }
    }
}

#[test]
fn swapping_parameters_only_relabels_poles() {
    let eq = d6(2.0, 1.0, 3.0, 0.0);
    let Equation::D6(p) = eq else { unreachable!() };
    let a = stokes_diagram(&eq, &TraceOptions::default()).unwrap();
    let b = stokes_diagram(&Equation::D6(p.swapped()), &TraceOptions::default()).unwrap();
    let relabel = |s: &String| match s.as_str() {
        "pole:0_c0" => "pole:0_cinf".to_string(),
        "pole:0_cinf" => "pole:0_c0".to_string(),
        _ => s.clone(),
    };
    let mut swapped: Vec<String> = a.terminus_multiset().iter().map(relabel).collect();
    swapped.sort();
    assert_eq!(swapped, b.terminus_multiset());
    for (x, y) in a.turning_points_u.iter().zip(&b.turning_points_u) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn phi_difference_along_a_stokes_curve_is_real() {
    let eq = d6(2.0, 1.0, 3.0, 0.0);
    let Equation::D6(p) = eq else { unreachable!() };
    let chart = UChart::new(eq).unwrap();
    let d = stokes_diagram(&eq, &TraceOptions::default()).unwrap();
    let c = &d.curves[0];
    let mut path = PhiPath::new(p);
    let mut s_prev: Option<C64> = None;
    let mut first: Option<C64> = None;
    for u in c.points.iter().skip(2).take(120) {
        let q = chart.q(*u);
        let mut s = q.sqrt();
        if let Some(sp) = s_prev {
            if (s - sp).norm() > (s + sp).norm() {
                s = -s;
            }
        }
        s_prev = Some(s);
        let r = s / chart.dt_du(*u);
        let val = path.push(chart.t_of_u(*u), chart.lambda0_of_u(*u), r).unwrap();
        let f = *first.get_or_insert(val);
        assert!((val - f).im.abs() < 1e-7 * (1.0 + (val - f).norm()), "{}", val - f);
    }
}

#[test]
fn json_round_trip_and_svg() {
    let d = stokes_diagram(&d6(2.0, 1.0, 0.0, 3.0), &TraceOptions::default()).unwrap();
    let json = render_json(&d).unwrap();
    let back = parse_json(&json).unwrap();
    assert_eq!(back, d);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["parameters", "turning_points_u", "curves", "degenerations"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["parameters"]["c_inf"].is_array());
    assert!(v["curves"][0]["terminus"].is_string());

    let svg = render_svg(&d).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg, render_svg(&d).unwrap());

    let empty = StokesDiagram { curves: vec![], degenerations: vec![], ..d };
    let svg = render_svg(&empty).unwrap();
    assert!(svg.contains("</svg>") && !svg.contains("stroke-width=\"1.2\""));
}

#[test]
fn terminus_multisets_match_an_independent_tracer() {
    for (eq, _) in figures() {
        let d = stokes_diagram(&eq, &TraceOptions::default()).unwrap();
        assert_eq!(d.terminus_multiset(), common::trace::terminus_multiset(&eq), "{eq:?}");
    }
}
