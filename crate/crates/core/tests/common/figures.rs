//! The printed Stokes-geometry examples with their degeneration verdicts.

use p3wkb::algebra::Parameters;
use p3wkb::geometry::{DegenerationKind, StokesDiagram};
use p3wkb::{c64, Equation};

#[derive(Debug, PartialEq)]
pub enum Verdict {
    None,
    Triangle,
    Loop(&'static str),
}

pub fn d6(a: f64, b: f64, c: f64, d: f64) -> Equation {
    Equation::D6(Parameters::new(c64(a, b), c64(c, d)).unwrap())
}

pub fn figures() -> Vec<(Equation, Verdict)> {
    use Verdict::*;
    vec![
        (d6(2.0, 1.0, 3.0, 0.0), None),
        (d6(2.0, 1.0, 0.0, 3.0), Loop("0_c0")),
        (d6(1.9, 0.0, 2.0, -1.0), None),
        (d6(2.0, 0.0, 2.0, -1.0), Triangle),
        (d6(2.1, 0.0, 2.0, -1.0), None),
        (d6(3.0, 0.0, 3.0, -1.0), Triangle),
        (d6(0.0, 3.0, 1.0, -2.0), Loop("0_cinf")),
        (d6(5.0, 1.0, 0.0, 2.0), Loop("0_c0")),
        (d6(-2.1, 1.0, 2.0, 0.5), None),
        (d6(-2.0, 1.0, 2.0, 0.5), Triangle),
        (d6(-1.9, 1.0, 2.0, 0.5), None),
        (d6(-0.2, 1.0, 3.0, 0.5), None),
        (d6(0.0, 1.0, 3.0, 0.5), Loop("0_cinf")),
        (d6(0.2, 1.0, 3.0, 0.5), None),
        (d6(2.0, 1.0, 2.0, 0.5), Triangle),
        (d6(1.0, 1.0, 3.0, 0.5), None),
        (d6(-1.0, 1.0, 3.0, 0.5), None),
        (d6(-3.0, 1.0, 1.0, 0.5), None),
        (d6(-3.0, 1.0, 0.0, 0.5), Loop("0_c0")),
        (d6(-3.0, 1.0, -1.0, 0.5), None),
        (d6(-2.0, 1.0, -2.0, 0.5), Triangle),
        (Equation::D7 { c: c64(0.2, 1.0) }, None),
        (Equation::D7 { c: c64(0.0, 1.0) }, Loop("0_c")),
        (Equation::D7 { c: c64(-0.2, 1.0) }, None),
    ]
}

pub fn verdict(d: &StokesDiagram) -> Verdict {
    match d.degenerations.as_slice() {
        [] => Verdict::None,
        [r] if r.kind == DegenerationKind::Triangle => Verdict::Triangle,
        [r] if r.kind == DegenerationKind::Loop => {
            let label = r.participants[1].clone();
            Verdict::Loop(Box::leak(label.into_boxed_str()))
        }
        other => panic!("unexpected degenerations {other:?}"),
    }
}
