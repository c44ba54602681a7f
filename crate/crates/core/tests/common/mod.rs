#![allow(dead_code)]

pub mod figures;
pub mod trace;

use p3wkb::{c64, Parameters, C64};
use proptest::prelude::*;

pub fn polar(rmin: f64, rmax: f64) -> impl Strategy<Value = C64> {
    (rmin..rmax, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(r, th)| C64::from_polar(r, th))
}

/// Parameters comfortably away from the excluded loci (margins ≥ 0.05).
pub fn generic_params() -> impl Strategy<Value = Parameters> {
    (polar(0.5, 4.0), polar(0.5, 4.0)).prop_filter_map("near-degenerate", |(a, b)| {
        let p = Parameters::new(a, b).ok()?;
        p.genericity_margins().iter().all(|m| *m > 0.05).then_some(p)
    })
}

/// Parameters additionally off every wall by a relative margin.
pub fn chamber_params() -> impl Strategy<Value = Parameters> {
    generic_params().prop_filter("near a wall", |p| {
        let s = p.c_inf.norm().max(p.c_0.norm());
        [p.c_inf, p.c_0, p.c_p(), p.c_m()].iter().all(|c| c.re.abs() > 0.05 * s)
    })
}

pub fn rel(x: C64, y: C64) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}

pub fn p(a: f64, b: f64, c: f64, d: f64) -> Parameters {
    Parameters::new(c64(a, b), c64(c, d)).unwrap()
}
