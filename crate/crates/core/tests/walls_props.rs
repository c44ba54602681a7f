mod common;

use std::f64::consts::FRAC_PI_4;

use common::{chamber_params, generic_params};
use p3wkb::borel::{closed_form, Side};
use p3wkb::geometry::{stokes_diagram, DegenerationKind, Terminus, TraceOptions};
use p3wkb::voros::{Block, EndpointSpec, Target};
use p3wkb::walls::{classify, Chamber, Stratum, Wall};
use p3wkb::{c64, Equation, Parameters, C64};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const CHAMBERS: [Chamber; 8] =
    [Chamber::I, Chamber::II, Chamber::III, Chamber::IV, Chamber::V, Chamber::VI, Chamber::VII, Chamber::VIII];

/// (Re c∞, Re c₀) on a ray of the projection, imaginary parts free.
fn on_ray(theta: f64, rho: f64, a: f64, b: f64) -> Option<Parameters> {
    let p = Parameters::new(c64(rho * theta.cos(), a), c64(rho * theta.sin(), b)).ok()?;
    p.genericity_margins().iter().all(|m| *m > 0.05).then_some(p)
}

/// Points exactly on wall k: the vanishing real part is set to zero, and on
/// the diagonals the two real parts are made equal bit for bit.
fn on_wall(k: usize, rho: f64, a: f64, b: f64) -> Option<Parameters> {
    let (x, y) = match k {
        0 => (rho, 0.0),
        1 => (rho, rho),
        2 => (0.0, rho),
        3 => (-rho, rho),
        4 => (-rho, 0.0),
        5 => (-rho, -rho),
        6 => (0.0, -rho),
        _ => (rho, -rho),
    };
    let p = Parameters::new(c64(x, a), c64(y, b)).ok()?;
    p.genericity_margins().iter().all(|m| *m > 0.05).then_some(p)
}

/// The Borel sum of an odd series in z: Laplace along the ray through z.
fn summed(kind: Block, z: C64) -> C64 {
    if z.re > 0.0 {
        closed_form(kind, z, Side::Minus).unwrap()
    } else {
        -closed_form(kind, -z, Side::Minus).unwrap()
    }
}

fn summed_blocks(p: &Parameters, eta: f64) -> Vec<C64> {
    [Target::ZeroCInf, Target::ZeroC0]
        .into_iter()
        .flat_map(|t| EndpointSpec::new(Equation::D6(*p), t, 1).unwrap().blocks())
        .map(|(_, kind, var)| summed(kind, var.value(&Equation::D6(*p)).unwrap() * eta))
        .collect()
}

#[test]
fn random_chamber_points_do_not_degenerate() {
    for (k, chamber) in CHAMBERS.iter().enumerate() {
        let lo = (k as f64 + 0.1) * FRAC_PI_4;
        let hi = (k as f64 + 0.9) * FRAC_PI_4;
        let strategy = (lo..hi, 0.5f64..4.0, -3.0f64..3.0, -3.0f64..3.0)
            .prop_filter_map("degenerate", |(th, r, a, b)| on_ray(th, r, a, b));
        let mut runner = TestRunner::new_with_rng(
            Config { cases: 100, ..Config::default() },
            proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
        );
        runner
            .run(&strategy, |p| {
                prop_assert_eq!(classify(&p).unwrap(), Stratum::Chamber(*chamber));
                let d = stokes_diagram(&Equation::D6(p), &TraceOptions::default()).unwrap();
                prop_assert_eq!(d.curves.len(), 16);
                prop_assert!(d.curves.iter().all(|c| !matches!(c.terminus, Terminus::Failed(_))));
                prop_assert!(d.degenerations.is_empty(), "{:?}: {:?}", p, d.degenerations);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn wall_points_degenerate() {
    for k in 0..8 {
        let wall = Wall::from_index(k).unwrap();
        let strategy = (0.5f64..4.0, -3.0f64..3.0, -3.0f64..3.0)
            .prop_filter_map("degenerate", move |(r, a, b)| on_wall(k, r, a, b));
        let mut runner = TestRunner::new_with_rng(
            Config { cases: 12, ..Config::default() },
            proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
        );
        runner
            .run(&strategy, |p| {
                prop_assert_eq!(classify(&p).unwrap(), Stratum::Wall(wall));
                let d = stokes_diagram(&Equation::D6(p), &TraceOptions::default()).unwrap();
                prop_assert_eq!(d.degenerations.len(), 1, "{:?}", p);
                let r = &d.degenerations[0];
                if k % 2 == 1 {
                    prop_assert_eq!(r.kind, DegenerationKind::Triangle);
                } else {
                    prop_assert_eq!(r.kind, DegenerationKind::Loop);
                    let pole = if k % 4 == 0 { "0_c0" } else { "0_cinf" };
                    prop_assert_eq!(r.participants[1].as_str(), pole);
                }
                Ok(())
            })
            .unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn swap_commutes_with_classification(p in generic_params()) {
        prop_assert_eq!(classify(&p.swapped()).unwrap(), classify(&p).unwrap().swapped());
    }

    #[test]
    fn swap_on_walls(k in 0usize..8, r in 0.5f64..4.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let Some(p) = on_wall(k, r, a, b) else { return Ok(()) };
        let Stratum::Wall(w) = classify(&p).unwrap() else { panic!("off the wall") };
        prop_assert_eq!(classify(&p.swapped()).unwrap(), Stratum::Wall(w.swapped()));
    }

    /// Off the walls the Borel sums of the blocks move continuously.
    #[test]
    fn continuity_off_walls(p in chamber_params(), d in common::polar(0.5, 1.0), eta in 0.5f64..20.0) {
        let h = 1e-9 * p.c_inf.norm().max(p.c_0.norm());
        let q = Parameters::new(p.c_inf + d * h, p.c_0 - d * h).unwrap();
        prop_assert_eq!(classify(&q).unwrap(), classify(&p).unwrap());
        for (a, b) in summed_blocks(&p, eta).into_iter().zip(summed_blocks(&q, eta)) {
            prop_assert!((a - b).norm() < 1e-6 * (1.0 + a.norm()), "{a} vs {b}");
        }
    }
}
