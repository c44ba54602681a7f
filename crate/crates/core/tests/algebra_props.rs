mod common;

use common::{generic_params, polar, rel};
use p3wkb::algebra::{lambda0_branches, UChart};
use p3wkb::scaling::homogeneity_report;
use p3wkb::{Equation, Jet, C64};
use proptest::prelude::*;

/// Winding number of q around a small circle: the order of its zero (or
/// minus the order of its pole) at the centre.
fn order_at(chart: &UChart, u0: C64, r: f64) -> i64 {
    let n = 512;
    let mut total = 0.0;
    let mut prev = chart.q(u0 + r).arg();
    for k in 1..=n {
        let u = u0 + C64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
        let a = chart.q(u).arg();
        let mut d = a - prev;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        total += d;
        prev = a;
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homogeneity_table(p in generic_params(), t in polar(0.3, 3.0)) {
        for r in [2.0, 1.0 / 3.0] {
            // points too close to a turning point are refused; that is not a failure here
            let Ok(rows) = homogeneity_report(&p, t, 10.0, r) else { continue };
            for row in rows {
                prop_assert!(row.rel_err < 1e-10, "{} at r = {r}: {:e}", row.quantity, row.rel_err);
            }
        }
    }

    #[test]
    fn branches_at_infinity(p in generic_params(), th in -3.1f64..3.1) {
        let t = C64::from_polar(1e4, th);
        let roots = lambda0_branches(&Equation::D6(p), t).unwrap();
        let s = t.sqrt();
        let i = C64::i();
        for (k, w) in [s, -s, i * s, -i * s].iter().enumerate() {
            let hits: Vec<_> = roots.iter().filter(|b| rel(b.lambda0, *w) < 10.0 / t.norm().sqrt()).collect();
            prop_assert_eq!(hits.len(), 1, "branch {}", k + 1);
        }
    }

    #[test]
    fn branches_at_zero(p in generic_params(), th in -3.1f64..3.1) {
        let t = C64::from_polar(1e-8, th);
        let roots: Vec<C64> = lambda0_branches(&Equation::D6(p), t).unwrap().iter().map(|b| b.lambda0).collect();
        let near = |w: C64| roots.iter().filter(|l| rel(**l, w) < 1e-2).count();
        prop_assert_eq!(near(p.c_inf), 1);
        prop_assert_eq!(near(t / p.c_0), 1);
        let sp = (p.c_0 / p.c_inf).sqrt() * t.sqrt();
        prop_assert_eq!(near(sp), 1);
        prop_assert_eq!(near(-sp), 1);
    }

    #[test]
    fn zeros_and_poles_of_q(p in generic_params()) {
        let chart = UChart::new(Equation::D6(p)).unwrap();
        let pts = chart.finite_special_points();
        let spacing = pts
            .iter()
            .enumerate()
            .flat_map(|(i, a)| pts[i + 1..].iter().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min);
        let r = 0.2 * spacing;
        for u in chart.turning_points_u() {
            prop_assert_eq!(order_at(&chart, u, r), 3);
        }
        prop_assert_eq!(order_at(&chart, C64::new(-1.0, 0.0), r), -1);
        let m = p.c_m() / p.c_p();
        prop_assert_eq!(order_at(&chart, m, r), -2);
        prop_assert_eq!(order_at(&chart, -m, r), -2);
        prop_assert_eq!(order_at(&chart, C64::new(0.0, 0.0), r), -4);
    }

    /// q du² = Δ dt² with t(u), λ₀(u) from the chart.
    #[test]
    fn q_is_the_pulled_back_discriminant(p in generic_params(), u in polar(0.1, 5.0)) {
        let chart = UChart::new(Equation::D6(p)).unwrap();
        let Ok((t, lam)) = chart.t_lambda0_jets(&Jet::variable(u, 1)) else { return Ok(()) };
        let dtdu = t.coeff(1);
        let want = chart.eq.f_lambda(lam.value(), t.value()) * dtdu * dtdu;
        let got = chart.q(u);
        prop_assume!(want.is_finite() && got.norm() > 1e-8);
        prop_assert!(rel(got, want) < 1e-9, "{got} vs {want}");
    }
}
