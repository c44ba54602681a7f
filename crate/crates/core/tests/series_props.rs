mod common;

use common::{generic_params, polar, rel};
use p3wkb::algebra::{lambda0_branches, turning_points, BranchPoint};
use p3wkb::series::{odd_even, riccati_residual, riccati_solution, zero_param_solution, ZeroParamSolution};
use p3wkb::{Equation, Parameters, C64};
use proptest::prelude::*;

const M: usize = 6;

/// A branch point at t together with its 0-parameter solution, or None when
/// t sits too close to a turning point for the recursion to be trusted.
fn solved(p: &Parameters, t: C64, k: usize, jet: usize) -> Option<(BranchPoint, ZeroParamSolution)> {
    let b = lambda0_branches(&Equation::D6(*p), t).ok()?[k];
    let zp = zero_param_solution(&Equation::D6(*p), &b, M, jet).ok()?;
    Some((b, zp))
}

fn clearance(p: &Parameters, t: C64) -> f64 {
    let tp = turning_points(p).unwrap();
    tp.t.iter().map(|x| (x - t).norm()).fold(t.norm(), f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// R₋(η) = R₊(−η): odd part flips under the exchange, even part does not.
    #[test]
    fn sign_exchange(p in generic_params(), t in polar(0.3, 3.0), k in 0usize..4) {
        prop_assume!(clearance(&p, t) > 0.05);
        let Some((_, zp)) = solved(&p, t, k, M + 4) else { panic!("recursion refused a well-separated point") };
        let rp = riccati_solution(&zp, 1, None, M).unwrap();
        let rm = riccati_solution(&zp, -1, None, M).unwrap();
        let scale = zp.delta.value().norm().sqrt().max(1.0);
        for (q, v) in rp.values() {
            let w = rm.coeff(q).unwrap().value();
            let want = if q.rem_euclid(2) == 0 { v } else { -v };
            prop_assert!((w - want).norm() < 1e-9 * scale.max(v.norm()), "η^{q}: {w} vs {want}");
        }
        let (o1, e1) = odd_even(&rp, &rm);
        let (o2, e2) = odd_even(&rm, &rp);
        for ((q, a), (_, b)) in o1.values().into_iter().zip(o2.values()) {
            prop_assert_eq!(a, -b, "R_odd η^{}", q);
        }
        for ((q, a), (_, b)) in e1.values().into_iter().zip(e2.values()) {
            prop_assert_eq!(a, b, "R_even η^{}", q);
        }
    }

    #[test]
    fn riccati_residual_vanishes(p in generic_params(), t in polar(0.3, 3.0), k in 0usize..4, s in prop::sample::select(vec![1i8, -1])) {
        prop_assume!(clearance(&p, t) > 0.05);
        let Some((_, zp)) = solved(&p, t, k, M + 4) else { panic!("recursion refused a well-separated point") };
        let r = riccati_solution(&zp, s, None, M).unwrap();
        let e = riccati_residual(&zp, &r).unwrap();
        let scale = zp.delta.value().norm().max(1.0) * (1.0 + zp.lambda.max_value(-(M as i32), 0));
        for (q, v) in e.values() {
            if q >= 2 - M as i32 {
                prop_assert!(v.norm() < 1e-9 * scale, "η^{q}: {v}");
            }
        }
    }

    /// The recursion built at t₀ and Taylor-shifted to t₁ agrees with the
    /// recursion built at t₁ directly.
    #[test]
    fn base_point_independence(p in generic_params(), t in polar(0.3, 3.0), k in 0usize..4, dir in -3.14f64..3.14) {
        let c = clearance(&p, t);
        prop_assume!(c > 0.1);
        let jet = 20;
        let Some((b0, z0)) = solved(&p, t, k, jet) else { panic!("recursion refused a well-separated point") };
        let h = C64::from_polar(0.05 * c, dir);
        let pred = z0.lambda.at(0).eval(h);
        let roots = lambda0_branches(&Equation::D6(p), t + h).unwrap();
        let j = (0..roots.len()).min_by(|a, b| (roots[*a].lambda0 - pred).norm().total_cmp(&(roots[*b].lambda0 - pred).norm())).unwrap();
        let Some((_, z1)) = solved(&p, t + h, j, jet) else { panic!("recursion refused a well-separated point") };
        let _ = b0;
        for l in [0, 2, 4, 6] {
            let a = z0.lambda.at(-l).eval(h);
            let b = z1.lambda.at(-l).value();
            prop_assert!((a - b).norm() < 1e-8 * b.norm().max(z1.lambda.at(0).value().norm()), "λ_{l}: {a} vs {b}");
        }
    }

    /// λ_ℓ has degree ℓ − 1 and the η^k coefficient of R has degree 2 − k.
    #[test]
    fn termwise_homogeneity(p in generic_params(), t in polar(0.3, 3.0), k in 0usize..4) {
        prop_assume!(clearance(&p, t) > 0.05);
        let Some((b, zp)) = solved(&p, t, k, M + 4) else { panic!("recursion refused a well-separated point") };
        let r = riccati_solution(&zp, 1, None, M).unwrap();
        for s in [2.0, 0.5] {
            let ps = p.scaled(s);
            let roots = lambda0_branches(&Equation::D6(ps), t / (s * s)).unwrap();
            let want = b.lambda0 / s;
            let bs = *roots.iter().min_by(|x, y| (x.lambda0 - want).norm().total_cmp(&(y.lambda0 - want).norm())).unwrap();
            let zs = zero_param_solution(&Equation::D6(ps), &bs, M, M + 4).unwrap();
            let rs = riccati_solution(&zs, 1, Some(r.at(1).value() * s), M).unwrap();
            for l in 0..=M as i32 {
                let a = zs.lambda.at(-l).value();
                let e = zp.lambda.at(-l).value() * s.powi(l - 1);
                prop_assert!((a - e).norm() < 1e-10 * e.norm().max(zs.lambda.at(0).value().norm() * s.powi(l)), "λ_{l}");
            }
            for (q, v) in r.values() {
                let a = rs.coeff(q).unwrap().value();
                let e = v * s.powi(2 - q);
                prop_assert!(rel(a, e) < 1e-10 || (a - e).norm() < 1e-12 * s.powi(2 - q), "R η^{q}: {a} vs {e}");
            }
        }
    }
}
