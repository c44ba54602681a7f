mod common;

use common::chamber_params;
use num_traits::Zero;
use p3wkb::voros::{f_series, g_series, voros_closed_form, voros_numeric_oracle, EndpointSpec, OracleOptions, Target};
use p3wkb::Equation;
use proptest::prelude::*;

const D6_TARGETS: [Target; 6] =
    [Target::Inf(1), Target::Inf(2), Target::Inf(3), Target::Inf(4), Target::ZeroCInf, Target::ZeroC0];

#[test]
fn block_series_are_odd() {
    for s in [f_series(20), g_series(20)] {
        for p in -40i64..=2 {
            if p % 2 == 0 {
                assert!(s.coeff(p).is_zero(), "z^{p}");
            }
        }
        assert!(s.coeff(1).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_flip_negates(p in chamber_params(), k in 0usize..6) {
        let eq = Equation::D6(p);
        let a = voros_closed_form(&EndpointSpec::new(eq, D6_TARGETS[k], 1).unwrap(), 8).unwrap();
        let b = voros_closed_form(&EndpointSpec::new(eq, D6_TARGETS[k], -1).unwrap(), 8).unwrap();
        prop_assert_eq!(a.neg(), b);
    }

    /// The η^{1−2n} coefficient has degree 2n − 1 in c⁻¹.
    #[test]
    fn coefficients_are_homogeneous(p in chamber_params(), k in 0usize..6, r in prop::sample::select(vec![2.0, 1.0 / 3.0])) {
        let a = voros_closed_form(&EndpointSpec::new(Equation::D6(p), D6_TARGETS[k], 1).unwrap(), 8).unwrap();
        let b = voros_closed_form(&EndpointSpec::new(Equation::D6(p.scaled(r)), D6_TARGETS[k], 1).unwrap(), 8).unwrap();
        for ((n, x), (_, y)) in a.terms.iter().zip(&b.terms) {
            let want = x * r.powi(2 * *n as i32 - 1);
            prop_assert!((y - want).norm() <= 1e-12 * want.norm().max(1e-300), "n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Quadrature of R_odd along a path against the closed form, n = 1, 2.
    #[test]
    fn oracle_agrees_on_random_chamber_points(p in chamber_params(), k in 0usize..6, s in prop::sample::select(vec![1i8, -1])) {
        let spec = EndpointSpec::new(Equation::D6(p), D6_TARGETS[k], s).unwrap();
        let closed = voros_closed_form(&spec, 2).unwrap();
        let got = voros_numeric_oracle(&spec, &OracleOptions::default()).unwrap();
        for n in 1..=2 {
            let (a, b) = (got.series.coeff(n).unwrap(), closed.coeff(n).unwrap());
            prop_assert!((a - b).norm() < 1e-5 * b.norm(), "n = {n}: {a} vs {b}");
        }
    }
}
