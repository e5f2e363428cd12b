//! Property tests: jet algebra, class decomposition round trip, and the
//! radius scaling law at arbitrary points and scale factors.

use proptest::prelude::*;

use acbm_core::acbm::{class_tensor, decompose, BasicClass, ClassParams, FTensor};
use acbm_core::jet::MULTI_INDICES;
use acbm_core::manifolds::{h31_chart, s31_chart};
use acbm_core::{evaluate, Jet3};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn params() -> impl Strategy<Value = ClassParams> {
    prop::array::uniform9(-3.0..3.0f64).prop_map(|p| ClassParams {
        theta2: p[0],
        theta3: p[1],
        half_theta1: p[2],
        half_theta_star1: p[3],
        lambda: p[4],
        mu: p[5],
        nu: p[6],
        omega2: p[7],
        omega3: p[8],
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_product_rule(a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64) {
        let [x, y, z] = Jet3::vars([a, b, c]);
        let f = x.sin() * y.cosh() + z * x;
        let g = (x * y).exp() - z.cos();
        let fg = f * g;
        for v in 0..3 {
            let want = f.d(v) * g.value() + f.value() * g.d(v);
            prop_assert!(close(fg.d(v), want, 1e-12));
        }
        // Mixed partials commute with truncation: ∂₀(∂₁ fg) = ∂₁(∂₀ fg).
        let m01 = fg.derivative(1).derivative(0).value();
        let m10 = fg.derivative(0).derivative(1).value();
        prop_assert!(close(m01, m10, 1e-12));
        prop_assert!(close(m01, fg.partial([1, 1, 0]), 1e-12));
    }

    #[test]
    fn jet_matches_closed_form_derivatives(a in -1.5..1.5f64) {
        let [x, _, _] = Jet3::vars([a, 0.0, 0.0]);
        let s = x.sin();
        prop_assert!(close(s.partial([1, 0, 0]), a.cos(), 1e-14));
        prop_assert!(close(s.partial([2, 0, 0]), -a.sin(), 1e-14));
        prop_assert!(close(s.partial([3, 0, 0]), -a.cos(), 1e-14));
        let e = x.exp();
        for alpha in MULTI_INDICES {
            let want = if alpha[1] == 0 && alpha[2] == 0 { a.exp() } else { 0.0 };
            prop_assert!(close(e.partial(alpha), want, 1e-13));
        }
    }

    #[test]
    fn class_decomposition_round_trip(p in params()) {
        let mut f = [[[0.0; 3]; 3]; 3];
        for c in BasicClass::ALL {
            let t = class_tensor(c, &p);
            for i in 0..3 { for j in 0..3 { for k in 0..3 { f[i][j][k] += t[i][j][k]; } } }
        }
        let d = decompose(&FTensor::from_components(f)).unwrap();
        for ((name, got), (_, want)) in d.params.named().iter().zip(p.named()) {
            prop_assert!(close(*got, want, 1e-12), "{}: {} vs {}", name, got, want);
        }
        prop_assert!(d.residual < 1e-12);
    }

    #[test]
    fn scaling_law_at_random_points(
        u1 in 0.05..1.5f64,
        u2 in -3.0..3.0f64,
        u3 in -2.0..2.0f64,
        r in 0.2..3.0f64,
        lambda in 0.25..4.0f64,
        hyperbolic in any::<bool>(),
    ) {
        let u = [u1, u2, u3];
        let (a, b) = if hyperbolic {
            (h31_chart(r).unwrap(), h31_chart(lambda * r).unwrap())
        } else {
            (s31_chart(r).unwrap(), s31_chart(lambda * r).unwrap())
        };
        let qa = evaluate(&a, u).unwrap().quantities;
        let qb = evaluate(&b, u).unwrap().quantities;
        for (x, y) in [(&qa.f, &qb.f), (&qa.n, &qb.n), (&qa.n_hat, &qb.n_hat), (&qa.gamma, &qb.gamma)] {
            for i in 0..3 { for j in 0..3 { for k in 0..3 {
                prop_assert!(close(y[i][j][k], x[i][j][k] / lambda, 1e-9));
            } } }
        }
        for (x, y) in [
            (qa.tau, qb.tau),
            (qa.tau_star_star, qb.tau_star_star),
            (qa.norm_nabla_phi, qb.norm_nabla_phi),
            (qa.norm_n, qb.norm_n),
            (qa.norm_n_hat, qb.norm_n_hat),
        ] {
            prop_assert!(close(y, x / (lambda * lambda), 1e-9));
        }
    }
}
