//! Doubling the radius: first-order tensors halve, curvature and square
//! norms quarter, pointwise on the default grids.

use acbm_core::manifolds::{chart, default_grid};
use acbm_core::{evaluate, Quantities};

fn check(name: &str, a: f64, b: f64, factor: f64) {
    let want = factor * a;
    assert!(
        (b - want).abs() <= (1e-9 * want.abs()).max(1e-12),
        "{name}: r=2 gives {b}, expected {factor}·{a}"
    );
}

fn pair(name: &str, u: [f64; 3]) -> (Quantities, Quantities) {
    let one = evaluate(&chart(name, 1.0).unwrap(), u).unwrap().quantities;
    let two = evaluate(&chart(name, 2.0).unwrap(), u).unwrap().quantities;
    (one, two)
}

#[test]
fn first_order_tensors_halve() {
    for m in ["s31", "h31"] {
        for u in default_grid(m) {
            let (a, b) = pair(m, u);
            for (label, x, y) in [
                ("F", a.f, b.f),
                ("N", a.n, b.n),
                ("Nhat", a.n_hat, b.n_hat),
                ("Gamma", a.gamma, b.gamma),
            ] {
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            check(
                                &format!("{m} {label}[{i}][{j}][{k}] at {u:?}"),
                                x[i][j][k],
                                y[i][j][k],
                                0.5,
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn curvature_and_norms_quarter() {
    for m in ["s31", "h31"] {
        for u in default_grid(m) {
            let (a, b) = pair(m, u);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            check(&format!("{m} R at {u:?}"), a.r[i][j][k][l], b.r[i][j][k][l], 0.25);
                        }
                    }
                    check(&format!("{m} rho at {u:?}"), a.rho[i][j], b.rho[i][j], 0.25);
                    check(&format!("{m} rho* at {u:?}"), a.rho_star[i][j], b.rho_star[i][j], 0.25);
                }
            }
            for (label, x, y) in [
                ("tau", a.tau, b.tau),
                ("tau*", a.tau_star, b.tau_star),
                ("tau**", a.tau_star_star, b.tau_star_star),
                ("|nabla phi|", a.norm_nabla_phi, b.norm_nabla_phi),
                ("|N|", a.norm_n, b.norm_n),
                ("|Nhat|", a.norm_n_hat, b.norm_n_hat),
            ] {
                check(&format!("{m} {label} at {u:?}"), x, y, 0.25);
            }
            for (x, y) in a.sectional.iter().zip(b.sectional) {
                check(&format!("{m} k at {u:?}"), *x, y, 0.25);
            }
        }
    }
}

#[test]
fn flat_reference_is_scale_free() {
    for u in default_grid("flat") {
        let (a, b) = pair("flat", u);
        assert_eq!(a, b);
    }
}
