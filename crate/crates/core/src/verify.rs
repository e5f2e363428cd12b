//! Oracle sweep over a grid: every engine quantity against its closed form,
//! plus the six theorem items (class, D-flatness, ‖∇φ‖ sign, Nijenhuis norm
//! signs, dη and ∇_ξξ, constant sectional curvature).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::acbm::{class_label, BasicClass, RECONSTRUCTION_TOL};
use crate::connection::{constant_curvature_residual, sectional};
use crate::error::Result;
use crate::evaluate::{evaluate, TensorBundle};
use crate::manifolds::{OracleSuite, SignExpectation};
use crate::tensor::{max_abs3, Mat3, Vec3};

/// Default relative tolerance for oracle comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Absolute floor of the comparator, for quantities whose oracle is zero.
pub const ABS_FLOOR: f64 = 1e-12;
/// Environment variable overriding [`DEFAULT_TOL`].
pub const TOL_ENV: &str = "ACBM_TOL";
/// Bound on `max|Dᵏᵢⱼ|`, `|dη|` and `|∇_ξξ|`.
pub const VANISHING_TOL: f64 = 1e-10;
/// Bound on the constant-curvature residual and the random-plane spread.
pub const CURVATURE_TOL: f64 = 1e-9;
/// Random planes tested per point.
pub const RANDOM_PLANES: usize = 50;
/// Seed of the random-plane generator (planes are reproducible).
pub const PLANE_SEED: u64 = 0x5eed;

/// `|a − b| ≤ max(tol·|b|, 1e-12)`.
pub fn within(actual: f64, expected: f64, tol: f64) -> bool {
    (actual - expected).abs() <= (tol * expected.abs()).max(ABS_FLOOR)
}

/// Tolerance from `ACBM_TOL` when set and parseable, else [`DEFAULT_TOL`].
pub fn tolerance_from_env() -> f64 {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityError {
    pub name: String,
    pub max_abs_error: f64,
    /// Over points where the oracle is nonzero.
    pub max_rel_error: f64,
    pub worst_point: Vec3,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremItem {
    pub item: u8,
    pub pass: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMembership {
    pub point: Vec3,
    pub classes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub manifold: String,
    pub radius: f64,
    pub tolerance: f64,
    pub grid: Vec<Vec3>,
    pub per_quantity: Vec<QuantityError>,
    pub theorem_items: Vec<TheoremItem>,
    pub per_point_membership: Vec<PointMembership>,
    pub grid_membership: String,
    pub overall: bool,
    /// Wall time; kept out of serialized output so reports are reproducible.
    #[serde(skip)]
    pub runtime_ms: f64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &QuantityError> {
        self.per_quantity.iter().filter(|q| !q.pass)
    }
}

/// A random orthogonal pair spanning a non-degenerate plane of the frame metric.
pub fn random_plane(rng: &mut ChaCha8Rng, g: &Mat3) -> (Vec3, Vec3) {
    let norm = |v: &Vec3| (0..3).map(|a| g[a][a] * v[a] * v[a]).sum::<f64>();
    let dot = |v: &Vec3, w: &Vec3| (0..3).map(|a| g[a][a] * v[a] * w[a]).sum::<f64>();
    loop {
        let x: Vec3 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let w: Vec3 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let gxx = norm(&x);
        if gxx.abs() < 0.1 {
            continue;
        }
        let c = dot(&x, &w) / gxx;
        let y: Vec3 = std::array::from_fn(|a| w[a] - c * x[a]);
        if norm(&y).abs() < 0.1 {
            continue;
        }
        return (x, y);
    }
}

struct Accumulator {
    name: String,
    abs: f64,
    rel: f64,
    worst: Vec3,
    pass: bool,
}

fn sign_ok(v: f64, expect: SignExpectation) -> bool {
    match expect {
        SignExpectation::Negative => v < 0.0,
        SignExpectation::Positive => v > 0.0,
        SignExpectation::Zero => v.abs() <= ABS_FLOOR,
    }
}

fn fmt_e(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn verify(suite: &OracleSuite, grid: &[Vec3], tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let bundles: Vec<TensorBundle> = grid.iter().map(|&u| evaluate(&suite.chart, u)).collect::<Result<_>>()?;

    let mut acc: Vec<Accumulator> = Vec::new();
    for (u, b) in grid.iter().zip(&bundles) {
        let expected = suite.expected(*u).named();
        let actual = b.quantities.named();
        if acc.is_empty() {
            acc = expected
                .iter()
                .map(|(n, _)| Accumulator {
                    name: n.clone(),
                    abs: 0.0,
                    rel: 0.0,
                    worst: *u,
                    pass: true,
                })
                .collect();
        }
        for ((a, (_, want)), (_, got)) in acc.iter_mut().zip(&expected).zip(&actual) {
            let err = (got - want).abs();
            if !within(*got, *want, tol) {
                a.pass = false;
            }
            if err > a.abs || (err.is_nan() && !a.abs.is_nan()) {
                a.abs = err;
                a.worst = *u;
            }
            if *want != 0.0 {
                a.rel = a.rel.max(err / want.abs());
            }
        }
    }
    let per_quantity: Vec<QuantityError> = acc
        .into_iter()
        .map(|a| QuantityError {
            name: a.name,
            max_abs_error: a.abs,
            max_rel_error: a.rel,
            worst_point: a.worst,
            pass: a.pass,
        })
        .collect();

    let th = &suite.theorem;
    let mut items = Vec::with_capacity(6);

    // (1) class
    let mut union: Vec<BasicClass> = Vec::new();
    let mut residual: f64 = 0.0;
    let mut per_point_membership = Vec::with_capacity(grid.len());
    for (u, b) in grid.iter().zip(&bundles) {
        let d = &b.decomposition;
        residual = residual.max(d.residual / max_abs3(&b.quantities.f).max(1.0));
        for c in &d.membership {
            if !union.contains(c) {
                union.push(*c);
            }
        }
        per_point_membership.push(PointMembership {
            point: *u,
            classes: class_label(&d.membership),
        });
    }
    union.sort();
    let grid_membership = class_label(&union);
    items.push(TheoremItem {
        item: 1,
        pass: union == th.classes && residual < RECONSTRUCTION_TOL,
        evidence: format!(
            "grid membership {grid_membership} (expected {}), reconstruction residual {}",
            class_label(&th.classes),
            fmt_e(residual)
        ),
    });

    // (2) φB-connection
    let d_max = bundles.iter().map(|b| max_abs3(&b.quantities.d)).fold(0.0, f64::max);
    items.push(TheoremItem {
        item: 2,
        pass: !th.d_vanishes || d_max < VANISHING_TOL,
        evidence: format!("max|Dᵏᵢⱼ| = {} (< {})", fmt_e(d_max), fmt_e(VANISHING_TOL)),
    });

    // (3) ‖∇φ‖
    let (lo, hi) = min_max(bundles.iter().map(|b| b.quantities.norm_nabla_phi));
    items.push(TheoremItem {
        item: 3,
        pass: bundles
            .iter()
            .all(|b| sign_ok(b.quantities.norm_nabla_phi, th.nabla_phi_sign)),
        evidence: format!(
            "‖∇φ‖ {} at every point, range [{}, {}]",
            th.nabla_phi_sign.label(),
            fmt_e(lo),
            fmt_e(hi)
        ),
    });

    // (4) ‖N‖, ‖N̂‖
    let (nlo, _) = min_max(bundles.iter().map(|b| b.quantities.norm_n));
    let (nhlo, _) = min_max(bundles.iter().map(|b| b.quantities.norm_n_hat));
    items.push(TheoremItem {
        item: 4,
        pass: bundles.iter().all(|b| {
            sign_ok(b.quantities.norm_n, th.norm_n_sign) && sign_ok(b.quantities.norm_n_hat, th.norm_n_hat_sign)
        }),
        evidence: format!(
            "‖N‖ {} (min {}), ‖N̂‖ {} (min {})",
            th.norm_n_sign.label(),
            fmt_e(nlo),
            th.norm_n_hat_sign.label(),
            fmt_e(nhlo)
        ),
    });

    // (5) dη, ∇_ξξ
    let deta = bundles
        .iter()
        .flat_map(|b| b.quantities.d_eta.iter().flatten().copied())
        .fold(0.0, |m: f64, v| m.max(v.abs()));
    let nxx = bundles
        .iter()
        .flat_map(|b| b.quantities.nabla_xi_xi)
        .fold(0.0, |m: f64, v| m.max(v.abs()));
    items.push(TheoremItem {
        item: 5,
        pass: !th.eta_closed_xi_geodesic || (deta < VANISHING_TOL && nxx < VANISHING_TOL),
        evidence: format!("max|dη| = {}, max|∇_ξξ| = {}", fmt_e(deta), fmt_e(nxx)),
    });

    // (6) constant sectional curvature, on basis and random planes
    let c = th.curvature;
    let mut cc_residual: f64 = 0.0;
    let mut plane_dev: f64 = 0.0;
    for (idx, b) in bundles.iter().enumerate() {
        let g = b.frame.metric();
        cc_residual = cc_residual.max(constant_curvature_residual(&b.quantities.r, &g, c));
        let mut rng = ChaCha8Rng::seed_from_u64(PLANE_SEED ^ idx as u64);
        for _ in 0..RANDOM_PLANES {
            let (x, y) = random_plane(&mut rng, &g);
            let k = sectional(&b.quantities.r, &g, &x, &y)?;
            plane_dev = plane_dev.max((k - c).abs() / c.abs().max(1.0));
        }
    }
    items.push(TheoremItem {
        item: 6,
        pass: cc_residual < CURVATURE_TOL && plane_dev < CURVATURE_TOL,
        evidence: format!(
            "constant curvature c = {}, residual {} (< {}); {} random planes per point, max deviation {}",
            c,
            fmt_e(cc_residual),
            fmt_e(CURVATURE_TOL),
            RANDOM_PLANES,
            fmt_e(plane_dev)
        ),
    });

    let overall = per_quantity.iter().all(|q| q.pass) && items.iter().all(|i| i.pass);
    Ok(VerificationReport {
        manifold: suite.name.clone(),
        radius: suite.radius,
        tolerance: tol,
        grid: grid.to_vec(),
        per_quantity,
        theorem_items: items,
        per_point_membership,
        grid_membership,
        overall,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn min_max(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{default_grid, make_flat, make_h31, make_s31};

    #[test]
    fn comparator_floor() {
        assert!(within(1e-13, 0.0, 1e-9));
        assert!(!within(1e-11, 0.0, 1e-9));
        assert!(within(2.0 + 1e-10, 2.0, 1e-9));
        assert!(!within(2.0 + 1e-8, 2.0, 1e-9));
    }

    #[test]
    fn random_planes_are_orthogonal_and_non_degenerate() {
        let g = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let (x, y) = random_plane(&mut rng, &g);
            let gxy = x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
            assert!(gxy.abs() < 1e-12);
        }
    }

    #[test]
    fn s31_verifies() {
        let s = make_s31(1.0).unwrap();
        let rep = verify(&s, &default_grid("s31"), DEFAULT_TOL).unwrap();
        let bad: Vec<_> = rep.failures().map(|q| q.name.clone()).collect();
        assert!(rep.overall, "{bad:?} {:?}", rep.theorem_items);
        assert_eq!(rep.grid_membership, "F5⊕F9");
        assert!(rep.theorem_items[5].evidence.starts_with("constant curvature c = 1,"));
    }

    #[test]
    fn h31_verifies() {
        let s = make_h31(2.0).unwrap();
        let rep = verify(&s, &default_grid("h31"), DEFAULT_TOL).unwrap();
        assert!(rep.overall, "{:?}", rep.theorem_items);
        assert!(rep.theorem_items[1].evidence.starts_with("max|Dᵏᵢⱼ|"));
    }

    #[test]
    fn flat_is_f0() {
        let rep = verify(&make_flat(), &default_grid("flat"), DEFAULT_TOL).unwrap();
        assert!(rep.overall);
        assert_eq!(rep.grid_membership, "F0");
    }

    #[test]
    fn wrong_expectation_fails() {
        let mut s = make_s31(1.0).unwrap();
        s.theorem.curvature = -1.0;
        let rep = verify(&s, &default_grid("s31")[..3], DEFAULT_TOL).unwrap();
        assert!(!rep.overall);
        assert!(!rep.theorem_items[5].pass);
    }

    #[test]
    fn out_of_domain_grid_errors() {
        let s = make_h31(1.0).unwrap();
        assert!(verify(&s, &[[0.0, 0.0, 0.0]], DEFAULT_TOL).unwrap_err().is_domain());
    }
}
