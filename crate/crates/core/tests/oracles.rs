//! Engine against the closed forms over every built-in manifold and radius,
//! plus embedding and structural identities at random points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use acbm_core::acbm::{
    f_identity_residual, fundamental_f, lee_forms, lee_forms_by_contraction, nijenhuis_symmetry_residual,
    structure_axiom_check, StructurePack,
};
use acbm_core::crosscheck::sample_point;
use acbm_core::hypersurface::coordinate_commutator_residual;
use acbm_core::manifolds::{chart, default_grid, suite, MANIFOLD_NAMES};
use acbm_core::verify::{verify, DEFAULT_TOL};
use acbm_core::{evaluate, FramePoint};

const RADII: [f64; 3] = [0.5, 1.0, 2.0];

#[test]
fn every_manifold_and_radius_verifies() {
    for name in MANIFOLD_NAMES {
        for r in RADII {
            let s = suite(name, r).unwrap();
            let rep = verify(&s, &default_grid(name), DEFAULT_TOL).unwrap();
            let failed: Vec<_> = rep.failures().map(|q| q.name.clone()).collect();
            assert!(failed.is_empty(), "{name} r={r}: {failed:?}");
            for item in &rep.theorem_items {
                assert!(item.pass, "{name} r={r} item {}: {}", item.item, item.evidence);
            }
            assert!(rep.overall);
        }
    }
}

#[test]
fn embeddings_lie_on_their_quadrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, sign) in [("s31", 1.0), ("h31", -1.0)] {
        for r in RADII {
            let c = chart(name, r).unwrap();
            for _ in 0..1000 {
                let u = sample_point(name, &mut rng).unwrap();
                let z = c.position(u);
                let zz = c.space.inner(&z, &z);
                assert!((zz - sign * r * r).abs() < 1e-10, "{name} r={r} {u:?}: {zz}");
            }
        }
    }
}

#[test]
fn structural_identities_at_random_points() {
    let s = StructurePack::canonical();
    assert!(structure_axiom_check(&s) < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in MANIFOLD_NAMES {
        let c = chart(name, 1.0).unwrap();
        for _ in 0..100 {
            let u = sample_point(name, &mut rng).unwrap();
            let frame = FramePoint::new(&c, u).unwrap();
            let f = fundamental_f(&frame, &s);
            assert!(f_identity_residual(&f.f, &frame, &s) < 1e-10, "{name} {u:?}");
            let (a, b, w) = lee_forms(&f.f);
            let (a2, b2, w2) = lee_forms_by_contraction(&f.f, &s);
            for (x, y) in a.iter().chain(&b).chain(&w).zip(a2.iter().chain(&b2).chain(&w2)) {
                assert!((x - y).abs() < 1e-10, "{name} {u:?}");
            }
            let q = evaluate(&c, u).unwrap().quantities;
            assert!(nijenhuis_symmetry_residual(&q.n, &q.n_hat) < 1e-10, "{name} {u:?}");
            assert!(coordinate_commutator_residual(&c, u).unwrap() < 1e-10, "{name} {u:?}");
        }
    }
}
