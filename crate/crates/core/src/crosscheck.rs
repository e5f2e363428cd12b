//! Independent re-derivations of the engine's results, used as oracles:
//!
//! * jet partials of the immersion against Richardson-extrapolated central
//!   finite differences of the plain-real map;
//! * the frame curvature against the coordinate route (Christoffel symbols of
//!   the induced metric, transformed to the φ-basis);
//! * N and N̂ from their definitions `[φ,φ] + dη⊗ξ` and `{φ,φ} + (L_ξg)⊗ξ`,
//!   with ∇ taken from the Gauss formula rather than the Koszul identity.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::acbm::{fundamental_f, nijenhuis_tensors, StructurePack};
use crate::ambient::AmbientVector;
use crate::connection::{curvature, curvature_identity_residual, metric_compatibility_residual, torsion_residual};
use crate::error::{Error, Result};
use crate::hypersurface::{coordinate_tangents, frame_jets, Chart, FrameJets, FramePoint};
use crate::jet::{Jet3, MULTI_INDICES};
use crate::manifolds::{self, distance_to_lattice};
use crate::tensor::{Tensor3, Tensor4, Vec3, ZERO3, ZERO4};

/// Bound on the scaled jet-vs-finite-difference deviation.
pub const FD_TOL: f64 = 1e-6;
/// Bound on the deviation between the two curvature routes and the two Nijenhuis routes.
pub const ROUTE_TOL: f64 = 1e-8;
/// Bound on torsion, metric-compatibility and Bianchi residuals.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Width of the band kept clear of the excluded parameter values when sampling.
pub const SAMPLE_GUARD: f64 = 0.1;

/// `|a − b| / max(1, |b|)`.
pub fn scaled_deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Central-difference estimate of `∂^α f(u)`, Richardson-extrapolated from
/// steps `h` and `h/2` (h = 1e-3 up to order 2, 1e-2 at order 3).
pub fn fd_partial(f: &dyn Fn([f64; 3]) -> f64, u: [f64; 3], alpha: [u8; 3]) -> f64 {
    let h = match alpha.iter().sum::<u8>() {
        0 => return f(u),
        1 | 2 => 1e-3,
        _ => 1e-2,
    };
    let coarse = nested_central(f, u, alpha, h);
    let fine = nested_central(f, u, alpha, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

fn nested_central(f: &dyn Fn([f64; 3]) -> f64, u: [f64; 3], alpha: [u8; 3], h: f64) -> f64 {
    let Some(v) = alpha.iter().position(|&a| a > 0) else {
        return f(u);
    };
    let mut rest = alpha;
    rest[v] -= 1;
    let mut up = u;
    up[v] += h;
    let mut dn = u;
    dn[v] -= h;
    // divide by the step actually taken, so affine maps difference exactly
    (nested_central(f, up, rest, h) - nested_central(f, dn, rest, h)) / (up[v] - dn[v])
}

/// Uniform random point of a built-in chart, away from its excluded set.
pub fn sample_point(name: &str, rng: &mut ChaCha8Rng) -> Result<[f64; 3]> {
    let u2 = rng.gen_range(-2.0..2.0);
    let u3 = rng.gen_range(-2.0..2.0);
    let u1 = match name {
        "s31" => loop {
            let x: f64 = rng.gen_range(-3.0..3.0);
            if distance_to_lattice(x, FRAC_PI_2) > SAMPLE_GUARD {
                break x;
            }
        },
        "h31" => loop {
            let x: f64 = rng.gen_range(-2.0..2.0);
            if x.abs() > SAMPLE_GUARD {
                break x;
            }
        },
        "flat" => rng.gen_range(-2.0..2.0),
        other => return Err(Error::UnknownManifold(other.to_string())),
    };
    Ok([u1, u2, u3])
}

/// Largest scaled deviation between jet partials of the immersion (all
/// orders 1..=3, all four components) and finite differences.
pub fn jet_vs_fd(chart: &Chart, u: [f64; 3]) -> Result<f64> {
    chart.check_domain(u)?;
    let z = chart.position_jet(u);
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        let f = |p: [f64; 3]| chart.position(p)[a];
        for alpha in MULTI_INDICES.iter().skip(1) {
            worst = worst.max(scaled_deviation(z[a].partial(*alpha), fd_partial(&f, u, *alpha)));
        }
    }
    Ok(worst)
}

fn inverse3(m: &[[Jet3; 3]; 3]) -> Result<[[Jet3; 3]; 3]> {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let det = m[0][0] * cof(0, 0) + m[0][1] * cof(0, 1) + m[0][2] * cof(0, 2);
    let inv_det = det.recip()?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) * inv_det)))
}

/// `R_{ijkl}` in the φ-basis via coordinate Christoffel symbols of the
/// induced metric, with no use of the frame structure constants.
pub fn coordinate_curvature(chart: &Chart, u: [f64; 3]) -> Result<Tensor4> {
    let fj = frame_jets(chart, u)?;
    let tangents = coordinate_tangents(&chart.position_jet(u));
    let g: [[Jet3; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| chart.space.inner(&tangents[i], &tangents[j])));
    let ginv = inverse3(&g)?;
    let dg: [[[Jet3; 3]; 3]; 3] =
        std::array::from_fn(|m| std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].derivative(m))));

    // Γᵏᵢⱼ = ½ gᵏˡ (∂ᵢ g_jl + ∂ⱼ g_il − ∂ₗ g_ij), indexed [k][i][j]
    let mut chr = [[[Jet3::ZERO; 3]; 3]; 3];
    for (k, block) in chr.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Jet3::ZERO;
                for l in 0..3 {
                    acc = acc + ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                block[i][j] = acc * 0.5;
            }
        }
    }

    // R_{ijkl} = g_{lp}(∂ᵢΓᵖⱼₖ − ∂ⱼΓᵖᵢₖ + ΓᵐⱼₖΓᵖᵢₘ − ΓᵐᵢₖΓᵖⱼₘ)
    let gv = g.map(|row| row.map(|x| x.value()));
    let cv = chr.map(|a| a.map(|b| b.map(|x| x.value())));
    let mut rc = ZERO4;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut up = [0.0; 3];
                for (p, slot) in up.iter_mut().enumerate() {
                    let mut v = chr[p][j][k].d(i) - chr[p][i][k].d(j);
                    for m in 0..3 {
                        v += cv[m][j][k] * cv[p][i][m] - cv[m][i][k] * cv[p][j][m];
                    }
                    *slot = v;
                }
                for l in 0..3 {
                    rc[i][j][k][l] = (0..3).map(|p| gv[l][p] * up[p]).sum();
                }
            }
        }
    }

    let a = fj.coord.map(|row| row.map(|x| x.value()));
    let mut out = ZERO4;
    for (fa, o1) in out.iter_mut().enumerate() {
        for (fb, o2) in o1.iter_mut().enumerate() {
            for (fc, o3) in o2.iter_mut().enumerate() {
                for (fd, o4) in o3.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for i in 0..3 {
                        for j in 0..3 {
                            for k in 0..3 {
                                for l in 0..3 {
                                    s += a[fa][i] * a[fb][j] * a[fc][k] * a[fd][l] * rc[i][j][k][l];
                                }
                            }
                        }
                    }
                    *o4 = s;
                }
            }
        }
    }
    Ok(out)
}

/// Tangent vector fields as constant combinations of the frame, evaluated in
/// the ambient space as jets.
struct FieldOps<'a> {
    chart: &'a Chart,
    fj: FrameJets,
}

impl FieldOps<'_> {
    fn field(&self, x: &Vec3) -> AmbientVector<Jet3> {
        let mut v = AmbientVector::<Jet3>::zero();
        for (i, &c) in x.iter().enumerate() {
            if c != 0.0 {
                v = v + self.fj.vectors[i].scaled(Jet3::constant(c));
            }
        }
        v
    }

    /// Directional derivative `X(f)` of an ambient field along a frame combination.
    fn along(&self, x: &Vec3, f: &AmbientVector<Jet3>) -> AmbientVector<Jet3> {
        let mut v = AmbientVector::<Jet3>::zero();
        for (i, &c) in x.iter().enumerate() {
            if c != 0.0 {
                v = v + self.fj.directional_vec(i, f).scaled(Jet3::constant(c));
            }
        }
        v
    }

    fn along_scalar(&self, x: &Vec3, f: &Jet3) -> f64 {
        x.iter()
            .enumerate()
            .map(|(i, &c)| c * self.fj.directional(i, f).value())
            .sum()
    }

    /// Frame components `ε̂_k ⟨v, e_k⟩` of a tangent ambient vector.
    fn components(&self, v: &AmbientVector<Jet3>) -> Vec3 {
        std::array::from_fn(|k| self.chart.space.inner(v, &self.fj.vectors[k]).value() * self.fj.signs[k])
    }

    /// Gauss formula: ∇_X Y is the tangential part of the flat derivative.
    fn nabla(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        self.components(&self.along(x, &self.field(y)))
    }

    fn lie(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        let fx = self.field(x);
        let fy = self.field(y);
        self.components(&(self.along(x, &fy) - self.along(y, &fx)))
    }

    fn metric_jet(&self, x: &Vec3, y: &Vec3) -> Jet3 {
        self.chart.space.inner(&self.field(x), &self.field(y))
    }
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    std::array::from_fn(|i| a[i] + b[i])
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    std::array::from_fn(|i| a[i] - b[i])
}

/// `N(eᵢ,eⱼ,e_k)` and `N̂(eᵢ,eⱼ,e_k)` from their definitions.
pub fn nijenhuis_by_definition(chart: &Chart, u: [f64; 3], s: &StructurePack) -> Result<(Tensor3, Tensor3)> {
    let ops = FieldOps {
        chart,
        fj: frame_jets(chart, u)?,
    };
    let phi = |v: Vec3| s.phi_apply(&v);
    let xi = s.xi_vec();
    let e = |i: usize| {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        v
    };
    let sym = |x: &Vec3, y: &Vec3| add(ops.nabla(x, y), ops.nabla(y, x));
    let eta_jet = |x: &Vec3| ops.metric_jet(x, &xi);

    let mut n = ZERO3;
    let mut n_hat = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (e(i), e(j));
            let (px, py) = (phi(x), phi(y));

            let bracket = add(
                add(ops.lie(&px, &py), phi(phi(ops.lie(&x, &y)))),
                sub([0.0; 3], add(phi(ops.lie(&px, &y)), phi(ops.lie(&x, &py)))),
            );
            let d_eta =
                ops.along_scalar(&x, &eta_jet(&y)) - ops.along_scalar(&y, &eta_jet(&x)) - s.eta_apply(&ops.lie(&x, &y));
            let nv: Vec3 = std::array::from_fn(|k| bracket[k] + d_eta * xi[k]);

            let brace = add(
                add(sym(&px, &py), phi(phi(sym(&x, &y)))),
                sub([0.0; 3], add(phi(sym(&px, &y)), phi(sym(&x, &py)))),
            );
            // (L_ξ g)(x,y) = ξ(g(x,y)) − g([ξ,x],y) − g(x,[ξ,y])
            let lie_g = ops.along_scalar(&xi, &ops.metric_jet(&x, &y))
                - s.inner(&ops.lie(&xi, &x), &y)
                - s.inner(&x, &ops.lie(&xi, &y));
            let nh: Vec3 = std::array::from_fn(|k| brace[k] + lie_g * xi[k]);

            for k in 0..3 {
                n[i][j][k] = s.inner(&nv, &e(k));
                n_hat[i][j][k] = s.inner(&nh, &e(k));
            }
        }
    }
    Ok((n, n_hat))
}

/// Deviations found at one point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PointDeviations {
    pub jet_vs_fd: f64,
    pub curvature_routes: f64,
    pub nijenhuis_routes: f64,
    pub nijenhuis_hat_routes: f64,
    pub torsion: f64,
    pub metric_compatibility: f64,
    pub bianchi: f64,
}

impl PointDeviations {
    fn max(self, o: PointDeviations) -> PointDeviations {
        PointDeviations {
            jet_vs_fd: self.jet_vs_fd.max(o.jet_vs_fd),
            curvature_routes: self.curvature_routes.max(o.curvature_routes),
            nijenhuis_routes: self.nijenhuis_routes.max(o.nijenhuis_routes),
            nijenhuis_hat_routes: self.nijenhuis_hat_routes.max(o.nijenhuis_hat_routes),
            torsion: self.torsion.max(o.torsion),
            metric_compatibility: self.metric_compatibility.max(o.metric_compatibility),
            bianchi: self.bianchi.max(o.bianchi),
        }
    }
}

fn max_scaled3(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                worst = worst.max(scaled_deviation(a[i][j][k], b[i][j][k]));
            }
        }
    }
    worst
}

fn max_scaled4(a: &Tensor4, b: &Tensor4) -> f64 {
    (0..3).map(|i| max_scaled3(&a[i], &b[i])).fold(0.0, f64::max)
}

pub fn check_point(chart: &Chart, u: [f64; 3]) -> Result<PointDeviations> {
    let s = StructurePack::canonical();
    let frame = FramePoint::new(chart, u)?;
    let r = curvature(&frame);
    let f = fundamental_f(&frame, &s);
    let (n, n_hat) = nijenhuis_tensors(&f, &s);
    let (n_def, n_hat_def) = nijenhuis_by_definition(chart, u, &s)?;
    Ok(PointDeviations {
        jet_vs_fd: jet_vs_fd(chart, u)?,
        curvature_routes: max_scaled4(&r, &coordinate_curvature(chart, u)?),
        nijenhuis_routes: max_scaled3(&n, &n_def),
        nijenhuis_hat_routes: max_scaled3(&n_hat, &n_hat_def),
        torsion: torsion_residual(&frame.gamma, &frame.commutators),
        metric_compatibility: metric_compatibility_residual(&frame.gamma, &frame.signs),
        bianchi: curvature_identity_residual(&r),
    })
}

/// Summary of a seeded cross-check run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub manifold: String,
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
    pub max: PointDeviations,
}

impl CrosscheckReport {
    /// `(label, deviation, bound)` rows in report order.
    pub fn rows(&self) -> [(&'static str, f64, f64); 7] {
        let m = &self.max;
        [
            ("jet_vs_fd", m.jet_vs_fd, FD_TOL),
            ("curvature_routes", m.curvature_routes, ROUTE_TOL),
            ("nijenhuis_routes", m.nijenhuis_routes, ROUTE_TOL),
            ("nijenhuis_hat_routes", m.nijenhuis_hat_routes, ROUTE_TOL),
            ("torsion", m.torsion, IDENTITY_TOL),
            ("metric_compatibility", m.metric_compatibility, IDENTITY_TOL),
            ("bianchi", m.bianchi, IDENTITY_TOL),
        ]
    }

    pub fn pass(&self) -> bool {
        self.rows().iter().all(|(_, v, bound)| v < bound)
    }
}

pub fn crosscheck(name: &str, radius: f64, samples: usize, seed: u64) -> Result<CrosscheckReport> {
    let chart = manifolds::chart(name, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max = PointDeviations::default();
    for _ in 0..samples {
        let u = sample_point(name, &mut rng)?;
        max = max.max(check_point(&chart, u)?);
    }
    Ok(CrosscheckReport {
        manifold: name.to_string(),
        radius,
        samples,
        seed,
        max,
    })
}
