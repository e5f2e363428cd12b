//! Levi-Civita connection of the frame via the Koszul identity, the
//! curvature tensor, Ricci-type contractions and sectional curvature.

use crate::acbm::StructurePack;
use crate::error::{Error, Result};
use crate::hypersurface::{commutator_jets, frame_jets, Chart, FrameJets, FramePoint};
use crate::jet::{Jet3, Scalar};
use crate::tensor::{Mat3, Tensor3, Tensor4, Vec3, ZERO4};

/// Tolerance for `g(x,y) = 0` and `g(x,x)g(y,y) ≠ 0` in [`sectional`].
pub const PLANE_TOL: f64 = 1e-10;

/// Koszul identity for an orthonormal frame (constant metric components):
/// `2g(∇ᵢeⱼ, e_k) = g([eᵢ,eⱼ],e_k) − g([eⱼ,e_k],eᵢ) + g([e_k,eᵢ],eⱼ)`.
pub fn koszul<S: Scalar>(c: &[[[S; 3]; 3]; 3], signs: &Vec3) -> [[[S; 3]; 3]; 3] {
    // lowered structure constants c_{ijk} = g([eᵢ,eⱼ], e_k)
    let low = |i: usize, j: usize, k: usize| c[k][i][j] * signs[k];
    std::array::from_fn(|k| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| (low(i, j, k) - low(j, k, i) + low(k, i, j)) * (0.5 * signs[k]))
        })
    })
}

/// `Γᵏᵢⱼ` from the structure constants `cᵏᵢⱼ` and frame signs.
pub fn levi_civita(commutators: &Tensor3, signs: &Vec3) -> Tensor3 {
    koszul(commutators, signs)
}

pub(crate) fn directional_derivatives(fj: &FrameJets, gamma: &[[[Jet3; 3]; 3]; 3]) -> Tensor4 {
    let mut out = ZERO4;
    for (l, block) in out.iter_mut().enumerate() {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    block[k][i][j] = fj.directional(l, &gamma[k][i][j]).value();
                }
            }
        }
    }
    out
}

/// `e_l(Γᵏᵢⱼ)`, indexed `[l][k][i][j]`.
pub fn gamma_directional_derivatives(chart: &Chart, u: [f64; 3]) -> Result<Tensor4> {
    let fj = frame_jets(chart, u)?;
    let c = commutator_jets(chart, &fj);
    let gamma = koszul(&c, &fj.signs);
    Ok(directional_derivatives(&fj, &gamma))
}

/// `R_{ijkl} = g(R(eᵢ,eⱼ)e_k, e_l)` with `R = [∇,∇] − ∇_{[,]}`.
pub fn curvature(frame: &FramePoint) -> Tensor4 {
    let g = &frame.gamma;
    let dg = &frame.gamma_dirderiv;
    let c = &frame.commutators;
    let mut r = ZERO4;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for p in 0..3 {
                    let mut v = dg[i][p][j][k] - dg[j][p][i][k];
                    for m in 0..3 {
                        v += g[m][j][k] * g[p][i][m] - g[m][i][k] * g[p][j][m] - c[m][i][j] * g[p][m][k];
                    }
                    r[i][j][k][p] = frame.signs[p] * v;
                }
            }
        }
    }
    r
}

/// Ricci-type tensors and scalars of a curvature tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    pub r: Tensor4,
    pub rho: Mat3,
    pub rho_star: Mat3,
    pub tau: f64,
    pub tau_star: f64,
    pub tau_star_star: f64,
    /// k₁₂, k₁₃, k₂₃.
    pub sectional: Vec3,
}

impl CurvatureData {
    pub fn from_frame(frame: &FramePoint, structure: &StructurePack) -> Result<Self> {
        let r = curvature(frame);
        let g = frame.metric();
        let scalars = ricci_and_scalars(&r, &frame.signs, &structure.phi);
        let basis = |a: usize| {
            let mut v = [0.0; 3];
            v[a] = 1.0;
            v
        };
        let sectional = [
            sectional(&r, &g, &basis(0), &basis(1))?,
            sectional(&r, &g, &basis(0), &basis(2))?,
            sectional(&r, &g, &basis(1), &basis(2))?,
        ];
        Ok(CurvatureData {
            r,
            rho: scalars.rho,
            rho_star: scalars.rho_star,
            tau: scalars.tau,
            tau_star: scalars.tau_star,
            tau_star_star: scalars.tau_star_star,
            sectional,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicciScalars {
    pub rho: Mat3,
    pub rho_star: Mat3,
    pub tau: f64,
    pub tau_star: f64,
    pub tau_star_star: f64,
}

/// `ρ(y,z) = gⁱʲR(eᵢ,y,z,eⱼ)`, `ρ*(y,z) = gⁱʲR(eᵢ,y,z,φeⱼ)` and the traces
/// `τ = gⁱʲρᵢⱼ`, `τ* = gⁱʲρ*ᵢⱼ`, `τ** = gⁱʲρ*(eᵢ,φeⱼ)`.
pub fn ricci_and_scalars(r: &Tensor4, signs: &Vec3, phi: &Mat3) -> RicciScalars {
    let mut rho = [[0.0; 3]; 3];
    let mut rho_star = [[0.0; 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                rho[j][k] += signs[i] * r[i][j][k][i];
                for m in 0..3 {
                    rho_star[j][k] += signs[i] * phi[m][i] * r[i][j][k][m];
                }
            }
        }
    }
    let mut tau = 0.0;
    let mut tau_star = 0.0;
    let mut tau_star_star = 0.0;
    for i in 0..3 {
        tau += signs[i] * rho[i][i];
        tau_star += signs[i] * rho_star[i][i];
        for m in 0..3 {
            tau_star_star += signs[i] * phi[m][i] * rho_star[i][m];
        }
    }
    RicciScalars {
        rho,
        rho_star,
        tau,
        tau_star,
        tau_star_star,
    }
}

fn bilinear(g: &Mat3, x: &Vec3, y: &Vec3) -> f64 {
    let mut s = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            s += g[a][b] * x[a] * y[b];
        }
    }
    s
}

/// `R(x,y,z,w)` for frame-coordinate vectors.
pub fn curvature_form(r: &Tensor4, x: &Vec3, y: &Vec3, z: &Vec3, w: &Vec3) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    s += r[i][j][k][l] * x[i] * y[j] * z[k] * w[l];
                }
            }
        }
    }
    s
}

/// `k(x,y) = R(x,y,y,x) / (g(x,x) g(y,y))` for an orthogonal, non-degenerate pair.
pub fn sectional(r: &Tensor4, g: &Mat3, x: &Vec3, y: &Vec3) -> Result<f64> {
    let gxy = bilinear(g, x, y);
    if gxy.abs() > PLANE_TOL {
        return Err(Error::NonOrthogonalPlane(gxy));
    }
    let denom = bilinear(g, x, x) * bilinear(g, y, y);
    if denom.abs() <= PLANE_TOL {
        return Err(Error::DegeneratePlane(denom));
    }
    Ok(curvature_form(r, x, y, y, x) / denom)
}

/// `max |R_{ijkl} − c (g_{jk} g_{il} − g_{ik} g_{jl})|`.
pub fn constant_curvature_residual(r: &Tensor4, g: &Mat3, c: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let model = c * (g[j][k] * g[i][l] - g[i][k] * g[j][l]);
                    worst = worst.max((r[i][j][k][l] - model).abs());
                }
            }
        }
    }
    worst
}

/// `max |ε̂_k Γᵏᵢⱼ + ε̂ⱼ Γʲᵢₖ|`.
pub fn metric_compatibility_residual(gamma: &Tensor3, signs: &Vec3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                worst = worst.max((signs[k] * gamma[k][i][j] + signs[j] * gamma[j][i][k]).abs());
            }
        }
    }
    worst
}

/// `max |Γᵏᵢⱼ − Γᵏⱼᵢ − cᵏᵢⱼ|`.
pub fn torsion_residual(gamma: &Tensor3, commutators: &Tensor3) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((gamma[k][i][j] - gamma[k][j][i] - commutators[k][i][j]).abs());
            }
        }
    }
    worst
}

/// Largest violation of the two antisymmetries and the first Bianchi identity.
pub fn curvature_identity_residual(r: &Tensor4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let v = r[i][j][k][l];
                    worst = worst
                        .max((v + r[j][i][k][l]).abs())
                        .max((v + r[i][j][l][k]).abs())
                        .max((v + r[j][k][i][l] + r[k][i][j][l]).abs());
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosscheck::fd_partial;
    use crate::manifolds::{flat_chart, h31_chart, s31_chart};
    use crate::tensor::{max_abs3, max_abs4};
    use std::f64::consts::FRAC_PI_4;

    const G: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];

    fn data(chart: &Chart, u: [f64; 3]) -> (FramePoint, CurvatureData) {
        let f = FramePoint::new(chart, u).unwrap();
        let c = CurvatureData::from_frame(&f, &StructurePack::canonical()).unwrap();
        (f, c)
    }

    #[test]
    fn levi_civita_on_s31() {
        let f = FramePoint::new(&s31_chart(1.0).unwrap(), [FRAC_PI_4, 0.4, -0.3]).unwrap();
        assert!((f.gamma[1][1][0] + 1.0).abs() < 1e-12);
        for k in 0..3 {
            for j in 0..3 {
                assert!(f.gamma[k][0][j].abs() < 1e-12, "∇_e1 e{} ≠ 0", j + 1);
            }
        }
        assert_eq!(levi_civita(&f.commutators, &f.signs), f.gamma);
        assert!(metric_compatibility_residual(&f.gamma, &f.signs) < 1e-10);
        assert!(torsion_residual(&f.gamma, &f.commutators) < 1e-10);
    }

    #[test]
    fn flat_connection_vanishes() {
        let (f, c) = data(&flat_chart(), [1.0, 2.0, 3.0]);
        assert_eq!(max_abs3(&f.gamma), 0.0);
        assert_eq!(max_abs4(&f.gamma_dirderiv), 0.0);
        assert_eq!(max_abs4(&c.r), 0.0);
        assert_eq!((c.tau, c.tau_star, c.tau_star_star), (0.0, 0.0, 0.0));
        assert!(constant_curvature_residual(&c.r, &G, 0.0) < 1e-12);
    }

    #[test]
    fn directional_derivatives_match_finite_differences() {
        let chart = s31_chart(1.0).unwrap();
        let dg = gamma_directional_derivatives(&chart, [FRAC_PI_4, 0.0, 0.0]).unwrap();
        assert!((dg[0][1][1][0] + 2.0).abs() < 1e-10);
        // e₁ = ∂₁/r; Γ depends on u¹ only
        for r in [1.0, 2.0] {
            let chart = s31_chart(r).unwrap();
            let u = [0.6, 0.3, 0.9];
            let dg = gamma_directional_derivatives(&chart, u).unwrap();
            for (k, i, j) in [(1, 1, 0), (2, 2, 0), (0, 1, 1), (0, 2, 2)] {
                let g = |p: [f64; 3]| FramePoint::new(&chart, p).unwrap().gamma[k][i][j];
                let fd = fd_partial(&g, u, [1, 0, 0]) / r;
                assert!((dg[0][k][i][j] - fd).abs() < 1e-6 * fd.abs().max(1.0));
                assert!(dg[1][k][i][j].abs() < 1e-12 && dg[2][k][i][j].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn s31_curvature_and_contractions() {
        let (_, c) = data(&s31_chart(1.0).unwrap(), [0.5, 1.0, -2.0]);
        assert!((c.r[0][1][1][0] - 1.0).abs() < 1e-10);
        assert!((c.r[0][2][2][0] + 1.0).abs() < 1e-10);
        assert!((c.r[1][2][2][1] + 1.0).abs() < 1e-10);
        assert!((c.rho[0][0] - 2.0).abs() < 1e-10);
        assert!((c.rho[1][1] - 2.0).abs() < 1e-10);
        assert!((c.rho[2][2] + 2.0).abs() < 1e-10);
        assert!((c.tau - 6.0).abs() < 1e-10);
        assert!(c.tau_star.abs() < 1e-10);
        assert!((c.tau_star_star - 2.0).abs() < 1e-10);
        assert!((c.rho_star[1][2] - 1.0).abs() < 1e-10);
        assert!((c.rho_star[2][1] - 1.0).abs() < 1e-10);
        assert!(c.sectional.iter().all(|k| (k - 1.0).abs() < 1e-10));
        assert!(constant_curvature_residual(&c.r, &G, 1.0) < 1e-9);
        assert!(curvature_identity_residual(&c.r) < 1e-10);
    }

    #[test]
    fn h31_curvature_and_contractions() {
        let (_, c) = data(&h31_chart(2.0).unwrap(), [0.7, 0.0, 0.0]);
        assert!((c.r[0][1][1][0] + 0.25).abs() < 1e-10);
        let (_, c) = data(&h31_chart(1.0).unwrap(), [-1.2, 0.4, 0.1]);
        assert!((c.tau + 6.0).abs() < 1e-10);
        assert!((c.tau_star_star + 2.0).abs() < 1e-10);
        assert!((c.rho_star[1][2] + 1.0).abs() < 1e-10);
        assert!((c.sectional[0] + 1.0).abs() < 1e-10);
        assert!(constant_curvature_residual(&c.r, &G, -1.0) < 1e-9);
        assert!(constant_curvature_residual(&c.r, &G, 1.0) > 1.0);
    }

    #[test]
    fn sectional_on_explicit_planes() {
        let (_, c) = data(&s31_chart(1.0).unwrap(), [0.5, 0.0, 0.0]);
        let e = |a: usize| {
            let mut v = [0.0; 3];
            v[a] = 1.0;
            v
        };
        assert!((sectional(&c.r, &G, &e(1), &e(2)).unwrap() - 1.0).abs() < 1e-10);
        let x = [1.0, 2.0, 0.5];
        let y = [2.0, -1.0, 0.0];
        assert!((sectional(&c.r, &G, &x, &y).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sectional_rejects_bad_planes() {
        let (_, c) = data(&s31_chart(1.0).unwrap(), [0.5, 0.0, 0.0]);
        let x = [1.0, 0.0, 0.0];
        assert!(matches!(sectional(&c.r, &G, &x, &x), Err(Error::NonOrthogonalPlane(_))));
        // e₂ + e₃ is null
        assert!(matches!(
            sectional(&c.r, &G, &x, &[0.0, 1.0, 1.0]),
            Err(Error::DegeneratePlane(_))
        ));
    }

    #[test]
    fn koszul_is_generic_over_scalars() {
        let c = [
            [[0.0; 3]; 3],
            [[0.0, 2.0, 0.0], [-2.0, 0.0, 0.0], [0.0; 3]],
            [[0.0; 3]; 3],
        ];
        let g = koszul(&c, &[1.0, 1.0, -1.0]);
        let cj = c.map(|a| a.map(|b| b.map(Jet3::constant)));
        let gj = koszul(&cj, &[1.0, 1.0, -1.0]);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(gj[k][i][j].value(), g[k][i][j]);
                }
            }
        }
        assert!(torsion_residual(&g, &c) < 1e-15);
    }
}
