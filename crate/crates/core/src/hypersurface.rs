//! Parametrized hypersurfaces u ↦ z(u) ∈ ℝ⁴, their induced metric, the
//! orthonormal φ-basis obtained by normalizing the coordinate fields, and the
//! structure constants of that frame.

use std::fmt;
use std::sync::Arc;

use crate::ambient::{AmbientSpace, AmbientVector};
use crate::connection;
use crate::error::{Error, Result};
use crate::jet::Jet3;
use crate::tensor::{Mat3, Tensor3, Tensor4, Vec3};

/// Largest tolerated off-diagonal entry of the induced metric.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
/// Smallest tolerated `|⟨∂ᵢ,∂ᵢ⟩|` (and Gram determinant).
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Metric signs the φ-basis must have, in index order.
pub const PHI_SIGNS: Vec3 = [1.0, 1.0, -1.0];

/// The immersion itself, evaluable with plain reals or with jets.
pub trait ChartMap: Send + Sync {
    fn eval_jet(&self, u: [Jet3; 3]) -> AmbientVector<Jet3>;
    fn eval(&self, u: [f64; 3]) -> AmbientVector<f64>;
}

pub type DomainPredicate = Arc<dyn Fn([f64; 3]) -> bool + Send + Sync>;

/// A named parametrized hypersurface of a pseudo-Euclidean 4-space.
#[derive(Clone)]
pub struct Chart {
    pub name: String,
    pub space: AmbientSpace,
    pub map: Arc<dyn ChartMap>,
    pub domain: DomainPredicate,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("space", &self.space)
            .finish_non_exhaustive()
    }
}

impl Chart {
    pub fn new(
        name: impl Into<String>,
        space: AmbientSpace,
        map: impl ChartMap + 'static,
        domain: impl Fn([f64; 3]) -> bool + Send + Sync + 'static,
    ) -> Self {
        Chart {
            name: name.into(),
            space,
            map: Arc::new(map),
            domain: Arc::new(domain),
        }
    }

    pub fn contains(&self, u: [f64; 3]) -> bool {
        u.iter().all(|c| c.is_finite()) && (self.domain)(u)
    }

    pub fn check_domain(&self, u: [f64; 3]) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                chart: self.name.clone(),
                point: u,
            })
        }
    }

    pub fn position(&self, u: [f64; 3]) -> AmbientVector<f64> {
        self.map.eval(u)
    }

    /// Position as jets in (u¹, u², u³) at `u`.
    pub fn position_jet(&self, u: [f64; 3]) -> AmbientVector<Jet3> {
        self.map.eval_jet(Jet3::vars(u))
    }
}

/// Coordinate tangents ∂ᵢz as jets (exact through order 2).
pub(crate) fn coordinate_tangents(z: &AmbientVector<Jet3>) -> [AmbientVector<Jet3>; 3] {
    std::array::from_fn(|i| z.map(|c| c.derivative(i)))
}

fn jet_metric(space: &AmbientSpace, tangents: &[AmbientVector<Jet3>; 3]) -> [[Jet3; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| space.inner(&tangents[i], &tangents[j])))
}

/// First fundamental form `⟨∂ᵢ, ∂ⱼ⟩` at `u`.
pub fn induced_metric(chart: &Chart, u: [f64; 3]) -> Result<Mat3> {
    chart.check_domain(u)?;
    let tangents = coordinate_tangents(&chart.position_jet(u));
    let g = jet_metric(&chart.space, &tangents);
    Ok(g.map(|row| row.map(|x| x.value())))
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Frame data kept in jet form so it can be differentiated further.
pub(crate) struct FrameJets {
    pub signs: Vec3,
    /// eᵢ as ambient vectors (exact through order 2).
    pub vectors: [AmbientVector<Jet3>; 3],
    /// Coordinate components: eᵢ = Σₘ coord[i][m] ∂ₘ.
    pub coord: [[Jet3; 3]; 3],
}

impl FrameJets {
    /// Directional derivative eᵢ(f) of a jet; loses one order of exactness.
    pub fn directional(&self, i: usize, f: &Jet3) -> Jet3 {
        let mut acc = Jet3::ZERO;
        for m in 0..3 {
            acc = acc + self.coord[i][m] * f.derivative(m);
        }
        acc
    }

    pub fn directional_vec(&self, i: usize, v: &AmbientVector<Jet3>) -> AmbientVector<Jet3> {
        v.map(|c| self.directional(i, c))
    }
}

pub(crate) fn frame_jets(chart: &Chart, u: [f64; 3]) -> Result<FrameJets> {
    chart.check_domain(u)?;
    let tangents = coordinate_tangents(&chart.position_jet(u));
    let g = jet_metric(&chart.space, &tangents);
    let gv: Mat3 = g.map(|row| row.map(|x| x.value()));

    for i in 0..3 {
        for j in (i + 1)..3 {
            if gv[i][j].abs() > ORTHOGONALITY_TOL {
                return Err(Error::NotOrthogonal {
                    i: i + 1,
                    j: j + 1,
                    value: gv[i][j],
                });
            }
        }
    }
    for (i, row) in gv.iter().enumerate() {
        if row[i].abs() <= DEGENERACY_TOL {
            return Err(Error::DegenerateDirection {
                index: i + 1,
                value: row[i],
            });
        }
    }
    let signs: Vec3 = std::array::from_fn(|i| gv[i][i].signum());
    if signs != PHI_SIGNS {
        return Err(Error::NotPhiCompatible { signs });
    }

    let mut norms = [Jet3::ZERO; 3];
    for i in 0..3 {
        let len = g[i][i].abs(DEGENERACY_TOL)?.sqrt()?;
        norms[i] = len.recip()?;
    }
    let vectors = std::array::from_fn(|i| tangents[i].scaled(norms[i]));
    let coord = std::array::from_fn(|i| std::array::from_fn(|m| if i == m { norms[i] } else { Jet3::ZERO }));
    Ok(FrameJets { signs, vectors, coord })
}

/// The φ-basis at a point: `eᵢ = ∂ᵢ / √|⟨∂ᵢ,∂ᵢ⟩|`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    pub point: Vec3,
    /// Ambient components of e₁, e₂, e₃.
    pub vectors: [[f64; 4]; 3],
    /// Coordinate components: eᵢ = Σₘ coord[i][m] ∂ₘ.
    pub coord: Mat3,
    /// (g(e₁,e₁), g(e₂,e₂), g(e₃,e₃)).
    pub signs: Vec3,
}

pub fn orthonormal_frame(chart: &Chart, u: [f64; 3]) -> Result<OrthonormalFrame> {
    let fj = frame_jets(chart, u)?;
    Ok(OrthonormalFrame {
        point: u,
        vectors: fj.vectors.map(|v| v.values()),
        coord: fj.coord.map(|row| row.map(|x| x.value())),
        signs: fj.signs,
    })
}

/// Jets of the structure constants `cᵏᵢⱼ` (exact through order 1), indexed `[k][i][j]`.
pub(crate) fn commutator_jets(chart: &Chart, fj: &FrameJets) -> [[[Jet3; 3]; 3]; 3] {
    let mut c = [[[Jet3::ZERO; 3]; 3]; 3];
    for i in 0..3 {
        for j in (i + 1)..3 {
            let bracket = fj.directional_vec(i, &fj.vectors[j]) - fj.directional_vec(j, &fj.vectors[i]);
            for k in 0..3 {
                let ck = chart.space.inner(&bracket, &fj.vectors[k]) * fj.signs[k];
                c[k][i][j] = ck;
                c[k][j][i] = -ck;
            }
        }
    }
    c
}

/// Structure constants `[eᵢ,eⱼ] = cᵏᵢⱼ e_k`, indexed `[k][i][j]`.
pub fn frame_commutators(chart: &Chart, u: [f64; 3]) -> Result<Tensor3> {
    let fj = frame_jets(chart, u)?;
    Ok(jets_to_values(&commutator_jets(chart, &fj)))
}

/// Largest ambient component of `[∂ᵢ,∂ⱼ]`, which must vanish identically.
pub fn coordinate_commutator_residual(chart: &Chart, u: [f64; 3]) -> Result<f64> {
    chart.check_domain(u)?;
    let tangents = coordinate_tangents(&chart.position_jet(u));
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for a in 0..4 {
                let lhs = tangents[j][a].derivative(i).value();
                let rhs = tangents[i][a].derivative(j).value();
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Ok(worst)
}

pub(crate) fn jets_to_values(t: &[[[Jet3; 3]; 3]; 3]) -> Tensor3 {
    t.map(|a| a.map(|b| b.map(|x| x.value())))
}

/// Everything the structure layer needs about the frame at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePoint {
    pub point: Vec3,
    pub vectors: [[f64; 4]; 3],
    pub coord: Mat3,
    pub signs: Vec3,
    /// `cᵏᵢⱼ`, indexed `[k][i][j]`.
    pub commutators: Tensor3,
    /// `Γᵏᵢⱼ` with `∇_{eᵢ}eⱼ = Γᵏᵢⱼ e_k`, indexed `[k][i][j]`.
    pub gamma: Tensor3,
    /// `e_l(Γᵏᵢⱼ)`, indexed `[l][k][i][j]`.
    pub gamma_dirderiv: Tensor4,
}

impl FramePoint {
    pub fn new(chart: &Chart, u: [f64; 3]) -> Result<Self> {
        let fj = frame_jets(chart, u)?;
        let c = commutator_jets(chart, &fj);
        let gamma = connection::koszul(&c, &fj.signs);
        let gamma_dirderiv = connection::directional_derivatives(&fj, &gamma);
        Ok(FramePoint {
            point: u,
            vectors: fj.vectors.map(|v| v.values()),
            coord: fj.coord.map(|row| row.map(|x| x.value())),
            signs: fj.signs,
            commutators: jets_to_values(&c),
            gamma: jets_to_values(&gamma),
            gamma_dirderiv,
        })
    }

    /// The diagonal frame metric diag(ε̂₁, ε̂₂, ε̂₃) as a matrix.
    pub fn metric(&self) -> Mat3 {
        let s = self.signs;
        [[s[0], 0.0, 0.0], [0.0, s[1], 0.0], [0.0, 0.0, s[2]]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{flat_chart, h31_chart, s31_chart};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    /// z = M u, a linear immersion.
    struct Linear([[f64; 3]; 4]);

    impl ChartMap for Linear {
        fn eval_jet(&self, u: [Jet3; 3]) -> AmbientVector<Jet3> {
            AmbientVector(std::array::from_fn(|a| {
                (0..3).fold(Jet3::ZERO, |acc, i| acc + u[i] * self.0[a][i])
            }))
        }
        fn eval(&self, u: [f64; 3]) -> AmbientVector<f64> {
            AmbientVector(std::array::from_fn(|a| (0..3).map(|i| self.0[a][i] * u[i]).sum()))
        }
    }

    fn linear(m: [[f64; 3]; 4]) -> Chart {
        Chart::new("linear", AmbientSpace::lorentz(), Linear(m), |_| true)
    }

    fn assert_diag(g: Mat3, d: [f64; 3]) {
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { d[i] } else { 0.0 };
                assert!((g[i][j] - want).abs() < 1e-12, "g[{i}][{j}] = {}", g[i][j]);
            }
        }
    }

    #[test]
    fn induced_metrics() {
        assert_diag(
            induced_metric(&s31_chart(1.0).unwrap(), [FRAC_PI_4, 0.3, 0.8]).unwrap(),
            [1.0, 0.5, -0.5],
        );
        let u1: f64 = 0.9;
        assert_diag(
            induced_metric(&h31_chart(1.0).unwrap(), [u1, 2.0, -1.0]).unwrap(),
            [1.0, u1.sinh().powi(2), -u1.cosh().powi(2)],
        );
        assert_diag(
            induced_metric(&flat_chart(), [1.0, 2.0, 3.0]).unwrap(),
            [1.0, 1.0, -1.0],
        );
        assert_diag(
            induced_metric(&s31_chart(2.0).unwrap(), [1.0, 0.0, 0.0]).unwrap(),
            [4.0, 4.0 * 1f64.cos().powi(2), -4.0 * 1f64.sin().powi(2)],
        );
    }

    #[test]
    fn frame_is_orthonormal_with_phi_signs() {
        for (chart, u) in [
            (s31_chart(1.0).unwrap(), [FRAC_PI_4, 0.0, 0.0]),
            (s31_chart(0.5).unwrap(), [2.2, 1.0, -0.4]),
            (h31_chart(2.0).unwrap(), [-0.7, 0.1, 0.2]),
        ] {
            let f = orthonormal_frame(&chart, u).unwrap();
            assert_eq!(f.signs, PHI_SIGNS);
            let v = f.vectors.map(AmbientVector);
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { PHI_SIGNS[i] } else { 0.0 };
                    assert!((chart.space.inner(&v[i], &v[j]) - want).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn frame_normalization_tracks_the_sign_branches() {
        let f = orthonormal_frame(&s31_chart(1.0).unwrap(), [FRAC_PI_4, 0.0, 0.0]).unwrap();
        assert!((f.coord[1][1] - SQRT_2).abs() < 1e-12);
        // cos u¹ < 0: e₂ = ε₁/(r cos u¹) ∂₂ with ε₁ = −1
        let u1: f64 = 2.5;
        let f = orthonormal_frame(&s31_chart(1.0).unwrap(), [u1, 0.0, 0.0]).unwrap();
        assert!((f.coord[1][1] - (-1.0 / u1.cos())).abs() < 1e-12);
        // e₂ = ε/(r sinh u¹) ∂₂ with ε = sgn u¹
        for u1 in [-1.3f64, 0.4] {
            let f = orthonormal_frame(&h31_chart(2.0).unwrap(), [u1, 0.0, 0.0]).unwrap();
            assert!((f.coord[1][1] - u1.signum() / (2.0 * u1.sinh())).abs() < 1e-12);
        }
        let f = orthonormal_frame(&flat_chart(), [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(f.coord, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    }

    #[test]
    fn commutators() {
        let c = frame_commutators(&s31_chart(1.0).unwrap(), [FRAC_PI_4, 0.2, 0.5]).unwrap();
        assert!((c[1][0][1] - 1.0).abs() < 1e-12);
        assert!((c[1][1][0] + 1.0).abs() < 1e-12);
        for k in 0..3 {
            assert!(c[k][1][2].abs() < 1e-12);
        }
        let u1: f64 = 0.8;
        let c = frame_commutators(&h31_chart(1.0).unwrap(), [u1, 0.0, 0.0]).unwrap();
        assert!((c[1][0][1] + 1.0 / u1.tanh()).abs() < 1e-12);
        assert!((c[2][0][2] + u1.tanh()).abs() < 1e-12);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert!((c[k][i][j] + c[k][j][i]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn coordinate_fields_commute() {
        for (chart, u) in [
            (s31_chart(1.0).unwrap(), [0.3, 1.0, 2.0]),
            (h31_chart(1.5).unwrap(), [-1.1, 0.2, 0.9]),
        ] {
            assert!(coordinate_commutator_residual(&chart, u).unwrap() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_orthogonal_chart() {
        let chart = linear([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(
            orthonormal_frame(&chart, [0.0; 3]),
            Err(Error::NotOrthogonal { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn rejects_wrong_sign_order() {
        // ∂₂ time-like, ∂₃ space-like
        let chart = linear([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        assert_eq!(
            orthonormal_frame(&chart, [0.0; 3]).unwrap_err(),
            Error::NotPhiCompatible {
                signs: [1.0, -1.0, 1.0]
            }
        );
    }

    #[test]
    fn rejects_null_direction() {
        let chart = linear([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        let err = orthonormal_frame(&chart, [0.0; 3]).unwrap_err();
        assert!(matches!(err, Error::DegenerateDirection { index: 2, .. }));
        assert!(err.is_domain());
    }

    #[test]
    fn rejects_excluded_points() {
        let err = FramePoint::new(&s31_chart(1.0).unwrap(), [std::f64::consts::FRAC_PI_2, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::OutOfDomain { .. }));
        assert!(induced_metric(&h31_chart(1.0).unwrap(), [0.0, 1.0, 1.0]).is_err());
        assert!(induced_metric(&flat_chart(), [f64::NAN, 0.0, 0.0]).is_err());
    }

    #[test]
    fn det3_of_diagonal() {
        assert_eq!(det3(&[[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, -3.0]]), -6.0);
    }
}
