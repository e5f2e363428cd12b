//! Built-in hypersurfaces and their closed-form expectations.
//!
//! * `s31`: the space-like sphere ⟨z,z⟩ = r² in ℝ^{3,1} (de Sitter 3-space),
//! * `h31`: the time-like sphere ⟨z,z⟩ = −r² in ℝ^{2,2} (anti-de Sitter 3-space),
//! * `flat`: the hyperplane z = (u¹, u², 0, u³) in ℝ^{3,1}, a cosymplectic reference.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use crate::acbm::{BasicClass, ClassParams, StructurePack};
use crate::ambient::{AmbientSpace, AmbientVector};
use crate::error::{Error, Result};
use crate::evaluate::Quantities;
use crate::hypersurface::{Chart, ChartMap};
use crate::jet::{Jet3, Scalar};
use crate::tensor::{Mat3, Tensor3, Tensor4, ZERO3, ZERO4};

/// Points closer than this to an excluded parameter value are out of domain.
pub const DOMAIN_GUARD: f64 = 1e-6;

pub const MANIFOLD_NAMES: [&str; 3] = ["s31", "h31", "flat"];

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

fn s31_embed<S: Scalar>(r: f64, u: [S; 3]) -> [S; 4] {
    let [a, b, c] = u;
    [
        a.cos() * b.cos() * r,
        a.cos() * b.sin() * r,
        a.sin() * c.cosh() * r,
        a.sin() * c.sinh() * r,
    ]
}

fn h31_embed<S: Scalar>(r: f64, u: [S; 3]) -> [S; 4] {
    let [a, b, c] = u;
    [
        a.sinh() * b.cos() * r,
        a.sinh() * b.sin() * r,
        a.cosh() * c.cos() * r,
        a.cosh() * c.sin() * r,
    ]
}

fn flat_embed<S: Scalar>(u: [S; 3]) -> [S; 4] {
    [u[0], u[1], S::from_f64(0.0), u[2]]
}

struct SpaceLikeSphere {
    r: f64,
}

impl ChartMap for SpaceLikeSphere {
    fn eval_jet(&self, u: [Jet3; 3]) -> AmbientVector<Jet3> {
        AmbientVector(s31_embed(self.r, u))
    }
    fn eval(&self, u: [f64; 3]) -> AmbientVector<f64> {
        AmbientVector(s31_embed(self.r, u))
    }
}

struct TimeLikeSphere {
    r: f64,
}

impl ChartMap for TimeLikeSphere {
    fn eval_jet(&self, u: [Jet3; 3]) -> AmbientVector<Jet3> {
        AmbientVector(h31_embed(self.r, u))
    }
    fn eval(&self, u: [f64; 3]) -> AmbientVector<f64> {
        AmbientVector(h31_embed(self.r, u))
    }
}

struct Hyperplane;

impl ChartMap for Hyperplane {
    fn eval_jet(&self, u: [Jet3; 3]) -> AmbientVector<Jet3> {
        AmbientVector(flat_embed(u))
    }
    fn eval(&self, u: [f64; 3]) -> AmbientVector<f64> {
        AmbientVector(flat_embed(u))
    }
}

/// Distance from `x` to the nearest multiple of `period`.
pub fn distance_to_lattice(x: f64, period: f64) -> f64 {
    (x - (x / period).round() * period).abs()
}

pub fn s31_chart(r: f64) -> Result<Chart> {
    check_radius(r)?;
    Ok(Chart::new(
        "s31",
        AmbientSpace::lorentz(),
        SpaceLikeSphere { r },
        |u: [f64; 3]| distance_to_lattice(u[0], FRAC_PI_2) > DOMAIN_GUARD,
    ))
}

pub fn h31_chart(r: f64) -> Result<Chart> {
    check_radius(r)?;
    Ok(Chart::new(
        "h31",
        AmbientSpace::neutral(),
        TimeLikeSphere { r },
        |u: [f64; 3]| u[0].abs() > DOMAIN_GUARD,
    ))
}

pub fn flat_chart() -> Chart {
    Chart::new("flat", AmbientSpace::lorentz(), Hyperplane, |_| true)
}

/// Sign a scalar is expected to have everywhere on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignExpectation {
    Negative,
    Zero,
    Positive,
}

impl SignExpectation {
    pub fn label(self) -> &'static str {
        match self {
            SignExpectation::Negative => "negative",
            SignExpectation::Zero => "zero",
            SignExpectation::Positive => "positive",
        }
    }
}

/// The six geometric statements to be confirmed for a manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremExpectations {
    /// Union of the pointwise class memberships over the grid.
    pub classes: Vec<BasicClass>,
    pub d_vanishes: bool,
    pub nabla_phi_sign: SignExpectation,
    pub norm_n_sign: SignExpectation,
    pub norm_n_hat_sign: SignExpectation,
    pub eta_closed_xi_geodesic: bool,
    /// Constant sectional curvature.
    pub curvature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    SpaceLike,
    TimeLike,
    Flat,
}

/// A built-in chart together with closed-form values for everything the
/// engine computes on it.
#[derive(Debug, Clone)]
pub struct OracleSuite {
    pub name: String,
    pub radius: f64,
    pub chart: Chart,
    pub theorem: TheoremExpectations,
    kind: Kind,
}

pub fn make_s31(r: f64) -> Result<OracleSuite> {
    Ok(OracleSuite {
        name: "s31".into(),
        radius: r,
        chart: s31_chart(r)?,
        theorem: TheoremExpectations {
            classes: vec![BasicClass::F5, BasicClass::F9],
            d_vanishes: true,
            nabla_phi_sign: SignExpectation::Negative,
            norm_n_sign: SignExpectation::Positive,
            norm_n_hat_sign: SignExpectation::Positive,
            eta_closed_xi_geodesic: true,
            curvature: 1.0 / (r * r),
        },
        kind: Kind::SpaceLike,
    })
}

pub fn make_h31(r: f64) -> Result<OracleSuite> {
    Ok(OracleSuite {
        name: "h31".into(),
        radius: r,
        chart: h31_chart(r)?,
        theorem: TheoremExpectations {
            classes: vec![BasicClass::F5, BasicClass::F9],
            d_vanishes: true,
            nabla_phi_sign: SignExpectation::Negative,
            norm_n_sign: SignExpectation::Positive,
            norm_n_hat_sign: SignExpectation::Positive,
            eta_closed_xi_geodesic: true,
            curvature: -1.0 / (r * r),
        },
        kind: Kind::TimeLike,
    })
}

pub fn make_flat() -> OracleSuite {
    OracleSuite {
        name: "flat".into(),
        radius: 1.0,
        chart: flat_chart(),
        theorem: TheoremExpectations {
            classes: vec![],
            d_vanishes: true,
            nabla_phi_sign: SignExpectation::Zero,
            norm_n_sign: SignExpectation::Zero,
            norm_n_hat_sign: SignExpectation::Zero,
            eta_closed_xi_geodesic: true,
            curvature: 0.0,
        },
        kind: Kind::Flat,
    }
}

/// Registry lookup by CLI name. The flat chart ignores the radius.
pub fn suite(name: &str, r: f64) -> Result<OracleSuite> {
    match name {
        "s31" => make_s31(r),
        "h31" => make_h31(r),
        "flat" => {
            check_radius(r)?;
            Ok(make_flat())
        }
        other => Err(Error::UnknownManifold(other.to_string())),
    }
}

pub fn chart(name: &str, r: f64) -> Result<Chart> {
    suite(name, r).map(|s| s.chart)
}

/// Default verification grid (u¹ × u² × u³, 5 × 3 × 3 points).
pub fn default_grid(name: &str) -> Vec<[f64; 3]> {
    let u1: Vec<f64> = match name {
        "s31" => vec![FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, 5.0 * FRAC_PI_8, 3.0 * PI / 4.0],
        "h31" => vec![-1.0, -0.5, 0.5, 1.0, 2.0],
        _ => vec![-1.0, 0.0, 0.5, 1.0, 2.0],
    };
    product_grid(&u1, &[0.0, 0.7, 1.9], &[0.0, 0.7, 1.9])
}

pub fn product_grid(u1: &[f64], u2: &[f64], u3: &[f64]) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(u1.len() * u2.len() * u3.len());
    for &a in u1 {
        for &b in u2 {
            for &c in u3 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// `c (g_{jk} g_{il} − g_{ik} g_{jl})` on the φ-basis.
fn constant_curvature_tensor(c: f64, g: &Mat3) -> Tensor4 {
    let mut r = ZERO4;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    r[i][j][k][l] = c * (g[j][k] * g[i][l] - g[i][k] * g[j][l]);
                }
            }
        }
    }
    r
}

// 1-based setters keep the closed forms readable.
fn set3(t: &mut Tensor3, ijk: [usize; 3], v: f64) {
    t[ijk[0] - 1][ijk[1] - 1][ijk[2] - 1] = v;
}

/// Closed-form data shared by both spheres. Each sphere's frame has
/// `[e₁,e₂] = a e₂`, `[e₁,e₃] = b e₃`, `[e₂,e₃] = 0`, with `a`, `b` and their
/// `e₁`-derivatives supplied by the caller.
struct SphereForms {
    induced: [f64; 3],
    a: f64,
    b: f64,
    da: f64,
    db: f64,
    /// F₂₁₃ = F₂₃₁ and F₃₁₂ = F₃₂₁.
    f213: f64,
    f312: f64,
    /// N₁₂₂, N̂₁₂₂, N̂₂₂₁.
    n122: f64,
    n_hat122: f64,
    n_hat221: f64,
    norm_nabla_phi: f64,
    norm_n: f64,
    norm_n_hat: f64,
    half_theta_star1: f64,
    mu: f64,
    curvature: f64,
    rho_diag: f64,
    rho_star23: f64,
    tau: f64,
    tau_star_star: f64,
}

impl SphereForms {
    fn quantities(&self) -> Quantities {
        let mut c = ZERO3;
        set3(&mut c, [2, 1, 2], self.a);
        set3(&mut c, [2, 2, 1], -self.a);
        set3(&mut c, [3, 1, 3], self.b);
        set3(&mut c, [3, 3, 1], -self.b);

        // ∇_{e₂}e₁ = −a e₂, ∇_{e₂}e₂ = a e₁, ∇_{e₃}e₁ = −b e₃, ∇_{e₃}e₃ = −b e₁
        let mut gamma = ZERO3;
        set3(&mut gamma, [2, 2, 1], -self.a);
        set3(&mut gamma, [1, 2, 2], self.a);
        set3(&mut gamma, [3, 3, 1], -self.b);
        set3(&mut gamma, [1, 3, 3], -self.b);

        let mut dgamma = ZERO4;
        set3(&mut dgamma[0], [2, 2, 1], -self.da);
        set3(&mut dgamma[0], [1, 2, 2], self.da);
        set3(&mut dgamma[0], [3, 3, 1], -self.db);
        set3(&mut dgamma[0], [1, 3, 3], -self.db);

        let mut f = ZERO3;
        for ijk in [[2, 1, 3], [2, 3, 1]] {
            set3(&mut f, ijk, self.f213);
        }
        for ijk in [[3, 1, 2], [3, 2, 1]] {
            set3(&mut f, ijk, self.f312);
        }

        let mut n = ZERO3;
        let mut n_hat = ZERO3;
        for (ijk, s) in [([1, 2, 2], 1.0), ([2, 1, 2], -1.0), ([1, 3, 3], 1.0), ([3, 1, 3], -1.0)] {
            set3(&mut n, ijk, s * self.n122);
            set3(&mut n_hat, ijk, self.n_hat122);
        }
        set3(&mut n_hat, [2, 2, 1], self.n_hat221);
        set3(&mut n_hat, [3, 3, 1], -self.n_hat221);

        let g = StructurePack::canonical().g;
        let mut rho_star = [[0.0; 3]; 3];
        rho_star[1][2] = self.rho_star23;
        rho_star[2][1] = self.rho_star23;

        Quantities {
            induced_metric: diag(self.induced),
            commutators: c,
            gamma,
            gamma_dirderiv: dgamma,
            f,
            theta: [0.0; 3],
            theta_star: [2.0 * self.half_theta_star1, 0.0, 0.0],
            omega: [0.0; 3],
            class_params: ClassParams {
                half_theta_star1: self.half_theta_star1,
                mu: self.mu,
                ..ClassParams::default()
            },
            d: ZERO3,
            n,
            n_hat,
            norm_nabla_phi: self.norm_nabla_phi,
            norm_n: self.norm_n,
            norm_n_hat: self.norm_n_hat,
            d_eta: [[0.0; 3]; 3],
            nabla_xi_xi: [0.0; 3],
            r: constant_curvature_tensor(self.curvature, &g),
            rho: diag([self.rho_diag, self.rho_diag, -self.rho_diag]),
            rho_star,
            tau: self.tau,
            tau_star: 0.0,
            tau_star_star: self.tau_star_star,
            sectional: [self.curvature; 3],
        }
    }
}

fn diag(d: [f64; 3]) -> Mat3 {
    [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]]
}

impl OracleSuite {
    /// Closed-form expectation for every engine quantity at `u`.
    pub fn expected(&self, u: [f64; 3]) -> Quantities {
        let r = self.radius;
        let r2 = r * r;
        let u1 = u[0];
        match self.kind {
            Kind::SpaceLike => {
                let t = u1.tan();
                let ct = 1.0 / t;
                let sec2 = 1.0 + t * t;
                let csc2 = 1.0 + ct * ct;
                SphereForms {
                    induced: [r2, r2 * u1.cos().powi(2), -r2 * u1.sin().powi(2)],
                    a: t / r,
                    b: -ct / r,
                    da: sec2 / r2,
                    db: csc2 / r2,
                    f213: -t / r,
                    f312: ct / r,
                    n122: -(ct + t) / r,
                    n_hat122: (ct + t) / r,
                    n_hat221: 2.0 * (ct - t) / r,
                    norm_nabla_phi: -2.0 / r2 * (t * t + ct * ct),
                    norm_n: 4.0 / r2 * (ct * ct + t * t + 2.0),
                    norm_n_hat: s31_norm_n_hat(r, u1),
                    half_theta_star1: (ct - t) / (2.0 * r),
                    mu: -(ct + t) / (2.0 * r),
                    curvature: 1.0 / r2,
                    rho_diag: 2.0 / r2,
                    rho_star23: 1.0 / r2,
                    tau: 6.0 / r2,
                    tau_star_star: 2.0 / r2,
                }
                .quantities()
            }
            Kind::TimeLike => {
                let th = u1.tanh();
                let ch = 1.0 / th;
                SphereForms {
                    induced: [r2, r2 * u1.sinh().powi(2), -r2 * u1.cosh().powi(2)],
                    a: -ch / r,
                    b: -th / r,
                    // e₁ = ∂₁/r; d coth = −csch², d tanh = sech²
                    da: (ch * ch - 1.0) / r2,
                    db: -(1.0 - th * th) / r2,
                    f213: ch / r,
                    f312: th / r,
                    n122: 2.0 / (r * (2.0 * u1).sinh()),
                    n_hat122: -2.0 / (r * (2.0 * u1).sinh()),
                    n_hat221: 2.0 / r * (ch + th),
                    norm_nabla_phi: -2.0 / r2 * (th * th + ch * ch),
                    norm_n: h31_norm_n(r, u1),
                    norm_n_hat: 4.0 / r2 * (3.0 * ch * ch + 3.0 * th * th + 2.0),
                    half_theta_star1: (ch + th) / (2.0 * r),
                    mu: (ch - th) / (2.0 * r),
                    curvature: -1.0 / r2,
                    rho_diag: -2.0 / r2,
                    rho_star23: -1.0 / r2,
                    tau: -6.0 / r2,
                    tau_star_star: -2.0 / r2,
                }
                .quantities()
            }
            Kind::Flat => SphereForms {
                induced: [1.0, 1.0, -1.0],
                a: 0.0,
                b: 0.0,
                da: 0.0,
                db: 0.0,
                f213: 0.0,
                f312: 0.0,
                n122: 0.0,
                n_hat122: 0.0,
                n_hat221: 0.0,
                norm_nabla_phi: 0.0,
                norm_n: 0.0,
                norm_n_hat: 0.0,
                half_theta_star1: 0.0,
                mu: 0.0,
                curvature: 0.0,
                rho_diag: 0.0,
                rho_star23: 0.0,
                tau: 0.0,
                tau_star_star: 0.0,
            }
            .quantities(),
        }
    }

    /// Closed-form value of one named quantity.
    pub fn expected_value(&self, name: &str, u: [f64; 3]) -> Option<f64> {
        self.expected(u)
            .named()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }
}

/// `‖N‖` on the time-like sphere: `(4/r²)(coth²u¹ + tanh²u¹ − 2) = 16 / (r² sinh²2u¹)`,
/// the square norm of the components `N₁₂₂ = −N₂₁₂ = N₁₃₃ = −N₃₁₃ = 2/(r sinh 2u¹)`.
pub fn h31_norm_n(r: f64, u1: f64) -> f64 {
    let s = (2.0 * u1).sinh();
    16.0 / (r * r * s * s)
}

/// `‖N̂‖` on the space-like sphere: `(4/r²)(3cot²u¹ + 3tan²u¹ − 2)`, from
/// `N̂₁₂₂ = N̂₂₁₂ = N̂₁₃₃ = N̂₃₁₃ = (cot u¹ + tan u¹)/r` and
/// `N̂₂₂₁ = −N̂₃₃₁ = 2(cot u¹ − tan u¹)/r`.
pub fn s31_norm_n_hat(r: f64, u1: f64) -> f64 {
    let t = u1.tan();
    let ct = 1.0 / t;
    4.0 / (r * r) * (3.0 * ct * ct + 3.0 * t * t - 2.0)
}

/// Closed forms as printed in the source derivation for the two square norms
/// whose printed form does not follow from the printed components:
/// `‖N̂‖` on `s31` and `‖N‖` on `h31`.
pub mod printed {
    pub fn s31_norm_n_hat(r: f64, u1: f64) -> f64 {
        let t = u1.tan();
        let ct = 1.0 / t;
        4.0 / (r * r) * (ct * ct + 9.0 * t * t + 2.0)
    }

    pub fn h31_norm_n(r: f64, u1: f64) -> f64 {
        let th = u1.tanh();
        let ch = 1.0 / th;
        4.0 / (r * r) * (ch * ch + th * th + 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::evaluate;
    use std::f64::consts::SQRT_2;

    #[test]
    fn s31_position_and_norm() {
        let c = s31_chart(1.0).unwrap();
        let z = c.position([FRAC_PI_4, 0.0, 0.0]);
        let want = [SQRT_2 / 2.0, 0.0, SQRT_2 / 2.0, 0.0];
        for a in 0..4 {
            assert!((z[a] - want[a]).abs() < 1e-15);
        }
        assert!((c.space.inner(&z, &z) - 1.0).abs() < 1e-15);
        let c = s31_chart(2.0).unwrap();
        let z = c.position([0.3, 1.0, -0.8]);
        assert!((c.space.inner(&z, &z) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn h31_position_and_norm() {
        let c = h31_chart(1.0).unwrap();
        let z = c.position([(1.0 + SQRT_2).ln(), 0.0, 0.0]);
        assert!((c.space.inner(&z, &z) + 1.0).abs() < 1e-14);
        assert_eq!(c.position_jet([0.5, 0.2, 0.1]).values(), c.position([0.5, 0.2, 0.1]).0);
    }

    #[test]
    fn radius_must_be_positive() {
        for r in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(make_s31(r), Err(Error::InvalidRadius(_))));
            assert!(matches!(make_h31(r), Err(Error::InvalidRadius(_))));
        }
        assert!(suite("flat", -1.0).is_err());
        assert!(matches!(suite("torus", 1.0), Err(Error::UnknownManifold(_))));
    }

    #[test]
    #[allow(clippy::approx_constant)] // 1.5707963 is a deliberate near-pole value
    fn domains_exclude_singular_parameters() {
        let s = s31_chart(1.0).unwrap();
        for u1 in [0.0, FRAC_PI_2, PI, -FRAC_PI_2, 1.5707963] {
            assert!(!s.contains([u1, 0.0, 0.0]), "{u1}");
        }
        assert!(s.contains([FRAC_PI_4, 10.0, -10.0]));
        let h = h31_chart(1.0).unwrap();
        assert!(!h.contains([0.0, 0.0, 0.0]));
        assert!(h.contains([-1e-3, 0.0, 0.0]));
    }

    #[test]
    fn grids() {
        for name in MANIFOLD_NAMES {
            let g = default_grid(name);
            assert_eq!(g.len(), 45);
            let c = chart(name, 1.0).unwrap();
            assert!(g.iter().all(|&u| c.contains(u)));
        }
        // both sign branches of the frame normalisation
        assert!(default_grid("s31").iter().any(|u| u[0].cos() < 0.0));
        assert!(default_grid("h31").iter().any(|u| u[0] < 0.0));
    }

    #[test]
    fn oracle_examples() {
        let s = make_s31(2.0).unwrap();
        assert_eq!(s.expected_value("tau", [0.3, 0.0, 0.0]), Some(1.5));
        assert_eq!(s.expected_value("k_12", [1.0, 0.0, 0.0]), Some(0.25));
        let h = make_h31(1.0).unwrap();
        assert_eq!(h.expected_value("rho_11", [0.5, 0.0, 0.0]), Some(-2.0));
        let u1: f64 = 0.8;
        let mu = h.expected_value("F9_mu", [u1, 0.0, 0.0]).unwrap();
        assert!((mu - (1.0 / u1.tanh() - u1.tanh()) / 2.0).abs() < 1e-15);
        assert_eq!(s.expected_value("no_such_quantity", [0.3, 0.0, 0.0]), None);
        let flat = make_flat().expected([1.0, 2.0, 3.0]);
        assert!(flat
            .named()
            .iter()
            .filter(|(n, _)| !n.starts_with("gind"))
            .all(|(_, v)| *v == 0.0));
    }

    #[test]
    fn printed_and_consistent_norm_forms() {
        // printed − consistent: (4/r²)(6tan²u¹ − 2cot²u¹ + 4) on s31, 16/r² on h31
        let u1 = FRAC_PI_4;
        assert!((s31_norm_n_hat(1.0, u1) - 16.0).abs() < 1e-12);
        assert!((printed::s31_norm_n_hat(1.0, u1) - 48.0).abs() < 1e-12);
        let a = (1.0 + SQRT_2).ln();
        assert!((h31_norm_n(1.0, a) - 2.0).abs() < 1e-12);
        assert!((printed::h31_norm_n(1.0, a) - 18.0).abs() < 1e-12);
        for u1 in [0.2, 0.9, -1.4] {
            let (th, ch) = (f64::tanh(u1), 1.0 / f64::tanh(u1));
            assert!((h31_norm_n(1.5, u1) - 4.0 / 2.25 * (ch * ch + th * th - 2.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn engine_matches_every_oracle_entry() {
        for name in MANIFOLD_NAMES {
            let s = suite(name, 1.0).unwrap();
            let u = default_grid(name)[7];
            let got = evaluate(&s.chart, u).unwrap().quantities.named();
            let want = s.expected(u).named();
            assert_eq!(got.len(), want.len());
            for ((n, a), (m, b)) in got.iter().zip(&want) {
                assert_eq!(n, m);
                assert!((a - b).abs() <= (1e-9 * b.abs()).max(1e-12), "{name} {n}: {a} vs {b}");
            }
        }
    }
}
