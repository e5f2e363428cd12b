//! The almost contact B-metric structure (φ, ξ, η, g) on the φ-basis and
//! everything derived from its covariant derivative: the fundamental tensor
//! F, Lee forms, the seven-class decomposition of dimension 3, Nijenhuis
//! tensors, square norms and the φB-connection.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypersurface::FramePoint;
use crate::tensor::{max_abs3, max_abs_diff3, Mat3, Tensor3, Vec3, ZERO3};

/// Relative membership threshold of [`decompose`].
pub const MEMBERSHIP_REL_TOL: f64 = 1e-8;
/// Absolute floor of the membership threshold.
pub const MEMBERSHIP_ABS_FLOOR: f64 = 1e-12;
/// Reconstruction tolerance of [`decompose`], relative to `max(1, max|F|)`.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// φ, ξ, η and g in frame components.
#[derive(Debug, Clone, PartialEq)]
pub struct StructurePack {
    /// `phi[p][m]` is component p of φe_m.
    pub phi: Mat3,
    /// Frame index of ξ.
    pub xi: usize,
    pub eta: Vec3,
    pub g: Mat3,
}

impl Default for StructurePack {
    fn default() -> Self {
        Self::canonical()
    }
}

impl StructurePack {
    /// φe₁ = 0, φe₂ = e₃, φe₃ = −e₂, ξ = e₁, η = e¹, g = diag(1, 1, −1).
    pub fn canonical() -> Self {
        StructurePack {
            phi: [[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
            xi: 0,
            eta: [1.0, 0.0, 0.0],
            g: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
        }
    }

    pub fn xi_vec(&self) -> Vec3 {
        basis(self.xi)
    }

    pub fn phi_apply(&self, x: &Vec3) -> Vec3 {
        std::array::from_fn(|p| (0..3).map(|m| self.phi[p][m] * x[m]).sum())
    }

    pub fn eta_apply(&self, x: &Vec3) -> f64 {
        (0..3).map(|m| self.eta[m] * x[m]).sum()
    }

    pub fn inner(&self, x: &Vec3, y: &Vec3) -> f64 {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                s += self.g[a][b] * x[a] * y[b];
            }
        }
        s
    }

    fn g_inv_diag(&self) -> Vec3 {
        std::array::from_fn(|a| 1.0 / self.g[a][a])
    }
}

pub(crate) fn basis(a: usize) -> Vec3 {
    let mut v = [0.0; 3];
    v[a] = 1.0;
    v
}

/// Largest violation of the five structure axioms
/// (φξ = 0, φ² = −Id + η⊗ξ, η∘φ = 0, η(ξ) = 1, g(φx,φy) = −g(x,y) + η(x)η(y)).
pub fn structure_axiom_check(s: &StructurePack) -> f64 {
    let xi = s.xi_vec();
    let mut worst: f64 = 0.0;
    for c in s.phi_apply(&xi) {
        worst = worst.max(c.abs());
    }
    for m in 0..3 {
        let em = basis(m);
        let phi2 = s.phi_apply(&s.phi_apply(&em));
        for p in 0..3 {
            let id = if p == m { 1.0 } else { 0.0 };
            worst = worst.max((phi2[p] - (-id + s.eta[m] * xi[p])).abs());
        }
        worst = worst.max(s.eta_apply(&s.phi_apply(&em)).abs());
    }
    worst = worst.max((s.eta_apply(&xi) - 1.0).abs());
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (basis(i), basis(j));
            let lhs = s.inner(&s.phi_apply(&x), &s.phi_apply(&y));
            let rhs = -s.inner(&x, &y) + s.eta_apply(&x) * s.eta_apply(&y);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Trilinear evaluation `T(x, y, z)` of frame components `T[i][j][k]`.
pub fn form3(t: &Tensor3, x: &Vec3, y: &Vec3, z: &Vec3) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                s += t[i][j][k] * x[i] * y[j] * z[k];
            }
        }
    }
    s
}

/// Fundamental tensor `F(x,y,z) = g((∇ₓφ)y, z)` and its Lee forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FTensor {
    pub f: Tensor3,
    pub theta: Vec3,
    pub theta_star: Vec3,
    pub omega: Vec3,
}

/// `(∇_{eᵢ}φ)eⱼ` in frame components, indexed `[i][j][p]`.
fn nabla_phi(frame: &FramePoint, s: &StructurePack) -> Tensor3 {
    let g = &frame.gamma;
    let mut out = ZERO3;
    for (i, block) in out.iter_mut().enumerate() {
        for (j, row) in block.iter_mut().enumerate() {
            for (p, slot) in row.iter_mut().enumerate() {
                let mut v = 0.0;
                for m in 0..3 {
                    v += s.phi[m][j] * g[p][i][m] - g[m][i][j] * s.phi[p][m];
                }
                *slot = v;
            }
        }
    }
    out
}

pub fn fundamental_f(frame: &FramePoint, s: &StructurePack) -> FTensor {
    let dphi = nabla_phi(frame, s);
    let mut f = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                f[i][j][k] = (0..3).map(|p| s.g[p][k] * dphi[i][j][p]).sum();
            }
        }
    }
    FTensor::from_components(f)
}

impl FTensor {
    pub fn from_components(f: Tensor3) -> Self {
        let (theta, theta_star, omega) = lee_forms(&f);
        FTensor {
            f,
            theta,
            theta_star,
            omega,
        }
    }

    pub fn eval(&self, x: &Vec3, y: &Vec3, z: &Vec3) -> f64 {
        form3(&self.f, x, y, z)
    }
}

/// Lee forms (θ, θ*, ω) from the component table of the 3-dimensional φ-basis.
pub fn lee_forms(f: &Tensor3) -> (Vec3, Vec3, Vec3) {
    let c = |i: usize, j: usize, k: usize| f[i - 1][j - 1][k - 1];
    let theta = [
        c(2, 2, 1) - c(3, 3, 1),
        c(2, 2, 2) - c(3, 3, 2),
        c(2, 2, 3) - c(3, 2, 2),
    ];
    let theta_star = [
        c(2, 3, 1) + c(3, 2, 1),
        c(2, 2, 3) + c(3, 2, 2),
        c(2, 2, 2) + c(3, 3, 2),
    ];
    let omega = [0.0, c(1, 1, 2), c(1, 1, 3)];
    (theta, theta_star, omega)
}

/// Lee forms from their contraction definitions:
/// `θ(z) = gⁱʲF(eᵢ,eⱼ,z)`, `θ*(z) = gⁱʲF(eᵢ,φeⱼ,z)` over the basis orthogonal
/// to ξ, and `ω(z) = F(ξ,ξ,z)`.
pub fn lee_forms_by_contraction(f: &Tensor3, s: &StructurePack) -> (Vec3, Vec3, Vec3) {
    let ginv = s.g_inv_diag();
    let xi = s.xi_vec();
    let mut theta = [0.0; 3];
    let mut theta_star = [0.0; 3];
    let mut omega = [0.0; 3];
    for k in 0..3 {
        let z = basis(k);
        for i in (0..3).filter(|&i| i != s.xi) {
            let ei = basis(i);
            theta[k] += ginv[i] * form3(f, &ei, &ei, &z);
            theta_star[k] += ginv[i] * form3(f, &ei, &s.phi_apply(&ei), &z);
        }
        omega[k] = form3(f, &xi, &xi, &z);
    }
    (theta, theta_star, omega)
}

/// Largest violation of `F(x,y,z) = F(x,z,y)`,
/// `F(x,y,z) = F(x,φy,φz) + η(y)F(x,ξ,z) + η(z)F(x,y,ξ)` and
/// `F(x,φy,ξ) = g(∇ₓξ, y)` on the frame.
pub fn f_identity_residual(f: &Tensor3, frame: &FramePoint, s: &StructurePack) -> f64 {
    let xi = s.xi_vec();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let x = basis(i);
        for j in 0..3 {
            let y = basis(j);
            for k in 0..3 {
                let z = basis(k);
                let v = f[i][j][k];
                worst = worst.max((v - f[i][k][j]).abs());
                let proj = form3(f, &x, &s.phi_apply(&y), &s.phi_apply(&z))
                    + s.eta_apply(&y) * form3(f, &x, &xi, &z)
                    + s.eta_apply(&z) * form3(f, &x, &y, &xi);
                worst = worst.max((v - proj).abs());
            }
            let nabla_xi: Vec3 = std::array::from_fn(|p| frame.gamma[p][i][s.xi]);
            let lhs = form3(f, &x, &s.phi_apply(&y), &xi);
            worst = worst.max((lhs - s.inner(&nabla_xi, &y)).abs());
        }
    }
    worst
}

/// The seven basic classes that survive in dimension 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasicClass {
    F1,
    F4,
    F5,
    F8,
    F9,
    F10,
    F11,
}

impl BasicClass {
    pub const ALL: [BasicClass; 7] = [
        BasicClass::F1,
        BasicClass::F4,
        BasicClass::F5,
        BasicClass::F8,
        BasicClass::F9,
        BasicClass::F10,
        BasicClass::F11,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BasicClass::F1 => "F1",
            BasicClass::F4 => "F4",
            BasicClass::F5 => "F5",
            BasicClass::F8 => "F8",
            BasicClass::F9 => "F9",
            BasicClass::F10 => "F10",
            BasicClass::F11 => "F11",
        }
    }
}

impl fmt::Display for BasicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Renders a class set as `F5⊕F9`, or `F0` when empty.
pub fn class_label(classes: &[BasicClass]) -> String {
    if classes.is_empty() {
        "F0".to_string()
    } else {
        classes.iter().map(|c| c.label()).collect::<Vec<_>>().join("⊕")
    }
}

/// Scalar parameters of the basic-class components.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ClassParams {
    /// θ₂, θ₃ of F¹.
    pub theta2: f64,
    pub theta3: f64,
    /// ½θ₁ of F⁴.
    pub half_theta1: f64,
    /// ½θ*₁ of F⁵.
    pub half_theta_star1: f64,
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
    pub omega2: f64,
    pub omega3: f64,
}

impl ClassParams {
    pub fn named(&self) -> [(&'static str, f64); 9] {
        [
            ("theta_2", self.theta2),
            ("theta_3", self.theta3),
            ("half_theta_1", self.half_theta1),
            ("half_theta_star_1", self.half_theta_star1),
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("nu", self.nu),
            ("omega_2", self.omega2),
            ("omega_3", self.omega3),
        ]
    }
}

/// `F^s(x,y,z)` of one basic class, with 1-based component access `x(1) = x¹`.
pub fn class_component(class: BasicClass, p: &ClassParams, x: &Vec3, y: &Vec3, z: &Vec3) -> f64 {
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let sym = |a: usize, b: usize| y[a] * z[b] + y[b] * z[a];
    let hh = y[1] * z[1] + y[2] * z[2];
    match class {
        BasicClass::F1 => (x2 * p.theta2 - x3 * p.theta3) * hh,
        BasicClass::F4 => p.half_theta1 * (x2 * sym(0, 1) - x3 * sym(0, 2)),
        BasicClass::F5 => p.half_theta_star1 * (x2 * sym(0, 2) + x3 * sym(0, 1)),
        BasicClass::F8 => p.lambda * (x2 * sym(0, 1) + x3 * sym(0, 2)),
        BasicClass::F9 => p.mu * (x2 * sym(0, 2) - x3 * sym(0, 1)),
        BasicClass::F10 => p.nu * x1 * hh,
        BasicClass::F11 => x1 * (sym(1, 0) * p.omega2 + sym(2, 0) * p.omega3),
    }
}

pub fn class_tensor(class: BasicClass, p: &ClassParams) -> Tensor3 {
    let mut t = ZERO3;
    for (i, block) in t.iter_mut().enumerate() {
        for (j, row) in block.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = class_component(class, p, &basis(i), &basis(j), &basis(k));
            }
        }
    }
    t
}

/// Parameters read off F, averaging every slot that defines each one.
pub fn class_params(f: &Tensor3) -> ClassParams {
    let c = |i: usize, j: usize, k: usize| f[i - 1][j - 1][k - 1];
    let avg2 = |a: f64, b: f64| 0.5 * (a + b);
    let avg4 = |a: f64, b: f64, c: f64, d: f64| 0.25 * (a + b + c + d);
    ClassParams {
        theta2: avg2(c(2, 2, 2), c(2, 3, 3)),
        theta3: -avg2(c(3, 2, 2), c(3, 3, 3)),
        half_theta1: avg4(c(2, 1, 2), c(2, 2, 1), -c(3, 1, 3), -c(3, 3, 1)),
        half_theta_star1: avg4(c(2, 1, 3), c(2, 3, 1), c(3, 1, 2), c(3, 2, 1)),
        lambda: avg4(c(2, 1, 2), c(2, 2, 1), c(3, 1, 3), c(3, 3, 1)),
        mu: avg4(c(2, 1, 3), c(2, 3, 1), -c(3, 1, 2), -c(3, 2, 1)),
        nu: avg2(c(1, 2, 2), c(1, 3, 3)),
        omega2: avg2(c(1, 2, 1), c(1, 1, 2)),
        omega3: avg2(c(1, 3, 1), c(1, 1, 3)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassDecomposition {
    pub params: ClassParams,
    /// Component tensor of every basic class, in [`BasicClass::ALL`] order.
    pub components: Vec<(BasicClass, Tensor3)>,
    /// `max |Fˢ|` per class.
    pub class_norms: Vec<(BasicClass, f64)>,
    pub membership: Vec<BasicClass>,
    /// `max |F − Σ Fˢ|`.
    pub residual: f64,
}

pub fn membership_threshold(f_max: f64) -> f64 {
    (MEMBERSHIP_REL_TOL * f_max).max(MEMBERSHIP_ABS_FLOOR)
}

pub fn decompose(f: &FTensor) -> Result<ClassDecomposition> {
    let params = class_params(&f.f);
    let components: Vec<_> = BasicClass::ALL.iter().map(|&c| (c, class_tensor(c, &params))).collect();
    let mut sum = ZERO3;
    for (_, t) in &components {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    sum[i][j][k] += t[i][j][k];
                }
            }
        }
    }
    let f_max = max_abs3(&f.f);
    let residual = max_abs_diff3(&f.f, &sum);
    if residual > RECONSTRUCTION_TOL * f_max.max(1.0) {
        return Err(Error::OutsideClassSpan { residual });
    }
    let threshold = membership_threshold(f_max);
    let class_norms: Vec<_> = components.iter().map(|(c, t)| (*c, max_abs3(t))).collect();
    let membership = class_norms
        .iter()
        .filter(|(_, n)| *n > threshold)
        .map(|(c, _)| *c)
        .collect();
    Ok(ClassDecomposition {
        params,
        components,
        class_norms,
        membership,
        residual,
    })
}

/// `gⁱʲ gᵏˢ g(T(eᵢ,e_k), T(eⱼ,eₛ))` for a tensor given by `T_{ikl} = g(T(eᵢ,e_k), e_l)`.
pub fn square_norm(t: &Tensor3, s: &StructurePack) -> f64 {
    let ginv = s.g_inv_diag();
    let mut acc = 0.0;
    for i in 0..3 {
        for k in 0..3 {
            for l in 0..3 {
                acc += ginv[i] * ginv[k] * ginv[l] * t[i][k][l] * t[i][k][l];
            }
        }
    }
    acc
}

/// `‖∇φ‖ = gⁱʲgᵏˢ g((∇_{eᵢ}φ)e_k, (∇_{eⱼ}φ)eₛ)`.
pub fn square_norm_nabla_phi(frame: &FramePoint, s: &StructurePack) -> f64 {
    square_norm(&fundamental_f(frame, s).f, s)
}

/// N and N̂ as (0,3)-tensors, expressed through F.
pub fn nijenhuis_tensors(f: &FTensor, s: &StructurePack) -> (Tensor3, Tensor3) {
    let xi = s.xi_vec();
    let mut n = ZERO3;
    let mut n_hat = ZERO3;
    for i in 0..3 {
        let x = basis(i);
        let px = s.phi_apply(&x);
        for j in 0..3 {
            let y = basis(j);
            let py = s.phi_apply(&y);
            for k in 0..3 {
                let z = basis(k);
                let pz = s.phi_apply(&z);
                let ez = s.eta_apply(&z);
                let a = f.eval(&px, &y, &z) - f.eval(&x, &y, &pz) + ez * f.eval(&x, &py, &xi);
                let b_anti = -f.eval(&py, &x, &z) + f.eval(&y, &x, &pz) - ez * f.eval(&y, &px, &xi);
                let b_sym = f.eval(&py, &x, &z) - f.eval(&y, &x, &pz) + ez * f.eval(&y, &px, &xi);
                n[i][j][k] = a + b_anti;
                n_hat[i][j][k] = a + b_sym;
            }
        }
    }
    (n, n_hat)
}

/// Nijenhuis-type data and the η diagnostics at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NijenhuisData {
    pub n: Tensor3,
    pub n_hat: Tensor3,
    pub norm_n: f64,
    pub norm_n_hat: f64,
    pub norm_nabla_phi: f64,
    pub d_eta: Mat3,
    pub nabla_xi_xi: Vec3,
}

pub fn nijenhuis(f: &FTensor, s: &StructurePack) -> (Tensor3, Tensor3, f64, f64) {
    let (n, n_hat) = nijenhuis_tensors(f, s);
    let norm_n = square_norm(&n, s);
    let norm_n_hat = square_norm(&n_hat, s);
    (n, n_hat, norm_n, norm_n_hat)
}

impl NijenhuisData {
    pub fn new(frame: &FramePoint, f: &FTensor, s: &StructurePack) -> Self {
        let (n, n_hat, norm_n, norm_n_hat) = nijenhuis(f, s);
        let (d_eta, nabla_xi_xi) = eta_diagnostics(frame, s);
        NijenhuisData {
            n,
            n_hat,
            norm_n,
            norm_n_hat,
            norm_nabla_phi: square_norm(&f.f, s),
            d_eta,
            nabla_xi_xi,
        }
    }
}

/// Largest violation of `N_{ijk} = −N_{jik}` and `N̂_{ijk} = N̂_{jik}`.
pub fn nijenhuis_symmetry_residual(n: &Tensor3, n_hat: &Tensor3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                worst = worst
                    .max((n[i][j][k] + n[j][i][k]).abs())
                    .max((n_hat[i][j][k] - n_hat[j][i][k]).abs());
            }
        }
    }
    worst
}

/// `(dη)(eᵢ,eⱼ) = −η([eᵢ,eⱼ])` (η is constant on the frame) and `∇_ξξ`.
pub fn eta_diagnostics(frame: &FramePoint, s: &StructurePack) -> (Mat3, Vec3) {
    let c = &frame.commutators;
    let d_eta = std::array::from_fn(|i| std::array::from_fn(|j| -(0..3).map(|k| s.eta[k] * c[k][i][j]).sum::<f64>()));
    let nabla_xi_xi = std::array::from_fn(|k| frame.gamma[k][s.xi][s.xi]);
    (d_eta, nabla_xi_xi)
}

/// φB-connection `D_xy = ∇_xy + ½{(∇ₓφ)φy + (∇ₓη)y·ξ} − η(y)∇ₓξ`, indexed
/// `[k][i][j]` like Γ, with `(∇ₓη)y = F(x,φy,ξ)`.
pub fn phi_b_connection(frame: &FramePoint, s: &StructurePack) -> Tensor3 {
    let f = fundamental_f(frame, s);
    let ginv = s.g_inv_diag();
    let xi = s.xi_vec();
    let mut d = ZERO3;
    for i in 0..3 {
        let x = basis(i);
        for j in 0..3 {
            let y = basis(j);
            let py = s.phi_apply(&y);
            let nabla_eta = f.eval(&x, &py, &xi);
            for k in 0..3 {
                let dphi_phi_y = ginv[k] * f.eval(&x, &py, &basis(k));
                d[k][i][j] =
                    frame.gamma[k][i][j] + 0.5 * (dphi_phi_y + nabla_eta * xi[k]) - s.eta[j] * frame.gamma[k][i][s.xi];
            }
        }
    }
    d
}

/// Largest component of Dφ, Dξ, Dη and Dg for a connection `D[k][i][j]`.
pub fn natural_connection_residual(d: &Tensor3, s: &StructurePack) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for p in 0..3 {
                let mut dphi = 0.0;
                for m in 0..3 {
                    dphi += s.phi[m][j] * d[p][i][m] - d[m][i][j] * s.phi[p][m];
                }
                worst = worst.max(dphi.abs());
            }
            let xi_part: f64 = (0..3).map(|m| d[j][i][m] * s.xi_vec()[m]).sum();
            worst = worst.max(xi_part.abs());
            let deta: f64 = (0..3).map(|k| s.eta[k] * d[k][i][j]).sum();
            worst = worst.max(deta.abs());
            for k in 0..3 {
                let mut dg = 0.0;
                for p in 0..3 {
                    dg += s.g[p][k] * d[p][i][j] + s.g[p][j] * d[p][i][k];
                }
                worst = worst.max(dg.abs());
            }
        }
    }
    worst
}
