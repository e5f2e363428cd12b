//! One-stop evaluation of every quantity at a chart point.

use crate::acbm::{
    decompose, fundamental_f, phi_b_connection, ClassDecomposition, ClassParams, NijenhuisData, StructurePack,
};
use crate::connection::CurvatureData;
use crate::error::Result;
use crate::hypersurface::{induced_metric, Chart, FramePoint};
use crate::tensor::{label3, Mat3, Tensor3, Tensor4, Vec3};

/// Frame components of every reported quantity. Produced both by the engine
/// ([`evaluate`]) and by the closed-form oracles, and compared by name.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantities {
    pub induced_metric: Mat3,
    /// `cᵏᵢⱼ`, `[k][i][j]`.
    pub commutators: Tensor3,
    /// `Γᵏᵢⱼ`, `[k][i][j]`.
    pub gamma: Tensor3,
    /// `e_l(Γᵏᵢⱼ)`, `[l][k][i][j]`.
    pub gamma_dirderiv: Tensor4,
    pub f: Tensor3,
    pub theta: Vec3,
    pub theta_star: Vec3,
    pub omega: Vec3,
    pub class_params: ClassParams,
    /// φB-connection `Dᵏᵢⱼ`, `[k][i][j]`.
    pub d: Tensor3,
    pub n: Tensor3,
    pub n_hat: Tensor3,
    pub norm_nabla_phi: f64,
    pub norm_n: f64,
    pub norm_n_hat: f64,
    pub d_eta: Mat3,
    pub nabla_xi_xi: Vec3,
    pub r: Tensor4,
    pub rho: Mat3,
    pub rho_star: Mat3,
    pub tau: f64,
    pub tau_star: f64,
    pub tau_star_star: f64,
    /// k₁₂, k₁₃, k₂₃.
    pub sectional: Vec3,
}

fn push3(out: &mut Vec<(String, f64)>, prefix: &str, t: &Tensor3) {
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out.push((label3(prefix, i, j, k), t[i][j][k]));
            }
        }
    }
}

fn push_mat(out: &mut Vec<(String, f64)>, prefix: &str, m: &Mat3) {
    for i in 0..3 {
        for j in 0..3 {
            out.push((format!("{prefix}_{}{}", i + 1, j + 1), m[i][j]));
        }
    }
}

fn push_vec(out: &mut Vec<(String, f64)>, prefix: &str, v: &Vec3) {
    for (i, x) in v.iter().enumerate() {
        out.push((format!("{prefix}_{}", i + 1), *x));
    }
}

fn push4(out: &mut Vec<(String, f64)>, prefix: &str, t: &Tensor4) {
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out.push((format!("{prefix}_{}{}{}{}", i + 1, j + 1, k + 1, l + 1), t[i][j][k][l]));
                }
            }
        }
    }
}

impl Quantities {
    /// Every scalar under a stable name, in a fixed order. Upper indices come
    /// first, so `Gamma_221` is `Γ²₂₁` and `dGamma_1221` is `e₁(Γ²₂₁)`.
    pub fn named(&self) -> Vec<(String, f64)> {
        let mut out = Vec::with_capacity(400);
        push_mat(&mut out, "gind", &self.induced_metric);
        push3(&mut out, "c", &self.commutators);
        push3(&mut out, "Gamma", &self.gamma);
        push4(&mut out, "dGamma", &self.gamma_dirderiv);
        push3(&mut out, "F", &self.f);
        push_vec(&mut out, "theta", &self.theta);
        push_vec(&mut out, "thetastar", &self.theta_star);
        push_vec(&mut out, "omega", &self.omega);
        let p = &self.class_params;
        for (name, v) in [
            ("F1_theta2", p.theta2),
            ("F1_theta3", p.theta3),
            ("F4_half_theta1", p.half_theta1),
            ("F5_half_thetastar1", p.half_theta_star1),
            ("F8_lambda", p.lambda),
            ("F9_mu", p.mu),
            ("F10_nu", p.nu),
            ("F11_omega2", p.omega2),
            ("F11_omega3", p.omega3),
        ] {
            out.push((name.to_string(), v));
        }
        push3(&mut out, "D", &self.d);
        push3(&mut out, "N", &self.n);
        push3(&mut out, "Nhat", &self.n_hat);
        out.push(("norm_nabla_phi".into(), self.norm_nabla_phi));
        out.push(("norm_N".into(), self.norm_n));
        out.push(("norm_Nhat".into(), self.norm_n_hat));
        push_mat(&mut out, "deta", &self.d_eta);
        push_vec(&mut out, "nablaxixi", &self.nabla_xi_xi);
        push4(&mut out, "R", &self.r);
        push_mat(&mut out, "rho", &self.rho);
        push_mat(&mut out, "rhostar", &self.rho_star);
        out.push(("tau".into(), self.tau));
        out.push(("tau_star".into(), self.tau_star));
        out.push(("tau_star_star".into(), self.tau_star_star));
        out.push(("k_12".into(), self.sectional[0]));
        out.push(("k_13".into(), self.sectional[1]));
        out.push(("k_23".into(), self.sectional[2]));
        out
    }
}

/// Engine output at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorBundle {
    pub frame: FramePoint,
    pub quantities: Quantities,
    pub decomposition: ClassDecomposition,
    pub curvature: CurvatureData,
    pub nijenhuis: NijenhuisData,
}

pub fn evaluate(chart: &Chart, u: [f64; 3]) -> Result<TensorBundle> {
    let s = StructurePack::canonical();
    let g = induced_metric(chart, u)?;
    let frame = FramePoint::new(chart, u)?;
    let f = fundamental_f(&frame, &s);
    let decomposition = decompose(&f)?;
    let nijenhuis = NijenhuisData::new(&frame, &f, &s);
    let d = phi_b_connection(&frame, &s);
    let curvature = CurvatureData::from_frame(&frame, &s)?;
    let quantities = Quantities {
        induced_metric: g,
        commutators: frame.commutators,
        gamma: frame.gamma,
        gamma_dirderiv: frame.gamma_dirderiv,
        f: f.f,
        theta: f.theta,
        theta_star: f.theta_star,
        omega: f.omega,
        class_params: decomposition.params,
        d,
        n: nijenhuis.n,
        n_hat: nijenhuis.n_hat,
        norm_nabla_phi: nijenhuis.norm_nabla_phi,
        norm_n: nijenhuis.norm_n,
        norm_n_hat: nijenhuis.norm_n_hat,
        d_eta: nijenhuis.d_eta,
        nabla_xi_xi: nijenhuis.nabla_xi_xi,
        r: curvature.r,
        rho: curvature.rho,
        rho_star: curvature.rho_star,
        tau: curvature.tau,
        tau_star: curvature.tau_star,
        tau_star_star: curvature.tau_star_star,
        sectional: curvature.sectional,
    };
    Ok(TensorBundle {
        frame,
        quantities,
        decomposition,
        curvature,
        nijenhuis,
    })
}
