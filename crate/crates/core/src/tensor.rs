//! Fixed-size frame-component arrays.
//!
//! Index conventions used throughout the crate (all 0-based, frame
//! index 0 is ξ = e₁):
//!
//! * connection-like objects `T[k][i][j]` hold `Tᵏᵢⱼ`, e.g. `∇_{eᵢ}eⱼ = Γᵏᵢⱼ e_k`;
//! * covariant 3-tensors `T[i][j][k]` hold `T(eᵢ, eⱼ, e_k)`;
//! * 4-tensors `R[i][j][k][l]` hold `R(eᵢ, eⱼ, e_k, e_l)`.

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];
pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

pub const ZERO3: Tensor3 = [[[0.0; 3]; 3]; 3];
pub const ZERO4: Tensor4 = [[[[0.0; 3]; 3]; 3]; 3];

pub fn max_abs3(t: &Tensor3) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs4(t: &Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs_mat(m: &Mat3) -> f64 {
    m.iter().flatten().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_diff3(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m = m.max((a[i][j][k] - b[i][j][k]).abs());
            }
        }
    }
    m
}

pub fn max_abs_diff4(a: &Tensor4, b: &Tensor4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        m = m.max(max_abs_diff3(&a[i], &b[i]));
    }
    m
}

/// Frame-component name `prefix_ijk` with 1-based indices.
pub fn label3(prefix: &str, i: usize, j: usize, k: usize) -> String {
    format!("{prefix}_{}{}{}", i + 1, j + 1, k + 1)
}
