//! Truncated multivariate Taylor arithmetic ("jets") in three parameters,
//! carried to total order 3.
//!
//! A [`Jet3`] stores the Taylor coefficients `f^(α)(u₀) / α!` for every
//! multi-index `α = (i, j, k)` with `i + j + k ≤ 3`, so products and
//! compositions propagate every partial derivative up to third order exactly
//! (up to floating-point rounding). Order 3 is what the curvature chain
//! needs: frame vectors use first derivatives of the immersion, connection
//! coefficients second, and their frame-directional derivatives third.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::JetError;

/// Number of multi-indices of total degree ≤ 3 in 3 variables.
pub const JET_LEN: usize = 20;

/// Maximum total degree carried.
pub const JET_ORDER: usize = 3;

/// Divisors with `|b₀|` at or below this value are rejected.
pub const DIVISION_GUARD: f64 = 1e-300;

/// Distance to a pole of tan/cot/coth below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-8;

/// Multi-indices ordered by total degree, then lexicographically descending.
pub const MULTI_INDICES: [[u8; 3]; JET_LEN] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

const fn index_of(a: [u8; 3]) -> Option<usize> {
    let mut n = 0;
    while n < JET_LEN {
        let m = MULTI_INDICES[n];
        if m[0] == a[0] && m[1] == a[1] && m[2] == a[2] {
            return Some(n);
        }
        n += 1;
    }
    None
}

// PRODUCT[a][b] = slot of MULTI_INDICES[a] + MULTI_INDICES[b], or -1 past order 3.
const PRODUCT: [[i8; JET_LEN]; JET_LEN] = {
    let mut table = [[-1i8; JET_LEN]; JET_LEN];
    let mut a = 0;
    while a < JET_LEN {
        let mut b = 0;
        while b < JET_LEN {
            let x = MULTI_INDICES[a];
            let y = MULTI_INDICES[b];
            let sum = [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
            if (sum[0] + sum[1] + sum[2]) as usize <= JET_ORDER {
                if let Some(slot) = index_of(sum) {
                    table[a][b] = slot as i8;
                }
            }
            b += 1;
        }
        a += 1;
    }
    table
};

// SHIFT[v][n] = slot holding α + e_v for α = MULTI_INDICES[n], or -1 past order 3.
const SHIFT: [[i8; JET_LEN]; 3] = {
    let mut table = [[-1i8; JET_LEN]; 3];
    let mut v = 0;
    while v < 3 {
        let mut n = 0;
        while n < JET_LEN {
            let mut a = MULTI_INDICES[n];
            a[v] += 1;
            if (a[0] + a[1] + a[2]) as usize <= JET_ORDER {
                if let Some(slot) = index_of(a) {
                    table[v][n] = slot as i8;
                }
            }
            n += 1;
        }
        v += 1;
    }
    table
};

fn factorial(n: u8) -> f64 {
    match n {
        0 | 1 => 1.0,
        2 => 2.0,
        3 => 6.0,
        _ => unreachable!("jet order is capped at 3"),
    }
}

/// Elementary functions available on jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Cot,
    Tanh,
    Coth,
    Sqrt,
    Exp,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tan => "tan",
            Elementary::Cot => "cot",
            Elementary::Tanh => "tanh",
            Elementary::Coth => "coth",
            Elementary::Sqrt => "sqrt",
            Elementary::Exp => "exp",
        }
    }
}

/// Order-3 jet in the three chart parameters.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet3 {
    coeffs: [f64; JET_LEN],
}

impl Jet3 {
    pub const ZERO: Jet3 = Jet3 { coeffs: [0.0; JET_LEN] };

    pub fn constant(c: f64) -> Self {
        let mut coeffs = [0.0; JET_LEN];
        coeffs[0] = c;
        Jet3 { coeffs }
    }

    /// Seed for the parameter `u^index` (1-based) evaluated at `value`.
    pub fn var(index: usize, value: f64) -> Result<Self, JetError> {
        if !(1..=3).contains(&index) {
            return Err(JetError::InvalidVariable(index));
        }
        let mut coeffs = [0.0; JET_LEN];
        coeffs[0] = value;
        coeffs[index] = 1.0;
        Ok(Jet3 { coeffs })
    }

    /// The three seeded parameters at `u`.
    pub fn vars(u: [f64; 3]) -> [Jet3; 3] {
        let mut out = [Jet3::ZERO; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            slot.coeffs[0] = u[i];
            slot.coeffs[i + 1] = 1.0;
        }
        out
    }

    pub fn from_coeffs(coeffs: [f64; JET_LEN]) -> Self {
        Jet3 { coeffs }
    }

    pub fn coeffs(&self) -> &[f64; JET_LEN] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor coefficient for the multi-index `alpha`, zero past order 3.
    pub fn coeff(&self, alpha: [u8; 3]) -> f64 {
        index_of(alpha).map_or(0.0, |n| self.coeffs[n])
    }

    /// Partial derivative `∂^{i+j+k} f / ∂u¹^i ∂u²^j ∂u³^k`; zero past order 3.
    pub fn partial(&self, alpha: [u8; 3]) -> f64 {
        self.coeff(alpha) * factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2])
    }

    /// First partial `∂f/∂u^{v+1}` for a 0-based variable slot `v`.
    pub fn d(&self, v: usize) -> f64 {
        self.coeffs[v + 1]
    }

    /// Jet of `∂f/∂u^{v+1}` (0-based `v`). The result is exact through
    /// order 2 only; its degree-3 coefficients are zero.
    pub fn derivative(&self, v: usize) -> Jet3 {
        let mut out = [0.0; JET_LEN];
        for (n, slot) in out.iter_mut().enumerate() {
            let src = SHIFT[v][n];
            if src >= 0 {
                let k = MULTI_INDICES[n][v] as f64 + 1.0;
                *slot = k * self.coeffs[src as usize];
            }
        }
        Jet3 { coeffs: out }
    }

    pub fn scale(&self, s: f64) -> Jet3 {
        let mut out = self.coeffs;
        out.iter_mut().for_each(|c| *c *= s);
        Jet3 { coeffs: out }
    }

    fn mul_jet(&self, other: &Jet3) -> Jet3 {
        let mut out = [0.0; JET_LEN];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                let t = PRODUCT[a][b];
                if t >= 0 {
                    out[t as usize] += x * y;
                }
            }
        }
        Jet3 { coeffs: out }
    }

    /// Compose a univariate function with this jet, given its value and first
    /// three derivatives at `self.value()`.
    fn compose(&self, d: [f64; 4]) -> Jet3 {
        let mut h = *self;
        h.coeffs[0] = 0.0;
        let h2 = h.mul_jet(&h);
        let h3 = h2.mul_jet(&h);
        let mut out = Jet3::constant(d[0]);
        for n in 1..JET_LEN {
            out.coeffs[n] = d[1] * h.coeffs[n] + 0.5 * d[2] * h2.coeffs[n] + d[3] / 6.0 * h3.coeffs[n];
        }
        out
    }

    pub fn recip(&self) -> Result<Jet3, JetError> {
        let v = self.value();
        if v.abs() <= DIVISION_GUARD || !v.is_finite() {
            return Err(JetError::DivisionByZero { value: v });
        }
        let r = 1.0 / v;
        Ok(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    pub fn checked_div(&self, other: &Jet3) -> Result<Jet3, JetError> {
        Ok(self.mul_jet(&other.recip()?))
    }

    pub fn sin(&self) -> Jet3 {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet3 {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn sinh(&self) -> Jet3 {
        let v = self.value();
        let (s, c) = (v.sinh(), v.cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(&self) -> Jet3 {
        let v = self.value();
        let (s, c) = (v.sinh(), v.cosh());
        self.compose([c, s, c, s])
    }

    pub fn exp(&self) -> Jet3 {
        let e = self.value().exp();
        self.compose([e, e, e, e])
    }

    pub fn sqrt(&self) -> Result<Jet3, JetError> {
        let v = self.value();
        if v <= 0.0 || !v.is_finite() {
            return Err(JetError::Domain {
                function: "sqrt",
                value: v,
            });
        }
        let s = v.sqrt();
        Ok(self.compose([s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)]))
    }

    pub fn tan(&self) -> Result<Jet3, JetError> {
        let c = self.cos();
        if c.value().abs() < POLE_GUARD {
            return Err(self.pole("tan"));
        }
        self.sin().checked_div(&c)
    }

    pub fn cot(&self) -> Result<Jet3, JetError> {
        let s = self.sin();
        if s.value().abs() < POLE_GUARD {
            return Err(self.pole("cot"));
        }
        self.cos().checked_div(&s)
    }

    pub fn tanh(&self) -> Result<Jet3, JetError> {
        self.sinh().checked_div(&self.cosh())
    }

    pub fn coth(&self) -> Result<Jet3, JetError> {
        let s = self.sinh();
        if s.value().abs() < POLE_GUARD {
            return Err(self.pole("coth"));
        }
        self.cosh().checked_div(&s)
    }

    fn pole(&self, function: &'static str) -> JetError {
        JetError::Domain {
            function,
            value: self.value(),
        }
    }

    pub fn apply(&self, f: Elementary) -> Result<Jet3, JetError> {
        match f {
            Elementary::Sin => Ok(self.sin()),
            Elementary::Cos => Ok(self.cos()),
            Elementary::Sinh => Ok(self.sinh()),
            Elementary::Cosh => Ok(self.cosh()),
            Elementary::Exp => Ok(self.exp()),
            Elementary::Tan => self.tan(),
            Elementary::Cot => self.cot(),
            Elementary::Tanh => self.tanh(),
            Elementary::Coth => self.coth(),
            Elementary::Sqrt => self.sqrt(),
        }
    }

    /// `|f|` as a jet; fails where the sign of `f` is undetermined.
    pub fn abs(&self, guard: f64) -> Result<Jet3, JetError> {
        let v = self.value();
        if v.abs() <= guard {
            return Err(JetError::Domain {
                function: "abs",
                value: v,
            });
        }
        Ok(if v < 0.0 { -*self } else { *self })
    }
}

impl Default for Jet3 {
    fn default() -> Self {
        Jet3::ZERO
    }
}

impl fmt::Debug for Jet3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet3")
            .field("value", &self.coeffs[0])
            .field("grad", &[self.coeffs[1], self.coeffs[2], self.coeffs[3]])
            .finish_non_exhaustive()
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(mut self, rhs: Jet3) -> Jet3 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(mut self, rhs: Jet3) -> Jet3 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, rhs: Jet3) -> Jet3 {
        self.mul_jet(&rhs)
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, rhs: f64) -> Jet3 {
        self.scale(rhs)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

/// Arithmetic shared by plain reals and jets, so immersions can be written
/// once and evaluated either way.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self> + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
}

impl Scalar for Jet3 {
    fn from_f64(v: f64) -> Self {
        Jet3::constant(v)
    }
    fn value(&self) -> f64 {
        self.coeffs[0]
    }
    fn sin(self) -> Self {
        Jet3::sin(&self)
    }
    fn cos(self) -> Self {
        Jet3::cos(&self)
    }
    fn sinh(self) -> Self {
        Jet3::sinh(&self)
    }
    fn cosh(self) -> Self {
        Jet3::cosh(&self)
    }
}
