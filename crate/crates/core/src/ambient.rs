//! Flat pseudo-Euclidean 4-spaces with diagonal inner products.

use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};
use crate::jet::Scalar;

/// ℝ^{p,q} with p + q = 4 and inner product `Σ signᵢ xⁱ yⁱ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientSpace {
    signs: [f64; 4],
}

impl AmbientSpace {
    pub fn new(signs: [f64; 4]) -> Result<Self> {
        for s in signs {
            if s != 1.0 && s != -1.0 {
                return Err(Error::InvalidSign(s));
            }
        }
        Ok(AmbientSpace { signs })
    }

    /// Accepts a symmetric 4×4 Gram matrix only if it is diagonal with ±1 entries.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self> {
        for (row, cols) in m.iter().enumerate() {
            for (col, &value) in cols.iter().enumerate() {
                if row != col && value != 0.0 {
                    return Err(Error::NonDiagonalMetric { row, col, value });
                }
            }
        }
        Self::new([m[0][0], m[1][1], m[2][2], m[3][3]])
    }

    /// Lorentz–Minkowski space ℝ^{3,1}: signs (+,+,+,−).
    pub fn lorentz() -> Self {
        AmbientSpace {
            signs: [1.0, 1.0, 1.0, -1.0],
        }
    }

    /// Neutral space ℝ^{2,2}: signs (+,+,−,−).
    pub fn neutral() -> Self {
        AmbientSpace {
            signs: [1.0, 1.0, -1.0, -1.0],
        }
    }

    pub fn signs(&self) -> [f64; 4] {
        self.signs
    }

    /// (number of +1, number of −1).
    pub fn signature(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|&&s| s > 0.0).count();
        (plus, 4 - plus)
    }

    pub fn inner<S: Scalar>(&self, x: &AmbientVector<S>, y: &AmbientVector<S>) -> S {
        let mut acc = x.0[0] * y.0[0] * self.signs[0];
        for a in 1..4 {
            acc = acc + x.0[a] * y.0[a] * self.signs[a];
        }
        acc
    }
}

/// A vector of ℝ⁴ with real or jet components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientVector<S>(pub [S; 4]);

impl<S: Scalar> AmbientVector<S> {
    pub fn zero() -> Self {
        AmbientVector([S::from_f64(0.0); 4])
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> AmbientVector<T> {
        AmbientVector([f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3])])
    }

    pub fn scaled(&self, s: S) -> Self {
        AmbientVector(self.0.map(|c| c * s))
    }

    pub fn values(&self) -> [f64; 4] {
        self.0.map(|c| c.value())
    }
}

impl<S> Index<usize> for AmbientVector<S> {
    type Output = S;
    fn index(&self, a: usize) -> &S {
        &self.0[a]
    }
}

impl<S: Scalar> Add for AmbientVector<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        AmbientVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl<S: Scalar> Sub for AmbientVector<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        AmbientVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl<S: Scalar> Mul<f64> for AmbientVector<S> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        AmbientVector(self.0.map(|c| c * rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sign_read_off() {
        let l = AmbientSpace::lorentz();
        let t = AmbientVector([0.0, 0.0, 0.0, 1.0]);
        assert_eq!(l.inner(&t, &t), -1.0);
        assert_eq!(l.signature(), (3, 1));
        assert_eq!(AmbientSpace::neutral().signature(), (2, 2));
    }

    #[test]
    fn rejects_bad_signs_and_off_diagonal() {
        assert_eq!(AmbientSpace::new([1.0, 1.0, 0.5, -1.0]), Err(Error::InvalidSign(0.5)));
        let mut m = [[0.0; 4]; 4];
        for (a, row) in m.iter_mut().enumerate() {
            row[a] = 1.0;
        }
        m[3][3] = -1.0;
        assert_eq!(AmbientSpace::from_matrix(m), Ok(AmbientSpace::lorentz()));
        m[0][1] = 0.2;
        m[1][0] = 0.2;
        assert!(matches!(
            AmbientSpace::from_matrix(m),
            Err(Error::NonDiagonalMetric { row: 0, col: 1, .. })
        ));
    }

    fn vec4() -> impl Strategy<Value = [f64; 4]> {
        prop::array::uniform4(-10.0f64..10.0)
    }

    proptest! {
        #[test]
        fn symmetric_and_bilinear(
            x in vec4(), y in vec4(), w in vec4(),
            a in -3.0f64..3.0, b in -3.0f64..3.0, neutral in any::<bool>()
        ) {
            let space = if neutral { AmbientSpace::neutral() } else { AmbientSpace::lorentz() };
            let (x, y, w) = (AmbientVector(x), AmbientVector(y), AmbientVector(w));
            prop_assert_eq!(space.inner(&x, &y), space.inner(&y, &x));
            let lhs = space.inner(&(x * a + y * b), &w);
            let rhs = a * space.inner(&x, &w) + b * space.inner(&y, &w);
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs().max(rhs.abs())) * 100.0);
        }
    }
}
