use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("jet variable index must be 1, 2 or 3, got {0}")]
    InvalidVariable(usize),
    #[error("division by a jet with value {value:e}")]
    DivisionByZero { value: f64 },
    #[error("{function} is not defined at {value}")]
    Domain { function: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("inner-product signs must be ±1, got {0}")]
    InvalidSign(f64),
    #[error("only diagonal inner products are supported (entry ({row},{col}) = {value})")]
    NonDiagonalMetric { row: usize, col: usize, value: f64 },
    #[error("point ({}, {}, {}) is outside the domain of chart `{chart}`", point[0], point[1], point[2])]
    OutOfDomain { chart: String, point: [f64; 3] },
    #[error("chart not orthogonal: induced metric entry ({i},{j}) = {value:e}")]
    NotOrthogonal { i: usize, j: usize, value: f64 },
    #[error("degenerate coordinate direction {index}: ⟨∂,∂⟩ = {value:e}")]
    DegenerateDirection { index: usize, value: f64 },
    #[error("frame not φ-compatible: signs {signs:?}, expected (+1, +1, -1)")]
    NotPhiCompatible { signs: [f64; 3] },
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("degenerate plane: g(x,x)·g(y,y) = {0:e}")]
    DegeneratePlane(f64),
    #[error("plane basis not orthogonal: g(x,y) = {0:e}")]
    NonOrthogonalPlane(f64),
    #[error("F outside the dimension-3 class span (reconstruction residual {residual:e})")]
    OutsideClassSpan { residual: f64 },
    #[error("unknown manifold `{0}` (expected one of: s31, h31, flat)")]
    UnknownManifold(String),
}

impl Error {
    /// True for errors caused by evaluating at an excluded or singular point.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfDomain { .. }
                | Error::Jet(JetError::Domain { .. })
                | Error::Jet(JetError::DivisionByZero { .. })
                | Error::DegenerateDirection { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
