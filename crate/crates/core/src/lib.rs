//! Almost contact B-metric structures on hypersurfaces of pseudo-Euclidean
//! 4-spaces, computed numerically with order-3 jets and checked against
//! closed-form oracles for the de Sitter and anti-de Sitter 3-spheres.

pub mod acbm;
pub mod ambient;
pub mod connection;
pub mod crosscheck;
pub mod error;
pub mod evaluate;
pub mod hypersurface;
pub mod jet;
pub mod manifolds;
pub mod report;
pub mod tensor;
pub mod verify;

pub use error::{Error, JetError, Result};
pub use evaluate::{evaluate, Quantities, TensorBundle};
pub use hypersurface::{Chart, FramePoint};
pub use jet::Jet3;
pub use manifolds::OracleSuite;
