//! The verdict engine: variety decomposition, holomorphy along curves,
//! leaves of level-set laminations, stratification, and the dichotomy
//! decision.

mod analyze;
mod decomposition;
mod leaf;
mod stratify;

pub use analyze::{analyze, Verdict, VerdictKind, Witness};
pub use decomposition::{common_zero_set, common_zeros_bivariate, VarietyDecomposition};
pub use leaf::{
    curve_geometry, find_leaf, holomorphic_along_curve, holomorphic_along_curve_numeric,
    leaf_boundary_check, leaf_from_parts, BoundaryStatus, CurveGeometry, CurveRep, Leaf,
};
pub use stratify::{
    stratify, ComponentCertificate, InteriorPoints, Stratification, StratifyAbort,
};

use std::fmt;

/// Failures of the obstruction layer.
#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionError {
    /// Holomorphy-along-curve is meaningless for constant polynomials.
    ConstantCurve,
    /// The generator's real-part source is constant: it is holomorphic
    /// and spawns no lamination.
    NoLeaf { generator: usize },
    /// The curve does not meet the closed bidisk.
    DegenerateLeaf,
    WrongDimension { expected: usize, got: usize },
    Unsupported(String),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::ConstantCurve => {
                write!(f, "curve polynomial must be nonconstant")
            }
            ObstructionError::NoLeaf { generator } => write!(
                f,
                "generator {} is holomorphic and has no level-set lamination",
                generator + 1
            ),
            ObstructionError::DegenerateLeaf => {
                write!(f, "the curve does not meet the closed bidisk")
            }
            ObstructionError::WrongDimension { expected, got } => {
                write!(f, "expected domain dimension {expected}, got {got}")
            }
            ObstructionError::Unsupported(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ObstructionError {}
