//! Numerical argument-principle machinery: winding counts, residue
//! moments, zero recovery through Newton's identities, branching-set
//! detection, and the boundary-face zero covers.

mod contour;
mod cover;
mod newton;
mod trajectory;

pub use contour::{
    count_and_moments, winding_count, zero_moments, CoefficientFn, Contour, ParametricFn,
    PolyParametric,
};
pub use cover::{boundary_zero_cover, ArcAssignment, BoundaryZeroCover, CoverBox};
pub use newton::{recover_zeros, RecoveredZeros};
pub use trajectory::{branching_set, track_zeros, ZeroTrajectory};

use std::fmt;

/// Failures of the numeric tracking layer.
#[derive(Clone, Debug, PartialEq)]
pub enum TrackError {
    /// A zero sits within the proximity guard of the contour.
    ContourTooClose { t: f64, min_abs: f64 },
    /// Node doubling hit its cap without two agreeing estimates.
    QuadratureDiverged { t: f64 },
    /// The winding integral did not land on a non-negative integer.
    NonIntegerWinding { t: f64, value: (f64, f64) },
    /// Exact-pair mode requires winding count two on the whole grid.
    UnsupportedMultiplicity { t: f64, count: usize },
    /// Every generator restricts to zero on some face: a holomorphic
    /// boundary disk; the verdict layer should have reported it.
    FaceDisk { frozen: usize },
    /// No single generator is zero-free over one arc; retry with more
    /// arcs.
    ArcSelection { arc: usize },
    NeedsBidisk { n: usize },
}

impl fmt::Display for TrackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackError::ContourTooClose { t, min_abs } => write!(
                f,
                "a zero lies too close to the contour at t = {t} (min |g| = {min_abs:.3e})"
            ),
            TrackError::QuadratureDiverged { t } => {
                write!(f, "quadrature failed to converge at t = {t}")
            }
            TrackError::NonIntegerWinding { t, value } => write!(
                f,
                "winding integral at t = {t} is not a non-negative integer: {} + {}i",
                value.0, value.1
            ),
            TrackError::UnsupportedMultiplicity { t, count } => write!(
                f,
                "exact-pair branching needs winding count 2, found {count} at t = {t}"
            ),
            TrackError::FaceDisk { frozen } => write!(
                f,
                "all generators are holomorphic on a face of the z{} family",
                frozen + 1
            ),
            TrackError::ArcSelection { arc } => write!(
                f,
                "no generator is identically-nonzero over arc {arc}; increase the arc count"
            ),
            TrackError::NeedsBidisk { n } => {
                write!(f, "face tracking needs a two-dimensional domain, got {n}")
            }
        }
    }
}

impl std::error::Error for TrackError {}
