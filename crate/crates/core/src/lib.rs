//! Engine for deciding whether a tuple of pluriharmonic generators on
//! the closed bidisk, its distinguished boundary, or the closed disk
//! generates the full algebra of continuous functions, or instead admits
//! a holomorphic obstruction (a boundary disk, an interior variety, or a
//! family of level-set leaves).
//!
//! The decision layer is exact: polynomial data over the Gaussian
//! rationals, divisibility tests, GCDs and resultants. Numerics are
//! confined to diagnostics, root localization, contour integration, and
//! the empirical least-squares density experiments.

pub mod numeric;
pub mod polyalg;
pub mod pluriharmonic;
pub mod zero_tracker;
pub mod obstruction;
pub mod density;

pub use num_complex::Complex64;
