//! Empirical validation layer: deterministic domain grids, generator
//! monomial bases, least-squares density experiments, and hull
//! separation certificates.

mod basis;
mod certificate;
mod domain;
mod fit;
mod report;

pub use basis::{generator_basis, GeneratorBasis, SymbolKind};
pub use certificate::{separation_certificate, CertificateOutcome, SeparationCertificate};
pub use domain::SampleDomain;
pub use fit::{fit_residual, sup_error, FitOutcome, SINGULAR_VALUE_THRESHOLD};
pub use report::{decay_report, DensityReport, TargetSpec, BASIS_CAP};

use std::fmt;

/// Failures of the density layer.
#[derive(Clone, Debug, PartialEq)]
pub enum DensityError {
    BasisTooLarge { size: usize, cap: usize },
    InsufficientSamples { train: usize, needed: usize },
    /// Every singular value fell below the regularization threshold.
    DegenerateBasis,
    InvalidDegrees,
    Numeric(String),
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::BasisTooLarge { size, cap } => {
                write!(f, "basis size {size} exceeds the cap {cap}")
            }
            DensityError::InsufficientSamples { train, needed } => {
                write!(f, "{train} training samples, need at least {needed}")
            }
            DensityError::DegenerateBasis => {
                write!(f, "basis rank collapsed below one on the training grid")
            }
            DensityError::InvalidDegrees => write!(f, "degrees must be strictly increasing"),
            DensityError::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for DensityError {}
