//! Degree-sweep density reports.

use super::basis::generator_basis;
use super::fit::{fit_residual, sup_error};
use super::{DensityError, SampleDomain};
use crate::pluriharmonic::PluriharmonicMap;
use num_complex::Complex64;

pub const BASIS_CAP: usize = 5000;

/// Test functions measured against the generated algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    ConjZ1,
    ConjZ2,
    /// `|z1|^2 conj(z2)`.
    AbsSqZ1ConjZ2,
    /// Smooth radial bump centered at the rational interior point
    /// `(1/3, -1/4)` (first coordinate only in dimension one).
    RadialBump,
}

impl TargetSpec {
    pub fn id(&self) -> &'static str {
        match self {
            TargetSpec::ConjZ1 => "conj_z1",
            TargetSpec::ConjZ2 => "conj_z2",
            TargetSpec::AbsSqZ1ConjZ2 => "abssq_z1_conj_z2",
            TargetSpec::RadialBump => "radial_bump",
        }
    }

    pub fn from_id(id: &str) -> Option<TargetSpec> {
        match id {
            "conj_z1" | "conj_z" => Some(TargetSpec::ConjZ1),
            "conj_z2" => Some(TargetSpec::ConjZ2),
            "abssq_z1_conj_z2" => Some(TargetSpec::AbsSqZ1ConjZ2),
            "radial_bump" => Some(TargetSpec::RadialBump),
            _ => None,
        }
    }

    /// The standard battery for a domain of the given complex dimension.
    pub fn battery(dim: usize) -> Vec<TargetSpec> {
        if dim == 1 {
            vec![TargetSpec::ConjZ1, TargetSpec::RadialBump]
        } else {
            vec![
                TargetSpec::ConjZ1,
                TargetSpec::ConjZ2,
                TargetSpec::AbsSqZ1ConjZ2,
                TargetSpec::RadialBump,
            ]
        }
    }

    pub fn eval(&self, p: &[Complex64]) -> Complex64 {
        match self {
            TargetSpec::ConjZ1 => p[0].conj(),
            TargetSpec::ConjZ2 => p[1.min(p.len() - 1)].conj(),
            TargetSpec::AbsSqZ1ConjZ2 => {
                let w = p[1.min(p.len() - 1)];
                Complex64::new(p[0].norm_sqr(), 0.0) * w.conj()
            }
            TargetSpec::RadialBump => {
                let c1 = Complex64::new(1.0 / 3.0, 0.0);
                let mut d = (p[0] - c1).norm_sqr();
                if p.len() > 1 {
                    let c2 = Complex64::new(-0.25, 0.0);
                    d += (p[1] - c2).norm_sqr();
                }
                Complex64::new((-4.0 * d).exp(), 0.0)
            }
        }
    }

    pub fn is_dimension_valid(&self, dim: usize) -> bool {
        dim >= 2 || matches!(self, TargetSpec::ConjZ1 | TargetSpec::RadialBump)
    }
}

/// Residual matrices of the degree sweep, one row per target.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub generators: Vec<String>,
    pub domain_kind: String,
    pub resolution: usize,
    pub targets: Vec<String>,
    pub degrees: Vec<u32>,
    pub basis_sizes: Vec<usize>,
    pub train_size: usize,
    pub validate_size: usize,
    pub train_residuals: Vec<Vec<f64>>,
    pub sup_residuals: Vec<Vec<f64>>,
    /// Relative change of the sup residual when the validation grid is
    /// refined by another factor of two (sup measured on the doubled
    /// grid against the same fit).
    pub stability: Vec<Vec<f64>>,
}

impl DensityReport {
    /// CSV rows `target,degree,train_residual,sup_residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("target,degree,train_residual,sup_residual\n");
        for (ti, target) in self.targets.iter().enumerate() {
            for (di, d) in self.degrees.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    target, d, self.train_residuals[ti][di], self.sup_residuals[ti][di]
                ));
            }
        }
        out
    }
}

/// Runs the degree sweep for every target on shared deterministic grids.
///
/// The training grid is fixed across degrees: its resolution is raised
/// deterministically until it covers twice the largest basis. The
/// validation grid doubles that resolution, and the stability column
/// re-measures each sup on a further doubled grid.
pub fn decay_report(
    map: &PluriharmonicMap,
    domain: &SampleDomain,
    targets: &[TargetSpec],
    degrees: &[u32],
) -> Result<DensityReport, DensityError> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DensityError::InvalidDegrees);
    }
    let dim = domain.ambient_dim();
    for t in targets {
        if !t.is_dimension_valid(dim) {
            return Err(DensityError::Numeric(format!(
                "target {} needs a two-dimensional domain",
                t.id()
            )));
        }
    }
    if map.n() != dim {
        return Err(DensityError::Numeric(format!(
            "generator domain dimension {} does not match the sample domain ({})",
            map.n(),
            dim
        )));
    }
    let max_degree = *degrees.last().unwrap();
    let bases: Vec<_> = degrees
        .iter()
        .map(|&d| generator_basis(map.n(), map.funcs(), d, BASIS_CAP))
        .collect::<Result<_, _>>()?;
    let largest = bases.last().unwrap().len();
    // deterministic resolution escalation for the shared training grid
    let mut resolution = domain.resolution().max(8);
    while domain.with_resolution(resolution).points().len() < 2 * largest {
        resolution *= 2;
        if resolution > 1 << 14 {
            return Err(DensityError::Numeric(format!(
                "cannot reach {} training samples for basis size {largest}",
                2 * largest
            )));
        }
    }
    let train = domain.with_resolution(resolution).points();
    let validate = domain.with_resolution(resolution * 2).points();
    let stability_grid = domain.with_resolution(resolution * 4).points();
    let mut train_residuals = vec![vec![0.0; degrees.len()]; targets.len()];
    let mut sup_residuals = vec![vec![0.0; degrees.len()]; targets.len()];
    let mut stability = vec![vec![0.0; degrees.len()]; targets.len()];
    for (ti, target) in targets.iter().enumerate() {
        let f = |p: &[Complex64]| target.eval(p);
        for (di, basis) in bases.iter().enumerate() {
            let out = fit_residual(basis, &f, &train, &validate)?;
            let sup2 = sup_error(basis, &out.coefficients, &f, &stability_grid);
            train_residuals[ti][di] = out.train_residual;
            sup_residuals[ti][di] = out.sup_residual;
            stability[ti][di] =
                (out.sup_residual - sup2).abs() / out.sup_residual.max(sup2).max(1e-12);
        }
    }
    let _ = max_degree;
    Ok(DensityReport {
        generators: map
            .funcs()
            .iter()
            .map(|h| format!("g: {}; f: {}", h.g(), h.f()))
            .collect(),
        domain_kind: domain.kind_name().to_string(),
        resolution,
        targets: targets.iter().map(|t| t.id().to_string()).collect(),
        degrees: degrees.to_vec(),
        basis_sizes: bases.iter().map(|b| b.len()).collect(),
        train_size: train.len(),
        validate_size: validate.len(),
        train_residuals,
        sup_residuals,
        stability,
    })
}
