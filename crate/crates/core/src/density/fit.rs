//! Least-squares density experiments.
//!
//! Fits are discrete-L2 over the training grid, solved by a thin SVD
//! with an absolute threshold of `1e-10` on the singular values of the
//! column-normalized design matrix. The reported approximation quality
//! is the sup residual over a strictly finer validation grid; training
//! never sees it.

use super::basis::GeneratorBasis;
use super::DensityError;
use ndarray::{Array1, Array2};
use ndarray_linalg::{JobSvd, SVDDC};
use num_complex::Complex64;
use rayon::prelude::*;

pub const SINGULAR_VALUE_THRESHOLD: f64 = 1e-10;

/// Outcome of one least-squares fit.
#[derive(Clone, Debug)]
pub struct FitOutcome {
    /// Root-mean-square residual on the training grid.
    pub train_residual: f64,
    /// Max absolute error over the validation grid.
    pub sup_residual: f64,
    /// Number of singular values above the threshold.
    pub rank: usize,
    /// Fit coefficients in basis order (original column scaling).
    pub coefficients: Vec<Complex64>,
}

/// Least-squares fit of `target` on `train`, sup-validated on
/// `validate`. Requires at least twice as many training points as basis
/// elements.
pub fn fit_residual(
    basis: &GeneratorBasis,
    target: &(dyn Fn(&[Complex64]) -> Complex64 + Sync),
    train: &[Vec<Complex64>],
    validate: &[Vec<Complex64>],
) -> Result<FitOutcome, DensityError> {
    let n_basis = basis.len();
    if train.len() < 2 * n_basis {
        return Err(DensityError::InsufficientSamples {
            train: train.len(),
            needed: 2 * n_basis,
        });
    }
    let rows: Vec<Vec<Complex64>> = train.par_iter().map(|p| basis.eval(p)).collect();
    let mut a = Array2::<Complex64>::zeros((train.len(), n_basis));
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            a[(i, j)] = *v;
        }
    }
    let b = Array1::from_iter(train.iter().map(|p| target(p)));
    // column normalization; zero columns are left untouched and fall to
    // the singular-value threshold
    let mut scales = vec![1.0f64; n_basis];
    for j in 0..n_basis {
        let norm: f64 = (0..train.len()).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            scales[j] = norm;
            for i in 0..train.len() {
                a[(i, j)] /= Complex64::new(norm, 0.0);
            }
        }
    }
    let (u, s, vt) = a
        .svddc(JobSvd::Some)
        .map_err(|e| DensityError::Numeric(format!("SVD failed: {e}")))?;
    let u = u.expect("thin U requested");
    let vt = vt.expect("thin Vt requested");
    let rank = s.iter().filter(|&&x| x > SINGULAR_VALUE_THRESHOLD).count();
    if rank == 0 {
        return Err(DensityError::DegenerateBasis);
    }
    let ub = u.t().mapv(|z| z.conj()).dot(&b);
    let mut y = Array1::<Complex64>::zeros(s.len());
    for k in 0..s.len() {
        if s[k] > SINGULAR_VALUE_THRESHOLD {
            y[k] = ub[k] / Complex64::new(s[k], 0.0);
        }
    }
    let x_scaled = vt.t().mapv(|z| z.conj()).dot(&y);
    let train_residual = {
        let fit = a.dot(&x_scaled);
        let sum: f64 = fit
            .iter()
            .zip(b.iter())
            .map(|(f, t)| (f - t).norm_sqr())
            .sum();
        (sum / train.len() as f64).sqrt()
    };
    let coefficients: Vec<Complex64> = x_scaled
        .iter()
        .zip(&scales)
        .map(|(c, s)| c / Complex64::new(*s, 0.0))
        .collect();
    let sup_residual = sup_error(basis, &coefficients, target, validate);
    Ok(FitOutcome {
        train_residual,
        sup_residual,
        rank,
        coefficients,
    })
}

/// Streaming sup-norm error of a fitted combination over a point set.
pub fn sup_error(
    basis: &GeneratorBasis,
    coefficients: &[Complex64],
    target: &(dyn Fn(&[Complex64]) -> Complex64 + Sync),
    points: &[Vec<Complex64>],
) -> f64 {
    points
        .par_iter()
        .map(|p| {
            let row = basis.eval(p);
            let fit: Complex64 = row
                .iter()
                .zip(coefficients)
                .map(|(v, c)| v * c)
                .sum();
            (fit - target(p)).norm()
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::basis::generator_basis;
    use crate::density::SampleDomain;
    use crate::pluriharmonic::PluriharmonicFn;
    use crate::polyalg::parse_poly;

    fn circle(n: usize) -> Vec<Vec<Complex64>> {
        (0..n)
            .map(|i| {
                vec![Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * i as f64 / n as f64,
                )]
            })
            .collect()
    }

    #[test]
    fn conjugate_on_the_circle_stays_at_distance_one() {
        // Contour bound: |(1/2 pi i) \oint (conj(z) - p) dz| = 1 forces
        // sup >= 1 for any polynomial p; attained by p = 0.
        let basis = generator_basis(1, &[], 8, 5000).unwrap();
        let target = |p: &[Complex64]| p[0].conj();
        let out = fit_residual(&basis, &target, &circle(64), &circle(128)).unwrap();
        assert!(
            (out.sup_residual - 1.0).abs() < 1e-2,
            "sup residual {} should be 1 within 1e-2",
            out.sup_residual
        );
    }

    #[test]
    fn member_of_span_fits_to_solver_precision() {
        // include a generator equal to the conjugate structure through
        // Re and the coordinate: h = Re z (so conj(z) = 2h - z)
        let h = PluriharmonicFn::real_part(parse_poly("z", 1).unwrap());
        let basis = generator_basis(1, &[h], 2, 5000).unwrap();
        let target = |p: &[Complex64]| p[0].conj();
        let out = fit_residual(&basis, &target, &circle(64), &circle(128)).unwrap();
        assert!(out.train_residual < 1e-10);
        assert!(out.sup_residual < 1e-10);
    }

    #[test]
    fn fiber_collapse_keeps_the_floor() {
        // On the fiber {z1 = 0} the basis of (z1, z2, Re z1) collapses to
        // polynomials in z2; the conjugate target keeps sup >= 0.9.
        let h = PluriharmonicFn::real_part(parse_poly("z1", 2).unwrap());
        let basis = generator_basis(2, &[h], 6, 5000).unwrap();
        let target = |p: &[Complex64]| p[1].conj();
        let fiber = SampleDomain::FiberDisk {
            a: Complex64::new(0.0, 0.0),
            resolution: 24,
        };
        let train = fiber.points();
        let validate = fiber.with_resolution(48).points();
        let out = fit_residual(&basis, &target, &train, &validate).unwrap();
        assert!(out.sup_residual >= 0.9, "sup {}", out.sup_residual);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let basis = generator_basis(1, &[], 8, 5000).unwrap();
        let target = |p: &[Complex64]| p[0];
        assert!(matches!(
            fit_residual(&basis, &target, &circle(8), &circle(16)),
            Err(DensityError::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn monotone_in_nested_degree() {
        let target = |p: &[Complex64]| (p[0] * 3.0).cos() + p[0].conj() * 0.3;
        let train = circle(96);
        let validate = circle(192);
        let mut last = f64::INFINITY;
        for d in [2u32, 4, 6, 8] {
            let basis = generator_basis(1, &[], d, 5000).unwrap();
            let out = fit_residual(&basis, &target, &train, &validate).unwrap();
            assert!(out.train_residual <= last + 1e-12);
            last = out.train_residual;
        }
    }
}
