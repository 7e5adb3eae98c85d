//! Argument-principle quadrature on circles.
//!
//! The trapezoidal rule on a circle converges exponentially for analytic
//! integrands, so node doubling with a plain two-estimate comparison is
//! the whole convergence story. Winding counts come from
//! `(1/2 pi i) \oint g'/g dz`, power-sum moments of the enclosed zeros
//! from the same integral weighted by `z^k`.

use super::TrackError;
use crate::polyalg::HoloPoly;
use num_complex::Complex64;

/// A circle with a node budget for quadrature. Node counts are powers of
/// two, at least 64; doubling happens internally up to 2^16.
#[derive(Clone, Copy, Debug)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Self {
        assert!(radius > 0.0, "contour radius must be positive");
        let nodes = nodes.max(64).next_power_of_two();
        Contour {
            center,
            radius,
            nodes,
        }
    }

    pub fn unit() -> Self {
        Contour::new(Complex64::new(0.0, 0.0), 1.0, 256)
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }
}

/// A function of `(z, t)`, holomorphic in `z` for each parameter value.
///
/// `dz` may return `None`, in which case the quadrature falls back to
/// fourth-order central differences with step `1e-5 * radius`.
pub trait ParametricFn: Sync {
    fn eval(&self, z: Complex64, t: f64) -> Complex64;

    fn dz(&self, _z: Complex64, _t: f64) -> Option<Complex64> {
        None
    }
}

/// Polynomial-backed parametric function: `z` is one variable, the real
/// parameter `t` is substituted into another. The derivative is exact.
pub struct PolyParametric {
    poly: HoloPoly,
    dpoly: HoloPoly,
    z_var: usize,
    t_var: usize,
}

impl PolyParametric {
    pub fn new(poly: HoloPoly, z_var: usize, t_var: usize) -> Self {
        let dpoly = poly.partial(z_var);
        PolyParametric {
            poly,
            dpoly,
            z_var,
            t_var,
        }
    }

    pub fn poly(&self) -> &HoloPoly {
        &self.poly
    }

    fn point(&self, z: Complex64, t: f64) -> Vec<Complex64> {
        let mut p = vec![Complex64::new(0.0, 0.0); self.poly.num_vars()];
        p[self.z_var] = z;
        p[self.t_var] = Complex64::new(t, 0.0);
        p
    }
}

impl ParametricFn for PolyParametric {
    fn eval(&self, z: Complex64, t: f64) -> Complex64 {
        self.poly.eval(&self.point(z, t))
    }

    fn dz(&self, z: Complex64, t: f64) -> Option<Complex64> {
        Some(self.dpoly.eval(&self.point(z, t)))
    }
}

/// Univariate polynomial in `z` whose coefficients are closures of `t`.
pub struct CoefficientFn<F: Fn(f64) -> Vec<Complex64> + Sync> {
    pub coeffs_at: F,
}

impl<F: Fn(f64) -> Vec<Complex64> + Sync> ParametricFn for CoefficientFn<F> {
    fn eval(&self, z: Complex64, t: f64) -> Complex64 {
        crate::numeric::horner(&(self.coeffs_at)(t), z)
    }

    fn dz(&self, z: Complex64, t: f64) -> Option<Complex64> {
        let c = (self.coeffs_at)(t);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, ck) in c.iter().enumerate().skip(1).rev() {
            acc = acc * z + ck * (k as f64);
        }
        Some(acc)
    }
}

fn derivative_at(g: &dyn ParametricFn, z: Complex64, t: f64, radius: f64) -> Complex64 {
    if let Some(d) = g.dz(z, t) {
        return d;
    }
    // 4th-order central differences along the real direction; valid for
    // holomorphic integrands.
    let h = 1e-5 * radius;
    let e = Complex64::new(h, 0.0);
    (8.0 * (g.eval(z + e, t) - g.eval(z - e, t))
        - (g.eval(z + 2.0 * e, t) - g.eval(z - 2.0 * e, t)))
        / (12.0 * h)
}

const MAX_NODES: usize = 1 << 16;

/// Raw logarithmic-derivative moments `(1/2 pi i) \oint z^k g'/g dz` for
/// `k = 0..=order`, with node doubling until successive estimates agree
/// within `tol` in every component.
fn log_derivative_moments(
    g: &dyn ParametricFn,
    t: f64,
    contour: &Contour,
    order: usize,
    tol: f64,
) -> Result<Vec<Complex64>, TrackError> {
    let mut nodes = contour.nodes;
    // proximity check on the initial node set
    {
        let vals: Vec<f64> = (0..nodes)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
                g.eval(contour.point(theta), t).norm()
            })
            .collect();
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = vals.iter().cloned().fold(0.0, f64::max);
        if min <= 1e-9 * (1.0 + max) {
            return Err(TrackError::ContourTooClose { t, min_abs: min });
        }
    }
    let mut prev: Option<Vec<Complex64>> = None;
    while nodes <= MAX_NODES {
        let mut sums = vec![Complex64::new(0.0, 0.0); order + 1];
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let z = contour.point(theta);
            let gv = g.eval(z, t);
            let dgv = derivative_at(g, z, t, contour.radius);
            // (1/2 pi i) f(z) dz with dz = i r e^{i theta} d theta reduces
            // to an average of f(z) * (z - center).
            let w = (dgv / gv) * (z - contour.center);
            let mut zk = Complex64::new(1.0, 0.0);
            for s in sums.iter_mut() {
                *s += w * zk;
                zk *= z;
            }
        }
        let est: Vec<Complex64> = sums.iter().map(|s| s / nodes as f64).collect();
        if let Some(p) = &prev {
            let delta = est
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if delta < tol {
                return Ok(est);
            }
        }
        prev = Some(est);
        nodes *= 2;
    }
    Err(TrackError::QuadratureDiverged { t })
}

/// Number of zeros of `g(., t)` enclosed by the contour.
pub fn winding_count(
    g: &dyn ParametricFn,
    t: f64,
    contour: &Contour,
) -> Result<usize, TrackError> {
    let est = log_derivative_moments(g, t, contour, 0, 1e-6)?[0];
    let rounded = est.re.round();
    let residual = (est - Complex64::new(rounded, 0.0)).norm();
    if residual > 1e-3 || rounded < 0.0 {
        return Err(TrackError::NonIntegerWinding {
            t,
            value: (est.re, est.im),
        });
    }
    Ok(rounded as usize)
}

/// Power sums `p_k = sum_j a_j(t)^k` of the enclosed zeros for
/// `k = 1..=order`, at quadrature tolerance `1e-8`.
pub fn zero_moments(
    g: &dyn ParametricFn,
    t: f64,
    contour: &Contour,
    order: usize,
) -> Result<Vec<Complex64>, TrackError> {
    let raw = log_derivative_moments(g, t, contour, order, 1e-8)?;
    Ok(raw[1..].to_vec())
}

/// Winding count and power sums in one pass over the contour.
pub fn count_and_moments(
    g: &dyn ParametricFn,
    t: f64,
    contour: &Contour,
    max_order: usize,
) -> Result<(usize, Vec<Complex64>), TrackError> {
    let count = winding_count(g, t, contour)?;
    if count == 0 {
        return Ok((0, Vec::new()));
    }
    let order = count.min(max_order.max(count));
    let moments = zero_moments(g, t, contour, order)?;
    Ok((count, moments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn unit() -> Contour {
        Contour::unit()
    }

    /// g(z, t) = z as a bivariate polynomial in (z, t) = (z1, z2).
    fn poly_fn(text: &str) -> PolyParametric {
        PolyParametric::new(parse_poly(text, 2).unwrap(), 0, 1)
    }

    #[test]
    fn winding_of_identity_is_one() {
        let g = poly_fn("z1");
        assert_eq!(winding_count(&g, 0.0, &unit()).unwrap(), 1);
    }

    #[test]
    fn winding_of_nonvanishing_function_is_zero() {
        let g = poly_fn("1");
        assert_eq!(winding_count(&g, 0.0, &unit()).unwrap(), 0);
    }

    #[test]
    fn winding_counts_both_square_roots() {
        // z^2 - t at t = 1/4: roots +-1/2 inside the unit circle
        let g = poly_fn("z1^2 - z2");
        assert_eq!(winding_count(&g, 0.25, &unit()).unwrap(), 2);
    }

    #[test]
    fn moment_examples() {
        // g = z - a: p1 = a (the residue)
        let g = poly_fn("z1 - 1/4");
        let p = zero_moments(&g, 0.0, &unit(), 1).unwrap();
        assert!((p[0] - Complex64::new(0.25, 0.0)).norm() < 1e-10);
        // g = z^2 - t: p1 = 0, p2 = 2t
        let g2 = poly_fn("z1^2 - z2");
        let p2 = zero_moments(&g2, 0.16, &unit(), 2).unwrap();
        assert!(p2[0].norm() < 1e-10);
        assert!((p2[1] - Complex64::new(0.32, 0.0)).norm() < 1e-8);
        // g = z(z - 1/2): p1 = 1/2, p2 = 1/4
        let g3 = poly_fn("z1^2 - 1/2 z1");
        let p3 = zero_moments(&g3, 0.0, &unit(), 2).unwrap();
        assert!((p3[0] - Complex64::new(0.5, 0.0)).norm() < 1e-10);
        assert!((p3[1] - Complex64::new(0.25, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zero_on_contour_is_rejected() {
        let g = poly_fn("z1 - 1");
        assert!(matches!(
            winding_count(&g, 0.0, &unit()),
            Err(TrackError::ContourTooClose { .. })
        ));
    }

    #[test]
    fn finite_difference_derivative_fallback() {
        struct Closure;
        impl ParametricFn for Closure {
            fn eval(&self, z: Complex64, t: f64) -> Complex64 {
                z * z - Complex64::new(t, 0.0)
            }
        }
        assert_eq!(winding_count(&Closure, 0.25, &unit()).unwrap(), 2);
        let p = zero_moments(&Closure, 0.25, &unit(), 2).unwrap();
        assert!((p[1] - Complex64::new(0.5, 0.0)).norm() < 1e-7);
    }
}
