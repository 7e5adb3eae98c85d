//! Shared numeric helpers: polynomial root finding, float
//! rationalization, and deterministic point clustering.

use crate::polyalg::{GaussianRational, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

/// Horner evaluation, coefficients ascending.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * (k as f64);
    }
    acc
}

/// All complex roots of the polynomial with the given ascending
/// coefficients, via Durand-Kerner iteration with Newton polish.
/// Deterministic: fixed initial configuration, fixed iteration caps.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let lead = *c.last().unwrap();
    for x in c.iter_mut() {
        *x /= lead;
    }
    let n = c.len() - 1;
    if n == 1 {
        return vec![-c[0]];
    }
    if n == 2 {
        return quadratic_roots(c[0], c[1]);
    }
    let radius = 1.0 + c.iter().take(n).map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius)
        .collect();
    let tol = 1e-14 * radius.max(1.0);
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    denom *= if d.norm() < 1e-300 {
                        Complex64::new(1e-300, 0.0)
                    } else {
                        d
                    };
                }
            }
            let step = horner(&c, zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < tol {
            break;
        }
    }
    // polish simple roots
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = horner_deriv(&c, *r);
            if d.norm() > 1e-8 {
                *r -= horner(&c, *r) / d;
            }
        }
    }
    sort_complex(&mut roots);
    roots
}

fn quadratic_roots(c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    // z^2 + c1 z + c0, stable form
    let disc = (c1 * c1 - 4.0 * c0).sqrt();
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
        -(c1 + disc) / 2.0
    } else {
        -(c1 - disc) / 2.0
    };
    let mut out = if q.norm() < 1e-300 {
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        vec![q, c0 / q]
    };
    sort_complex(&mut out);
    out
}

/// Deterministic order on complex values: by real part, then imaginary.
pub fn complex_cmp(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

pub fn sort_complex(points: &mut [Complex64]) {
    points.sort_by(complex_cmp);
}

/// Merge points closer than `tol`, keeping the first representative in
/// the sorted sweep.
pub fn cluster_complex(mut points: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    sort_complex(&mut points);
    let mut out: Vec<Complex64> = Vec::new();
    for p in points {
        if !out.iter().any(|q| (p - q).norm() <= tol) {
            out.push(p);
        }
    }
    out
}

/// Deduplicate points of the plane-pair `C^2` at tolerance `tol`.
pub fn cluster_pairs(mut points: Vec<[Complex64; 2]>, tol: f64) -> Vec<[Complex64; 2]> {
    points.sort_by(|a, b| complex_cmp(&a[0], &b[0]).then(complex_cmp(&a[1], &b[1])));
    let mut out: Vec<[Complex64; 2]> = Vec::new();
    for p in points {
        if !out
            .iter()
            .any(|q| (p[0] - q[0]).norm() + (p[1] - q[1]).norm() <= tol)
        {
            out.push(p);
        }
    }
    out
}

/// Best rational approximation by continued fractions; `Some` when the
/// value is within `tol` of a rational with denominator at most
/// `max_den`.
pub fn rationalize(x: f64, tol: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::from(1));
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let approx = ratio_to_f64(&p1, &q1);
        if (approx - x).abs() <= tol {
            return Some(Rational::new(p1, q1));
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let recip = 1.0 / frac;
        let a = recip.floor();
        if !a.is_finite() || a.abs() > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2.abs() > BigInt::from(max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        frac = recip - a;
    }
    let approx = ratio_to_f64(&p1, &q1);
    if (approx - x).abs() <= tol {
        Some(Rational::new(p1, q1))
    } else {
        None
    }
}

fn ratio_to_f64(p: &BigInt, q: &BigInt) -> f64 {
    if q.is_zero() {
        return f64::INFINITY;
    }
    p.to_f64().unwrap_or(f64::NAN) / q.to_f64().unwrap_or(f64::NAN)
}

/// Rationalize both parts of a complex value.
pub fn gaussian_rationalize(z: Complex64, tol: f64) -> Option<GaussianRational> {
    let re = rationalize(z.re, tol, 1_000_000_000)?;
    let im = rationalize(z.im, tol, 1_000_000_000)?;
    Some(GaussianRational::new(re, im))
}
