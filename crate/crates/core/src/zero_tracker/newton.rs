//! Zero recovery from power sums via Newton's identities.

use crate::numeric::{horner, poly_roots};
use num_complex::Complex64;

/// Zeros recovered from power sums, with the residual of the monic
/// polynomial at the recovered roots.
#[derive(Clone, Debug)]
pub struct RecoveredZeros {
    pub zeros: Vec<Complex64>,
    pub residual: f64,
    /// Residual exceeded `1e-6`; zeros are returned anyway.
    pub ill_conditioned: bool,
}

/// Converts `p_1..p_m` to elementary symmetric functions, forms the monic
/// degree-m polynomial with those roots, and solves it.
pub fn recover_zeros(power_sums: &[Complex64]) -> RecoveredZeros {
    let m = power_sums.len();
    assert!(m >= 1, "need at least one power sum");
    // e_k = (1/k) * sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i, with e_0 = 1
    let mut e = vec![Complex64::new(0.0, 0.0); m + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for k in 1..=m {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / k as f64;
    }
    // monic polynomial: x^m - e1 x^(m-1) + e2 x^(m-2) - ... + (-1)^m e_m
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
    coeffs[m] = Complex64::new(1.0, 0.0);
    for k in 1..=m {
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        coeffs[m - k] = sign * e[k];
    }
    let zeros = poly_roots(&coeffs);
    let residual = zeros
        .iter()
        .map(|z| horner(&coeffs, *z).norm())
        .fold(0.0, f64::max);
    RecoveredZeros {
        zeros,
        residual,
        ill_conditioned: residual > 1e-6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_zero_is_the_first_moment() {
        let a = Complex64::new(0.3, -0.2);
        let r = recover_zeros(&[a]);
        assert_eq!(r.zeros.len(), 1);
        assert!((r.zeros[0] - a).norm() < 1e-12);
        assert!(!r.ill_conditioned);
    }

    #[test]
    fn symmetric_pair_from_moments() {
        // p = (0, 2t): e1 = 0, e2 = -t, roots +-sqrt(t)
        let t = 0.09;
        let r = recover_zeros(&[Complex64::new(0.0, 0.0), Complex64::new(2.0 * t, 0.0)]);
        let s = t.sqrt();
        assert!(r
            .zeros
            .iter()
            .any(|z| (z - Complex64::new(s, 0.0)).norm() < 1e-9));
        assert!(r
            .zeros
            .iter()
            .any(|z| (z + Complex64::new(s, 0.0)).norm() < 1e-9));
    }

    #[test]
    fn zero_and_half() {
        // p = (1/2, 1/4): e1 = 1/2, e2 = 0, roots {0, 1/2}
        let r = recover_zeros(&[Complex64::new(0.5, 0.0), Complex64::new(0.25, 0.0)]);
        assert!(r.zeros.iter().any(|z| z.norm() < 1e-9));
        assert!(r
            .zeros
            .iter()
            .any(|z| (z - Complex64::new(0.5, 0.0)).norm() < 1e-9));
    }
}
