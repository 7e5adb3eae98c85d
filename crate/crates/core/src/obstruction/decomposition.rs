//! Decomposition of the minor-vanishing set into an exact
//! one-dimensional part (a square-free curve with coprime factors) and a
//! numerically localized zero-dimensional part.

use crate::numeric::{cluster_pairs, poly_roots};
use crate::pluriharmonic::MinorSystem;
use crate::polyalg::{
    as_univariate, coprime_square_free_factors, divides, exact_div, gcd, resultant_eliminate,
    square_free_part, HoloPoly,
};
use num_complex::Complex64;

/// Common zero set of a minor system over the closed bidisk.
///
/// `one_dim` is the square-free gcd of all nonzero minors (the zero
/// polynomial when every minor vanishes identically, the unit polynomial
/// when the gcd is trivial). `zero_dim` holds the isolated common zeros
/// of the cofactors, localized by resultants and verified numerically.
#[derive(Clone, Debug)]
pub struct VarietyDecomposition {
    pub everything: bool,
    pub one_dim: HoloPoly,
    pub one_dim_factors: Vec<HoloPoly>,
    pub zero_dim: Vec<[Complex64; 2]>,
    /// The resultant route could not isolate candidates (shared factors
    /// among cofactors); `zero_dim` may be incomplete.
    pub degraded_zero_dim: bool,
}

impl VarietyDecomposition {
    pub fn is_empty_curve(&self) -> bool {
        self.one_dim.is_constant() && !self.one_dim.is_zero()
    }
}

/// Decomposes the common zero set of all minors. Requires a
/// two-dimensional domain.
pub fn common_zero_set(ms: &MinorSystem) -> VarietyDecomposition {
    assert_eq!(ms.domain_dim(), 2, "decomposition needs a bidisk domain");
    let dets: Vec<HoloPoly> = ms.nonzero_minors().map(|m| m.det.clone()).collect();
    if dets.is_empty() {
        return VarietyDecomposition {
            everything: true,
            one_dim: HoloPoly::zero(2),
            one_dim_factors: Vec::new(),
            zero_dim: Vec::new(),
            degraded_zero_dim: false,
        };
    }
    let mut g = dets[0].clone();
    for d in &dets[1..] {
        g = gcd(&g, d);
        if g.is_constant() {
            break;
        }
    }
    let (one_dim, factors) = if g.is_constant() {
        (HoloPoly::one(2), Vec::new())
    } else {
        let sf = square_free_part(&g).expect("gcd of nonzero minors is nonzero");
        let factors = coprime_square_free_factors(&sf, &dets);
        (sf, factors)
    };
    // cofactors: minors with the curve part stripped
    let mut cofactors: Vec<HoloPoly> = Vec::new();
    let mut no_residual_zeros = false;
    for d in &dets {
        let mut c = d.clone();
        for f in &factors {
            while !c.is_constant() && divides(f, &c) {
                c = exact_div(&c, f).unwrap();
            }
        }
        if c.is_constant() && !c.is_zero() {
            // this minor vanishes only on the curve: nothing isolated
            no_residual_zeros = true;
            break;
        }
        cofactors.push(c);
    }
    let (mut zero_dim, degraded) = if no_residual_zeros {
        (Vec::new(), false)
    } else {
        common_zeros_bivariate(&cofactors, 1e-8)
    };
    // keep only points off the curve; the curve part carries them
    if !one_dim.is_constant() {
        let scale = one_dim.coeff_scale();
        zero_dim.retain(|pt| one_dim.eval(pt).norm() >= 1e-8 * scale);
    }
    VarietyDecomposition {
        everything: false,
        one_dim,
        one_dim_factors: factors,
        zero_dim,
        degraded_zero_dim: degraded,
    }
}

/// Isolated common zeros of a family of bivariate polynomials inside the
/// closed bidisk.
///
/// Candidate coordinates come from Sylvester resultants of pairs (plus
/// roots of inputs that depend on a single variable); candidate pairs are
/// then verified against every input and deduplicated. Returns the
/// points and a degraded flag when no informative resultant exists.
pub fn common_zeros_bivariate(
    polys: &[HoloPoly],
    tol: f64,
) -> (Vec<[Complex64; 2]>, bool) {
    let active: Vec<&HoloPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if active.is_empty() {
        return (Vec::new(), false);
    }
    if active.iter().any(|p| p.is_constant()) {
        return (Vec::new(), false);
    }
    let mut cand = [Vec::<Complex64>::new(), Vec::<Complex64>::new()];
    for (var, cands) in cand.iter_mut().enumerate() {
        let other = 1 - var;
        for p in &active {
            if p.degree_in(other) == 0 {
                cands.extend(univariate_roots(p, var));
            }
        }
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                let (p, q) = (active[i], active[j]);
                if p.degree_in(other) == 0 || q.degree_in(other) == 0 {
                    continue;
                }
                let r = resultant_eliminate(p, q, other).expect("bivariate inputs");
                if !r.is_zero() && !r.is_constant() {
                    cands.extend(univariate_roots(&r, var));
                }
            }
        }
    }
    let degraded = cand[0].is_empty() || cand[1].is_empty();
    if degraded && active.len() == 1 {
        // a single curve has no isolated part
        return (Vec::new(), false);
    }
    let mut points = Vec::new();
    for &a in &cand[0] {
        if a.norm() > 1.0 + 1e-8 {
            continue;
        }
        for &b in &cand[1] {
            if b.norm() > 1.0 + 1e-8 {
                continue;
            }
            let pt = [a, b];
            if active
                .iter()
                .all(|p| p.eval(&pt).norm() <= tol * p.coeff_scale())
            {
                points.push(pt);
            }
        }
    }
    (cluster_pairs(points, 1e-8), degraded)
}

fn univariate_roots(p: &HoloPoly, var: usize) -> Vec<Complex64> {
    let sf = square_free_part(p).expect("nonzero polynomial");
    match as_univariate(&sf, var) {
        Some(u) => {
            let coeffs: Vec<Complex64> = u.0.iter().map(|c| c.to_complex()).collect();
            poly_roots(&coeffs)
        }
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluriharmonic::{PluriharmonicFn, PluriharmonicMap};
    use crate::polyalg::parse_poly;

    fn map(gs: &[&str]) -> PluriharmonicMap {
        PluriharmonicMap::new(
            gs.iter()
                .map(|g| PluriharmonicFn::real_part(parse_poly(g, 2).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn single_minor_curve() {
        // minors of (Re z1^2, Re z2^2): {4 z1 z2}
        let ms = map(&["z1^2", "z2^2"]).minor_system(2).unwrap();
        let d = common_zero_set(&ms);
        assert!(!d.everything);
        assert_eq!(d.one_dim, parse_poly("z1 z2", 2).unwrap());
        assert_eq!(d.one_dim_factors.len(), 2);
        assert!(d.zero_dim.is_empty());
    }

    #[test]
    fn identically_zero_minors() {
        let ms = map(&["z1"]).minor_system(2).unwrap();
        let d = common_zero_set(&ms);
        assert!(d.everything);
        assert!(d.one_dim.is_zero());
    }

    #[test]
    fn transverse_lines_leave_a_point() {
        // minors {z1, z2}: empty curve, isolated zero at the origin
        let (pts, degraded) = common_zeros_bivariate(
            &[HoloPoly::var(2, 0), HoloPoly::var(2, 1)],
            1e-8,
        );
        assert!(!degraded);
        assert_eq!(pts.len(), 1);
        assert!(pts[0][0].norm() < 1e-10 && pts[0][1].norm() < 1e-10);
        // through the minor-system route: generators with those rows
        // (Re(z1 z2), Re(z1^2/2 + z2^2/2)) has minors {z2^2 - z1^2}; use
        // a direct three-generator construction instead
        let m = map(&["z1^2", "z2^2", "z1^2 + z2^2"]);
        let ms = m.minor_system(2).unwrap();
        let d = common_zero_set(&ms);
        // all three pair minors are multiples of z1 z2
        assert_eq!(d.one_dim, parse_poly("z1 z2", 2).unwrap());
    }

    #[test]
    fn points_on_the_curve_are_not_isolated() {
        let ms = map(&["z1^2", "z2^2"]).minor_system(2).unwrap();
        let d = common_zero_set(&ms);
        assert!(d
            .zero_dim
            .iter()
            .all(|pt| d.one_dim.eval(pt).norm() > 1e-8));
    }

    #[test]
    fn curve_plus_point_structure() {
        // cofactors {z2, z1 + z2 - 1/2} after a z1 curve: meeting point
        // (0, 1/2)... assembled directly
        let p1 = parse_poly("z2", 2).unwrap();
        let p2 = parse_poly("z1 + z2 - 1/2", 2).unwrap();
        let (pts, degraded) = common_zeros_bivariate(&[p1, p2], 1e-8);
        assert!(!degraded);
        assert_eq!(pts.len(), 1);
        assert!((pts[0][0] - Complex64::new(0.5, 0.0)).norm() < 1e-9);
        assert!(pts[0][1].norm() < 1e-9);
    }
}
