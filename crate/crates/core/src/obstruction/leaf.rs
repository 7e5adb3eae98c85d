//! Leaves of level-set laminations and their boundary behavior.
//!
//! A leaf lives inside a level set `{Re(phi) = c}`: it is a component of
//! the analytic set `{phi = k}`. When the level constant is (close to) a
//! Gaussian rational the curve is handled exactly through square-free
//! factorization; otherwise it is carried as `phi - k` with a numeric
//! constant and every downstream test falls back to sampling, flagged as
//! such.

use super::decomposition::common_zeros_bivariate;
use super::ObstructionError;
use crate::numeric::{complex_cmp, gaussian_rationalize, poly_roots};
use crate::pluriharmonic::PluriharmonicMap;
use crate::polyalg::{
    coeffs_in_var, coprime_square_free_factors, divides, square_free_part, GaussianRational,
    HoloPoly,
};
use num_complex::Complex64;

/// Either an exact component polynomial or a numeric level of an exact
/// holomorphic function.
#[derive(Clone, Debug)]
pub enum CurveRep {
    Exact(HoloPoly),
    Level { phi: HoloPoly, k: Complex64 },
}

impl CurveRep {
    pub fn eval(&self, pt: &[Complex64]) -> Complex64 {
        match self {
            CurveRep::Exact(p) => p.eval(pt),
            CurveRep::Level { phi, k } => phi.eval(pt) - k,
        }
    }

    pub fn exact(&self) -> Option<&HoloPoly> {
        match self {
            CurveRep::Exact(p) => Some(p),
            CurveRep::Level { .. } => None,
        }
    }

    pub fn coeff_scale(&self) -> f64 {
        match self {
            CurveRep::Exact(p) => p.coeff_scale(),
            CurveRep::Level { phi, k } => phi.coeff_scale() + k.norm(),
        }
    }

    fn base_poly(&self) -> &HoloPoly {
        match self {
            CurveRep::Exact(p) => p,
            CurveRep::Level { phi, .. } => phi,
        }
    }

    /// Coefficients of the curve as a univariate polynomial in the moving
    /// variable, with the other variable frozen at `a`.
    pub fn restricted_coeffs(&self, moving: usize, a: Complex64) -> Vec<Complex64> {
        let frozen = 1 - moving;
        let coeff_polys = coeffs_in_var(self.base_poly(), moving);
        let mut point = [Complex64::new(0.0, 0.0); 2];
        point[frozen] = a;
        let mut out: Vec<Complex64> = coeff_polys.iter().map(|c| c.eval(&point)).collect();
        if let CurveRep::Level { k, .. } = self {
            if out.is_empty() {
                out.push(-k);
            } else {
                out[0] -= k;
            }
        }
        while out.last().is_some_and(|c| c.norm() == 0.0) {
            out.pop();
        }
        out
    }

    pub fn display_text(&self) -> String {
        match self {
            CurveRep::Exact(p) => p.to_string(),
            CurveRep::Level { phi, k } => format!("{} - ({} + {}i)", phi, k.re, k.im),
        }
    }
}

/// A leaf of the level-set lamination of one generator.
#[derive(Clone, Debug)]
pub struct Leaf {
    /// The holomorphic function whose real part is constant on the leaf.
    pub phi: HoloPoly,
    /// Level constant, numerically.
    pub constant: Complex64,
    /// Exact constant when the base point (or the level) rationalizes.
    pub exact_constant: Option<GaussianRational>,
    /// The component carrying the leaf.
    pub curve: CurveRep,
    pub base_point: [Complex64; 2],
    /// Singular points of the full level set (gradient zeros on it),
    /// localized numerically.
    pub singular_points: Vec<[Complex64; 2]>,
    /// The base point itself sits within tolerance of a singular point.
    pub base_singular: bool,
}

/// Closure behavior of a curve relative to the distinguished boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryStatus {
    /// Every detected boundary-approach point has both coordinate moduli
    /// within `1e-6` of one.
    ClosureInTorus,
    /// Some boundary point has a coordinate modulus below `1 - 1e-6`.
    ExitsOffTorus,
    Unknown,
}

/// Boundary classification plus sampled geometry of a curve in the
/// closed bidisk.
#[derive(Clone, Debug)]
pub struct CurveGeometry {
    pub status: BoundaryStatus,
    /// A point of the curve in the open bidisk, when one was found.
    pub interior_point: Option<[Complex64; 2]>,
    pub boundary_points: usize,
}

const BOUNDARY_ANGLES: usize = 512;
const INTERIOR_RADII: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];
const INTERIOR_ANGLES: usize = 64;

/// Samples the curve's intersection with the boundary torus pieces by
/// freezing each coordinate on the unit circle and root-solving in the
/// other; classifies the closure per the detected boundary points.
pub fn curve_geometry(curve: &CurveRep) -> Result<CurveGeometry, ObstructionError> {
    let scale = curve.coeff_scale();
    let mut any_boundary = 0usize;
    let mut off_torus = false;
    for frozen in 0..2 {
        let moving = 1 - frozen;
        for i in 0..BOUNDARY_ANGLES {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / BOUNDARY_ANGLES as f64;
            let a = Complex64::from_polar(1.0, theta);
            let uc = curve.restricted_coeffs(moving, a);
            if uc.is_empty() || (uc.len() == 1 && uc[0].norm() <= 1e-9 * scale) {
                // the whole face lies in the curve; its off-torus points
                // are boundary points of the curve
                any_boundary += 1;
                off_torus = true;
                continue;
            }
            if uc.len() == 1 {
                continue;
            }
            for w in poly_roots(&uc) {
                if w.norm() <= 1.0 + 1e-6 {
                    any_boundary += 1;
                    if w.norm() < 1.0 - 1e-6 {
                        off_torus = true;
                    }
                }
            }
        }
    }
    // interior presence sweep, deterministic order
    let mut interior: Option<[Complex64; 2]> = None;
    'outer: for frozen in 0..2 {
        let moving = 1 - frozen;
        for &r in &INTERIOR_RADII {
            for i in 0..INTERIOR_ANGLES {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / INTERIOR_ANGLES as f64;
                let a = Complex64::from_polar(r, theta);
                let uc = curve.restricted_coeffs(moving, a);
                if uc.len() <= 1 {
                    continue;
                }
                let mut roots: Vec<Complex64> = poly_roots(&uc)
                    .into_iter()
                    .filter(|w| w.norm() < 1.0 - 1e-9)
                    .collect();
                roots.sort_by(complex_cmp);
                if let Some(w) = roots.first() {
                    let mut pt = [Complex64::new(0.0, 0.0); 2];
                    pt[frozen] = a;
                    pt[moving] = *w;
                    interior = Some(pt);
                    break 'outer;
                }
            }
        }
    }
    if any_boundary == 0 && interior.is_none() {
        return Err(ObstructionError::DegenerateLeaf);
    }
    let status = if off_torus {
        BoundaryStatus::ExitsOffTorus
    } else if any_boundary > 0 {
        BoundaryStatus::ClosureInTorus
    } else {
        BoundaryStatus::Unknown
    };
    Ok(CurveGeometry {
        status,
        interior_point: interior,
        boundary_points: any_boundary,
    })
}

/// Boundary classification of a leaf's curve.
pub fn leaf_boundary_check(leaf: &Leaf) -> Result<BoundaryStatus, ObstructionError> {
    if let CurveRep::Exact(p) = &leaf.curve {
        if p.is_constant() {
            return Err(ObstructionError::ConstantCurve);
        }
    }
    Ok(curve_geometry(&leaf.curve)?.status)
}

/// Exact tangential holomorphy test along `{p = 0}`: every generator's
/// tangential conjugate representative
/// `B_j = (dg_j/dz1)(dp/dz2) - (dg_j/dz2)(dp/dz1)`
/// must be divisible by the square-free `p`.
pub fn holomorphic_along_curve(
    map: &PluriharmonicMap,
    p: &HoloPoly,
) -> Result<bool, ObstructionError> {
    if p.is_constant() {
        return Err(ObstructionError::ConstantCurve);
    }
    if map.n() != 2 || p.num_vars() != 2 {
        return Err(ObstructionError::WrongDimension {
            expected: 2,
            got: map.n().max(p.num_vars()),
        });
    }
    let p1 = p.partial(0);
    let p2 = p.partial(1);
    for h in map.funcs() {
        let b = tangential_rep(h.g(), &p1, &p2);
        if b.is_zero() {
            continue;
        }
        if !divides(p, &b) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn tangential_rep(g: &HoloPoly, p1: &HoloPoly, p2: &HoloPoly) -> HoloPoly {
    &(&g.partial(0) * p2) - &(&g.partial(1) * p1)
}

/// Numeric fallback for holomorphy along a curve carried with a numeric
/// level constant: the tangential representatives are evaluated at up to
/// 200 sampled curve points with threshold `1e-8`.
pub fn holomorphic_along_curve_numeric(map: &PluriharmonicMap, curve: &CurveRep) -> bool {
    let phi = curve.base_poly();
    let p1 = phi.partial(0);
    let p2 = phi.partial(1);
    let reps: Vec<HoloPoly> = map
        .funcs()
        .iter()
        .map(|h| tangential_rep(h.g(), &p1, &p2))
        .collect();
    let scales: Vec<f64> = reps.iter().map(|b| b.coeff_scale()).collect();
    let mut checked = 0usize;
    for frozen in 0..2 {
        let moving = 1 - frozen;
        for &r in &[0.0, 0.2, 0.4, 0.6, 0.8, 0.95] {
            for i in 0..32 {
                if checked >= 200 {
                    return true;
                }
                let theta = 2.0 * std::f64::consts::PI * i as f64 / 32.0;
                let a = Complex64::from_polar(r, theta);
                let uc = curve.restricted_coeffs(moving, a);
                if uc.len() <= 1 {
                    continue;
                }
                for w in poly_roots(&uc) {
                    if w.norm() > 1.0 + 1e-9 {
                        continue;
                    }
                    let mut pt = [Complex64::new(0.0, 0.0); 2];
                    pt[frozen] = a;
                    pt[moving] = w;
                    checked += 1;
                    for (b, s) in reps.iter().zip(&scales) {
                        if b.eval(&pt).norm() > 1e-8 * s {
                            return false;
                        }
                    }
                }
            }
        }
    }
    checked > 0
}

/// Assembles a leaf from an already-selected curve representation,
/// computing the singular set of its full level.
pub fn leaf_from_parts(
    map: &PluriharmonicMap,
    j: usize,
    curve: CurveRep,
    k_num: Complex64,
    k_exact: Option<GaussianRational>,
    base_point: [Complex64; 2],
) -> Leaf {
    let phi = map.func(j).g().clone();
    let singular = match &k_exact {
        Some(kq) => {
            let level = &phi - &HoloPoly::constant(2, kq.clone());
            let sf = square_free_part(&level).expect("nonconstant level");
            common_zeros_bivariate(&[sf.clone(), sf.partial(0), sf.partial(1)], 1e-8).0
        }
        None => {
            let (grad_zeros, _) =
                common_zeros_bivariate(&[phi.partial(0), phi.partial(1)], 1e-8);
            grad_zeros
                .into_iter()
                .filter(|pt| (phi.eval(pt) - k_num).norm() < 1e-6 * phi.coeff_scale())
                .collect()
        }
    };
    let base_singular = singular
        .iter()
        .any(|s| (s[0] - base_point[0]).norm() + (s[1] - base_point[1]).norm() < 1e-8);
    Leaf {
        phi,
        constant: k_num,
        exact_constant: k_exact,
        curve,
        base_point,
        singular_points: singular,
        base_singular,
    }
}

/// Constructs the leaf of generator `j`'s level-set lamination through
/// `x0`.
pub fn find_leaf(
    map: &PluriharmonicMap,
    j: usize,
    x0: [Complex64; 2],
) -> Result<Leaf, ObstructionError> {
    if map.n() != 2 {
        return Err(ObstructionError::WrongDimension {
            expected: 2,
            got: map.n(),
        });
    }
    let phi = map.func(j).g();
    if phi.is_constant() {
        return Err(ObstructionError::NoLeaf { generator: j });
    }
    let point = [x0[0], x0[1]];
    // exact route when the base point (or the level value) rationalizes
    let exact_k = match (
        gaussian_rationalize(x0[0], 1e-12),
        gaussian_rationalize(x0[1], 1e-12),
    ) {
        (Some(a), Some(b)) => Some(phi.eval_exact(&[a, b])),
        _ => gaussian_rationalize(phi.eval(&point), 1e-12),
    };
    let k_num = phi.eval(&point);
    match exact_k {
        Some(kq) => {
            let level = &phi.clone() - &HoloPoly::constant(2, kq.clone());
            let sf = square_free_part(&level).expect("nonconstant level polynomial");
            let factors = coprime_square_free_factors(&sf, &[]);
            let component = factors
                .iter()
                .filter(|f| f.eval(&point).norm() <= 1e-8 * f.coeff_scale())
                .min_by(|a, b| {
                    a.eval(&point)
                        .norm()
                        .partial_cmp(&b.eval(&point).norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then_with(|| a.to_string().cmp(&b.to_string()))
                })
                .cloned()
                .unwrap_or_else(|| sf.clone());
            let (singular, _) =
                common_zeros_bivariate(&[sf.clone(), sf.partial(0), sf.partial(1)], 1e-8);
            let base_singular = singular
                .iter()
                .any(|s| (s[0] - x0[0]).norm() + (s[1] - x0[1]).norm() < 1e-8);
            Ok(Leaf {
                phi: phi.clone(),
                constant: kq.to_complex(),
                exact_constant: Some(kq),
                curve: CurveRep::Exact(component),
                base_point: x0,
                singular_points: singular,
                base_singular,
            })
        }
        None => {
            // numeric level: singular points are gradient zeros on the level
            let (grad_zeros, _) =
                common_zeros_bivariate(&[phi.partial(0), phi.partial(1)], 1e-8);
            let singular: Vec<[Complex64; 2]> = grad_zeros
                .into_iter()
                .filter(|pt| (phi.eval(pt) - k_num).norm() < 1e-6 * phi.coeff_scale())
                .collect();
            let base_singular = singular
                .iter()
                .any(|s| (s[0] - x0[0]).norm() + (s[1] - x0[1]).norm() < 1e-8);
            Ok(Leaf {
                phi: phi.clone(),
                constant: k_num,
                exact_constant: None,
                curve: CurveRep::Level {
                    phi: phi.clone(),
                    k: k_num,
                },
                base_point: x0,
                singular_points: singular,
                base_singular,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluriharmonic::PluriharmonicFn;
    use crate::polyalg::parse_poly;

    fn map(gs: &[&str]) -> PluriharmonicMap {
        PluriharmonicMap::new(
            gs.iter()
                .map(|g| PluriharmonicFn::real_part(parse_poly(g, 2).unwrap()))
                .collect(),
        )
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn leaf_of_a_coordinate_level() {
        let m = map(&["z1"]);
        let leaf = find_leaf(&m, 0, [c(0.0, 0.0), c(0.3, 0.0)]).unwrap();
        assert_eq!(leaf.curve.exact().unwrap(), &HoloPoly::var(2, 0));
        assert!(leaf.exact_constant.is_some());
        assert!(leaf.singular_points.is_empty());
    }

    #[test]
    fn leaf_of_a_line_level() {
        let m = map(&["z1 + z2"]);
        let leaf = find_leaf(&m, 0, [c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(
            leaf.curve.exact().unwrap(),
            &parse_poly("z1 + z2", 2).unwrap()
        );
    }

    #[test]
    fn leaf_through_a_factor_with_singular_point_flagged() {
        let m = map(&["z1 z2"]);
        let leaf = find_leaf(&m, 0, [c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert_eq!(leaf.curve.exact().unwrap(), &HoloPoly::var(2, 0));
        assert_eq!(leaf.singular_points.len(), 1);
        assert!(leaf.singular_points[0][0].norm() < 1e-9);
        assert!(leaf.singular_points[0][1].norm() < 1e-9);
        assert!(!leaf.base_singular);
    }

    #[test]
    fn constant_generator_has_no_leaf() {
        let m = PluriharmonicMap::new(vec![PluriharmonicFn::new(
            HoloPoly::from_int(2, 3),
            parse_poly("z1", 2).unwrap(),
        )]);
        assert!(matches!(
            find_leaf(&m, 0, [c(0.0, 0.0), c(0.0, 0.0)]),
            Err(ObstructionError::NoLeaf { generator: 0 })
        ));
    }

    #[test]
    fn line_exits_off_torus() {
        // z1 + z2 - 1/2 meets |z1| = 1 at points with |z2| < 1
        let curve = CurveRep::Exact(parse_poly("z1 + z2 - 1/2", 2).unwrap());
        let geo = curve_geometry(&curve).unwrap();
        assert_eq!(geo.status, BoundaryStatus::ExitsOffTorus);
        assert!(geo.interior_point.is_some());
    }

    #[test]
    fn fiber_disk_exits_off_torus() {
        // {z1 = 0}: its boundary circle {0} x S^1 has |z1| = 0
        let curve = CurveRep::Exact(HoloPoly::var(2, 0));
        let geo = curve_geometry(&curve).unwrap();
        assert_eq!(geo.status, BoundaryStatus::ExitsOffTorus);
    }

    #[test]
    fn hyperbola_attaches_to_the_torus() {
        // z1 z2 = 1: |z1||z2| = 1 with both moduli at most one forces both
        // equal to one
        let curve = CurveRep::Exact(parse_poly("z1 z2 - 1", 2).unwrap());
        let geo = curve_geometry(&curve).unwrap();
        assert_eq!(geo.status, BoundaryStatus::ClosureInTorus);
        assert!(geo.interior_point.is_none());
    }

    #[test]
    fn diagonal_attaches_and_has_interior() {
        let curve = CurveRep::Exact(parse_poly("z1 - z2", 2).unwrap());
        let geo = curve_geometry(&curve).unwrap();
        assert_eq!(geo.status, BoundaryStatus::ClosureInTorus);
        assert!(geo.interior_point.is_some());
    }

    #[test]
    fn curve_missing_the_bidisk_is_degenerate() {
        let curve = CurveRep::Exact(parse_poly("z1 - 3", 2).unwrap());
        assert!(matches!(
            curve_geometry(&curve),
            Err(ObstructionError::DegenerateLeaf)
        ));
    }

    #[test]
    fn holomorphy_along_curves() {
        // (Re(z1 z2), Re z1) along {z1 = 0}: B1 = -z1, B2 = 0
        let m = map(&["z1 z2", "z1"]);
        assert!(holomorphic_along_curve(&m, &HoloPoly::var(2, 0)).unwrap());
        // (Re z1^2, Re z2^2) along {z1 = 0}: B2 = -2 z2 is not divisible
        let m2 = map(&["z1^2", "z2^2"]);
        assert!(!holomorphic_along_curve(&m2, &HoloPoly::var(2, 0)).unwrap());
        // purely holomorphic generators: all representatives vanish
        let hol = PluriharmonicMap::new(vec![PluriharmonicFn::new(
            HoloPoly::zero(2),
            parse_poly("z1^2 + z2", 2).unwrap(),
        )]);
        assert!(holomorphic_along_curve(&hol, &parse_poly("z1 + z2", 2).unwrap()).unwrap());
        // constant curve is rejected
        assert!(matches!(
            holomorphic_along_curve(&m, &HoloPoly::one(2)),
            Err(ObstructionError::ConstantCurve)
        ));
    }

    #[test]
    fn numeric_holomorphy_matches_exact_on_levels() {
        let m = map(&["z1 + z2"]);
        let curve = CurveRep::Level {
            phi: parse_poly("z1 + z2", 2).unwrap(),
            k: c(0.1234567, 0.05),
        };
        assert!(holomorphic_along_curve_numeric(&m, &curve));
        let m2 = map(&["z1 + z2", "z1^2"]);
        assert!(!holomorphic_along_curve_numeric(&m2, &curve));
    }
}
