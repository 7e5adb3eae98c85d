//! Stratification of the closed domain into nested closed sets whose
//! successive differences carry totally real graphs.
//!
//! For the bidisk the interior chain is: the full domain, then the
//! curve where the top-order minors vanish, then the finite set made of
//! the curve's singular points, the isolated minor zeros, and the points
//! where the restricted first-order data vanishes along each regular
//! component. Each difference comes with an explicit certificate: a
//! polynomial that is exactly not divisible by the component and hence
//! not identically zero on it. Boundary levels are recorded
//! descriptively; their zero structures live in the tracking layer.

use super::decomposition::{common_zero_set, common_zeros_bivariate, VarietyDecomposition};
use super::leaf::{holomorphic_along_curve, tangential_rep};
use super::ObstructionError;
use crate::pluriharmonic::{point_cmp, PluriharmonicMap};
use crate::polyalg::{divides, HoloPoly, UniPoly};
use num_complex::Complex64;

/// Totally-real certificate for one curve component: generator `witness`
/// has a tangential representative not divisible by the component, so it
/// vanishes only at finitely many of its points.
#[derive(Clone, Debug)]
pub struct ComponentCertificate {
    pub component: HoloPoly,
    pub witness_generator: usize,
    pub tangential_rep: HoloPoly,
}

/// The finite interior stratum, split by provenance.
#[derive(Clone, Debug, Default)]
pub struct InteriorPoints {
    pub curve_singularities: Vec<[Complex64; 2]>,
    pub isolated_minor_zeros: Vec<[Complex64; 2]>,
    pub restricted_vanishing: Vec<[Complex64; 2]>,
}

impl InteriorPoints {
    pub fn all(&self) -> Vec<[Complex64; 2]> {
        let mut v = self.curve_singularities.clone();
        v.extend(self.isolated_minor_zeros.iter().copied());
        v.extend(self.restricted_vanishing.iter().copied());
        v.sort_by(|a, b| point_cmp(a, b));
        v.dedup_by(|a, b| (a[0] - b[0]).norm() + (a[1] - b[1]).norm() < 1e-8);
        v
    }
}

/// Nested stratification data for a dense verdict.
#[derive(Clone, Debug)]
pub struct Stratification {
    pub domain_dim: usize,
    /// A nonzero top-order minor (normalized): off the curve the graph is
    /// totally real.
    pub top_certificate: HoloPoly,
    /// Interior part of the codimension-one level.
    pub curve: VarietyDecomposition,
    /// Per-component totally-real certificates for the next difference.
    pub component_certificates: Vec<ComponentCertificate>,
    pub points: InteriorPoints,
    /// Descriptive boundary levels, outermost first.
    pub boundary_levels: Vec<String>,
}

/// Stratification aborts that the verdict layer converts into
/// obstruction verdicts.
#[derive(Clone, Debug)]
pub enum StratifyAbort {
    /// Every generator is holomorphic along this component.
    HolomorphicComponent(HoloPoly),
    /// The minor system vanishes identically; the leaf machinery owns
    /// this case.
    MinorsVanishIdentically,
    Failed(ObstructionError),
}

impl From<ObstructionError> for StratifyAbort {
    fn from(e: ObstructionError) -> Self {
        StratifyAbort::Failed(e)
    }
}

/// Builds the interior stratification for a bidisk-domain map.
pub fn stratify(map: &PluriharmonicMap) -> Result<Stratification, StratifyAbort> {
    if map.n() == 1 {
        return stratify_disk(map);
    }
    if map.n() != 2 {
        return Err(StratifyAbort::Failed(ObstructionError::WrongDimension {
            expected: 2,
            got: map.n(),
        }));
    }
    let ms = map
        .minor_system(2)
        .map_err(|e| StratifyAbort::Failed(ObstructionError::Unsupported(e.to_string())))?;
    if ms.identically_zero() {
        return Err(StratifyAbort::MinorsVanishIdentically);
    }
    let decomposition = common_zero_set(&ms);
    let top_certificate = ms
        .nonzero_minors()
        .next()
        .expect("not identically zero")
        .normalized();
    let mut component_certificates = Vec::new();
    let mut points = InteriorPoints::default();
    if !decomposition.one_dim.is_constant() {
        let s = &decomposition.one_dim;
        let (sing, _) = common_zeros_bivariate(&[s.clone(), s.partial(0), s.partial(1)], 1e-8);
        points.curve_singularities = sing;
        for component in &decomposition.one_dim_factors {
            if holomorphic_along_curve(map, component)? {
                return Err(StratifyAbort::HolomorphicComponent(component.clone()));
            }
            let p1 = component.partial(0);
            let p2 = component.partial(1);
            let mut reps = Vec::new();
            let mut witness = None;
            for (j, h) in map.funcs().iter().enumerate() {
                let b = tangential_rep(h.g(), &p1, &p2);
                if b.is_zero() {
                    continue;
                }
                if witness.is_none() && !divides(component, &b) {
                    witness = Some((j, b.clone()));
                }
                reps.push(b);
            }
            let (j, b) = witness.expect("non-holomorphic component has a witness");
            component_certificates.push(ComponentCertificate {
                component: component.clone(),
                witness_generator: j,
                tangential_rep: b,
            });
            // restricted vanishing: points of the component where every
            // tangential representative vanishes
            let mut sys = vec![component.clone()];
            sys.extend(reps);
            let (pts, _) = common_zeros_bivariate(&sys, 1e-8);
            points.restricted_vanishing.extend(pts);
        }
    }
    points.isolated_minor_zeros = decomposition.zero_dim.clone();
    points
        .restricted_vanishing
        .sort_by(|a, b| point_cmp(a, b));
    Ok(Stratification {
        domain_dim: 2,
        top_certificate,
        curve: decomposition,
        component_certificates,
        points,
        boundary_levels: vec![
            "full topological boundary of the bidisk".into(),
            "distinguished boundary together with the face zero sets E, E' (tracked per face)"
                .into(),
            "distinguished boundary together with the approximate collision sets B, B'".into(),
        ],
    })
}

/// One-variable analogue: the finite set where every generator's
/// derivative data vanishes, below the full closed disk.
fn stratify_disk(map: &PluriharmonicMap) -> Result<Stratification, StratifyAbort> {
    let derivs: Vec<HoloPoly> = map
        .funcs()
        .iter()
        .map(|h| h.g().partial(0))
        .filter(|d| !d.is_zero())
        .collect();
    if derivs.is_empty() {
        return Err(StratifyAbort::MinorsVanishIdentically);
    }
    let mut g = derivs[0].clone();
    for d in &derivs[1..] {
        g = crate::polyalg::gcd(&g, d);
        if g.is_constant() {
            break;
        }
    }
    let zeros: Vec<[Complex64; 2]> = if g.is_constant() {
        Vec::new()
    } else {
        let sf = crate::polyalg::square_free_part(&g).expect("nonzero gcd");
        let u: UniPoly = crate::polyalg::as_univariate(&sf, 0).unwrap();
        let coeffs: Vec<Complex64> = u.0.iter().map(|c| c.to_complex()).collect();
        crate::numeric::poly_roots(&coeffs)
            .into_iter()
            .filter(|z| z.norm() <= 1.0 + 1e-8)
            .map(|z| [z, Complex64::new(0.0, 0.0)])
            .collect()
    };
    Ok(Stratification {
        domain_dim: 1,
        top_certificate: derivs[0].monic(),
        curve: VarietyDecomposition {
            everything: false,
            one_dim: HoloPoly::one(1),
            one_dim_factors: Vec::new(),
            zero_dim: zeros.clone(),
            degraded_zero_dim: false,
        },
        component_certificates: Vec::new(),
        points: InteriorPoints {
            curve_singularities: Vec::new(),
            isolated_minor_zeros: zeros,
            restricted_vanishing: Vec::new(),
        },
        boundary_levels: vec!["unit circle".into()],
    })
}
