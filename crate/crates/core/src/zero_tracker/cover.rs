//! Boundary-face zero structures: arcs, tracked zero sets E, the
//! approximate collision set B, and a finite disjoint cover of B by
//! small boxes plus a boundary collar.
//!
//! The face `{z_frozen = e^{is}}` is swept in the parameter `s`; on each
//! arc one generator is selected whose face-restricted conjugate
//! representative is not identically zero for any arc parameter. Its
//! zeros in the moving coordinate are tracked with the argument-principle
//! machinery. B is sampled, never claimed exact: every output carries an
//! approximate marker.

use super::contour::{count_and_moments, CoefficientFn, Contour};
use super::newton::recover_zeros;
use super::TrackError;
use crate::numeric::{complex_cmp, poly_roots};
use crate::pluriharmonic::PluriharmonicMap;
use crate::polyalg::{as_univariate, coeffs_in_var, square_free_part, HoloPoly};
use num_complex::Complex64;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const SAMPLES_PER_ARC: usize = 64;

/// Closed arc of the parameter circle with its selected generator.
#[derive(Clone, Debug)]
pub struct ArcAssignment {
    pub index: usize,
    pub s_start: f64,
    pub s_end: f64,
    pub generator: usize,
}

/// Axis-aligned box in `(Re z, Im z, s)`; the Euclidean diameter is
/// `2 * half_width * sqrt(3)`.
#[derive(Clone, Debug)]
pub struct CoverBox {
    pub z_center: Complex64,
    pub s_center: f64,
    pub half_width: f64,
}

impl CoverBox {
    pub fn contains(&self, z: Complex64, s: f64) -> bool {
        (z.re - self.z_center.re).abs() <= self.half_width
            && (z.im - self.z_center.im).abs() <= self.half_width
            && angular_dist(s, self.s_center) <= self.half_width
    }

    pub fn intersects(&self, other: &CoverBox) -> bool {
        let w = self.half_width + other.half_width;
        (self.z_center.re - other.z_center.re).abs() < w
            && (self.z_center.im - other.z_center.im).abs() < w
            && angular_dist(self.s_center, other.s_center) < w
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.half_width * 3.0f64.sqrt()
    }
}

/// Output of the face sweep.
#[derive(Clone, Debug)]
pub struct BoundaryZeroCover {
    pub frozen: usize,
    pub delta: f64,
    pub arcs: Vec<ArcAssignment>,
    /// Sampled zero set: `(z, s)` with `g_{j(s)}(z, s) = 0`.
    pub e_samples: Vec<(Complex64, f64)>,
    /// Sampled collision/endpoint set; approximate by construction.
    pub b_samples: Vec<(Complex64, f64)>,
    pub approximate: bool,
    pub boxes: Vec<CoverBox>,
    /// The collar `{|z| > 1 - delta}` minus the boxes completes the cover.
    pub collar_delta: f64,
    pub warnings: Vec<String>,
}

fn angular_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TWO_PI);
    d.min(TWO_PI - d)
}

fn angle_in_closed_arc(angle: f64, start: f64, end: f64, tol: f64) -> bool {
    let a = angle.rem_euclid(TWO_PI);
    let s = start.rem_euclid(TWO_PI);
    let width = end - start;
    let rel = (a - s).rem_euclid(TWO_PI);
    rel <= width + tol || rel >= TWO_PI - tol
}

/// Splits the face parameter circle into `arc_count` closed arcs, picks a
/// valid generator per arc, tracks its zeros, and emits the cover.
pub fn boundary_zero_cover(
    map: &PluriharmonicMap,
    frozen: usize,
    arc_count: usize,
    delta: f64,
) -> Result<BoundaryZeroCover, TrackError> {
    if map.n() != 2 {
        return Err(TrackError::NeedsBidisk { n: map.n() });
    }
    assert!(frozen < 2, "face index out of range");
    assert!(arc_count >= 1, "need at least one arc");
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    let moving = 1 - frozen;
    // Per generator: coefficient polynomials of dg/dz_moving in powers of
    // the moving variable, as univariate data in the frozen variable, and
    // the unit-circle roots of their gcd (angles where the restriction
    // vanishes identically).
    let mut per_gen: Vec<Option<(Vec<Vec<Complex64>>, Vec<f64>)>> = Vec::new();
    for h in map.funcs() {
        let q = h.g().partial(moving);
        if q.is_zero() {
            per_gen.push(None);
            continue;
        }
        let coeff_polys: Vec<HoloPoly> = coeffs_in_var(&q, moving);
        let mut gcd_poly = HoloPoly::zero(2);
        let mut lowered: Vec<Vec<Complex64>> = Vec::new();
        for c in &coeff_polys {
            if !c.is_zero() {
                gcd_poly = crate::polyalg::gcd(&gcd_poly, c);
            }
            let u = as_univariate(c, frozen).expect("coefficients in the frozen variable");
            lowered.push(u.0.iter().map(|x| x.to_complex()).collect());
        }
        let bad_angles: Vec<f64> = if gcd_poly.is_constant() {
            Vec::new()
        } else {
            let sf = square_free_part(&gcd_poly).expect("nonzero gcd");
            let u = as_univariate(&sf, frozen).unwrap();
            let coeffs: Vec<Complex64> = u.0.iter().map(|c| c.to_complex()).collect();
            poly_roots(&coeffs)
                .into_iter()
                .filter(|r| (r.norm() - 1.0).abs() <= 1e-8)
                .map(|r| r.arg().rem_euclid(TWO_PI))
                .collect()
        };
        per_gen.push(Some((lowered, bad_angles)));
    }
    if per_gen.iter().all(|g| g.is_none()) {
        return Err(TrackError::FaceDisk { frozen });
    }
    // arc assignment
    let mut arcs = Vec::with_capacity(arc_count);
    for i in 0..arc_count {
        let s_start = TWO_PI * i as f64 / arc_count as f64;
        let s_end = TWO_PI * (i + 1) as f64 / arc_count as f64;
        let pick = per_gen.iter().enumerate().find_map(|(j, info)| {
            let (_, bad) = info.as_ref()?;
            if bad
                .iter()
                .any(|&a| angle_in_closed_arc(a, s_start, s_end, 1e-12))
            {
                None
            } else {
                Some(j)
            }
        });
        match pick {
            Some(j) => arcs.push(ArcAssignment {
                index: i,
                s_start,
                s_end,
                generator: j,
            }),
            None => {
                // No single generator works for this arc. If some angle
                // kills every generator the face itself is holomorphic
                // there and the verdict layer owns it.
                let locus = map
                    .face_holomorphy_locus(frozen)
                    .expect("bidisk checked above");
                if locus.all_faces || locus.has_discrete_faces() {
                    return Err(TrackError::FaceDisk { frozen });
                }
                return Err(TrackError::ArcSelection { arc: i });
            }
        }
    }
    // tracking
    let radius = 1.0 - delta / 4.0;
    let mut e_samples: Vec<(Complex64, f64)> = Vec::new();
    let mut b_samples: Vec<(Complex64, f64)> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    for arc in &arcs {
        let (lowered, _) = per_gen[arc.generator].as_ref().unwrap();
        let coeffs_at = |s: f64| -> Vec<Complex64> {
            let a = Complex64::from_polar(1.0, s);
            let mut max_deg = 0;
            for (d, c) in lowered.iter().enumerate() {
                if !c.is_empty() {
                    max_deg = d;
                }
            }
            (0..=max_deg)
                .map(|d| crate::numeric::horner(&lowered[d], a))
                .collect()
        };
        let gfun = CoefficientFn { coeffs_at };
        let mut zero_hist: Vec<Vec<Complex64>> = Vec::new();
        let mut s_hist: Vec<f64> = Vec::new();
        for k in 0..=SAMPLES_PER_ARC {
            let s = arc.s_start + (arc.s_end - arc.s_start) * k as f64 / SAMPLES_PER_ARC as f64;
            let mut found: Option<Vec<Complex64>> = None;
            for shrink in [1.0, 0.98, 0.95, 0.9] {
                let contour = Contour::new(Complex64::new(0.0, 0.0), radius * shrink, 128);
                match count_and_moments(&gfun, s, &contour, 8) {
                    Ok((0, _)) => {
                        found = Some(Vec::new());
                        break;
                    }
                    Ok((_, moments)) => {
                        let rec = recover_zeros(&moments);
                        if rec.ill_conditioned {
                            warnings.push(format!(
                                "arc {}: ill-conditioned recovery at s = {s:.6}",
                                arc.index
                            ));
                        }
                        found = Some(rec.zeros);
                        break;
                    }
                    Err(TrackError::ContourTooClose { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            let zeros = match found {
                Some(z) => z,
                None => {
                    warnings.push(format!(
                        "arc {}: zeros too close to every trial contour at s = {s:.6}; skipped",
                        arc.index
                    ));
                    continue;
                }
            };
            for z in &zeros {
                e_samples.push((*z, s));
            }
            if k == 0 || k == SAMPLES_PER_ARC {
                for z in &zeros {
                    b_samples.push((*z, s));
                }
            }
            zero_hist.push(zeros);
            s_hist.push(s);
        }
        // collision parameters along the arc: boundary of the zero set of
        // the pairwise discriminant product over the sample sequence
        let disc: Vec<Complex64> = zero_hist
            .iter()
            .map(|zs| {
                let mut d = Complex64::new(1.0, 0.0);
                for i in 0..zs.len() {
                    for j in i + 1..zs.len() {
                        let diff = zs[i] - zs[j];
                        d *= diff * diff;
                    }
                }
                d
            })
            .collect();
        for i in 0..disc.len() {
            let inside = disc[i].norm() < 1e-6;
            let boundary = inside
                && ((i > 0 && disc[i - 1].norm() >= 1e-6)
                    || (i + 1 < disc.len() && disc[i + 1].norm() >= 1e-6));
            if boundary {
                for z in &zero_hist[i] {
                    b_samples.push((*z, s_hist[i]));
                }
            }
        }
    }
    e_samples.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(complex_cmp(&a.0, &b.0))
    });
    b_samples.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(complex_cmp(&a.0, &b.0))
    });
    // greedy disjoint boxes around the collision samples away from the
    // collar, built as in the proof device U2 = U2' \ closure(U1)
    let target = delta / 4.0;
    let mut boxes: Vec<CoverBox> = Vec::new();
    for &(z, s) in &b_samples {
        if z.norm() > 1.0 - delta {
            continue; // collar covers it
        }
        if boxes.iter().any(|b| b.contains(z, s)) {
            continue;
        }
        let mut half = target;
        for b in &boxes {
            let gap = (z.re - b.z_center.re)
                .abs()
                .max((z.im - b.z_center.im).abs())
                .max(angular_dist(s, b.s_center))
                - b.half_width;
            if gap < half {
                half = (gap - 1e-12).max(1e-9);
            }
        }
        boxes.push(CoverBox {
            z_center: z,
            s_center: s,
            half_width: half,
        });
    }
    Ok(BoundaryZeroCover {
        frozen,
        delta,
        arcs,
        e_samples,
        b_samples,
        approximate: true,
        boxes,
        collar_delta: delta,
        warnings,
    })
}

impl BoundaryZeroCover {
    /// Every collision sample lies in a box or in the collar.
    pub fn covers_all_b_samples(&self) -> bool {
        self.b_samples.iter().all(|&(z, s)| {
            z.norm() > 1.0 - self.collar_delta || self.boxes.iter().any(|b| b.contains(z, s))
        })
    }

    pub fn boxes_pairwise_disjoint(&self) -> bool {
        for i in 0..self.boxes.len() {
            for j in i + 1..self.boxes.len() {
                if self.boxes[i].intersects(&self.boxes[j]) {
                    return false;
                }
            }
        }
        true
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

    #[test]
    fn constant_restriction_tracks_nothing() {
        // Re z2 on faces {z1 = e^{is}}: dg/dz2 = 1 never vanishes
        let m = map(&["z2"]);
        let cover = boundary_zero_cover(&m, 0, 4, 0.2).unwrap();
        assert!(cover.arcs.iter().all(|a| a.generator == 0));
        assert!(cover.e_samples.is_empty());
        assert!(cover.b_samples.is_empty());
        assert!(cover.boxes.is_empty());
        assert_eq!(cover.collar_delta, 0.2);
    }

    #[test]
    fn fiber_zero_is_tracked_on_every_arc() {
        // g = z1 z2^2: dg/dz2 = 2 z1 z2 has the single zero z2 = 0 for
        // every face parameter
        let m = map(&["z1 z2^2"]);
        let cover = boundary_zero_cover(&m, 0, 4, 0.2).unwrap();
        assert!(!cover.e_samples.is_empty());
        assert!(cover.e_samples.iter().all(|(z, _)| z.norm() < 1e-7));
        // endpoint fibers populate B
        assert!(!cover.b_samples.is_empty());
        assert!(cover.approximate);
    }

    #[test]
    fn cover_boxes_are_disjoint_and_cover_b() {
        let m = map(&["z1 z2^2"]);
        let cover = boundary_zero_cover(&m, 0, 4, 0.2).unwrap();
        assert!(cover.boxes_pairwise_disjoint());
        assert!(cover.covers_all_b_samples());
        for b in &cover.boxes {
            assert!(b.diameter() < 0.2);
        }
        assert!(!cover.boxes.is_empty());
    }

    #[test]
    fn all_faces_holomorphic_is_a_face_disk_error() {
        // Re z1 on faces {z1 = e^{is}}: every restriction is constant
        let m = map(&["z1"]);
        assert!(matches!(
            boundary_zero_cover(&m, 0, 4, 0.2),
            Err(TrackError::FaceDisk { frozen: 0 })
        ));
    }
}
