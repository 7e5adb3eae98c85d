//! Deterministic sample grids for the supported domains.

use num_complex::Complex64;

/// A sampling domain with a grid resolution parameter. Grids are fully
/// determined by `(kind, resolution)`; the validation grid of a fit uses
/// the same kind at twice the resolution.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleDomain {
    /// The closed unit bidisk; the grid is a product of two polar disk
    /// grids at half the stated resolution each.
    ClosedBidisk { resolution: usize },
    /// The distinguished boundary: a product of equispaced angle grids.
    Torus2 { resolution: usize },
    ClosedDisk { resolution: usize },
    /// The fiber `{a} x closed disk`.
    FiberDisk { a: Complex64, resolution: usize },
    /// A boundary face `{z_frozen = a}` with the other coordinate in the
    /// closed disk.
    Face {
        frozen: usize,
        a: Complex64,
        resolution: usize,
    },
}

impl SampleDomain {
    pub fn resolution(&self) -> usize {
        match self {
            SampleDomain::ClosedBidisk { resolution }
            | SampleDomain::Torus2 { resolution }
            | SampleDomain::ClosedDisk { resolution }
            | SampleDomain::FiberDisk { resolution, .. }
            | SampleDomain::Face { resolution, .. } => *resolution,
        }
    }

    pub fn with_resolution(&self, resolution: usize) -> SampleDomain {
        let mut d = self.clone();
        match &mut d {
            SampleDomain::ClosedBidisk { resolution: r }
            | SampleDomain::Torus2 { resolution: r }
            | SampleDomain::ClosedDisk { resolution: r }
            | SampleDomain::FiberDisk { resolution: r, .. }
            | SampleDomain::Face { resolution: r, .. } => *r = resolution,
        }
        d
    }

    /// Complex dimension of the ambient space of the sampled points.
    pub fn ambient_dim(&self) -> usize {
        match self {
            SampleDomain::ClosedDisk { .. } => 1,
            _ => 2,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SampleDomain::ClosedBidisk { .. } => "bidisk",
            SampleDomain::Torus2 { .. } => "torus",
            SampleDomain::ClosedDisk { .. } => "disk",
            SampleDomain::FiberDisk { .. } => "fiber",
            SampleDomain::Face { .. } => "face",
        }
    }

    /// Containment in the closed domain, with a small numeric margin.
    pub fn contains(&self, point: &[Complex64]) -> bool {
        let tol = 1e-12;
        match self {
            SampleDomain::ClosedBidisk { .. } | SampleDomain::Torus2 { .. } => {
                point.len() == 2
                    && point[0].norm() <= 1.0 + tol
                    && point[1].norm() <= 1.0 + tol
            }
            SampleDomain::ClosedDisk { .. } => point.len() == 1 && point[0].norm() <= 1.0 + tol,
            SampleDomain::FiberDisk { a, .. } => {
                point.len() == 2
                    && (point[0] - a).norm() <= tol
                    && point[1].norm() <= 1.0 + tol
            }
            SampleDomain::Face { frozen, a, .. } => {
                point.len() == 2
                    && (point[*frozen] - a).norm() <= tol
                    && point[1 - *frozen].norm() <= 1.0 + tol
            }
        }
    }

    /// The deterministic sample grid.
    pub fn points(&self) -> Vec<Vec<Complex64>> {
        match self {
            SampleDomain::Torus2 { resolution } => {
                let m = (*resolution).max(2);
                let mut pts = Vec::with_capacity(m * m);
                for i in 0..m {
                    for j in 0..m {
                        pts.push(vec![unit_angle(i, m), unit_angle(j, m)]);
                    }
                }
                pts
            }
            SampleDomain::ClosedDisk { resolution } => disk_grid(*resolution)
                .into_iter()
                .map(|z| vec![z])
                .collect(),
            SampleDomain::ClosedBidisk { resolution } => {
                let half = (*resolution / 2).max(4);
                let d = disk_grid(half);
                let mut pts = Vec::with_capacity(d.len() * d.len());
                for &a in &d {
                    for &b in &d {
                        pts.push(vec![a, b]);
                    }
                }
                pts
            }
            SampleDomain::FiberDisk { a, resolution } => disk_grid(*resolution)
                .into_iter()
                .map(|z| vec![*a, z])
                .collect(),
            SampleDomain::Face {
                frozen,
                a,
                resolution,
            } => disk_grid(*resolution)
                .into_iter()
                .map(|z| {
                    let mut p = vec![Complex64::new(0.0, 0.0); 2];
                    p[*frozen] = *a;
                    p[1 - *frozen] = z;
                    p
                })
                .collect(),
        }
    }
}

fn unit_angle(i: usize, m: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / m as f64)
}

/// Polar grid of the closed disk: the center plus shifted-Chebyshev
/// radius levels (the outermost exactly 1) with equispaced angles.
fn disk_grid(resolution: usize) -> Vec<Complex64> {
    let m = resolution.max(4);
    let n_r = (m / 4).max(2);
    let mut pts = Vec::with_capacity(1 + n_r * m);
    pts.push(Complex64::new(0.0, 0.0));
    for l in 1..=n_r {
        let r = (std::f64::consts::PI * l as f64 / (2.0 * n_r as f64)).sin();
        for i in 0..m {
            pts.push(Complex64::from_polar(r, 2.0 * std::f64::consts::PI * i as f64 / m as f64));
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_grid_size_and_moduli() {
        let d = SampleDomain::Torus2 { resolution: 8 };
        let pts = d.points();
        assert_eq!(pts.len(), 64);
        for p in &pts {
            assert!((p[0].norm() - 1.0).abs() < 1e-12);
            assert!((p[1].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_grid_has_center_and_boundary_ring() {
        let d = SampleDomain::ClosedDisk { resolution: 8 };
        let pts = d.points();
        assert!(pts.iter().any(|p| p[0].norm() < 1e-15));
        assert!(pts.iter().any(|p| (p[0].norm() - 1.0).abs() < 1e-12));
        assert!(pts.iter().all(|p| p[0].norm() <= 1.0 + 1e-12));
    }

    #[test]
    fn fiber_grid_freezes_the_first_coordinate() {
        let d = SampleDomain::FiberDisk {
            a: Complex64::new(0.0, 0.0),
            resolution: 8,
        };
        for p in d.points() {
            assert!(p[0].norm() < 1e-15);
            assert!(p[1].norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn grids_are_deterministic_and_refine() {
        let d = SampleDomain::ClosedBidisk { resolution: 16 };
        assert_eq!(d.points(), d.points());
        let fine = d.with_resolution(32);
        assert!(fine.points().len() > 2 * d.points().len());
    }
}
