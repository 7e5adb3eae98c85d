//! Parameter sweeps: winding counts, moments, recovered zeros and the
//! branching set along a real parameter grid.

use super::contour::{winding_count, zero_moments, Contour, ParametricFn};
use super::newton::recover_zeros;
use super::TrackError;
use crate::numeric::complex_cmp;
use num_complex::Complex64;
use rayon::prelude::*;

/// Zeros of `g(., t)` inside a contour, tracked over a parameter grid.
///
/// `counts` must be constant along a trajectory; where the count jumps
/// the trajectory is split, recorded in `segments` as half-open index
/// ranges. `zeros[i]` is matched to `zeros[i-1]` by minimal-cost
/// assignment so columns are continuous paths within a segment.
#[derive(Clone, Debug)]
pub struct ZeroTrajectory {
    pub t_grid: Vec<f64>,
    pub counts: Vec<usize>,
    pub moments: Vec<Vec<Complex64>>,
    pub zeros: Vec<Vec<Complex64>>,
    /// Discriminant-style collision indicator per grid point.
    pub discriminant: Vec<Complex64>,
    pub branching: Vec<bool>,
    pub segments: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

impl ZeroTrajectory {
    pub fn branching_parameters(&self) -> Vec<f64> {
        self.t_grid
            .iter()
            .zip(&self.branching)
            .filter(|(_, &b)| b)
            .map(|(t, _)| *t)
            .collect()
    }

    /// CSV with columns `t, count, re_a1, im_a1, ..., branching`,
    /// padded to the maximal zero count.
    pub fn to_csv(&self) -> String {
        let max_m = self.counts.iter().copied().max().unwrap_or(0);
        let mut out = String::from("t,count");
        for j in 1..=max_m {
            out.push_str(&format!(",re_a{j},im_a{j}"));
        }
        out.push_str(",branching\n");
        for i in 0..self.t_grid.len() {
            out.push_str(&format!("{},{}", self.t_grid[i], self.counts[i]));
            for j in 0..max_m {
                match self.zeros[i].get(j) {
                    Some(z) => out.push_str(&format!(",{},{}", z.re, z.im)),
                    None => out.push_str(",,"),
                }
            }
            out.push_str(&format!(",{}\n", if self.branching[i] { 1 } else { 0 }));
        }
        out
    }
}

/// Tracks all zeros of `g(., t)` in the contour over the grid.
///
/// Per-parameter quadrature runs in parallel; assembly (matching, segment
/// splitting, branching flags) is sequential and deterministic.
pub fn track_zeros(
    g: &dyn ParametricFn,
    contour: &Contour,
    t_grid: &[f64],
) -> Result<ZeroTrajectory, TrackError> {
    assert!(!t_grid.is_empty(), "empty parameter grid");
    let per_t: Result<Vec<(usize, Vec<Complex64>, Vec<Complex64>, Option<String>)>, TrackError> =
        t_grid
            .par_iter()
            .map(|&t| {
                let count = winding_count(g, t, contour)?;
                if count == 0 {
                    return Ok((0, Vec::new(), Vec::new(), None));
                }
                let moments = zero_moments(g, t, contour, count)?;
                let rec = recover_zeros(&moments);
                let mut warn = None;
                if rec.ill_conditioned {
                    warn = Some(format!(
                        "ill-conditioned zero recovery at t = {t}: residual {:.3e}",
                        rec.residual
                    ));
                }
                // validate against g itself
                let scale = 1.0
                    + (0..contour.nodes)
                        .map(|k| {
                            let theta =
                                2.0 * std::f64::consts::PI * k as f64 / contour.nodes as f64;
                            g.eval(contour.point(theta), t).norm()
                        })
                        .fold(0.0, f64::max);
                for z in &rec.zeros {
                    let v = g.eval(*z, t).norm();
                    if v >= 1e-6 * scale && warn.is_none() {
                        warn = Some(format!(
                            "recovered zero {z} at t = {t} has |g| = {v:.3e} (scale {scale:.3e})"
                        ));
                    }
                }
                Ok((count, moments, rec.zeros, warn))
            })
            .collect();
    let per_t = per_t?;
    let mut counts = Vec::with_capacity(t_grid.len());
    let mut moments = Vec::with_capacity(t_grid.len());
    let mut zeros: Vec<Vec<Complex64>> = Vec::with_capacity(t_grid.len());
    let mut warnings = Vec::new();
    for (count, m, z, warn) in per_t {
        counts.push(count);
        moments.push(m);
        let matched = match zeros.last() {
            Some(prev) if prev.len() == z.len() => match_to_previous(prev, z),
            _ => {
                let mut z = z;
                z.sort_by(complex_cmp);
                z
            }
        };
        zeros.push(matched);
        if let Some(w) = warn {
            warnings.push(w);
        }
    }
    // segments of constant count
    let mut segments = Vec::new();
    let mut start = 0;
    for i in 1..counts.len() {
        if counts[i] != counts[i - 1] {
            segments.push((start, i));
            start = i;
        }
    }
    segments.push((start, counts.len()));
    // collision indicator: product of squared pairwise differences;
    // for the two-zero case this is exactly 2 p2 - p1^2.
    let discriminant: Vec<Complex64> = zeros
        .iter()
        .map(|zs| {
            let mut d = Complex64::new(1.0, 0.0);
            let mut any = false;
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    let diff = zs[i] - zs[j];
                    d *= diff * diff;
                    any = true;
                }
            }
            if any {
                d
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    let branching = boundary_of_zero_set(&discriminant, 1e-6);
    Ok(ZeroTrajectory {
        t_grid: t_grid.to_vec(),
        counts,
        moments,
        zeros,
        discriminant,
        branching,
        segments,
        warnings,
    })
}

/// Branching detection per the boundary-of-zero-set definition of the
/// collision set: flagged where the discriminant is inside the zero
/// tolerance but a neighboring grid point is not.
///
/// `exact_pair` demands winding count exactly two on the whole grid and
/// uses the exact indicator `2 p2 - p1^2 = (a1 - a2)^2`; otherwise the
/// pairwise discriminant product of the recovered zeros is used and
/// flagged as a heuristic.
pub fn branching_set(
    g: &dyn ParametricFn,
    contour: &Contour,
    t_grid: &[f64],
    exact_pair: bool,
) -> Result<ZeroTrajectory, TrackError> {
    let mut traj = track_zeros(g, contour, t_grid)?;
    if exact_pair {
        if let Some((i, &c)) = traj.counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(TrackError::UnsupportedMultiplicity {
                t: t_grid[i],
                count: c,
            });
        }
        traj.discriminant = traj
            .moments
            .iter()
            .map(|p| 2.0 * p[1] - p[0] * p[0])
            .collect();
        traj.branching = boundary_of_zero_set(&traj.discriminant, 1e-6);
    } else if traj.counts.iter().any(|&c| c != 2) {
        traj.warnings.push(
            "winding count differs from 2; using the pairwise discriminant product heuristic"
                .into(),
        );
    }
    Ok(traj)
}

fn boundary_of_zero_set(values: &[Complex64], tol: f64) -> Vec<bool> {
    let inside: Vec<bool> = values.iter().map(|v| v.norm() < tol).collect();
    (0..values.len())
        .map(|i| {
            inside[i]
                && ((i > 0 && !inside[i - 1])
                    || (i + 1 < values.len() && !inside[i + 1]))
        })
        .collect()
}

/// Minimal-cost bipartite matching of the new zeros to the previous
/// column order; brute-force over permutations (counts here are small),
/// ties broken lexicographically by (re, im).
fn match_to_previous(prev: &[Complex64], new: Vec<Complex64>) -> Vec<Complex64> {
    let m = new.len();
    if m <= 1 {
        return new;
    }
    if m > 7 {
        // out of brute-force range: keep deterministic sorted order
        let mut v = new;
        v.sort_by(complex_cmp);
        return v;
    }
    let mut order: Vec<usize> = (0..m).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    permute(&mut order, 0, &mut |perm| {
        let cost: f64 = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (prev[i] - new[j]).norm())
            .sum();
        let candidate: Vec<Complex64> = perm.iter().map(|&j| new[j]).collect();
        match &best {
            Some((bc, bv)) => {
                let bv: Vec<Complex64> = bv.iter().map(|&j| new[j]).collect();
                if cost + 1e-15 < *bc
                    || ((cost - bc).abs() <= 1e-15 && lex_less(&candidate, &bv))
                {
                    best = Some((cost, perm.to_vec()));
                }
            }
            None => best = Some((cost, perm.to_vec())),
        }
    });
    let (_, perm) = best.unwrap();
    perm.iter().map(|&j| new[j]).collect()
}

fn lex_less(a: &[Complex64], b: &[Complex64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match complex_cmp(x, y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => continue,
        }
    }
    false
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;
    use crate::zero_tracker::contour::PolyParametric;

    fn poly_fn(text: &str) -> PolyParametric {
        PolyParametric::new(parse_poly(text, 2).unwrap(), 0, 1)
    }

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn branching_of_square_root_family() {
        // z^2 - t on (-1/4, 1/4): zeros collide exactly at t = 0
        let g = poly_fn("z1^2 - z2");
        let t = grid(-0.25, 0.25, 101);
        let traj = branching_set(&g, &Contour::unit(), &t, true).unwrap();
        let flags = traj.branching_parameters();
        assert_eq!(flags.len(), 1);
        assert!(flags[0].abs() < 0.005 + 1e-12);
    }

    #[test]
    fn separated_zeros_never_branch() {
        // (z - t)(z + 1/2): zeros never collide for |t| < 1/4
        let g = poly_fn("z1^2 + 1/2 z1 - z1 z2 - 1/2 z2");
        let t = grid(-0.24, 0.24, 49);
        let traj = branching_set(&g, &Contour::unit(), &t, true).unwrap();
        assert!(traj.branching_parameters().is_empty());
        // and the zero paths are continuous
        for w in traj.zeros.windows(2) {
            let step: f64 = w[0]
                .iter()
                .zip(&w[1])
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(step < 0.05);
        }
    }

    #[test]
    fn permanently_coincident_zeros_have_no_boundary() {
        // z^2 for all t: discriminant identically zero, no branching
        let g = poly_fn("z1^2");
        let t = grid(-0.2, 0.2, 21);
        let traj = branching_set(&g, &Contour::unit(), &t, true).unwrap();
        assert!(traj.branching_parameters().is_empty());
        assert!(traj.counts.iter().all(|&c| c == 2));
    }

    #[test]
    fn multiplicity_mismatch_is_reported_in_exact_mode() {
        let g = poly_fn("z1 - z2");
        let t = grid(-0.1, 0.1, 5);
        assert!(matches!(
            branching_set(&g, &Contour::unit(), &t, true),
            Err(TrackError::UnsupportedMultiplicity { .. })
        ));
    }

    #[test]
    fn csv_export_shape() {
        let g = poly_fn("z1^2 - z2");
        let t = grid(0.01, 0.09, 5);
        let traj = track_zeros(&g, &Contour::unit(), &t).unwrap();
        let csv = traj.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,count,re_a1,im_a1,re_a2,im_a2,branching");
        assert_eq!(lines.len(), 6);
    }
}
