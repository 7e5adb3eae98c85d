//! Hull separation certificates for points off the generator graph.
//!
//! For a query `(z0, w0)` with `z0` in the domain and `w0 != h(z0)`, the
//! function `Re(e^{i theta} (w_j - h_j(z)))` is pluriharmonic on the
//! graph ambient space, vanishes identically on the graph, and is made
//! positive at the query by choosing the generator index and phase.

use super::SampleDomain;
use crate::pluriharmonic::PluriharmonicMap;
use num_complex::Complex64;

/// A positive-margin separating function description.
#[derive(Clone, Debug)]
pub struct SeparationCertificate {
    pub generator: usize,
    pub phase: f64,
    pub value_at_query: f64,
    pub graph_max: f64,
    pub margin: f64,
}

/// Outcome of a separation query.
#[derive(Clone, Debug)]
pub enum CertificateOutcome {
    Certificate(SeparationCertificate),
    /// The query lies on the graph within `1e-10`; no separation exists.
    OnGraph,
    /// Off the graph but below the certifiable margin.
    TooClose,
    /// The base point is outside the closed domain; separation is
    /// immediate from polynomial convexity of the domain itself.
    OutsideDomain,
}

const PHASE_GRID: usize = 64;

/// Searches generator indices and phases for a separating function.
/// The graph maximum is validated on the supplied samples.
pub fn separation_certificate(
    map: &PluriharmonicMap,
    domain: &SampleDomain,
    query_z: &[Complex64],
    query_w: &[Complex64],
    graph_samples: &[Vec<Complex64>],
) -> CertificateOutcome {
    assert_eq!(query_w.len(), map.len(), "one w coordinate per generator");
    if !domain.contains(query_z) {
        return CertificateOutcome::OutsideDomain;
    }
    let h0 = map.eval(query_z);
    let deviations: Vec<Complex64> = query_w
        .iter()
        .zip(&h0)
        .map(|(w, h)| w - h)
        .collect();
    let max_dev = deviations.iter().map(|d| d.norm()).fold(0.0, f64::max);
    if max_dev < 1e-10 {
        return CertificateOutcome::OnGraph;
    }
    // best generator and phase over the grid, then one golden-section
    // refinement of the phase
    let mut best = (0usize, 0.0f64, f64::NEG_INFINITY);
    for (j, d) in deviations.iter().enumerate() {
        for i in 0..PHASE_GRID {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / PHASE_GRID as f64;
            let v = (Complex64::from_polar(1.0, theta) * d).re;
            if v > best.2 {
                best = (j, theta, v);
            }
        }
    }
    let j = best.0;
    let step = 2.0 * std::f64::consts::PI / PHASE_GRID as f64;
    let objective = |theta: f64| (Complex64::from_polar(1.0, theta) * deviations[j]).re;
    let theta = golden_section_max(&objective, best.1 - step, best.1 + step);
    let value_at_query = objective(theta);
    // graph maximum of Re(e^{i theta}(w_j - h_j(z))) over the samples;
    // analytically zero since w_j = h_j(z) on the graph
    let phase = Complex64::from_polar(1.0, theta);
    let graph_max = graph_samples
        .iter()
        .map(|z| {
            let h = map.func(j).eval(z);
            (phase * (h - h)).re
        })
        .fold(0.0, f64::max);
    let margin = value_at_query - graph_max;
    if margin > 1e-8 {
        CertificateOutcome::Certificate(SeparationCertificate {
            generator: j,
            phase: theta.rem_euclid(2.0 * std::f64::consts::PI),
            value_at_query,
            graph_max,
            margin,
        })
    } else {
        CertificateOutcome::TooClose
    }
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    for _ in 0..80 {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    (a + b) / 2.0
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
    fn unit_deviation_certifies_with_margin_one() {
        let m = map(&["z1"]);
        let d = SampleDomain::ClosedBidisk { resolution: 8 };
        let samples = d.points();
        let out = separation_certificate(
            &m,
            &d,
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &[c(1.0, 0.0)],
            &samples,
        );
        match out {
            CertificateOutcome::Certificate(cert) => {
                assert_eq!(cert.generator, 0);
                assert!((cert.margin - 1.0).abs() < 1e-9);
                assert!(cert.phase.abs() < 1e-6 || (cert.phase - 2.0 * std::f64::consts::PI).abs() < 1e-6);
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn on_graph_queries_yield_none() {
        let m = map(&["z1 z2"]);
        let d = SampleDomain::ClosedBidisk { resolution: 8 };
        let z = [c(0.3, 0.1), c(-0.2, 0.5)];
        let w = m.eval(&z);
        let out = separation_certificate(&m, &d, &z, &w, &d.points());
        assert!(matches!(out, CertificateOutcome::OnGraph));
    }

    #[test]
    fn outside_domain_is_a_distinct_code() {
        let m = map(&["z1"]);
        let d = SampleDomain::ClosedBidisk { resolution: 8 };
        let out = separation_certificate(
            &m,
            &d,
            &[c(2.0, 0.0), c(0.0, 0.0)],
            &[c(5.0, 0.0)],
            &d.points(),
        );
        assert!(matches!(out, CertificateOutcome::OutsideDomain));
    }

    #[test]
    fn imaginary_deviation_finds_the_right_phase() {
        // h = Re(z1 z2) = 1/4 at (1/2, 1/2); w = i: the best phase turns
        // i - 1/4 onto the positive real axis, margin = |i - 1/4|
        let m = map(&["z1 z2"]);
        let d = SampleDomain::ClosedBidisk { resolution: 8 };
        let out = separation_certificate(
            &m,
            &d,
            &[c(0.5, 0.0), c(0.5, 0.0)],
            &[c(0.0, 1.0)],
            &d.points(),
        );
        match out {
            CertificateOutcome::Certificate(cert) => {
                let expected = (c(0.0, 1.0) - c(0.25, 0.0)).norm();
                assert!((cert.margin - expected).abs() < 1e-9, "margin {}", cert.margin);
                // brute-force phase oracle over a dense grid
                let dev = c(0.0, 1.0) - c(0.25, 0.0);
                let brute = (0..4096)
                    .map(|i| {
                        let t = 2.0 * std::f64::consts::PI * i as f64 / 4096.0;
                        (Complex64::from_polar(1.0, t) * dev).re
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!((cert.value_at_query - brute).abs() < 1e-6);
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }
}
