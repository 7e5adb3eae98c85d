//! Pluriharmonic generator tuples and their anti-holomorphic Jacobian.
//!
//! A generator is `h = Re(g) + f` with `g`, `f` holomorphic polynomials.
//! Its conjugate-Wirtinger derivatives satisfy
//!
//! ```text
//!     dh/dconj(z_k)(z) = (1/2) * conj( (dg/dz_k)(z) ),
//! ```
//!
//! so the matrix of `dg_j/dz_k` is a holomorphic *conjugate
//! representative* of the anti-holomorphic Jacobian: the factor `1/2` and
//! the conjugation are carried in this semantic contract, never in the
//! stored polynomials, keeping all exact algebra inside one ring. A k x k
//! minor of the true Jacobian equals `2^-k * conj(det)` of the stored
//! representative, and in particular vanishes exactly where the stored
//! determinant does.

use crate::numeric::{complex_cmp, poly_roots, sort_complex};
use crate::polyalg::{
    as_univariate, coeffs_in_var, square_free_part, GaussianRational, HoloPoly, PolyError, UniPoly,
};
use num_complex::Complex64;

/// One pluriharmonic generator `h = Re(g) + f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluriharmonicFn {
    g: HoloPoly,
    f: HoloPoly,
}

impl PluriharmonicFn {
    pub fn new(g: HoloPoly, f: HoloPoly) -> Self {
        assert_eq!(g.num_vars(), f.num_vars(), "g and f variable counts differ");
        PluriharmonicFn { g, f }
    }

    /// Purely real generator `Re(g)`.
    pub fn real_part(g: HoloPoly) -> Self {
        let n = g.num_vars();
        PluriharmonicFn::new(g, HoloPoly::zero(n))
    }

    pub fn g(&self) -> &HoloPoly {
        &self.g
    }

    pub fn f(&self) -> &HoloPoly {
        &self.f
    }

    pub fn num_vars(&self) -> usize {
        self.g.num_vars()
    }

    /// Holomorphic iff the anti-holomorphic derivative vanishes
    /// identically, i.e. `g` is constant.
    pub fn is_holomorphic(&self) -> bool {
        self.g.is_constant()
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let gv = self.g.eval(point);
        Complex64::new(gv.re, 0.0) + self.f.eval(point)
    }

    /// Row of conjugate representatives `dg/dz_k`.
    pub fn conjugate_gradient(&self) -> Vec<HoloPoly> {
        (0..self.num_vars()).map(|k| self.g.partial(k)).collect()
    }
}

/// An ordered tuple of pluriharmonic generators on a common domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluriharmonicMap {
    funcs: Vec<PluriharmonicFn>,
}

impl PluriharmonicMap {
    pub fn new(funcs: Vec<PluriharmonicFn>) -> Self {
        assert!(!funcs.is_empty(), "a map needs at least one generator");
        let n = funcs[0].num_vars();
        assert!(
            funcs.iter().all(|f| f.num_vars() == n),
            "generators live on different domains"
        );
        PluriharmonicMap { funcs }
    }

    pub fn n(&self) -> usize {
        self.funcs[0].num_vars()
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn funcs(&self) -> &[PluriharmonicFn] {
        &self.funcs
    }

    pub fn func(&self, j: usize) -> &PluriharmonicFn {
        &self.funcs[j]
    }

    pub fn eval(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.funcs.iter().map(|h| h.eval(point)).collect()
    }

    /// The N x n matrix of conjugate representatives: entry `(j, k)` is
    /// `dg_j/dz_k`, with `dh_j/dconj(z_k)(z) = (1/2) conj(entry(z))`.
    pub fn dbar_conjugate_reps(&self) -> Vec<Vec<HoloPoly>> {
        self.funcs.iter().map(|h| h.conjugate_gradient()).collect()
    }

    /// All k x k minors of the conjugate-representative matrix.
    pub fn minor_system(&self, k: usize) -> Result<MinorSystem, MinorError> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(MinorError::OrderOutOfRange { k, n });
        }
        let reps = self.dbar_conjugate_reps();
        let row_sets = increasing_subsets(self.len(), k);
        let col_sets = increasing_subsets(n, k);
        let mut minors = Vec::new();
        for rows in &row_sets {
            for cols in &col_sets {
                let det = submatrix_det(&reps, rows, cols);
                minors.push(MinorEntry {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    det,
                });
            }
        }
        Ok(MinorSystem {
            k,
            n,
            num_generators: self.len(),
            minors,
        })
    }

    /// Verifies that expanding the k-fold wedge power of the Jacobian
    /// (divided by k!) reproduces the stored minors exactly, summing over
    /// increasing multi-indices. Exact equality, no tolerance.
    pub fn wedge_power_check(&self, k: usize) -> Result<bool, MinorError> {
        let ms = self.minor_system(k)?;
        let n = self.n();
        let big_n = self.len();
        let reps = self.dbar_conjugate_reps();
        let mut cells: std::collections::BTreeMap<(Vec<usize>, Vec<usize>), HoloPoly> =
            std::collections::BTreeMap::new();
        let mut rows_seq = vec![0usize; k];
        let mut cols_seq = vec![0usize; k];
        loop {
            if distinct(&rows_seq) {
                loop {
                    if distinct(&cols_seq) {
                        let mut term = HoloPoly::one(n);
                        for i in 0..k {
                            term = &term * &reps[rows_seq[i]][cols_seq[i]];
                        }
                        if !term.is_zero() {
                            let (rs, sign_r) = sort_with_sign(&rows_seq);
                            let (cs, sign_c) = sort_with_sign(&cols_seq);
                            if sign_r ^ sign_c {
                                term = -&term;
                            }
                            let entry = cells
                                .entry((rs, cs))
                                .or_insert_with(|| HoloPoly::zero(n));
                            *entry = &*entry + &term;
                        }
                    }
                    if !advance(&mut cols_seq, n) {
                        break;
                    }
                }
                cols_seq.iter_mut().for_each(|c| *c = 0);
            }
            if !advance(&mut rows_seq, big_n) {
                break;
            }
        }
        let factorial: i64 = (1..=k as i64).product();
        let inv = GaussianRational::from_integer(factorial).inv();
        for entry in &ms.minors {
            let wedge = cells
                .remove(&(entry.rows.clone(), entry.cols.clone()))
                .map(|p| p.scale(&inv))
                .unwrap_or_else(|| HoloPoly::zero(n));
            if wedge != entry.det {
                return Ok(false);
            }
        }
        // all remaining accumulated cells must be zero (none expected)
        Ok(cells.values().all(|p| p.scale(&inv).is_zero()))
    }

    /// Numeric totally-real test for the graph tangent at `(x, h(x))`.
    ///
    /// Exact vanishing decisions belong to the symbolic layer; here
    /// values in `(0, tol]` are reported indeterminate, never treated as
    /// zero.
    pub fn totally_real_at(&self, x: &[Complex64], tol: f64) -> TangentClass {
        let n = self.n();
        if self.len() < n {
            return TangentClass::Degenerate;
        }
        let ms = self
            .minor_system(n)
            .expect("k = n is always a valid minor order");
        let mut max_abs = 0.0f64;
        for entry in &ms.minors {
            max_abs = max_abs.max(entry.det.eval(x).norm());
        }
        if max_abs > tol {
            TangentClass::TotallyReal
        } else if max_abs == 0.0 {
            TangentClass::Degenerate
        } else {
            TangentClass::Indeterminate
        }
    }

    /// Locus of boundary faces `{z_frozen = a}`, `|a| = 1`, on which all
    /// generators are holomorphic.
    ///
    /// A generator is holomorphic on the face iff `dg/dz_m(a, .)`
    /// vanishes identically in the moving variable, i.e. iff `a` is a
    /// common root of all its coefficient polynomials. The locus is
    /// returned as the exact gcd condition plus its numeric unit-circle
    /// roots; when every coefficient polynomial vanishes identically the
    /// `all_faces` marker is set instead.
    pub fn face_holomorphy_locus(&self, frozen: usize) -> Result<FaceLocus, MinorError> {
        if self.n() != 2 {
            return Err(MinorError::NeedsBidisk { n: self.n() });
        }
        if frozen > 1 {
            return Err(MinorError::OrderOutOfRange { k: frozen, n: 2 });
        }
        let moving = 1 - frozen;
        let mut coeff_polys: Vec<UniPoly> = Vec::new();
        for h in &self.funcs {
            let q = h.g().partial(moving);
            for c in coeffs_in_var(&q, moving) {
                if !c.is_zero() {
                    let u = as_univariate(&c, frozen)
                        .expect("face coefficients depend on the frozen variable only");
                    coeff_polys.push(u);
                }
            }
        }
        if coeff_polys.is_empty() {
            return Ok(FaceLocus {
                all_faces: true,
                condition: None,
                unit_roots: Vec::new(),
            });
        }
        let mut g = coeff_polys[0].clone();
        for c in &coeff_polys[1..] {
            g = g.gcd(c);
            if g.is_constant() {
                break;
            }
        }
        let condition = g.to_poly(2, frozen);
        let unit_roots = if condition.is_constant() {
            Vec::new()
        } else {
            let sf = square_free_part(&condition).expect("nonzero condition");
            let u = as_univariate(&sf, frozen).unwrap();
            let coeffs: Vec<Complex64> = u.0.iter().map(|c| c.to_complex()).collect();
            let mut roots: Vec<Complex64> = poly_roots(&coeffs)
                .into_iter()
                .filter(|r| (r.norm() - 1.0).abs() <= 1e-8)
                .collect();
            sort_complex(&mut roots);
            roots
        };
        Ok(FaceLocus {
            all_faces: false,
            condition: Some(condition.monic()),
            unit_roots,
        })
    }
}

/// Result of the numeric tangent classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentClass {
    TotallyReal,
    /// Every minor evaluates to exactly zero.
    Degenerate,
    /// All minors small but not exactly zero; the symbolic layer decides.
    Indeterminate,
}

/// Boundary-face holomorphy locus for one face family.
#[derive(Clone, Debug)]
pub struct FaceLocus {
    /// Every face of the family carries only holomorphic restrictions.
    pub all_faces: bool,
    /// Exact gcd of the coefficient polynomials (absent when `all_faces`).
    pub condition: Option<HoloPoly>,
    /// Unit-modulus roots of the condition, sorted by (re, im).
    pub unit_roots: Vec<Complex64>,
}

impl FaceLocus {
    /// A finite, nonempty set of holomorphic faces.
    pub fn has_discrete_faces(&self) -> bool {
        !self.all_faces && !self.unit_roots.is_empty()
    }
}

/// Exact k x k minors of the conjugate-representative matrix, indexed by
/// increasing row and column subsets.
#[derive(Clone, Debug)]
pub struct MinorSystem {
    k: usize,
    n: usize,
    num_generators: usize,
    minors: Vec<MinorEntry>,
}

#[derive(Clone, Debug)]
pub struct MinorEntry {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: HoloPoly,
}

impl MinorEntry {
    /// Monic representative; same zero set as the stored determinant.
    pub fn normalized(&self) -> HoloPoly {
        self.det.monic()
    }
}

impl MinorSystem {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn domain_dim(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn minors(&self) -> &[MinorEntry] {
        &self.minors
    }

    /// Exact flag: the system is empty (fewer generators than the order)
    /// or every minor is the zero polynomial.
    pub fn identically_zero(&self) -> bool {
        self.minors.iter().all(|m| m.det.is_zero())
    }

    pub fn nonzero_minors(&self) -> impl Iterator<Item = &MinorEntry> {
        self.minors.iter().filter(|m| !m.det.is_zero())
    }
}

/// Determinant of the submatrix of `reps` given by `rows` x `cols`,
/// by Laplace expansion (orders here are at most 4).
pub fn submatrix_det(reps: &[Vec<HoloPoly>], rows: &[usize], cols: &[usize]) -> HoloPoly {
    let n = reps[0][0].num_vars();
    let k = rows.len();
    assert_eq!(k, cols.len());
    if k == 0 {
        return HoloPoly::one(n);
    }
    if k == 1 {
        return reps[rows[0]][cols[0]].clone();
    }
    let mut det = HoloPoly::zero(n);
    for (i, &r) in rows.iter().enumerate() {
        let minor_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&x| x != r)
            .collect();
        let sub = submatrix_det(reps, &minor_rows, &cols[1..]);
        let term = &reps[r][cols[0]] * &sub;
        if i % 2 == 0 {
            det = &det + &term;
        } else {
            det = &det - &term;
        }
    }
    det
}

fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn distinct(seq: &[usize]) -> bool {
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return false;
            }
        }
    }
    true
}

/// Sorts a copy and reports whether the sorting permutation is odd.
fn sort_with_sign(seq: &[usize]) -> (Vec<usize>, bool) {
    let mut v = seq.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
            }
        }
    }
    (v, odd)
}

fn advance(seq: &mut [usize], base: usize) -> bool {
    for digit in seq.iter_mut() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Deterministic order on complex points used throughout reports.
pub fn point_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = complex_cmp(x, y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Failures in minor and face computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorError {
    OrderOutOfRange { k: usize, n: usize },
    NeedsBidisk { n: usize },
}

impl std::fmt::Display for MinorError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinorError::OrderOutOfRange { k, n } => {
                write!(f, "minor order {k} out of range for domain dimension {n}")
            }
            MinorError::NeedsBidisk { n } => {
                write!(f, "face analysis needs a two-dimensional domain, got {n}")
            }
        }
    }
}

impl std::error::Error for MinorError {}

impl From<PolyError> for MinorError {
    fn from(_: PolyError) -> Self {
        unreachable!("internal polynomial invariants violated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn re(g: &str) -> PluriharmonicFn {
        PluriharmonicFn::real_part(parse_poly(g, 2).unwrap())
    }

    fn map(gs: &[&str]) -> PluriharmonicMap {
        PluriharmonicMap::new(gs.iter().map(|g| re(g)).collect())
    }

    #[test]
    fn conjugate_rep_rows() {
        // h = Re z1: row (1, 0)
        let m = map(&["z1"]);
        let reps = m.dbar_conjugate_reps();
        assert_eq!(reps[0][0], HoloPoly::one(2));
        assert!(reps[0][1].is_zero());
        // holomorphic generator: zero row
        let hol = PluriharmonicMap::new(vec![PluriharmonicFn::new(
            HoloPoly::zero(2),
            parse_poly("z1^2 + z2", 2).unwrap(),
        )]);
        assert!(hol.dbar_conjugate_reps()[0].iter().all(|p| p.is_zero()));
        // h = Re(z1 z2): row (z2, z1), by the product rule
        let m2 = map(&["z1 z2"]);
        let reps2 = m2.dbar_conjugate_reps();
        assert_eq!(reps2[0][0], HoloPoly::var(2, 1));
        assert_eq!(reps2[0][1], HoloPoly::var(2, 0));
    }

    #[test]
    fn minor_system_diag_squares() {
        // (Re z1^2, Re z2^2): matrix diag(2 z1, 2 z2), single minor 4 z1 z2
        let m = map(&["z1^2", "z2^2"]);
        let ms = m.minor_system(2).unwrap();
        assert_eq!(ms.minors().len(), 1);
        let det = &ms.minors()[0].det;
        let expected = parse_poly("4 z1 z2", 2).unwrap();
        assert_eq!(*det, expected);
        // normalized representative drops the constant
        assert_eq!(ms.minors()[0].normalized(), parse_poly("z1 z2", 2).unwrap());
        assert!(!ms.identically_zero());
    }

    #[test]
    fn minor_system_short_map_is_identically_zero() {
        let m = map(&["z1"]);
        let ms = m.minor_system(2).unwrap();
        assert!(ms.minors().is_empty());
        assert!(ms.identically_zero());
        assert!(matches!(
            m.minor_system(3),
            Err(MinorError::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn holomorphic_rows_contribute_zero_first_order_minors() {
        let hol = PluriharmonicFn::new(HoloPoly::zero(2), parse_poly("z1 z2", 2).unwrap());
        let m = PluriharmonicMap::new(vec![hol, re("z1")]);
        let ms = m.minor_system(1).unwrap();
        for entry in ms.minors() {
            if entry.rows == vec![0] {
                assert!(entry.det.is_zero());
            }
        }
    }

    #[test]
    fn wedge_identity_examples() {
        let m = map(&["z1^2", "z2^2"]);
        assert!(m.wedge_power_check(1).unwrap());
        assert!(m.wedge_power_check(2).unwrap());
        let m3 = map(&["z1^2 + z2", "z1 z2", "z2^3"]);
        assert!(m3.wedge_power_check(2).unwrap());
    }

    #[test]
    fn minor_antisymmetry() {
        let m = map(&["z1^2 + z2", "z1 z2", "z2^2"]);
        let reps = m.dbar_conjugate_reps();
        let d01 = submatrix_det(&reps, &[0, 1], &[0, 1]);
        let d10 = submatrix_det(&reps, &[1, 0], &[0, 1]);
        assert_eq!(d01, -&d10);
    }

    #[test]
    fn totally_real_classification() {
        let m = map(&["z1^2", "z2^2"]);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(
            m.totally_real_at(&[one, one], 1e-8),
            TangentClass::TotallyReal
        );
        assert_eq!(
            m.totally_real_at(&[zero, Complex64::new(0.5, 0.0)], 1e-8),
            TangentClass::Degenerate
        );
        // holomorphic map: H_n vanishes identically
        let hol = PluriharmonicMap::new(vec![
            PluriharmonicFn::new(HoloPoly::zero(2), parse_poly("z1", 2).unwrap()),
            PluriharmonicFn::new(HoloPoly::zero(2), parse_poly("z2", 2).unwrap()),
        ]);
        assert_eq!(
            hol.totally_real_at(&[one, one], 1e-8),
            TangentClass::Degenerate
        );
        // short maps are never totally real
        let short = map(&["z1"]);
        assert_eq!(
            short.totally_real_at(&[one, one], 1e-8),
            TangentClass::Degenerate
        );
    }

    #[test]
    fn face_locus_examples() {
        // Re z1 is constant on every face {z1 = a}
        let m = map(&["z1"]);
        let locus = m.face_holomorphy_locus(0).unwrap();
        assert!(locus.all_faces);
        // Re z2 restricted to {z1 = a} is never holomorphic
        let m2 = map(&["z2"]);
        let locus2 = m2.face_holomorphy_locus(0).unwrap();
        assert!(!locus2.all_faces);
        assert!(locus2.condition.as_ref().unwrap().is_constant());
        assert!(locus2.unit_roots.is_empty());
        // Re(z1 z2): condition polynomial z1; root 0 is not unit-modulus
        let m3 = map(&["z1 z2"]);
        let locus3 = m3.face_holomorphy_locus(0).unwrap();
        assert_eq!(
            locus3.condition.as_ref().unwrap(),
            &HoloPoly::var(2, 0)
        );
        assert!(locus3.unit_roots.is_empty());
        // a face at a unit-circle point
        let m4 = PluriharmonicMap::new(vec![re("z1 z2 - z2")]);
        let locus4 = m4.face_holomorphy_locus(0).unwrap();
        assert_eq!(locus4.unit_roots.len(), 1);
        assert!((locus4.unit_roots[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
