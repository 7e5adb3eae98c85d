//! Bivariate elimination toolkit: exact division, GCDs via subresultant
//! pseudo-remainder sequences, Sylvester resultants, square-free parts,
//! and coprime factor refinement.
//!
//! Everything here is exact over the Gaussian rationals. GCDs are
//! normalized monic in graded-lex order.

use super::gaussian::GaussianRational;
use super::poly::{HoloPoly, Monomial};
use super::PolyError;

/// True iff dividing `b` by `p` leaves zero remainder.
///
/// Division by a single divisor with leading-term reduction in graded-lex
/// order decides divisibility over a field: a nonzero remainder of a true
/// multiple would carry a leading term divisible by the divisor's.
pub fn divides(p: &HoloPoly, b: &HoloPoly) -> bool {
    assert!(!p.is_zero(), "division by the zero polynomial");
    division(b, p).1.is_zero()
}

/// Exact quotient `b / p` when the division is exact.
pub fn exact_div(b: &HoloPoly, p: &HoloPoly) -> Option<HoloPoly> {
    let (q, r) = division(b, p);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Multivariate division by a single divisor: returns `(q, r)` with
/// `b = q*p + r` and no term of `r` divisible by the leading term of `p`.
pub fn division(b: &HoloPoly, p: &HoloPoly) -> (HoloPoly, HoloPoly) {
    assert_eq!(b.num_vars(), p.num_vars(), "variable count mismatch");
    let (lm, lc) = p.leading().expect("division by zero polynomial");
    let lm = lm.clone();
    let lc_inv = lc.inv();
    let n = b.num_vars();
    let mut quotient = HoloPoly::zero(n);
    let mut remainder = HoloPoly::zero(n);
    let mut work = b.clone();
    while let Some((m, c)) = work.leading() {
        let m = m.clone();
        let c = c.clone();
        if lm.divides(&m) {
            let qm = m.div(&lm);
            let qc = c.mul(&lc_inv);
            quotient.add_term(qm.clone(), qc.clone());
            let sub = p.mul_term(&qm, &qc);
            work = &work - &sub;
        } else {
            remainder.add_term(m.clone(), c.clone());
            let strip = HoloPoly::monomial(n, m.exponents().to_vec(), c);
            work = &work - &strip;
        }
    }
    (quotient, remainder)
}

// ---------------------------------------------------------------------
// Dense univariate polynomials over Q(i), used for contents, face loci
// and numeric root extraction.
// ---------------------------------------------------------------------

/// Dense univariate polynomial, coefficients ascending by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(pub Vec<GaussianRational>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = UniPoly(vec![c]);
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn monic(&self) -> UniPoly {
        match self.0.last() {
            None => UniPoly::zero(),
            Some(lc) => {
                let inv = lc.inv();
                UniPoly(self.0.iter().map(|c| c.mul(&inv)).collect())
            }
        }
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.degree();
        let lc_inv = d.0.last().unwrap().inv();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let factor = r.0.last().unwrap().mul(&lc_inv);
            for (i, c) in d.0.iter().enumerate() {
                let sub = c.mul(&factor);
                r.0[i + shift] -= &sub;
            }
            r.trim();
        }
        r
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Promote to a sparse polynomial in variable `var` of `num_vars`.
    pub fn to_poly(&self, num_vars: usize, var: usize) -> HoloPoly {
        HoloPoly::from_terms(
            num_vars,
            self.0.iter().enumerate().map(|(d, c)| {
                let mut exps = vec![0; num_vars];
                exps[var] = d as u32;
                (exps, c.clone())
            }),
        )
    }
}

/// Extract the dense coefficient vector of a polynomial that only uses
/// variable `var`; `None` when other variables occur.
pub fn as_univariate(p: &HoloPoly, var: usize) -> Option<UniPoly> {
    let mut coeffs = vec![GaussianRational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        for (v, &e) in m.exponents().iter().enumerate() {
            if v != var && e > 0 {
                return None;
            }
        }
        coeffs[m.exponents()[var] as usize] = c.clone();
    }
    let mut u = UniPoly(coeffs);
    u.trim();
    Some(u)
}

// ---------------------------------------------------------------------
// Views as univariate polynomials in a main variable with polynomial
// coefficients in the remaining ones.
// ---------------------------------------------------------------------

/// Coefficient vector of `p` in powers of `var` (ascending); each entry
/// keeps the full variable count with exponent zero in `var`.
pub fn coeffs_in_var(p: &HoloPoly, var: usize) -> Vec<HoloPoly> {
    let n = p.num_vars();
    let deg = p.degree_in(var) as usize;
    let mut out = vec![HoloPoly::zero(n); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponents()[var] as usize;
        let mut exps = m.exponents().to_vec();
        exps[var] = 0;
        out[e].add_term(Monomial::new(exps), c.clone());
    }
    out
}

pub fn from_coeffs_in_var(coeffs: &[HoloPoly], var: usize, num_vars: usize) -> HoloPoly {
    let mut out = HoloPoly::zero(num_vars);
    for (d, c) in coeffs.iter().enumerate() {
        for (m, a) in c.terms() {
            let mut exps = m.exponents().to_vec();
            exps[var] += d as u32;
            out.add_term(Monomial::new(exps), a.clone());
        }
    }
    out
}

fn trim_main(coeffs: &mut Vec<HoloPoly>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Pseudo-division in the main variable: returns `(q, r)` with
/// `lc(b)^(da-db+1) * a = q*b + r` and `deg_main(r) < deg_main(b)`.
fn pseudo_divrem(a: &[HoloPoly], b: &[HoloPoly]) -> (Vec<HoloPoly>, Vec<HoloPoly>) {
    let da = a.len() - 1;
    let db = b.len() - 1;
    assert!(db <= da);
    let lcb = b.last().unwrap();
    let n = lcb.num_vars();
    let mut q: Vec<HoloPoly> = vec![HoloPoly::zero(n); da - db + 1];
    let mut r: Vec<HoloPoly> = a.to_vec();
    let mut e = (da - db + 1) as i64;
    loop {
        trim_main(&mut r);
        if r.is_empty() || r.len() - 1 < db {
            break;
        }
        let dr = r.len() - 1;
        let t = r.last().unwrap().clone();
        // q = q*lcb + t * x^(dr-db); r = r*lcb - t * x^(dr-db) * b
        for qi in q.iter_mut() {
            *qi = &*qi * lcb;
        }
        q[dr - db] = &q[dr - db] + &t;
        for ri in r.iter_mut() {
            *ri = &*ri * lcb;
        }
        for (i, bi) in b.iter().enumerate() {
            let sub = &t * bi;
            r[i + dr - db] = &r[i + dr - db] - &sub;
        }
        e -= 1;
    }
    if e > 0 {
        let mut scale = HoloPoly::one(n);
        for _ in 0..e {
            scale = &scale * lcb;
        }
        for qi in q.iter_mut() {
            *qi = &*qi * &scale;
        }
        for ri in r.iter_mut() {
            *ri = &*ri * &scale;
        }
    }
    (q, r)
}

/// Content of `p` as a univariate polynomial in `var` over the other
/// variable's ring: the GCD of its main-variable coefficients.
fn content_in(p: &HoloPoly, var: usize) -> HoloPoly {
    let coeffs = coeffs_in_var(p, var);
    let mut acc = HoloPoly::zero(p.num_vars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

/// Subresultant PRS GCD of two polynomials primitive in `var` with
/// positive main degree in both.
fn subresultant_gcd(p: &HoloPoly, q: &HoloPoly, var: usize) -> HoloPoly {
    let n = p.num_vars();
    let mut a = coeffs_in_var(p, var);
    let mut b = coeffs_in_var(q, var);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = HoloPoly::one(n);
    let mut h = HoloPoly::one(n);
    loop {
        let d = a.len() - b.len();
        let (_, mut r) = pseudo_divrem(&a, &b);
        trim_main(&mut r);
        if r.is_empty() {
            let bb = from_coeffs_in_var(&b, var, n);
            let cont = content_in(&bb, var);
            return exact_div(&bb, &cont).expect("content divides").monic();
        }
        if r.len() == 1 {
            // Nonzero remainder of main degree 0: the primitive GCD is 1.
            return HoloPoly::one(n);
        }
        a = b;
        // divisor g * h^d
        let mut div = g.clone();
        for _ in 0..d {
            div = &div * &h;
        }
        b = r
            .into_iter()
            .map(|c| exact_div(&c, &div).expect("subresultant scaling divides"))
            .collect();
        g = a.last().unwrap().clone();
        // h = h^(1-d) g^d
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => {
                let mut num = HoloPoly::one(n);
                for _ in 0..d {
                    num = &num * &g;
                }
                let mut den = HoloPoly::one(n);
                for _ in 0..d - 1 {
                    den = &den * &h;
                }
                exact_div(&num, &den).expect("subresultant h division")
            }
        };
    }
}

/// Internal GCD with the convention `gcd(p, 0) = monic(p)`; accepts any
/// polynomial in at most two variables.
pub fn gcd(p: &HoloPoly, q: &HoloPoly) -> HoloPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let n = p.num_vars();
    if p.is_constant() || q.is_constant() {
        return HoloPoly::one(n);
    }
    // Variables actually present in each input.
    let present = |f: &HoloPoly, v: usize| f.degree_in(v) > 0;
    for var in 0..n {
        let other_vars_absent = |f: &HoloPoly| (0..n).all(|v| v == var || !present(f, v));
        if other_vars_absent(p) && other_vars_absent(q) {
            let up = as_univariate(p, var).unwrap();
            let uq = as_univariate(q, var).unwrap();
            return up.gcd(&uq).to_poly(n, var);
        }
    }
    // Pick a main variable in which both have positive degree; if none,
    // reduce the side free of it to its content.
    let main = (0..n).find(|&v| present(p, v) && present(q, v));
    match main {
        None => {
            // Each variable misses one side; split off contents until the
            // univariate case above applies.
            let v = (0..n).find(|&v| present(p, v)).unwrap();
            // q is free of v, so gcd(p, q) = gcd(content_v(p), q).
            let cp = content_in(p, v);
            gcd(&cp, q)
        }
        Some(v) => {
            let cp = content_in(p, v);
            let cq = content_in(q, v);
            let pp = exact_div(p, &cp).expect("content divides");
            let qq = exact_div(q, &cq).expect("content divides");
            let d = subresultant_gcd(&pp, &qq, v);
            let c = gcd(&cp, &cq);
            (&c * &d).monic()
        }
    }
}

/// Greatest common divisor over `Q(i)` in at most two variables,
/// monic-normalized in graded-lex order.
pub fn gcd_bivariate(p: &HoloPoly, q: &HoloPoly) -> Result<HoloPoly, PolyError> {
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    if p.num_vars() > 2 || q.num_vars() > 2 {
        return Err(PolyError::TooManyVars {
            supported: 2,
            got: p.num_vars().max(q.num_vars()),
        });
    }
    if p.num_vars() != q.num_vars() {
        return Err(PolyError::VarMismatch {
            left: p.num_vars(),
            right: q.num_vars(),
        });
    }
    Ok(gcd(p, q))
}

/// Product of the distinct irreducible factors of `p`, monic.
///
/// Characteristic zero: `p / gcd(p, dp/dz1, dp/dz2)` strips repeated
/// factors exactly.
pub fn square_free_part(p: &HoloPoly) -> Result<HoloPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput("square_free_part"));
    }
    if p.num_vars() > 2 {
        return Err(PolyError::TooManyVars {
            supported: 2,
            got: p.num_vars(),
        });
    }
    if p.is_constant() {
        return Ok(HoloPoly::one(p.num_vars()));
    }
    let mut g = HoloPoly::zero(p.num_vars());
    for v in 0..p.num_vars() {
        let d = p.partial(v);
        if !d.is_zero() {
            let gv = gcd(p, &d);
            g = if g.is_zero() { gv } else { gcd(&g, &gv) };
        }
    }
    if g.is_zero() || g.is_constant() {
        return Ok(p.monic());
    }
    Ok(exact_div(p, &g)
        .expect("gcd divides the polynomial")
        .monic())
}

/// Sylvester resultant of `p` and `q` eliminating `var`.
///
/// Conventions for degenerate inputs: if both are constant in `var` the
/// resultant is 1; if exactly one is, the result is that input raised to
/// the other's degree. A zero input yields the zero polynomial.
pub fn resultant_eliminate(p: &HoloPoly, q: &HoloPoly, var: usize) -> Result<HoloPoly, PolyError> {
    let n = p.num_vars();
    if n > 2 {
        return Err(PolyError::TooManyVars {
            supported: 2,
            got: n,
        });
    }
    if p.num_vars() != q.num_vars() {
        return Err(PolyError::VarMismatch {
            left: p.num_vars(),
            right: q.num_vars(),
        });
    }
    if var >= n {
        return Err(PolyError::VarIndex {
            index: var,
            num_vars: n,
        });
    }
    if p.is_zero() || q.is_zero() {
        return Ok(HoloPoly::zero(n));
    }
    let dp = p.degree_in(var) as usize;
    let dq = q.degree_in(var) as usize;
    if dp == 0 && dq == 0 {
        return Ok(HoloPoly::one(n));
    }
    if dp == 0 {
        return Ok(p.pow(dq as u32));
    }
    if dq == 0 {
        return Ok(q.pow(dp as u32));
    }
    let pc = coeffs_in_var(p, var);
    let qc = coeffs_in_var(q, var);
    let size = dp + dq;
    let zero = HoloPoly::zero(n);
    let mut m = vec![vec![zero.clone(); size]; size];
    for row in 0..dq {
        for (k, c) in pc.iter().enumerate() {
            // descending order: column row+j holds coeff of z^(dp-j)
            m[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in qc.iter().enumerate() {
            m[dq + row][row + dq - k] = c.clone();
        }
    }
    Ok(bareiss_determinant(m))
}

/// Fraction-free Gaussian elimination (Bareiss) for determinants of
/// polynomial matrices; all divisions are exact.
fn bareiss_determinant(mut m: Vec<Vec<HoloPoly>>) -> HoloPoly {
    let n = m.len();
    if n == 0 {
        return HoloPoly::one(0);
    }
    let vars = m[0][0].num_vars();
    let mut sign = false;
    let mut prev = HoloPoly::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return HoloPoly::zero(vars),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &pivot) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = HoloPoly::zero(vars);
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Refines a square-free polynomial into pairwise coprime monic factors.
///
/// Splitting uses content/primitive-part separation in each variable plus
/// GCDs against the supplied hint polynomials. Factors of a square-free
/// polynomial produced by exact splits are automatically coprime. The
/// result is sorted by (degree, canonical text) for determinism.
pub fn coprime_square_free_factors(p: &HoloPoly, hints: &[HoloPoly]) -> Vec<HoloPoly> {
    let mut factors = vec![p.monic()];
    let mut changed = true;
    while changed {
        changed = false;
        let mut next: Vec<HoloPoly> = Vec::new();
        for f in factors.drain(..) {
            if f.is_constant() {
                continue;
            }
            let mut split = None;
            for v in 0..f.num_vars() {
                if f.degree_in(v) == 0 {
                    continue;
                }
                let cont = content_in(&f, v);
                if !cont.is_constant() {
                    let pp = exact_div(&f, &cont).expect("content divides");
                    if !pp.is_constant() {
                        split = Some((cont.monic(), pp.monic()));
                        break;
                    }
                }
            }
            if split.is_none() {
                for h in hints {
                    if h.is_zero() {
                        continue;
                    }
                    let d = gcd(&f, h);
                    if !d.is_constant() && d.monic() != f.monic() {
                        let co = exact_div(&f, &d).expect("gcd divides");
                        if !co.is_constant() {
                            split = Some((d.monic(), co.monic()));
                            break;
                        }
                    }
                }
            }
            match split {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                    changed = true;
                }
                None => next.push(f),
            }
        }
        factors = next;
    }
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    factors.dedup();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: usize) -> HoloPoly {
        HoloPoly::var(2, v)
    }

    #[test]
    fn divides_examples() {
        let z1 = z(0);
        let z2 = z(1);
        assert!(divides(&z1, &(&z1 * &z2)));
        assert!(!divides(&z1, &z2));
        let diff = &z1 - &z2;
        let dos = &(&z1 * &z1) - &(&z2 * &z2);
        assert!(divides(&diff, &dos));
        // quotient check
        let q = exact_div(&dos, &diff).unwrap();
        assert_eq!(q, &z1 + &z2);
    }

    #[test]
    fn gcd_monomials() {
        let g = gcd_bivariate(&(&z(0) * &z(1)), &z(0)).unwrap();
        assert_eq!(g, z(0));
    }

    #[test]
    fn gcd_difference_of_squares() {
        let p = &(&z(0) * &z(0)) - &(&z(1) * &z(1));
        let q = &z(0) - &z(1);
        let g = gcd_bivariate(&p, &q).unwrap();
        assert_eq!(g, q.monic());
        // independent oracle: the gcd divides both arguments exactly
        assert!(divides(&g, &p));
        assert!(divides(&g, &q));
    }

    #[test]
    fn gcd_of_coprime_lines_is_one() {
        let p = &z(0) + &HoloPoly::one(2);
        let q = &z(1) + &HoloPoly::one(2);
        let g = gcd_bivariate(&p, &q).unwrap();
        assert_eq!(g, HoloPoly::one(2));
        // oracle: resultant in z1 of the two inputs is a nonzero polynomial
        let r = resultant_eliminate(&p, &q, 0).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        let zp = HoloPoly::zero(2);
        assert!(matches!(
            gcd_bivariate(&zp, &zp),
            Err(PolyError::GcdOfZeros)
        ));
        assert_eq!(gcd_bivariate(&zp, &z(0)).unwrap(), z(0));
    }

    #[test]
    fn square_free_examples() {
        // z1^2 -> z1
        let sq = &z(0) * &z(0);
        assert_eq!(square_free_part(&sq).unwrap(), z(0));
        // (z1-z2)^3 (z1+z2) -> (z1-z2)(z1+z2); verified by exact division
        let a = &z(0) - &z(1);
        let b = &z(0) + &z(1);
        let p = &(&(&a * &a) * &a) * &b;
        assert_eq!(p.degree(), Some(4));
        let sf = square_free_part(&p).unwrap();
        let expected = (&a * &b).monic();
        assert_eq!(sf, expected);
        assert!(divides(&sf, &p));
        // irreducible stays put (up to normalization)
        let irr = &(&z(0) + &z(1)) + &HoloPoly::one(2);
        assert_eq!(square_free_part(&irr).unwrap(), irr.monic());
        assert!(matches!(
            square_free_part(&HoloPoly::zero(2)),
            Err(PolyError::ZeroInput(_))
        ));
    }

    #[test]
    fn square_free_output_coprime_with_derivative_gcd() {
        let a = &z(0) - &z(1);
        let b = &z(0) + &z(1);
        let p = &(&a * &a) * &b;
        let sf = square_free_part(&p).unwrap();
        let d = gcd(&sf.partial(0), &sf.partial(1));
        let g = gcd(&sf, &d);
        assert!(g.is_constant());
    }

    #[test]
    fn resultant_examples() {
        // res_z2(z2 - z1, z2 + z1): Sylvester [[1, -z1], [1, z1]], det 2 z1.
        let p = &z(1) - &z(0);
        let q = &z(1) + &z(0);
        let r = resultant_eliminate(&p, &q, 1).unwrap();
        assert_eq!(r, z(0).scale(&GaussianRational::from_integer(2)));
        // no common zero: nonzero constant
        let r2 = resultant_eliminate(&z(1), &(&z(1) - &HoloPoly::one(2)), 1).unwrap();
        assert_eq!(r2, HoloPoly::one(2).scale(&GaussianRational::from_integer(-1)));
        assert!(r2.is_constant() && !r2.is_zero());
        // shared factor: zero
        let s = &(&z(1) * &z(1)) + &z(0);
        assert!(resultant_eliminate(&s, &s, 1).unwrap().is_zero());
        // degenerate: constant in the eliminated variable
        let c = &z(0) + &HoloPoly::one(2);
        let r3 = resultant_eliminate(&c, &(&z(1) * &z(1)), 1).unwrap();
        assert_eq!(r3, &c * &c);
    }

    #[test]
    fn coprime_factor_refinement() {
        let p = &z(0) * &z(1);
        let f = coprime_square_free_factors(&p, &[]);
        assert_eq!(f, vec![z(0), z(1)]);
        let line = &(&z(0) - &z(1)) * &(&z(0) + &z(1));
        let hints = [&z(0) - &z(1)];
        let f2 = coprime_square_free_factors(&line, &hints.map(|h| h.clone()));
        assert_eq!(f2.len(), 2);
        for fi in &f2 {
            assert!(divides(fi, &line));
        }
    }
}
