//! Sparse multivariate polynomials with Gaussian-rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by monomials under graded-lex
//! order with `z1 > z2 > ...`, so the leading term is the last map entry
//! and printed forms are canonical. Zero coefficients are never stored.

use super::gaussian::GaussianRational;
use super::PolyError;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent tuple under graded-lex order: total degree first, then
/// lexicographic comparison with the first variable strongest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the Gaussian rationals.
///
/// Arithmetic between polynomials with different variable counts is a
/// programming error and panics; the checked entry point is
/// [`poly_arith`].
#[derive(Clone, PartialEq, Eq)]
pub struct HoloPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Ring operation selector for the checked arithmetic entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; rejects mismatched variable counts.
pub fn poly_arith(a: &HoloPoly, b: &HoloPoly, op: RingOp) -> Result<HoloPoly, PolyError> {
    if a.num_vars != b.num_vars {
        return Err(PolyError::VarMismatch {
            left: a.num_vars,
            right: b.num_vars,
        });
    }
    Ok(match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    })
}

/// Formal derivative with a checked variable index.
pub fn wirtinger_derivative(p: &HoloPoly, var: usize) -> Result<HoloPoly, PolyError> {
    if var >= p.num_vars {
        return Err(PolyError::VarIndex {
            index: var,
            num_vars: p.num_vars,
        });
    }
    Ok(p.partial(var))
}

impl HoloPoly {
    pub fn zero(num_vars: usize) -> Self {
        HoloPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: GaussianRational) -> Self {
        let mut p = HoloPoly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, GaussianRational::one())
    }

    pub fn from_int(num_vars: usize, n: i64) -> Self {
        Self::constant(num_vars, GaussianRational::from_integer(n))
    }

    /// The coordinate function `z_{var+1}`.
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        let mut p = HoloPoly::zero(num_vars);
        p.terms.insert(Monomial::new(exps), GaussianRational::one());
        p
    }

    pub fn monomial(num_vars: usize, exps: Vec<u32>, coeff: GaussianRational) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = HoloPoly::zero(num_vars);
        if !coeff.is_zero() {
            p.terms.insert(Monomial::new(exps), coeff);
        }
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    ) -> Self {
        let mut p = HoloPoly::zero(num_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), num_vars);
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::unit(self.num_vars))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Total degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in graded-lex order; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> HoloPoly {
        if c.is_zero() {
            return HoloPoly::zero(self.num_vars);
        }
        HoloPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Multiplies by `c * z^exps`.
    pub fn mul_term(&self, exps: &Monomial, c: &GaussianRational) -> HoloPoly {
        if c.is_zero() {
            return HoloPoly::zero(self.num_vars);
        }
        HoloPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(exps), a.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HoloPoly {
        let mut acc = HoloPoly::one(self.num_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monic normalization: leading coefficient scaled to one.
    pub fn monic(&self) -> HoloPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv();
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative; panics on an out-of-range index.
    pub fn partial(&self, var: usize) -> HoloPoly {
        assert!(var < self.num_vars, "variable index out of range");
        let mut out = HoloPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = e - 1;
            let factor = GaussianRational::from_integer(e as i64);
            out.add_term(Monomial::new(exps), c.mul(&factor));
        }
        out
    }

    /// Numeric evaluation after lowering coefficients to doubles.
    /// Precomputes coordinate powers so each term costs two multiplies.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.num_vars, "point length mismatch");
        let max_deg: Vec<u32> = (0..self.num_vars).map(|v| self.degree_in(v)).collect();
        let powers: Vec<Vec<Complex64>> = point
            .iter()
            .zip(&max_deg)
            .map(|(z, &d)| {
                let mut pows = Vec::with_capacity(d as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                pows.push(acc);
                for _ in 0..d {
                    acc *= z;
                    pows.push(acc);
                }
                pows
            })
            .collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (v, &e) in m.exponents().iter().enumerate() {
                t *= powers[v][e as usize];
            }
            sum += t;
        }
        sum
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval_exact(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.num_vars, "point length mismatch");
        let mut sum = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            sum += &t;
        }
        sum
    }

    /// Terms lowered to doubles, for repeated numeric work.
    pub fn lowered(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.exponents().to_vec(), c.to_complex()))
            .collect()
    }

    /// Sum of coefficient magnitudes, a cheap scale estimate for
    /// numeric tolerance decisions.
    pub fn coeff_scale(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_complex().norm())
            .sum::<f64>()
            .max(1.0)
    }
}

impl Add for &HoloPoly {
    type Output = HoloPoly;
    fn add(self, rhs: &HoloPoly) -> HoloPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HoloPoly {
    type Output = HoloPoly;
    fn sub(self, rhs: &HoloPoly) -> HoloPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &HoloPoly {
    type Output = HoloPoly;
    fn mul(self, rhs: &HoloPoly) -> HoloPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = HoloPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
}

impl Neg for &HoloPoly {
    type Output = HoloPoly;
    fn neg(self) -> HoloPoly {
        HoloPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for HoloPoly {
    /// Canonical text form: terms in descending graded-lex order, each as
    /// `(<re>/<den>,<im>/<den>) z1^a z2^b`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    write!(f, " z{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: usize) -> HoloPoly {
        HoloPoly::var(2, v)
    }

    #[test]
    fn graded_lex_order() {
        // z1^2 > z1 z2 > z2^2 > z1 > z2 > 1
        let m = |a, b| Monomial::new(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 2) > m(1, 0));
        assert!(m(1, 0) > m(0, 1));
        assert!(m(0, 1) > m(0, 0));
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &z(0) + &(-&z(0));
        assert!(p.is_zero());
        let r = poly_arith(&z(0), &(-&z(0)), RingOp::Add).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let sum = &z(0) + &z(1);
        let diff = &z(0) - &z(1);
        let prod = poly_arith(&sum, &diff, RingOp::Mul).unwrap();
        let expected = &(&z(0) * &z(0)) - &(&z(1) * &z(1));
        assert_eq!(prod, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let p = HoloPoly::from_terms(
            2,
            vec![
                (vec![2, 1], GaussianRational::from_integers(3, -1)),
                (vec![0, 0], GaussianRational::from_ratios(1, 2, 0, 1)),
            ],
        );
        let one = HoloPoly::one(2);
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn var_count_mismatch_is_an_error() {
        let p = HoloPoly::var(2, 0);
        let q = HoloPoly::var(1, 0);
        assert!(matches!(
            poly_arith(&p, &q, RingOp::Add),
            Err(PolyError::VarMismatch { .. })
        ));
    }

    #[test]
    fn wirtinger_examples() {
        // d(z1^2 z2)/dz1 = 2 z1 z2
        let p = &(&z(0) * &z(0)) * &z(1);
        let d = wirtinger_derivative(&p, 0).unwrap();
        let expected = (&z(0) * &z(1)).scale(&GaussianRational::from_integer(2));
        assert_eq!(d, expected);
        // d(const)/dz1 = 0
        assert!(wirtinger_derivative(&HoloPoly::from_int(2, 7), 0)
            .unwrap()
            .is_zero());
        // d(z1 z2)/dz2 = z1
        let q = &z(0) * &z(1);
        assert_eq!(wirtinger_derivative(&q, 1).unwrap(), z(0));
        assert!(matches!(
            wirtinger_derivative(&q, 2),
            Err(PolyError::VarIndex { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let c = |re, im| Complex64::new(re, im);
        // (z1^2 - z2) at (2, 1) = 3
        let p = &(&z(0) * &z(0)) - &z(1);
        assert!((p.eval(&[c(2.0, 0.0), c(1.0, 0.0)]) - c(3.0, 0.0)).norm() < 1e-14);
        // p at 0 = constant term
        let q = HoloPoly::from_terms(
            2,
            vec![
                (vec![1, 1], GaussianRational::from_integers(5, 2)),
                (vec![0, 0], GaussianRational::from_ratios(-3, 4, 1, 2)),
            ],
        );
        let v = q.eval(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((v - q.constant_term().to_complex()).norm() < 1e-15);
        // (z1 z2) at (i, i) = -1
        let r = &z(0) * &z(1);
        assert!((r.eval(&[c(0.0, 1.0), c(0.0, 1.0)]) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn monic_scales_leading_coefficient() {
        let p = (&z(0) * &z(1)).scale(&GaussianRational::from_integers(4, 0));
        let m = p.monic();
        assert_eq!(m, &z(0) * &z(1));
    }
}
