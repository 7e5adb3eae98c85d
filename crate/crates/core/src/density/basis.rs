//! Monomial bases in the coordinates and the generator functions.

use super::DensityError;
use crate::pluriharmonic::PluriharmonicFn;
use crate::polyalg::HoloPoly;
use num_complex::Complex64;

/// One basis symbol: a coordinate function or a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Coord(usize),
    Generator(usize),
}

/// All monomials of total degree at most `degree` in the coordinates and
/// the (non-redundant) generators.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    n: usize,
    gens: Vec<PluriharmonicFn>,
    symbols: Vec<SymbolKind>,
    monomials: Vec<Vec<u32>>,
    degree: u32,
}

/// Builds the monomial basis; generators that coincide with a coordinate
/// polynomial are dropped symbolically. Fails when the basis would
/// exceed `cap` elements.
pub fn generator_basis(
    n: usize,
    gens: &[PluriharmonicFn],
    degree: u32,
    cap: usize,
) -> Result<GeneratorBasis, DensityError> {
    let mut symbols: Vec<SymbolKind> = (0..n).map(SymbolKind::Coord).collect();
    for (j, h) in gens.iter().enumerate() {
        if !is_coordinate_duplicate(h, n) {
            symbols.push(SymbolKind::Generator(j));
        }
    }
    let s = symbols.len();
    let size = binomial(s as u64 + degree as u64, s as u64);
    if size > cap as u64 {
        return Err(DensityError::BasisTooLarge {
            size: size as usize,
            cap,
        });
    }
    let mut monomials = Vec::with_capacity(size as usize);
    let mut current = vec![0u32; s];
    enumerate(&mut current, 0, degree, &mut monomials);
    // deterministic order: total degree, then exponent vector
    monomials.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(GeneratorBasis {
        n,
        gens: gens.to_vec(),
        symbols,
        monomials,
        degree,
    })
}

fn is_coordinate_duplicate(h: &PluriharmonicFn, n: usize) -> bool {
    if !h.g().is_constant() {
        return false;
    }
    (0..n).any(|k| {
        let diff = &h.f().clone() - &HoloPoly::var(n, k);
        diff.is_constant()
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn enumerate(current: &mut Vec<u32>, from: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
    if from == current.len() {
        out.push(current.clone());
        return;
    }
    for e in 0..=budget {
        current[from] = e;
        enumerate(current, from + 1, budget - e, out);
    }
    current[from] = 0;
}

impl GeneratorBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[SymbolKind] {
        &self.symbols
    }

    /// Values of all basis monomials at `point`, written into `out`.
    pub fn eval_into(&self, point: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(point.len(), self.n);
        assert_eq!(out.len(), self.monomials.len());
        let values: Vec<Complex64> = self
            .symbols
            .iter()
            .map(|s| match s {
                SymbolKind::Coord(k) => point[*k],
                SymbolKind::Generator(j) => self.gens[*j].eval(point),
            })
            .collect();
        // power tables per symbol
        let powers: Vec<Vec<Complex64>> = values
            .iter()
            .map(|v| {
                let mut p = Vec::with_capacity(self.degree as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                p.push(acc);
                for _ in 0..self.degree {
                    acc *= v;
                    p.push(acc);
                }
                p
            })
            .collect();
        for (m, slot) in self.monomials.iter().zip(out.iter_mut()) {
            let mut t = Complex64::new(1.0, 0.0);
            for (s, &e) in m.iter().enumerate() {
                t *= powers[s][e as usize];
            }
            *slot = t;
        }
    }

    pub fn eval(&self, point: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        self.eval_into(point, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn pure_polynomial_basis_in_one_variable() {
        let b = generator_basis(1, &[], 2, 5000).unwrap();
        assert_eq!(b.len(), 3); // 1, z, z^2
    }

    #[test]
    fn one_generator_linear_basis() {
        let h = PluriharmonicFn::real_part(parse_poly("z1 z2", 2).unwrap());
        let b = generator_basis(2, &[h], 1, 5000).unwrap();
        assert_eq!(b.len(), 4); // 1, z1, z2, h
    }

    #[test]
    fn quadratic_basis_with_one_generator() {
        let h = PluriharmonicFn::real_part(parse_poly("z1", 2).unwrap());
        let b = generator_basis(2, &[h], 2, 5000).unwrap();
        // multisets of size <= 2 from 3 symbols; Re z1 is not a
        // coordinate polynomial, so no deduplication
        assert_eq!(b.len(), 10);
    }

    #[test]
    fn coordinate_duplicates_are_dropped() {
        let dup = PluriharmonicFn::new(HoloPoly::zero(2), parse_poly("z2", 2).unwrap());
        let b = generator_basis(2, &[dup], 3, 5000).unwrap();
        assert_eq!(b.num_symbols(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let h = PluriharmonicFn::real_part(parse_poly("z1", 2).unwrap());
        assert!(matches!(
            generator_basis(2, &[h], 40, 500),
            Err(DensityError::BasisTooLarge { .. })
        ));
    }

    #[test]
    fn evaluation_matches_direct_products() {
        let h = PluriharmonicFn::real_part(parse_poly("z1 z2", 2).unwrap());
        let b = generator_basis(2, &[h.clone()], 2, 5000).unwrap();
        let pt = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
        let vals = b.eval(&pt);
        let hv = h.eval(&pt);
        // the basis contains h^2 exactly once
        let target = hv * hv;
        assert!(vals.iter().any(|v| (v - target).norm() < 1e-14));
        assert!((vals[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
