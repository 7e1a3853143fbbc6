//! Sparse polynomials in the perturbation symbols.
//!
//! Used to expand predicates that are not plain determinants (the attachment
//! tests) once their unperturbed value vanishes, and by tests as the slow
//! reference for the determinant term schedules. Terms iterate in expansion
//! order (largest infinitesimal first). Coefficients that cancel to zero are
//! kept so that term positions depend only on the expression, not the data.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::sos::{Monomial, Symbol};
use super::{ExactPoint, KernelError, Polarity, Sign};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: ExactScalar> Poly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), c);
        Self { terms }
    }

    /// `value + ε(symbol)`.
    pub fn perturbed(value: T, symbol: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), value);
        terms.insert(Monomial::symbol(symbol), T::one());
        Self { terms }
    }

    /// Minor-notation entry of `p` in column `j` (0 = constant 1, 4 = lifted),
    /// perturbed for `j >= 1`.
    pub fn entry(p: &ExactPoint<T>, j: usize) -> Self {
        if j == 0 {
            Self::constant(T::one())
        } else {
            Self::perturbed(p.coord(j), Symbol::new(p.index(), j as u8))
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&T> {
        self.terms.get(m)
    }

    /// Unperturbed value.
    pub fn constant_term(&self) -> T {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(T::zero)
    }

    /// Sign of the first nonvanishing term and its position.
    pub fn sign(&self) -> Result<Sign, KernelError> {
        for (depth, c) in self.terms.values().enumerate() {
            if let Some(value) = Polarity::of(c) {
                return Ok(Sign { value, depth: depth as u32 });
            }
        }
        Err(KernelError::ScheduleExhausted)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect() }
    }

    fn accumulate(&mut self, m: Monomial, c: T) {
        match self.terms.get_mut(&m) {
            Some(v) => *v = v.clone() + c,
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Determinant of a square matrix of polynomials by cofactor expansion.
    pub fn det(m: &[Vec<Poly<T>>]) -> Self {
        let n = m.len();
        let cols: Vec<usize> = (0..n).collect();
        Self::expand(m, 0, &cols)
    }

    fn expand(m: &[Vec<Poly<T>>], row: usize, cols: &[usize]) -> Self {
        if cols.len() == 1 {
            return m[row][cols[0]].clone();
        }
        let mut acc = Self::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[row][c] * &Self::expand(m, row + 1, &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
}

impl<T: ExactScalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(mut self, rhs: Poly<T>) -> Poly<T> {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl<T: ExactScalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: ExactScalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<T: ExactScalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Perturbed minor `M^{rows}_{cols}` in the minor notation.
pub fn minor<T: ExactScalar>(rows: &[&ExactPoint<T>], cols: &[usize]) -> Poly<T> {
    let m: Vec<Vec<Poly<T>>> = rows.iter().map(|p| cols.iter().map(|&j| Poly::entry(p, j)).collect()).collect();
    Poly::det(&m)
}
