//! Exact arithmetic and symbolically perturbed geometric predicates.
//!
//! Points carry exact integer coordinates. Each coordinate `π(i, j)` is
//! treated as `π(i, j) + ε(i, j)` for an infinitesimal `ε(i, j)` whose
//! magnitude decreases with the point label `i` and, within a point, increases
//! with the coordinate number `j`. Every predicate therefore has a nonzero
//! sign, and the sign agrees with the unperturbed value whenever that value is
//! nonzero. See [`sos`] for the term ordering.

mod det;
pub mod poly;
mod predicates;
mod radius;
pub mod sos;
mod stats;

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::ExactScalar;

pub use det::OpCount;
pub use predicates::{edge_attached_poly, triangle_attached_poly};
pub use stats::{KernelCounters, KernelStats, PredicateKind, DEPTH_BUCKETS};

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("predicate called with repeated point label {0}")]
    DuplicateIndex(u32),
    #[error("degenerate {0}: the simplex has no unique circumsphere")]
    DegenerateSimplex(&'static str),
    #[error("perturbation schedule exhausted without a nonzero coefficient")]
    ScheduleExhausted,
}

/// A point with exact integer coordinates and a 1-based label.
///
/// The label doubles as the perturbation index: smaller labels are perturbed
/// by larger infinitesimals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactPoint<T> {
    index: u32,
    coords: [T; 3],
    lifted: T,
    small: Option<[i64; 3]>,
}

/// Points whose coordinates are all below `2^SMALL_BITS` in absolute value
/// have every unperturbed orientation and sphere determinant below `2^126`,
/// so those are evaluated in `i128`.
pub(crate) const SMALL_BITS: u32 = 23;

impl<T: ExactScalar> ExactPoint<T> {
    /// Panics if `index` is zero; label 0 is reserved for the vertex at infinity.
    pub fn new(index: u32, coords: [T; 3]) -> Self {
        assert!(index > 0, "point labels are 1-based");
        let lifted = coords.iter().fold(T::zero(), |acc, c| acc + c.clone() * c.clone());
        let bound = 1i64 << SMALL_BITS;
        let small = coords
            .iter()
            .map(|c| c.to_i64().filter(|v| v.abs() < bound))
            .collect::<Option<Vec<i64>>>()
            .map(|v| [v[0], v[1], v[2]]);
        Self { index, coords, lifted, small }
    }

    pub fn from_i64(index: u32, coords: [i64; 3]) -> Self {
        Self::new(index, coords.map(|c| T::from_i64(c).expect("coordinate fits scalar")))
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub(crate) fn small(&self) -> Option<ExactPoint<i128>> {
        self.small.map(|c| ExactPoint::new(self.index, c.map(i128::from)))
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.coords
    }

    /// Sum of squared coordinates, the fourth coordinate of the lifting map.
    pub fn lifted(&self) -> &T {
        &self.lifted
    }

    /// Coordinate `j` in the minor notation: 0 is the constant 1, 1..=3 are
    /// the spatial coordinates and 4 is the lifted one.
    pub fn coord(&self, j: usize) -> T {
        match j {
            0 => T::one(),
            1..=3 => self.coords[j - 1].clone(),
            4 => self.lifted.clone(),
            _ => panic!("coordinate column {j} out of range"),
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            self.coords[0].to_f64_lossy(),
            self.coords[1].to_f64_lossy(),
            self.coords[2].to_f64_lossy(),
        ]
    }
}

/// Polarity of a perturbed predicate. Never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Positive => Polarity::Negative,
        }
    }

    pub fn times(self, other: Polarity) -> Polarity {
        if self == other {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn of<T: Signed>(value: &T) -> Option<Polarity> {
        if value.is_positive() {
            Some(Polarity::Positive)
        } else if value.is_negative() {
            Some(Polarity::Negative)
        } else {
            None
        }
    }
}

/// Result of a perturbed predicate: its polarity and the index of the first
/// nonvanishing term (0 when the unperturbed value already decides).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sign {
    pub value: Polarity,
    pub depth: u32,
}

impl Sign {
    pub fn is_positive(&self) -> bool {
        self.value == Polarity::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.value == Polarity::Negative
    }
}

/// Exact squared radius of a smallest circumsphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadiusSq<T: ExactScalar>(Ratio<T>);

impl<T: ExactScalar> RadiusSq<T> {
    /// Panics on a zero denominator or a negative value.
    pub fn new(numer: T, denom: T) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let r = Ratio::new(numer, denom);
        assert!(!r.is_negative(), "negative squared radius");
        Self(r)
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn from_integer(v: T) -> Self {
        Self::new(v, T::one())
    }

    pub fn ratio(&self) -> &Ratio<T> {
        &self.0
    }

    pub fn numer(&self) -> &T {
        self.0.numer()
    }

    pub fn denom(&self) -> &T {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    /// Multiply by an exact factor (used for scale checks).
    pub fn scaled(&self, factor: T) -> Self {
        Self(self.0.clone() * Ratio::from_integer(factor))
    }
}

impl<T: ExactScalar> fmt::Display for RadiusSq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A squared radius extended with a top element.
///
/// Variant order gives every finite value below `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Threshold<T: ExactScalar> {
    Finite(RadiusSq<T>),
    Infinite,
}

impl<T: ExactScalar> Threshold<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Threshold::Infinite)
    }

    pub fn finite(&self) -> Option<&RadiusSq<T>> {
        match self {
            Threshold::Finite(r) => Some(r),
            Threshold::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Threshold::Finite(r) => r.to_f64(),
            Threshold::Infinite => f64::INFINITY,
        }
    }
}

impl<T: ExactScalar> From<RadiusSq<T>> for Threshold<T> {
    fn from(r: RadiusSq<T>) -> Self {
        Threshold::Finite(r)
    }
}

impl<T: ExactScalar> fmt::Display for Threshold<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => r.fmt(f),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

/// Nearest-float conversion of an exact rational that survives operands far
/// outside the `f64` range.
pub(crate) fn ratio_to_f64<T: ExactScalar>(r: &Ratio<T>) -> f64 {
    let n = r.numer().to_f64_lossy();
    let d = r.denom().to_f64_lossy();
    if n.is_finite() && d.is_finite() && d != 0.0 {
        return n / d;
    }
    // Fall back to decimal strings and shift exponents by hand.
    let ns = r.numer().to_string();
    let ds = r.denom().to_string();
    let (neg, ns) = match ns.strip_prefix('-') {
        Some(s) => (true, s.to_string()),
        None => (false, ns),
    };
    let lead = |s: &str| -> (f64, i32) {
        let take = s.len().min(17);
        let mant: f64 = s[..take].parse().unwrap_or(0.0);
        (mant, (s.len() - take) as i32)
    };
    let (nm, ne) = lead(&ns);
    let (dm, de) = lead(&ds);
    let v = (nm / dm) * 10f64.powi(ne - de);
    if neg {
        -v
    } else {
        v
    }
}

/// The predicate and radius engine. Holds the running counters; all methods
/// are otherwise pure and take `&self`, so one kernel may be shared across
/// threads.
#[derive(Debug, Default)]
pub struct Kernel {
    stats: KernelStats,
}

impl Kernel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> &KernelStats {
        &self.stats
    }
}

fn distinct(labels: &[u32]) -> Result<(), KernelError> {
    for (i, a) in labels.iter().enumerate() {
        if labels[i + 1..].contains(a) {
            return Err(KernelError::DuplicateIndex(*a));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn lifted_is_sum_of_squares() {
        let p = ExactPoint::<BigInt>::from_i64(3, [2, -3, 5]);
        assert_eq!(*p.lifted(), BigInt::from(38));
        assert_eq!(p.coord(0), BigInt::from(1));
        assert_eq!(p.coord(4), BigInt::from(38));
    }

    #[test]
    fn threshold_order_puts_infinity_last() {
        let a: Threshold<i64> = RadiusSq::new(7, 2).into();
        let b: Threshold<i64> = RadiusSq::new(100, 1).into();
        assert!(a < b);
        assert!(b < Threshold::Infinite);
    }

    #[test]
    fn radius_is_reduced() {
        let r = RadiusSq::new(BigInt::from(6), BigInt::from(8));
        assert_eq!(r.to_string(), "3/4");
    }

    #[test]
    fn huge_ratio_converts() {
        let n: BigInt = (BigInt::from(1) << 2000) + 1;
        let d: BigInt = BigInt::from(3) << 1999;
        let r = Ratio::new(n, d);
        assert!((ratio_to_f64(&r) - 2.0 / 3.0).abs() < 1e-12);
    }
}
