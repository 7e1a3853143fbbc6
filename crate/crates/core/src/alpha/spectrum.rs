use num_rational::Ratio;
use num_traits::{Float, One, Zero};

use super::{AlphaError, IntervalRecord, Positions, Records};
use crate::kernel::{RadiusSq, Threshold};
use crate::scalar::ExactScalar;

/// Sorted distinct squared alpha thresholds with the sentinels 0 and infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: ExactScalar> {
    entries: Vec<Threshold<T>>,
    alpha: Vec<f64>,
}

/// The spectrum of a set of records: the squared radii of all unattached
/// edges, triangles and tetrahedra.
pub fn spectrum<T: ExactScalar>(records: &Records<T>) -> Spectrum<T> {
    let mut radii: Vec<&RadiusSq<T>> = records
        .iter()
        .filter(|r| r.dim() > 0 && !r.attached)
        .filter_map(|r| r.rho_sq.as_ref())
        .collect();
    radii.sort_unstable();
    radii.dedup();
    Spectrum::from_sorted(radii.into_iter().cloned().collect())
}

impl<T: ExactScalar> Spectrum<T> {
    /// `thresholds` must be strictly increasing and positive.
    pub fn from_sorted(thresholds: Vec<RadiusSq<T>>) -> Self {
        assert!(thresholds.windows(2).all(|w| w[0] < w[1]), "thresholds must be strictly increasing");
        assert!(thresholds.first().map_or(true, |t| *t > RadiusSq::zero()), "thresholds must be positive");
        let mut entries = Vec::with_capacity(thresholds.len() + 2);
        entries.push(Threshold::Finite(RadiusSq::zero()));
        entries.extend(thresholds.into_iter().map(Threshold::Finite));
        entries.push(Threshold::Infinite);
        let alpha = entries.iter().map(|e| e.to_f64().sqrt()).collect();
        Self { entries, alpha }
    }

    /// All entries, sentinels included.
    pub fn entries(&self) -> &[Threshold<T>] {
        &self.entries
    }

    /// The thresholds without the sentinels.
    pub fn thresholds(&self) -> impl Iterator<Item = &RadiusSq<T>> {
        self.entries[1..self.entries.len() - 1].iter().filter_map(Threshold::finite)
    }

    /// Float alpha (not squared) of every entry.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of open intervals between consecutive entries.
    pub fn intervals(&self) -> usize {
        self.entries.len() - 1
    }

    /// Entry index of a value, if present.
    pub fn position(&self, t: &Threshold<T>) -> Option<usize> {
        self.entries.binary_search(t).ok()
    }

    pub(crate) fn positions(&self, r: &IntervalRecord<T>) -> Option<Positions> {
        let rho = match (&r.rho_sq, r.dim(), r.attached) {
            (Some(rho), 1..=3, false) => Some(self.position(&Threshold::Finite(rho.clone()))?),
            _ => None,
        };
        Some(Positions {
            rho,
            mu_lo: self.position(&Threshold::Finite(r.mu_lo_sq.clone()))?,
            mu_hi: self.position(&r.mu_hi_sq)?,
        })
    }

    /// Validates an interval index. The entry index of the infinity sentinel
    /// is accepted as alpha equal to infinity, which lies in the last
    /// interval.
    pub fn check_index(&self, i: usize) -> Result<usize, AlphaError> {
        if i < self.intervals() {
            Ok(i)
        } else if i == self.intervals() {
            Ok(i - 1)
        } else {
            Err(AlphaError::IndexOutOfRange { index: i, intervals: self.intervals() })
        }
    }

    /// Interval containing an exact squared alpha. Zero falls in the first
    /// interval; a value equal to a threshold is rejected.
    pub fn locate(&self, alpha_sq: &Ratio<T>) -> Result<usize, AlphaError> {
        if *alpha_sq < Ratio::zero() {
            return Err(AlphaError::BadAlpha(alpha_sq.to_string()));
        }
        if alpha_sq.is_zero() {
            return Ok(0);
        }
        let t = Threshold::Finite(RadiusSq::new(alpha_sq.numer().clone(), alpha_sq.denom().clone()));
        match self.entries.binary_search(&t) {
            Ok(entry) => Err(AlphaError::OnThreshold { entry }),
            Err(insert) => Ok(insert - 1),
        }
    }

    /// Interval containing a float alpha, compared exactly after squaring.
    /// Infinity falls in the last interval.
    pub fn locate_f64(&self, alpha: f64) -> Result<usize, AlphaError> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(AlphaError::BadAlpha(alpha.to_string()));
        }
        if alpha.is_infinite() {
            return Ok(self.intervals() - 1);
        }
        let exact = exact_square::<T>(alpha).ok_or_else(|| AlphaError::BadAlpha(alpha.to_string()))?;
        self.locate(&exact)
    }

    /// An exact squared alpha strictly inside interval `i`.
    pub fn representative(&self, i: usize) -> Ratio<T> {
        let two = Ratio::from_integer(T::one() + T::one());
        let lo = self.entries[i].finite().expect("interval starts at a finite entry").ratio().clone();
        match &self.entries[i + 1] {
            Threshold::Finite(hi) => (lo + hi.ratio().clone()) / two,
            Threshold::Infinite => lo * two + Ratio::one(),
        }
    }
}

/// The exact square of a finite non-negative float, if it fits `T`.
fn exact_square<T: ExactScalar>(x: f64) -> Option<Ratio<T>> {
    let (mantissa, exponent, _) = x.integer_decode();
    let m = T::from_u64(mantissa)?;
    let mut pow = T::one();
    let two = T::one() + T::one();
    for _ in 0..(2 * exponent as i32).unsigned_abs() {
        pow = pow * two.clone();
    }
    let sq = m.clone() * m;
    Some(if exponent >= 0 { Ratio::from_integer(sq * pow) } else { Ratio::new(sq, pow) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn spec(values: &[(i64, i64)]) -> Spectrum<BigInt> {
        Spectrum::from_sorted(values.iter().map(|&(n, d)| RadiusSq::new(BigInt::from(n), BigInt::from(d))).collect())
    }

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sentinels_bracket_thresholds() {
        let s = spec(&[(17, 4), (9, 1)]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.intervals(), 3);
        assert_eq!(s.alpha()[0], 0.0);
        assert_eq!(s.alpha()[3], f64::INFINITY);
        assert!((s.alpha()[1] - 17f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(s.thresholds().count(), 2);
    }

    #[test]
    fn locate_rejects_thresholds() {
        let s = spec(&[(17, 4), (9, 1)]);
        assert_eq!(s.locate(&q(0, 1)), Ok(0));
        assert_eq!(s.locate(&q(4, 1)), Ok(0));
        assert_eq!(s.locate(&q(17, 4)), Err(AlphaError::OnThreshold { entry: 1 }));
        assert_eq!(s.locate(&q(5, 1)), Ok(1));
        assert_eq!(s.locate(&q(1000, 1)), Ok(2));
        assert!(matches!(s.locate(&q(-1, 1)), Err(AlphaError::BadAlpha(_))));
    }

    #[test]
    fn float_alpha_is_squared_exactly() {
        let s = spec(&[(9, 4), (9, 1)]);
        assert_eq!(s.locate_f64(1.5), Err(AlphaError::OnThreshold { entry: 1 }));
        assert_eq!(s.locate_f64(3.0), Err(AlphaError::OnThreshold { entry: 2 }));
        assert_eq!(s.locate_f64(2.0), Ok(1));
        assert_eq!(s.locate_f64(0.1), Ok(0));
        assert_eq!(s.locate_f64(f64::INFINITY), Ok(2));
        assert!(s.locate_f64(f64::NAN).is_err());
    }

    #[test]
    fn representatives_fall_inside() {
        let s = spec(&[(17, 4), (9, 1)]);
        for i in 0..s.intervals() {
            assert_eq!(s.locate(&s.representative(i)), Ok(i));
        }
    }

    #[test]
    fn index_range() {
        let s = spec(&[(1, 1)]);
        assert_eq!(s.check_index(1), Ok(1));
        assert_eq!(s.check_index(2), Ok(1));
        assert_eq!(s.check_index(3), Err(AlphaError::IndexOutOfRange { index: 3, intervals: 2 }));
    }
}
