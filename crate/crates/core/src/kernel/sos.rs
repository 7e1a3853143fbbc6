//! Symbolic perturbation: term ordering, determinant term schedules and the
//! first-nonvanishing-coefficient evaluator.
//!
//! The perturbation of coordinate `j` of point `i` is `ε(i, j)`. The symbols
//! are totally ordered by magnitude through the rank `4i - j`: a smaller rank
//! is an infinitely larger infinitesimal, and every symbol is infinitely
//! smaller than any product of larger ones. A monomial is therefore compared
//! with another by looking at the highest-ranked symbol whose exponent differs;
//! the monomial with the smaller exponent there is the larger one and comes
//! first in the expansion. The constant term always comes first.

use std::cmp::Ordering;
use std::sync::OnceLock;

use super::{KernelError, Polarity, Sign};
use crate::scalar::ExactScalar;

/// One perturbation symbol `ε(point, coord)`, `coord` in `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub point: u32,
    pub coord: u8,
}

impl Symbol {
    pub fn new(point: u32, coord: u8) -> Self {
        debug_assert!((1..=4).contains(&coord));
        Self { point, coord }
    }

    /// Larger rank means a smaller infinitesimal.
    pub fn rank(self) -> u64 {
        4 * u64::from(self.point) - u64::from(self.coord)
    }
}

/// A product of perturbation symbols, stored as `(rank, exponent)` pairs with
/// strictly decreasing rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u64, u8)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Self(vec![(s.rank(), 1)])
    }

    /// Builds from raw ranks; repeated ranks multiply.
    pub fn from_ranks(ranks: impl IntoIterator<Item = u64>) -> Self {
        let mut m = Self::one();
        for r in ranks {
            m = m.mul(&Self(vec![(r, 1)]));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// `Less` means "larger in magnitude", i.e. earlier in the expansion.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(ra, ea)), Some(&(rb, eb))) => {
                    if ra != rb {
                        // The side holding the higher rank carries a factor the
                        // other lacks, so it is smaller.
                        return ra.cmp(&rb);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Returns the sign of the first nonzero coefficient in `coefficients`,
/// together with its position. Coefficients are pulled lazily, so callers can
/// pass an iterator that computes each term on demand.
pub fn sos_sign<T, I>(coefficients: I) -> Result<Sign, KernelError>
where
    T: ExactScalar,
    I: IntoIterator<Item = T>,
{
    for (depth, c) in coefficients.into_iter().enumerate() {
        if let Some(value) = Polarity::of(&c) {
            return Ok(Sign { value, depth: depth as u32 });
        }
    }
    Err(KernelError::ScheduleExhausted)
}

/// One term of a perturbed determinant: the rows (by position in label order)
/// whose perturbation is taken, each paired with the perturbed column.
pub type Matching = Vec<(usize, usize)>;

/// Term schedule for a `rows`-row determinant whose first `perturbed` columns
/// carry perturbations and whose remaining columns are constant.
///
/// Row positions refer to the rows sorted by increasing label; column `c`
/// (0-based) is coordinate `c + 1`. The first entry is the empty matching (the
/// unperturbed determinant).
pub fn determinant_schedule(rows: usize, perturbed: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    enumerate_matchings(rows, perturbed, 0, &mut vec![false; perturbed], &mut cur, &mut out);
    let key = |m: &Matching| {
        Monomial::from_ranks(m.iter().map(|&(row, col)| Symbol::new(row as u32 + 1, col as u8 + 1).rank()))
    };
    out.sort_by_cached_key(key);
    out
}

fn enumerate_matchings(
    rows: usize,
    cols: usize,
    row: usize,
    used: &mut Vec<bool>,
    cur: &mut Matching,
    out: &mut Vec<Matching>,
) {
    if row == rows {
        out.push(cur.clone());
        return;
    }
    enumerate_matchings(rows, cols, row + 1, used, cur, out);
    for c in 0..cols {
        if !used[c] {
            used[c] = true;
            cur.push((row, c));
            enumerate_matchings(rows, cols, row + 1, used, cur, out);
            cur.pop();
            used[c] = false;
        }
    }
}

/// Schedule of the 4x4 orientation determinant (columns x, y, z, 1).
pub fn orientation_schedule() -> &'static [Matching] {
    static S: OnceLock<Vec<Matching>> = OnceLock::new();
    S.get_or_init(|| determinant_schedule(4, 3))
}

/// Schedule of the 5x5 lifted determinant (columns x, y, z, |p|², 1).
pub fn lifted_schedule() -> &'static [Matching] {
    static S: OnceLock<Vec<Matching>> = OnceLock::new();
    S.get_or_init(|| determinant_schedule(5, 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_first() {
        let a = Monomial::one();
        let b = Monomial::symbol(Symbol::new(1, 3));
        assert!(a < b);
    }

    #[test]
    fn symbols_within_a_point_order_by_decreasing_coordinate() {
        let z = Monomial::symbol(Symbol::new(2, 3));
        let y = Monomial::symbol(Symbol::new(2, 2));
        let x = Monomial::symbol(Symbol::new(2, 1));
        assert!(z < y && y < x);
    }

    #[test]
    fn later_points_are_infinitely_smaller() {
        // ε(2,3)·ε(1,1) precedes ε(2,2): ε(2,2) is infinitely smaller than
        // both factors of the product.
        let prod = Monomial::symbol(Symbol::new(2, 3)).mul(&Monomial::symbol(Symbol::new(1, 1)));
        let single = Monomial::symbol(Symbol::new(2, 2));
        assert!(prod < single);
        // Any product over point 1 precedes a single point-2 symbol.
        let p1 = Monomial::symbol(Symbol::new(1, 1)).mul(&Monomial::symbol(Symbol::new(1, 2)));
        assert!(p1 < Monomial::symbol(Symbol::new(2, 3)));
        // A monomial precedes its proper multiples.
        assert!(single < single.mul(&Monomial::symbol(Symbol::new(1, 3))));
    }

    #[test]
    fn schedule_sizes() {
        // Partial matchings: sum_k C(rows,k) * P(cols,k).
        assert_eq!(orientation_schedule().len(), 1 + 12 + 36 + 24);
        assert_eq!(lifted_schedule().len(), 1 + 20 + 120 + 240 + 120);
    }

    #[test]
    fn orientation_schedule_prefix() {
        // Paper-style prefix for rows i<j<k<u: 1, ε(i,3), ε(i,2), ε(i,1), ε(j,3), ...
        let s = orientation_schedule();
        assert!(s[0].is_empty());
        assert_eq!(s[1], vec![(0, 2)]);
        assert_eq!(s[2], vec![(0, 1)]);
        assert_eq!(s[3], vec![(0, 0)]);
        assert_eq!(s[4], vec![(1, 2)]);
        // Last term takes three perturbations and leaves the constant column.
        assert_eq!(s.last().unwrap().len(), 3);
    }

    #[test]
    fn sos_sign_examples() {
        assert_eq!(sos_sign(vec![5i64, 0, 1]).unwrap(), Sign { value: Polarity::Positive, depth: 0 });
        assert_eq!(sos_sign(vec![0i64, 0, -2, 1]).unwrap(), Sign { value: Polarity::Negative, depth: 2 });
        let tail = vec![0i64, 0, 0, 0, 1];
        assert_eq!(sos_sign(tail.clone()).unwrap(), Sign { value: Polarity::Positive, depth: tail.len() as u32 - 1 });
        assert_eq!(sos_sign(vec![0i64, 0]), Err(KernelError::ScheduleExhausted));
    }

    #[test]
    fn sos_sign_is_lazy() {
        let mut evaluated = 0;
        let it = [3i64, 0, 0].iter().map(|&c| {
            evaluated += 1;
            c
        });
        sos_sign(it).unwrap();
        assert_eq!(evaluated, 1);
    }
}
