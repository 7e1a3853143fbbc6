//! Small exact determinants with operation tallies.

use crate::scalar::ExactScalar;

/// Long-integer operation tally for one predicate evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub mul: u64,
    pub add: u64,
}

impl OpCount {
    #[inline]
    pub(crate) fn mul<T: ExactScalar>(&mut self, a: &T, b: &T) -> T {
        self.mul += 1;
        a.clone() * b.clone()
    }

    #[inline]
    pub(crate) fn sub<T: ExactScalar>(&mut self, a: &T, b: &T) -> T {
        self.add += 1;
        a.clone() - b.clone()
    }

    #[inline]
    pub(crate) fn add<T: ExactScalar>(&mut self, a: &T, b: &T) -> T {
        self.add += 1;
        a.clone() + b.clone()
    }
}

pub(crate) fn det2<T: ExactScalar>(ops: &mut OpCount, a: &T, b: &T, c: &T, d: &T) -> T {
    let ad = ops.mul(a, d);
    let bc = ops.mul(b, c);
    ops.sub(&ad, &bc)
}

pub(crate) fn det3<T: ExactScalar>(ops: &mut OpCount, m: &[[T; 3]; 3]) -> T {
    let c0 = det2(ops, &m[1][1], &m[1][2], &m[2][1], &m[2][2]);
    let c1 = det2(ops, &m[1][0], &m[1][2], &m[2][0], &m[2][2]);
    let c2 = det2(ops, &m[1][0], &m[1][1], &m[2][0], &m[2][1]);
    let t0 = ops.mul(&m[0][0], &c0);
    let t1 = ops.mul(&m[0][1], &c1);
    let t2 = ops.mul(&m[0][2], &c2);
    let s = ops.sub(&t0, &t1);
    ops.add(&s, &t2)
}

pub(crate) fn det4<T: ExactScalar>(ops: &mut OpCount, m: &[[T; 4]; 4]) -> T {
    // 2x2 minors of the bottom two rows, shared by the four 3x3 cofactors.
    let s = |ops: &mut OpCount, i: usize, j: usize| det2(ops, &m[2][i], &m[2][j], &m[3][i], &m[3][j]);
    let s01 = s(ops, 0, 1);
    let s02 = s(ops, 0, 2);
    let s03 = s(ops, 0, 3);
    let s12 = s(ops, 1, 2);
    let s13 = s(ops, 1, 3);
    let s23 = s(ops, 2, 3);
    let cof = |ops: &mut OpCount, a: &T, sa: &T, b: &T, sb: &T, c: &T, sc: &T| {
        let x = ops.mul(a, sa);
        let y = ops.mul(b, sb);
        let z = ops.mul(c, sc);
        let t = ops.sub(&x, &y);
        ops.add(&t, &z)
    };
    let r = &m[1];
    let c0 = cof(ops, &r[1], &s23, &r[2], &s13, &r[3], &s12);
    let c1 = cof(ops, &r[0], &s23, &r[2], &s03, &r[3], &s02);
    let c2 = cof(ops, &r[0], &s13, &r[1], &s03, &r[3], &s01);
    let c3 = cof(ops, &r[0], &s12, &r[1], &s02, &r[2], &s01);
    let t0 = ops.mul(&m[0][0], &c0);
    let t1 = ops.mul(&m[0][1], &c1);
    let t2 = ops.mul(&m[0][2], &c2);
    let t3 = ops.mul(&m[0][3], &c3);
    let a = ops.sub(&t0, &t1);
    let b = ops.add(&a, &t2);
    ops.sub(&b, &t3)
}

/// Determinant of a square matrix stored row-major, by cofactor expansion.
/// Only used for sizes up to five, where expansion is cheap enough and skips
/// zero entries (unit rows from perturbation terms).
pub(crate) fn det_n<T: ExactScalar>(ops: &mut OpCount, n: usize, m: &[T]) -> T {
    debug_assert_eq!(m.len(), n * n);
    let cols: Vec<usize> = (0..n).collect();
    expand(ops, n, m, 0, &cols)
}

fn expand<T: ExactScalar>(ops: &mut OpCount, n: usize, m: &[T], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row * n + cols[0]].clone();
    }
    if cols.len() == 2 {
        let (a, b) = (&m[row * n + cols[0]], &m[row * n + cols[1]]);
        let (c, d) = (&m[(row + 1) * n + cols[0]], &m[(row + 1) * n + cols[1]]);
        return det2(ops, a, b, c, d);
    }
    let mut acc = T::zero();
    let mut rest = Vec::with_capacity(cols.len() - 1);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row * n + c];
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(cols.iter().copied().filter(|&x| x != c));
        let minor = expand(ops, n, m, row + 1, &rest);
        let term = ops.mul(entry, &minor);
        acc = if k % 2 == 0 { ops.add(&acc, &term) } else { ops.sub(&acc, &term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz(n: usize, m: &[i64]) -> i64 {
        fn perms(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    perms(k, used, cur, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut all = Vec::new();
        perms(n, &mut vec![false; n], &mut Vec::new(), &mut all);
        all.iter()
            .map(|p| {
                let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let prod: i64 = (0..n).map(|r| m[r * n + p[r]]).product();
                if inv % 2 == 0 { prod } else { -prod }
            })
            .sum()
    }

    #[test]
    fn fixed_size_agree_with_leibniz() {
        let m3 = [[2i64, -1, 3], [0, 4, 5], [7, 1, -2]];
        let flat3: Vec<i64> = m3.iter().flatten().copied().collect();
        let mut ops = OpCount::default();
        assert_eq!(det3(&mut ops, &m3), leibniz(3, &flat3));

        let m4 = [[1i64, 2, 0, -3], [4, -1, 2, 2], [0, 3, 1, 5], [-2, 1, 1, 1]];
        let flat4: Vec<i64> = m4.iter().flatten().copied().collect();
        assert_eq!(det4(&mut ops, &m4), leibniz(4, &flat4));
        assert_eq!(det_n(&mut ops, 4, &flat4), leibniz(4, &flat4));
        assert!(ops.mul > 0 && ops.add > 0);
    }

    #[test]
    fn det5_agrees_with_leibniz() {
        let m: Vec<i64> = vec![
            3, 1, 4, 1, 5, //
            9, 2, 6, 5, 3, //
            5, 8, 9, 7, 9, //
            3, 2, 3, 8, 4, //
            6, 2, 6, 4, 3,
        ];
        let mut ops = OpCount::default();
        assert_eq!(det_n(&mut ops, 5, &m), leibniz(5, &m));
    }
}
