use super::det::{det3, det4, det_n, OpCount};
use super::poly::{minor, Poly};
use super::sos::{lifted_schedule, orientation_schedule, Matching};
use super::stats::PredicateKind;
use super::{distinct, ExactPoint, Kernel, KernelError, Sign};
use crate::scalar::ExactScalar;

fn diff<T: ExactScalar>(ops: &mut OpCount, p: &ExactPoint<T>, o: &ExactPoint<T>, cols: usize) -> [T; 4] {
    std::array::from_fn(|j| if j < cols { ops.sub(&p.coord(j + 1), &o.coord(j + 1)) } else { T::zero() })
}

/// Unperturbed `M^{a,b,c,d}_{1,2,3,0}`.
pub(crate) fn orientation_raw<T: ExactScalar>(ops: &mut OpCount, p: [&ExactPoint<T>; 4]) -> T {
    let rows = [1, 2, 3].map(|r| {
        let d = diff(ops, p[r], p[0], 3);
        [d[0].clone(), d[1].clone(), d[2].clone()]
    });
    -det3(ops, &rows)
}

/// Unperturbed `M^{a,b,c,d,e}_{1,2,3,4,0}`.
fn lifted_raw<T: ExactScalar>(ops: &mut OpCount, p: [&ExactPoint<T>; 5]) -> T {
    let rows = [1, 2, 3, 4].map(|r| diff(ops, p[r], p[0], 4));
    det4(ops, &rows)
}

/// Sign of a perturbed determinant whose first `schedule` columns are the
/// perturbed coordinates `1..` and whose last column is the constant 1.
fn perturbed_det<T: ExactScalar>(
    ops: &mut OpCount,
    rows: &[&ExactPoint<T>],
    schedule: &[Matching],
    raw: T,
) -> Result<Sign, KernelError> {
    let n = rows.len();
    // Row position in label order -> actual row.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&r| rows[r].index());
    let base: Vec<T> = rows
        .iter()
        .flat_map(|p| (0..n).map(move |c| if c + 1 < n { p.coord(c + 1) } else { T::one() }))
        .collect();
    let coefficients = schedule.iter().enumerate().map(|(k, term)| {
        if k == 0 {
            return raw.clone();
        }
        let mut m = base.clone();
        for &(pos, col) in term {
            let r = order[pos];
            for c in 0..n {
                m[r * n + c] = if c == col { T::one() } else { T::zero() };
            }
        }
        det_n(ops, n, &m)
    });
    super::sos::sos_sign(coefficients)
}

impl Kernel {
    /// Side of the plane through `a, b, c` on which `d` lies: the sign of
    /// `M^{a,b,c,d}_{1,2,3,0}` under perturbation. Swapping any two arguments
    /// flips the result.
    pub fn orientation<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
        d: &ExactPoint<T>,
    ) -> Result<Sign, KernelError> {
        distinct(&[a.index(), b.index(), c.index(), d.index()])?;
        let mut ops = OpCount::default();
        let s = orientation_sign(&mut ops, [a, b, c, d])?;
        self.stats.predicate(PredicateKind::Orientation, s.depth, ops);
        Ok(s)
    }

    /// Unperturbed orientation determinant; zero for coplanar input.
    pub fn orientation_det<T: ExactScalar>(&self, p: [&ExactPoint<T>; 4]) -> T {
        orientation_raw(&mut OpCount::default(), p)
    }

    /// Whether `e` lies inside the sphere through `a, b, c, d` (`Positive`)
    /// or outside (`Negative`). Independent of the order of the first four
    /// arguments. The reported depth is the deeper of the two factors.
    pub fn in_sphere<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
        d: &ExactPoint<T>,
        e: &ExactPoint<T>,
    ) -> Result<Sign, KernelError> {
        distinct(&[a.index(), b.index(), c.index(), d.index(), e.index()])?;
        let mut ops = OpCount::default();
        let o = orientation_sign(&mut ops, [a, b, c, d])?;
        let raw = match small([a, b, c, d, e]) {
            Some(q) => super::Polarity::of(&lifted_raw(&mut ops, q.each_ref())),
            None => super::Polarity::of(&lifted_raw(&mut ops, [a, b, c, d, e])),
        };
        let l = match raw {
            Some(value) => Sign { value, depth: 0 },
            None => perturbed_det(&mut ops, &[a, b, c, d, e], lifted_schedule(), T::zero())?,
        };
        let s = Sign { value: o.value.times(l.value), depth: o.depth.max(l.depth) };
        self.stats.predicate(PredicateKind::InSphere, s.depth, ops);
        Ok(s)
    }

    /// Whether `c` lies in the open ball whose diameter is the edge `a b`.
    pub fn edge_attached<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
    ) -> Result<Sign, KernelError> {
        distinct(&[a.index(), b.index(), c.index()])?;
        let mut ops = OpCount::default();
        let mut raw = T::zero();
        for l in 1..=3 {
            let ij = ops.sub(&a.coord(l), &b.coord(l));
            let ik = ops.sub(&a.coord(l), &c.coord(l));
            let jk = ops.sub(&b.coord(l), &c.coord(l));
            let s = ops.add(&ik, &jk);
            let t = ops.mul(&ij, &ij);
            let u = ops.mul(&s, &s);
            let v = ops.sub(&t, &u);
            raw = ops.add(&raw, &v);
        }
        let s = match super::Polarity::of(&raw) {
            Some(value) => Sign { value, depth: 0 },
            None => edge_attached_poly(a, b, c).sign()?,
        };
        self.stats.predicate(PredicateKind::EdgeAttached, s.depth, ops);
        Ok(s)
    }

    /// Whether `d` lies in the open ball bounded by the smallest circumsphere
    /// of the triangle `a b c`.
    pub fn triangle_attached<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
        d: &ExactPoint<T>,
    ) -> Result<Sign, KernelError> {
        distinct(&[a.index(), b.index(), c.index(), d.index()])?;
        let mut ops = OpCount::default();
        let tri = [a, b, c];
        let tet = [a, b, c, d];
        let m3 = |ops: &mut OpCount, cols: [usize; 3]| raw_minor(ops, &tri, &cols);
        let t230 = m3(&mut ops, [2, 3, 0]);
        let t130 = m3(&mut ops, [1, 3, 0]);
        let t120 = m3(&mut ops, [1, 2, 0]);
        if t230.is_zero() && t130.is_zero() && t120.is_zero() {
            return Err(KernelError::DegenerateSimplex("triangle"));
        }
        let t123 = m3(&mut ops, [1, 2, 3]);
        let m4 = |ops: &mut OpCount, cols: [usize; 4]| raw_minor(ops, &tet, &cols);
        let r2340 = m4(&mut ops, [2, 3, 4, 0]);
        let r1340 = m4(&mut ops, [1, 3, 4, 0]);
        let r1240 = m4(&mut ops, [1, 2, 4, 0]);
        let r1230 = m4(&mut ops, [1, 2, 3, 0]);
        let x = ops.mul(&r2340, &t230);
        let y = ops.mul(&r1340, &t130);
        let z = ops.mul(&r1240, &t120);
        let w = ops.mul(&r1230, &t123);
        let w2 = ops.add(&w, &w);
        let xy = ops.add(&x, &y);
        let xyz = ops.add(&xy, &z);
        let raw = ops.sub(&xyz, &w2);
        let s = match super::Polarity::of(&raw) {
            Some(value) => Sign { value, depth: 0 },
            None => triangle_attached_poly(a, b, c, d).sign()?,
        };
        self.stats.predicate(PredicateKind::TriangleAttached, s.depth, ops);
        Ok(s)
    }
}

fn orientation_sign<T: ExactScalar>(ops: &mut OpCount, p: [&ExactPoint<T>; 4]) -> Result<Sign, KernelError> {
    let raw = match small(p) {
        Some(q) => super::Polarity::of(&orientation_raw(ops, q.each_ref())),
        None => super::Polarity::of(&orientation_raw(ops, p)),
    };
    match raw {
        Some(value) => Ok(Sign { value, depth: 0 }),
        None => perturbed_det(ops, &p, orientation_schedule(), T::zero()),
    }
}

/// The points as `i128` points, when all are small enough for exact `i128`
/// determinants.
fn small<T: ExactScalar, const N: usize>(p: [&ExactPoint<T>; N]) -> Option<[ExactPoint<i128>; N]> {
    let v: Vec<ExactPoint<i128>> = p.iter().map(|x| x.small()).collect::<Option<_>>()?;
    v.try_into().ok()
}

/// Unperturbed minor `M^{rows}_{cols}`.
pub(crate) fn raw_minor<T: ExactScalar>(ops: &mut OpCount, rows: &[&ExactPoint<T>], cols: &[usize]) -> T {
    let n = rows.len();
    let m: Vec<T> = rows.iter().flat_map(|p| cols.iter().map(|&j| p.coord(j))).collect();
    det_n(ops, n, &m)
}

/// Fully expanded attachment polynomial for an edge.
pub fn edge_attached_poly<T: ExactScalar>(a: &ExactPoint<T>, b: &ExactPoint<T>, c: &ExactPoint<T>) -> Poly<T> {
    let mut acc = Poly::zero();
    for l in 1..=3 {
        let ij = minor(&[a, b], &[l, 0]);
        let ik = minor(&[a, c], &[l, 0]);
        let jk = minor(&[b, c], &[l, 0]);
        let s = ik + jk;
        acc = acc + &ij * &ij - &s * &s;
    }
    acc
}

/// Fully expanded attachment polynomial for a triangle and a fourth point.
pub fn triangle_attached_poly<T: ExactScalar>(
    a: &ExactPoint<T>,
    b: &ExactPoint<T>,
    c: &ExactPoint<T>,
    d: &ExactPoint<T>,
) -> Poly<T> {
    let tri = [a, b, c];
    let tet = [a, b, c, d];
    let x = &minor(&tet, &[2, 3, 4, 0]) * &minor(&tri, &[2, 3, 0]);
    let y = &minor(&tet, &[1, 3, 4, 0]) * &minor(&tri, &[1, 3, 0]);
    let z = &minor(&tet, &[1, 2, 4, 0]) * &minor(&tri, &[1, 2, 0]);
    let w = &minor(&tet, &[1, 2, 3, 0]) * &minor(&tri, &[1, 2, 3]);
    x + y + z - w.scale(&T::from_i64(2).expect("small constant"))
}
