use super::det::OpCount;
use super::predicates::raw_minor;
use super::{distinct, ExactPoint, Kernel, KernelError, RadiusSq};
use crate::scalar::ExactScalar;

fn sq_dist<T: ExactScalar>(ops: &mut OpCount, a: &ExactPoint<T>, b: &ExactPoint<T>) -> T {
    let mut s = T::zero();
    for l in 1..=3 {
        let d = ops.sub(&a.coord(l), &b.coord(l));
        let d2 = ops.mul(&d, &d);
        s = ops.add(&s, &d2);
    }
    s
}

fn sq<T: ExactScalar>(ops: &mut OpCount, x: &T) -> T {
    ops.mul(x, x)
}

impl Kernel {
    /// Squared radius of the smallest sphere through an edge: a quarter of
    /// the squared length.
    pub fn rho_sq_edge<T: ExactScalar>(&self, a: &ExactPoint<T>, b: &ExactPoint<T>) -> Result<RadiusSq<T>, KernelError> {
        distinct(&[a.index(), b.index()])?;
        let mut ops = OpCount::default();
        let n = sq_dist(&mut ops, a, b);
        self.stats.radius(ops);
        Ok(RadiusSq::new(n, T::from_i64(4).expect("small constant")))
    }

    /// Squared circumradius of a triangle, from the product of its squared
    /// side lengths over sixteen times its squared area.
    pub fn rho_sq_triangle<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
    ) -> Result<RadiusSq<T>, KernelError> {
        distinct(&[a.index(), b.index(), c.index()])?;
        let mut ops = OpCount::default();
        let ab = sq_dist(&mut ops, a, b);
        let bc = sq_dist(&mut ops, b, c);
        let ca = sq_dist(&mut ops, c, a);
        let t = ops.mul(&ab, &bc);
        let num = ops.mul(&t, &ca);
        let rows = [a, b, c];
        let mut den = T::zero();
        for cols in [[2, 3, 0], [1, 3, 0], [1, 2, 0]] {
            let m = raw_minor(&mut ops, &rows, &cols);
            let m2 = sq(&mut ops, &m);
            den = ops.add(&den, &m2);
        }
        self.stats.radius(ops);
        if den.is_zero() {
            return Err(KernelError::DegenerateSimplex("triangle"));
        }
        Ok(RadiusSq::new(num, den * T::from_i64(4).expect("small constant")))
    }

    /// Squared circumradius of a tetrahedron, from its minors in the lifted
    /// coordinates.
    pub fn rho_sq_tetrahedron<T: ExactScalar>(
        &self,
        a: &ExactPoint<T>,
        b: &ExactPoint<T>,
        c: &ExactPoint<T>,
        d: &ExactPoint<T>,
    ) -> Result<RadiusSq<T>, KernelError> {
        distinct(&[a.index(), b.index(), c.index(), d.index()])?;
        let mut ops = OpCount::default();
        let rows = [a, b, c, d];
        let m1230 = raw_minor(&mut ops, &rows, &[1, 2, 3, 0]);
        if m1230.is_zero() {
            self.stats.radius(ops);
            return Err(KernelError::DegenerateSimplex("tetrahedron"));
        }
        let mut num = T::zero();
        for cols in [[2, 3, 4, 0], [1, 3, 4, 0], [1, 2, 4, 0]] {
            let m = raw_minor(&mut ops, &rows, &cols);
            let m2 = sq(&mut ops, &m);
            num = ops.add(&num, &m2);
        }
        let m1234 = raw_minor(&mut ops, &rows, &[1, 2, 3, 4]);
        let four = T::from_i64(4).expect("small constant");
        let p = ops.mul(&m1230, &m1234);
        num = ops.add(&num, &(p * four.clone()));
        let den = sq(&mut ops, &m1230) * four;
        self.stats.radius(ops);
        Ok(RadiusSq::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = ExactPoint<BigInt>;

    fn pt(i: u32, c: [i64; 3]) -> P {
        P::from_i64(i, c)
    }

    fn r(n: i64, d: i64) -> RadiusSq<BigInt> {
        RadiusSq::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn edge_examples() {
        let k = Kernel::new();
        assert_eq!(k.rho_sq_edge(&pt(1, [0, 0, 0]), &pt(2, [2, 0, 0])).unwrap(), r(1, 1));
        assert_eq!(k.rho_sq_edge(&pt(1, [0, 0, 0]), &pt(2, [6, 0, 0])).unwrap(), r(9, 1));
        assert_eq!(k.rho_sq_edge(&pt(1, [1, 4, 0]), &pt(2, [2, 1, 7])).unwrap(), r(59, 4));
    }

    #[test]
    fn triangle_examples() {
        let k = Kernel::new();
        let t = |a, b, c| k.rho_sq_triangle(&pt(1, a), &pt(2, b), &pt(3, c)).unwrap();
        assert_eq!(t([0, 0, 0], [6, 0, 0], [1, 4, 0]), r(697, 64));
        assert_eq!(t([0, 0, 0], [2, 0, 0], [1, 1, 0]), r(1, 1));
        assert_eq!(t([0, 0, 0], [6, 0, 0], [2, 1, 7]), r(891, 50));
        let e = k.rho_sq_triangle(&pt(1, [0, 0, 0]), &pt(2, [1, 1, 1]), &pt(3, [3, 3, 3]));
        assert_eq!(e, Err(KernelError::DegenerateSimplex("triangle")));
    }

    #[test]
    fn tetrahedron_examples() {
        let k = Kernel::new();
        let t = |a, b, c, d| k.rho_sq_tetrahedron(&pt(1, a), &pt(2, b), &pt(3, c), &pt(4, d)).unwrap();
        assert_eq!(t([1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, 0, 1]), r(1, 1));
        assert_eq!(t([0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]), r(3, 4));
        assert_eq!(t([0, 0, 0], [6, 0, 0], [1, 4, 0], [2, 1, 7]), r(29401, 1568));
        let flat = k.rho_sq_tetrahedron(&pt(1, [0, 0, 0]), &pt(2, [1, 0, 0]), &pt(3, [0, 1, 0]), &pt(4, [1, 1, 0]));
        assert_eq!(flat, Err(KernelError::DegenerateSimplex("tetrahedron")));
    }

    #[test]
    fn counts_radius_calls() {
        let k = Kernel::new();
        k.rho_sq_edge(&pt(1, [0, 0, 0]), &pt(2, [2, 0, 0])).unwrap();
        assert_eq!(k.stats().snapshot().radius, 1);
    }
}
