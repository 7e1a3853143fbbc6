use num_bigint::BigInt;

use super::*;
use crate::kernel::ExactPoint;
use crate::Triangulation;

type P = ExactPoint<BigInt>;

fn pts(coords: &[[i64; 3]]) -> Vec<P> {
    coords.iter().enumerate().map(|(i, &c)| P::from_i64(i as u32 + 1, c)).collect()
}

fn family(coords: &[[i64; 3]]) -> (Triangulation, Family<BigInt>) {
    let mut t = Triangulation::build(pts(coords)).unwrap();
    t.postprocess_flat_tets().unwrap();
    let f = Family::new(classify_all(&t).unwrap());
    (t, f)
}

fn r(n: i64, d: i64) -> RadiusSq<BigInt> {
    RadiusSq::new(BigInt::from(n), BigInt::from(d))
}

fn key(v: &[u32]) -> SimplexKey {
    SimplexKey::new(v)
}

const P4: [[i64; 3]; 4] = [[0, 0, 0], [6, 0, 0], [1, 4, 0], [2, 1, 7]];

#[test]
fn fixture_records() {
    let (_, f) = family(&P4);
    let rec = f.records();
    assert_eq!(rec.counts(), [4, 6, 4, 1]);
    let t123 = rec.get(&key(&[1, 2, 3])).unwrap();
    assert_eq!(t123.rho_sq, Some(r(697, 64)));
    assert!(!t123.attached && t123.on_hull);
    assert_eq!(t123.mu_lo_sq, r(29401, 1568));
    assert_eq!(t123.mu_hi_sq, Threshold::Infinite);
    let e13 = rec.get(&key(&[1, 3])).unwrap();
    assert_eq!(e13.rho_sq, Some(r(17, 4)));
    assert!(!e13.attached && e13.on_hull);
    assert_eq!(e13.mu_lo_sq, r(697, 64));
    let v1 = rec.get(&key(&[1])).unwrap();
    assert_eq!(v1.rho_sq, None);
    assert_eq!(v1.mu_lo_sq, r(17, 4));
    assert!(v1.on_hull);
    let tet = &rec.dim(3)[0];
    assert_eq!(tet.mu_lo_sq, r(29401, 1568));
    assert_eq!(tet.mu_hi_sq, Threshold::Finite(r(29401, 1568)));
    assert!(rec.iter().all(|x| !x.attached));
}

#[test]
fn fixture_spectrum() {
    let (_, f) = family(&P4);
    let want = [
        (17, 4),
        (9, 1),
        (41, 4),
        (697, 64),
        (27, 2),
        (59, 4),
        (3009, 196),
        (33, 2),
        (891, 50),
        (26609, 1420),
        (29401, 1568),
    ];
    let got: Vec<RadiusSq<BigInt>> = f.spectrum().thresholds().cloned().collect();
    assert_eq!(got, want.map(|(n, d)| r(n, d)).to_vec());
    assert_eq!(f.intervals(), 12);
}

#[test]
fn fixture_complexes() {
    let (t, f) = family(&P4);
    let first = f.complex_at(&AlphaQuery::Index(0)).unwrap();
    assert_eq!(first.len(), 4);
    assert_eq!(first.count(0, Class::Singular), 4);

    let last = f.complex_at(&AlphaQuery::Index(11)).unwrap();
    assert_eq!(last.count(3, Class::Interior), 1);
    assert_eq!(last.count(2, Class::Regular), 4);
    assert_eq!(last.count(1, Class::Regular), 6);
    assert_eq!(last.count(0, Class::Regular), 4);
    assert_eq!(f.complex_at(&AlphaQuery::Index(12)).unwrap(), last);
    assert!(f.complex_at(&AlphaQuery::Index(13)).is_err());

    let t123 = key(&[1, 2, 3]);
    let i = f.spectrum().position(&Threshold::Finite(r(697, 64))).unwrap();
    let just_above = f.complex_at(&AlphaQuery::Index(i)).unwrap();
    assert_eq!(just_above.class_of(&t123), Some(Class::Singular));
    assert_eq!(just_above.count(2, Class::Singular), 1);
    assert_eq!(last.class_of(&t123), Some(Class::Regular));

    let b = shape_boundary(&last, &t);
    assert_eq!(b.regular.len(), 4);
    let b0 = shape_boundary(&first, &t);
    assert!(b0.regular.is_empty());
    assert_eq!(b0.singular_vertices, vec![1, 2, 3, 4]);
}

#[test]
fn queries_by_alpha() {
    let (_, f) = family(&P4);
    let q = |n: i64, d: i64| AlphaQuery::AlphaSq(num_rational::Ratio::new(BigInt::from(n), BigInt::from(d)));
    assert_eq!(f.interval(&q(697, 64)), Err(AlphaError::OnThreshold { entry: 4 }));
    assert_eq!(f.interval(&q(11, 1)), Ok(4));
    assert_eq!(f.interval(&AlphaQuery::Alpha(3.0)), Err(AlphaError::OnThreshold { entry: 2 }));
    assert_eq!(f.interval(&AlphaQuery::Alpha(2.5)), Ok(1));
    assert_eq!(f.interval(&AlphaQuery::Alpha(f64::INFINITY)), Ok(11));
}

fn orient_outward(t: &Triangulation, tri: [u32; 3]) -> bool {
    // The centroid of the whole point set lies behind every hull triangle.
    let c = t.points().iter().fold([0.0; 3], |acc, p| {
        let x = p.to_f64();
        [acc[0] + x[0], acc[1] + x[1], acc[2] + x[2]]
    });
    let n = t.points().len() as f64;
    let c = c.map(|v| v / n);
    let [a, b, d] = tri.map(|v| t.point(v).to_f64());
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let w = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
    let normal = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
    let to_c = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    normal[0] * to_c[0] + normal[1] * to_c[1] + normal[2] * to_c[2] < 0.0
}

#[test]
fn regular_triangles_face_outward() {
    let mut c = P4.to_vec();
    c.extend([[3, 2, 3], [1, 1, 1], [5, 1, 1]]);
    let (t, f) = family(&c);
    let last = f.complex_at(&AlphaQuery::Index(f.intervals() - 1)).unwrap();
    let b = shape_boundary(&last, &t);
    assert!(!b.regular.is_empty());
    assert!(b.regular.iter().all(|&tri| orient_outward(&t, tri)));
}

#[test]
fn two_separated_tetrahedra() {
    let mut c = P4.to_vec();
    c.extend(P4.map(|[x, y, z]| [x + 1000, y, z]));
    let (t, f) = family(&c);
    let i = f.spectrum().position(&Threshold::Finite(r(29401, 1568))).unwrap();
    let view = f.complex_at(&AlphaQuery::Index(i)).unwrap();
    assert_eq!(view.count(3, Class::Interior), 2);
    let b = shape_boundary(&view, &t);
    assert_eq!(b.regular.len(), 8);
    let left = b.regular.iter().filter(|tri| tri.iter().all(|&v| v <= 4)).count();
    assert_eq!(left, 4);
}

#[test]
fn positions_follow_table_rows() {
    // An unattached interior triangle: singular, regular, then interior.
    let p = Positions { rho: Some(2), mu_lo: 4, mu_hi: 6 };
    let classes: Vec<Option<Class>> = (0..8).map(|i| p.class_at(2, i)).collect();
    use Class::*;
    assert_eq!(
        classes,
        vec![None, None, Some(Singular), Some(Singular), Some(Regular), Some(Regular), Some(Interior), Some(Interior)]
    );
    // Attached: never singular.
    let p = Positions { rho: None, mu_lo: 4, mu_hi: 6 };
    assert_eq!(p.class_at(1, 3), None);
    assert_eq!(p.class_at(1, 4), Some(Regular));
    // A hull vertex is singular then regular.
    let p = Positions { rho: None, mu_lo: 1, mu_hi: 9 };
    assert_eq!(p.class_at(0, 0), Some(Singular));
    assert_eq!(p.class_at(0, 8), Some(Regular));
}
