//! Independent oracles shared by the integration tests. Nothing here calls
//! the crate's radius code or its alpha classification.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use alphashape::alpha::{classify_all, Class, Family};
use alphashape::{Kernel, Point, SimplexKey, Triangulation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn pts(coords: &[[i64; 3]]) -> Vec<Point> {
    coords.iter().enumerate().map(|(i, &c)| Point::from_i64(i as u32 + 1, c)).collect()
}

/// `n` distinct random points with coordinates in `0..=max`.
pub fn random_coords(rng: &mut ChaCha8Rng, n: usize, max: i64) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = Vec::with_capacity(n);
    while out.len() < n {
        let c = [0; 3].map(|_| rng.gen_range(0..=max));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn family(coords: &[[i64; 3]]) -> (Triangulation, Family<BigInt>) {
    let mut t = Triangulation::build(pts(coords)).expect("build");
    t.postprocess_flat_tets().expect("postprocess");
    let f = Family::new(classify_all(&t).expect("classify"));
    (t, f)
}

pub const P4: [[i64; 3]; 4] = [[0, 0, 0], [6, 0, 0], [1, 4, 0], [2, 1, 7]];

pub fn cube() -> Vec<[i64; 3]> {
    let mut c = Vec::new();
    for x in [0, 4] {
        for y in [0, 4] {
            for z in [0, 4] {
                c.push([x, y, z]);
            }
        }
    }
    c
}

pub fn grid(k: i64) -> Vec<[i64; 3]> {
    let mut c = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                c.push([x, y, z]);
            }
        }
    }
    c
}

/// Twenty integer points on the sphere of radius 9 about the origin.
pub fn sphere20() -> Vec<[i64; 3]> {
    let mut all = Vec::new();
    for x in -9i64..=9 {
        for y in -9i64..=9 {
            for z in -9i64..=9 {
                if x * x + y * y + z * z == 81 {
                    all.push([x, y, z]);
                }
            }
        }
    }
    // Spread the choice over the sphere deterministically.
    let step = all.len() / 20;
    all.into_iter().step_by(step).take(20).collect()
}

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn qv(c: [i64; 3]) -> [Q; 3] {
    c.map(q)
}

fn sub(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn scale(a: &[Q; 3], k: &Q) -> [Q; 3] {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

fn det3(m: &[[Q; 3]; 3]) -> Q {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Center and squared radius of the smallest sphere through 2, 3 or 4
/// points, by direct geometry over the rationals. `None` when degenerate.
pub fn smallest_sphere(points: &[[i64; 3]]) -> Option<([Q; 3], Q)> {
    let p: Vec<[Q; 3]> = points.iter().map(|&c| qv(c)).collect();
    let a = &p[0];
    let center = match p.len() {
        2 => {
            let half = Q::new(BigInt::from(1), BigInt::from(2));
            [0, 1, 2].map(|j| (&p[0][j] + &p[1][j]) * &half)
        }
        3 => {
            let u = sub(&p[1], a);
            let w = sub(&p[2], a);
            let n = cross(&u, &w);
            let nn = dot(&n, &n);
            if nn.is_zero() {
                return None;
            }
            let lhs = sub(&scale(&w, &dot(&u, &u)), &scale(&u, &dot(&w, &w)));
            let off = scale(&cross(&lhs, &n), &(Q::from_integer(BigInt::from(1)) / (q(2) * nn)));
            [&a[0] + &off[0], &a[1] + &off[1], &a[2] + &off[2]]
        }
        4 => {
            // 2 (p_i - a) . x = |p_i|^2 - |a|^2, solved by Cramer's rule.
            let rows: Vec<[Q; 3]> = (1..4).map(|i| scale(&sub(&p[i], a), &q(2))).collect();
            let rhs: Vec<Q> = (1..4).map(|i| dot(&p[i], &p[i]) - dot(a, a)).collect();
            let m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
            let d = det3(&m);
            if d.is_zero() {
                return None;
            }
            let col = |j: usize| {
                let mut mm = m.clone();
                for i in 0..3 {
                    mm[i][j] = rhs[i].clone();
                }
                det3(&mm) / &d
            };
            [col(0), col(1), col(2)]
        }
        _ => panic!("2 to 4 points"),
    };
    let r = sub(a, &center);
    let rr = dot(&r, &r);
    Some((center, rr))
}

/// Signed squared distance from `x` to the sphere: negative inside.
pub fn power(center: &[Q; 3], r2: &Q, x: [i64; 3]) -> Q {
    let d = sub(&qv(x), center);
    dot(&d, &d) - r2
}

/// Six times the convex hull volume of points in general position, from the
/// facets that have every other point strictly on one side.
pub fn hull_volume6(coords: &[[i64; 3]]) -> Q {
    let p: Vec<[Q; 3]> = coords.iter().map(|&c| qv(c)).collect();
    let n = p.len();
    let nq = Q::from_integer(BigInt::from(n as i64));
    let mut centroid = [Q::zero(), Q::zero(), Q::zero()];
    for x in &p {
        for j in 0..3 {
            centroid[j] = &centroid[j] + &x[j];
        }
    }
    let centroid = centroid.map(|c| c / &nq);
    let mut vol = Q::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross(&sub(&p[j], &p[i]), &sub(&p[k], &p[i]));
                let sides: BTreeSet<bool> = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .map(|m| dot(&normal, &sub(&p[m], &p[i])).is_positive())
                    .collect();
                if sides.len() == 1 {
                    vol += dot(&normal, &sub(&centroid, &p[i])).abs();
                }
            }
        }
    }
    vol
}

/// Tetrahedra with an empty circumsphere, by exhaustive search with the
/// kernel's perturbed sphere test.
pub fn brute_force_delaunay(points: &[Point]) -> Vec<SimplexKey> {
    let k = Kernel::new();
    let n = points.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let t = [&points[a], &points[b], &points[c], &points[d]];
                    let empty = (0..n)
                        .filter(|w| ![a, b, c, d].contains(w))
                        .all(|w| k.in_sphere(t[0], t[1], t[2], t[3], &points[w]).unwrap().is_negative());
                    if empty {
                        out.push(SimplexKey::new(&[a, b, c, d].map(|x| x as u32 + 1)));
                    }
                }
            }
        }
    }
    out
}

/// Whether the smallest circumsphere of `key` encloses no other input point.
/// Exact ties are decided by the kernel's perturbed attachment tests.
pub fn ball_is_empty(t: &Triangulation, coords: &[[i64; 3]], key: &SimplexKey) -> bool {
    let v = key.vertices();
    let sub: Vec<[i64; 3]> = v.iter().map(|&x| coords[x as usize - 1]).collect();
    let (center, r2) = smallest_sphere(&sub).expect("nondegenerate simplex");
    let k = t.kernel();
    let p = |x: u32| t.point(x);
    (1..=coords.len() as u32).filter(|x| !key.contains(*x)).all(|x| {
        let pw = power(&center, &r2, coords[x as usize - 1]);
        if !pw.is_zero() {
            return pw.is_positive();
        }
        let inside = match v.len() {
            2 => k.edge_attached(p(v[0]), p(v[1]), p(x)).unwrap().is_positive(),
            3 => k.triangle_attached(p(v[0]), p(v[1]), p(v[2]), p(x)).unwrap().is_positive(),
            _ => k.in_sphere(p(v[0]), p(v[1]), p(v[2]), p(v[3]), p(x)).unwrap().is_positive(),
        };
        !inside
    })
}

/// First-principles alpha complexes of a retained triangulation.
pub struct Oracle {
    /// Every simplex of dimension 1 to 3 with its squared radius and whether
    /// its ball is empty.
    pub radii: Vec<(SimplexKey, Q, bool)>,
    vertices: Vec<SimplexKey>,
    hull: HashSet<SimplexKey>,
    tets: Vec<SimplexKey>,
}

impl Oracle {
    pub fn new(t: &Triangulation, coords: &[[i64; 3]]) -> Self {
        let e = t.enumerate();
        let hull = (0..4)
            .flat_map(|d| e.simplices[d].iter().zip(&e.hull[d]).filter(|(_, &h)| h).map(|(k, _)| *k))
            .collect();
        let mut radii = Vec::new();
        for d in 1..4 {
            for key in &e.simplices[d] {
                let sub: Vec<[i64; 3]> = key.vertices().iter().map(|&x| coords[x as usize - 1]).collect();
                let (_, r2) = smallest_sphere(&sub).expect("nondegenerate simplex");
                radii.push((*key, r2, d == 3 || ball_is_empty(t, coords, key)));
            }
        }
        Self { radii, vertices: e.simplices[0].clone(), hull, tets: e.simplices[3].clone() }
    }

    /// The alpha complex at squared alpha `a2`: a simplex is generated when
    /// its ball is empty and its radius is below alpha, the complex is the
    /// face closure, and classes follow from which tetrahedra around each
    /// simplex are present.
    pub fn complex_at(&self, a2: &Q) -> HashMap<SimplexKey, Class> {
        let mut inside: HashSet<SimplexKey> = self.vertices.iter().copied().collect();
        for (key, r2, empty) in &self.radii {
            if *empty && r2 < a2 {
                inside.extend(key.faces());
            }
        }
        let mut out = HashMap::new();
        for key in &inside {
            let covers = |o: &SimplexKey| key.vertices().iter().all(|&v| o.contains(v));
            let all_in = self.tets.iter().filter(|x| covers(x)).all(|x| inside.contains(x));
            let class = if !self.hull.contains(key) && all_in {
                Class::Interior
            } else if inside.iter().any(|o| o.dim() > key.dim() && covers(o)) {
                Class::Regular
            } else {
                Class::Singular
            };
            out.insert(*key, class);
        }
        out
    }
}

/// Components of the graph on `n` vertices with the given edges, by BFS.
pub fn bfs_components(n: usize, edges: &[[u32; 2]]) -> usize {
    let mut adj = vec![Vec::new(); n + 1];
    for &[a, b] in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    let mut seen = vec![false; n + 1];
    let mut count = 0;
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}
