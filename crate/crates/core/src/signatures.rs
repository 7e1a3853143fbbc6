//! Signature functions over the alpha family.
//!
//! Each signature is a step function with one value per open spectrum
//! interval. All of them are computed by sweeping the intervals once, adding
//! each simplex's contribution where its class changes.

use num_rational::Ratio;
use petgraph::unionfind::UnionFind;

use crate::alpha::{Class, Family};
use crate::delaunay::Triangulation;
use crate::scalar::ExactScalar;

/// Number of connected components of the alpha complex per interval.
pub fn components_signature<T: ExactScalar>(family: &Family<T>) -> Vec<usize> {
    let k = family.intervals();
    let n = family.records().dim(0).len();
    // Vertices are present from the start; edges connect them on entry.
    let mut by_birth: Vec<Vec<[u32; 2]>> = vec![Vec::new(); k];
    for (r, p) in family.records().dim(1).iter().zip(family.positions(1)) {
        let v = r.key.vertices();
        by_birth[p.birth(1)].push([v[0], v[1]]);
    }
    let label: Vec<u32> = family.records().dim(0).iter().map(|r| r.key.vertices()[0]).collect();
    let slot = |v: u32| label.binary_search(&v).expect("edge vertex is a vertex of the complex");
    let mut uf = UnionFind::<usize>::new(n);
    let mut count = n;
    by_birth
        .iter()
        .map(|edges| {
            for &[a, b] in edges {
                if uf.union(slot(a), slot(b)) {
                    count -= 1;
                }
            }
            count
        })
        .collect()
}

/// Exact volume of the alpha shape per interval: the sum of the volumes of
/// its tetrahedra.
pub fn volume_signature<T: ExactScalar>(family: &Family<T>, t: &Triangulation<T>) -> Vec<Ratio<T>> {
    let k = family.intervals();
    let mut added: Vec<T> = vec![T::zero(); k];
    for (r, p) in family.records().dim(3).iter().zip(family.positions(3)) {
        let v = r.key.vertices();
        let det = t.kernel().orientation_det([0, 1, 2, 3].map(|i| t.point(v[i])));
        let slot = &mut added[p.birth(3)];
        *slot = slot.clone() + det.abs();
    }
    let six = T::from_i64(6).expect("small constant");
    let mut sum = T::zero();
    added
        .into_iter()
        .map(|d| {
            sum = sum.clone() + d;
            Ratio::new(sum.clone(), six.clone())
        })
        .collect()
}

/// Area of a triangle from its exact squared cross product.
pub fn triangle_area<T: ExactScalar>(t: &Triangulation<T>, tri: [u32; 3]) -> f64 {
    let [a, b, c] = tri.map(|v| t.point(v).coords());
    let u: [T; 3] = std::array::from_fn(|j| b[j].clone() - a[j].clone());
    let w: [T; 3] = std::array::from_fn(|j| c[j].clone() - a[j].clone());
    let cross = [
        u[1].clone() * w[2].clone() - u[2].clone() * w[1].clone(),
        u[2].clone() * w[0].clone() - u[0].clone() * w[2].clone(),
        u[0].clone() * w[1].clone() - u[1].clone() * w[0].clone(),
    ];
    let sq = cross.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
    sq.to_f64_lossy().sqrt() / 2.0
}

/// Boundary area per interval. Regular triangles count once and singular
/// triangles twice, once for each exposed side.
pub fn area_signature<T: ExactScalar>(family: &Family<T>, t: &Triangulation<T>) -> Vec<f64> {
    let k = family.intervals();
    // Sides exposed by each triangle from a given interval on.
    let mut sides: Vec<Vec<(usize, i8)>> = vec![Vec::new(); k + 1];
    let mut areas = Vec::with_capacity(family.records().dim(2).len());
    for (j, (r, p)) in family.records().dim(2).iter().zip(family.positions(2)).enumerate() {
        let v = r.key.vertices();
        areas.push(triangle_area(t, [v[0], v[1], v[2]]));
        if let Some(rho) = p.rho.filter(|&rho| rho < p.mu_lo) {
            sides[rho].push((j, 2));
            sides[p.mu_lo].push((j, -1));
        } else {
            sides[p.mu_lo].push((j, 1));
        }
        sides[p.mu_hi].push((j, -1));
    }
    // Compensated running sum; reset to exactly zero whenever no triangle is
    // exposed.
    let mut exposed = 0i64;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(k);
    for events in sides.iter().take(k) {
        for &(j, delta) in events {
            exposed += i64::from(delta);
            let x = f64::from(delta) * areas[j];
            let s = sum + x;
            comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
            sum = s;
        }
        if exposed == 0 {
            (sum, comp) = (0.0, 0.0);
        }
        out.push(sum + comp);
    }
    out
}

/// Counts of simplices per dimension and class, per interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCounts {
    /// Indexed by dimension, then by the position of the class in
    /// [`Class::ALL`], then by interval.
    pub series: [[Vec<usize>; 3]; 4],
}

impl FaceCounts {
    pub fn get(&self, dim: usize, class: Class) -> &[usize] {
        &self.series[dim][class_slot(class)]
    }

    /// Total number of simplices of a dimension in interval `i`.
    pub fn total(&self, dim: usize, i: usize) -> usize {
        self.series[dim].iter().map(|s| s[i]).sum()
    }
}

fn class_slot(c: Class) -> usize {
    Class::ALL.iter().position(|&x| x == c).expect("known class")
}

pub fn face_count_signature<T: ExactScalar>(family: &Family<T>) -> FaceCounts {
    let k = family.intervals();
    let mut series: [[Vec<usize>; 3]; 4] = Default::default();
    for (d, per_dim) in series.iter_mut().enumerate() {
        let mut delta = vec![[0i64; 3]; k + 1];
        for p in family.positions(d) {
            // Class changes happen only at the interval endpoints.
            let mut marks = vec![p.birth(d), p.mu_lo, p.mu_hi];
            marks.sort_unstable();
            marks.dedup();
            let mut prev: Option<Class> = None;
            for &i in marks.iter().filter(|&&i| i < k) {
                let c = p.class_at(d, i);
                if c != prev {
                    if let Some(c) = prev {
                        delta[i][class_slot(c)] -= 1;
                    }
                    if let Some(c) = c {
                        delta[i][class_slot(c)] += 1;
                    }
                    prev = c;
                }
            }
        }
        let mut run = [0i64; 3];
        for s in per_dim.iter_mut() {
            s.reserve(k);
        }
        for row in delta.iter().take(k) {
            for c in 0..3 {
                run[c] += row[c];
                per_dim[c].push(run[c] as usize);
            }
        }
    }
    FaceCounts { series }
}

/// Every signature of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct Signatures<T: ExactScalar> {
    pub components: Vec<usize>,
    pub volume: Vec<Ratio<T>>,
    pub area: Vec<f64>,
    pub counts: FaceCounts,
}

impl<T: ExactScalar> Signatures<T> {
    pub fn compute(family: &Family<T>, t: &Triangulation<T>) -> Self {
        Self {
            components: components_signature(family),
            volume: volume_signature(family, t),
            area: area_signature(family, t),
            counts: face_count_signature(family),
        }
    }

    pub fn volume_f64(&self) -> Vec<f64> {
        self.volume.iter().map(crate::kernel::ratio_to_f64).collect()
    }
}
