use std::collections::HashMap;

use super::{AlphaError, IntervalRecord, Records};
use crate::delaunay::{SimplexKey, Triangulation};
use crate::kernel::{RadiusSq, Threshold};
use crate::scalar::ExactScalar;

/// Computes the interval record of every simplex of the retained
/// triangulation, from tetrahedra down to vertices.
///
/// Attachment is decided against the apexes of all cofaces in the perturbed
/// triangulation, flat tetrahedra included, while the mu values only use the
/// retained complex.
pub fn classify_all<T: ExactScalar>(t: &Triangulation<T>) -> Result<Records<T>, AlphaError> {
    let k = t.kernel();
    let p = |v: u32| t.point(v);
    let e = t.enumerate();

    // Apexes of every finite triangle around each triangle and edge.
    let mut tri_apex: HashMap<SimplexKey, Vec<u32>> = HashMap::new();
    let mut edge_apex: HashMap<SimplexKey, Vec<u32>> = HashMap::new();
    for tet in t.tetrahedra() {
        for f in tet.key.facets() {
            let opp = tet.key.opposite(&f).expect("facet of its tetrahedron");
            tri_apex.entry(f).or_default().push(opp);
        }
    }
    for tri in tri_apex.keys() {
        for edge in tri.facets() {
            edge_apex.entry(edge).or_default().push(tri.opposite(&edge).expect("facet of its triangle"));
        }
    }

    let mut by_dim: [Vec<IntervalRecord<T>>; 4] = Default::default();
    let mut index: HashMap<SimplexKey, usize> = HashMap::new();

    for (&key, &on_hull) in e.simplices[3].iter().zip(&e.hull[3]) {
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| p(key.vertices()[i]));
        let rho = k.rho_sq_tetrahedron(a, b, c, d)?;
        by_dim[3].push(IntervalRecord {
            key,
            rho_sq: Some(rho.clone()),
            attached: false,
            on_hull,
            mu_lo_sq: rho.clone(),
            mu_hi_sq: Threshold::Finite(rho),
        });
    }

    for d in (0..3).rev() {
        // Cofaces of each simplex of dimension d within the retained complex.
        index.clear();
        for (i, key) in e.simplices[d].iter().enumerate() {
            index.insert(*key, i);
        }
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); e.simplices[d].len()];
        for (j, r) in by_dim[d + 1].iter().enumerate() {
            for f in r.key.facets() {
                up[index[&f]].push(j);
            }
        }
        let mut layer = Vec::with_capacity(e.simplices[d].len());
        for ((&key, &on_hull), up) in e.simplices[d].iter().zip(&e.hull[d]).zip(&up) {
            let v = key.vertices();
            let (rho_sq, attached) = match d {
                0 => (None, false),
                1 => {
                    let (a, b) = (p(v[0]), p(v[1]));
                    let mut attached = false;
                    for &x in edge_apex.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                        if k.edge_attached(a, b, p(x))?.is_positive() {
                            attached = true;
                            break;
                        }
                    }
                    (Some(k.rho_sq_edge(a, b)?), attached)
                }
                _ => {
                    let (a, b, c) = (p(v[0]), p(v[1]), p(v[2]));
                    let mut attached = false;
                    for &x in tri_apex.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                        if k.triangle_attached(a, b, c, p(x))?.is_positive() {
                            attached = true;
                            break;
                        }
                    }
                    (Some(k.rho_sq_triangle(a, b, c)?), attached)
                }
            };
            let cofaces = up.iter().map(|&j| &by_dim[d + 1][j]);
            let mu_lo_sq = cofaces
                .clone()
                .map(|c| match (&c.rho_sq, c.attached) {
                    (Some(r), false) => r,
                    _ => &c.mu_lo_sq,
                })
                .min()
                .ok_or(AlphaError::UndefinedMu(key))?
                .clone();
            let mu_hi_sq = if on_hull {
                Threshold::Infinite
            } else {
                cofaces.map(|c| &c.mu_hi_sq).max().expect("cofaces are present").clone()
            };
            layer.push(IntervalRecord { key, rho_sq, attached, on_hull, mu_lo_sq, mu_hi_sq });
        }
        by_dim[d] = layer;
    }
    Ok(Records::new(by_dim))
}

impl<T: ExactScalar> IntervalRecord<T> {
    /// Squared alpha from which the simplex is in the complex.
    pub fn birth_sq(&self) -> RadiusSq<T> {
        match (self.dim(), &self.rho_sq, self.attached) {
            (0, _, _) => RadiusSq::zero(),
            (1 | 2, Some(r), false) => r.clone(),
            _ => self.mu_lo_sq.clone(),
        }
    }
}
