use std::collections::{HashMap, HashSet};

use super::{DelaunayError, SimplexKey, Triangulation};
use crate::scalar::ExactScalar;

/// Outcome of flat-tetrahedron removal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlatReport {
    /// Tetrahedra with a zero unperturbed orientation determinant.
    pub flat: usize,
    /// Flat tetrahedra peeled off the hull.
    pub removed: Vec<SimplexKey>,
    /// Flat tetrahedra enclosed by others, which stay in the complex.
    pub interior: Vec<SimplexKey>,
}

impl<T: ExactScalar> Triangulation<T> {
    /// Removes the tetrahedra that are flat in the unperturbed input and can
    /// be reached from the outside through other flat tetrahedra. Such
    /// tetrahedra cover points that the perturbation pushed just inside a
    /// coplanar part of the hull. The structure is kept; removed tetrahedra
    /// are only marked, so [`Triangulation::enumerate`] and
    /// [`Triangulation::tetrahedra`] reflect the result.
    pub fn postprocess_flat_tets(&mut self) -> Result<FlatReport, DelaunayError> {
        let tets = self.tetrahedra();
        let flat: HashSet<SimplexKey> = tets
            .iter()
            .filter(|t| {
                let [a, b, c, d] = t.oriented.map(|v| self.point(v));
                self.kernel.orientation_det([a, b, c, d]).is_zero()
            })
            .map(|t| t.key)
            .collect();
        if flat.len() == tets.len() {
            return Err(DelaunayError::DegenerateInput { rank: self.affine_rank() });
        }
        // Tetrahedra on each side of every triangle.
        let mut sides: HashMap<SimplexKey, Vec<SimplexKey>> = HashMap::new();
        for t in &tets {
            for f in t.key.facets() {
                sides.entry(f).or_default().push(t.key);
            }
        }
        let mut removed: HashSet<SimplexKey> = HashSet::new();
        let mut order: Vec<SimplexKey> = flat.iter().copied().collect();
        order.sort_unstable();
        loop {
            let mut changed = false;
            for t in &order {
                if removed.contains(t) {
                    continue;
                }
                let exposed = t.facets().iter().any(|f| {
                    let s = &sides[f];
                    s.len() == 1 || s.iter().any(|o| o != t && removed.contains(o))
                });
                if exposed {
                    removed.insert(*t);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut removed_list: Vec<SimplexKey> = removed.iter().copied().collect();
        removed_list.sort_unstable();
        let mut interior: Vec<SimplexKey> = flat.difference(&removed).copied().collect();
        interior.sort_unstable();
        self.flat_removed = removed;
        Ok(FlatReport { flat: flat.len(), removed: removed_list, interior })
    }

    /// Dimension of the affine hull of the input points (0 to 3).
    pub fn affine_rank(&self) -> usize {
        let pts = &self.points;
        let a = &pts[0];
        let Some(b) = pts.iter().find(|p| p.coords() != a.coords()) else {
            return 0;
        };
        let diff = |p: &crate::kernel::ExactPoint<T>, q: &crate::kernel::ExactPoint<T>| {
            [0, 1, 2].map(|j| p.coords()[j].clone() - q.coords()[j].clone())
        };
        let u = diff(b, a);
        let cross = |v: &[T; 3]| {
            [
                u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
                u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
                u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
            ]
        };
        let Some(n) = pts.iter().map(|p| cross(&diff(p, a))).find(|n| n.iter().any(|x| !x.is_zero())) else {
            return 1;
        };
        let flat = pts.iter().all(|p| {
            let d = diff(p, a);
            (n[0].clone() * d[0].clone() + n[1].clone() * d[1].clone() + n[2].clone() * d[2].clone()).is_zero()
        });
        if flat {
            2
        } else {
            3
        }
    }

    /// Whether a tetrahedron was removed as flat.
    pub fn is_removed(&self, tet: &SimplexKey) -> bool {
        self.flat_removed.contains(tet)
    }
}
