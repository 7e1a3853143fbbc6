use std::collections::HashSet;

use super::Class;
use crate::delaunay::{SimplexKey, Triangulation};
use crate::scalar::ExactScalar;

/// The alpha complex for one open interval of the spectrum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplexView {
    pub interval: usize,
    /// Simplices with their classes by dimension, sorted by key.
    pub simplices: [Vec<(SimplexKey, Class)>; 4],
}

impl ComplexView {
    pub fn count(&self, d: usize, class: Class) -> usize {
        self.simplices[d].iter().filter(|(_, c)| *c == class).count()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn class_of(&self, key: &SimplexKey) -> Option<Class> {
        let list = &self.simplices[key.dim()];
        list.binary_search_by_key(key, |(k, _)| *k).ok().map(|i| list[i].1)
    }

    pub fn contains(&self, key: &SimplexKey) -> bool {
        self.class_of(key).is_some()
    }

    pub fn keys(&self, d: usize) -> impl Iterator<Item = SimplexKey> + '_ {
        self.simplices[d].iter().map(|(k, _)| *k)
    }

    /// Simplices whose facets are not all in the complex.
    pub fn closure_violations(&self) -> Vec<SimplexKey> {
        (1..4)
            .flat_map(|d| self.keys(d))
            .filter(|k| k.facets().iter().any(|f| !self.contains(f)))
            .collect()
    }
}

/// The boundary of an alpha shape.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Boundary {
    /// Regular triangles ordered counterclockwise when seen from outside.
    pub regular: Vec<[u32; 3]>,
    pub singular_triangles: Vec<SimplexKey>,
    pub singular_edges: Vec<SimplexKey>,
    pub singular_vertices: Vec<u32>,
}

/// Regular and singular simplices of a complex. Each regular triangle is
/// oriented so that the tetrahedron of the complex behind it lies on its
/// negative side.
pub fn shape_boundary<T: ExactScalar>(view: &ComplexView, t: &Triangulation<T>) -> Boundary {
    let tets: HashSet<SimplexKey> = view.keys(3).collect();
    let mut b = Boundary::default();
    for &(key, class) in &view.simplices[2] {
        match class {
            Class::Regular => {
                let apexes = t.triangle_apexes(&key).expect("triangle of the triangulation");
                let inner = apexes
                    .into_iter()
                    .find(|&x| x != 0 && !key.contains(x) && tets.contains(&SimplexKey::new(&[key.vertices(), &[x]].concat())))
                    .expect("regular triangle bounds a tetrahedron of the complex");
                let [a, bb, c] = [key.vertices()[0], key.vertices()[1], key.vertices()[2]];
                let det = t.kernel().orientation_det([a, bb, c, inner].map(|v| t.point(v)));
                b.regular.push(if det.is_positive() { [a, bb, c] } else { [a, c, bb] });
            }
            Class::Singular => b.singular_triangles.push(key),
            Class::Interior => {}
        }
    }
    b.singular_edges = view.simplices[1].iter().filter(|(_, c)| *c == Class::Singular).map(|(k, _)| *k).collect();
    b.singular_vertices =
        view.simplices[0].iter().filter(|(_, c)| *c == Class::Singular).map(|(k, _)| k.vertices()[0]).collect();
    b
}
