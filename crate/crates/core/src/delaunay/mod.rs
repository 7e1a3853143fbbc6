//! Delaunay triangulation by incremental flipping.
//!
//! Points are inserted in lexicographic order. Each new point lies outside the
//! current hull, so it is connected to the hull facets it sees, after which
//! flips restore local Delaunayhood around it. All decisions go through the
//! perturbed predicates, so the result is the Delaunay triangulation of the
//! perturbed point set. [`Triangulation::postprocess_flat_tets`] then peels off
//! tetrahedra that are flat in the unperturbed input.

mod build;
mod flat;
mod key;
mod trist;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{ExactPoint, Kernel, KernelError};
use crate::scalar::ExactScalar;

pub use flat::FlatReport;
pub use key::SimplexKey;
pub use trist::TriEdge;
use trist::{TriStore, INF};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DelaunayError {
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(u32, u32),
    #[error("point labels must be 1..=n in order; found {found} at position {position}")]
    BadLabel { position: usize, found: u32 },
    #[error("all tetrahedra are flat: the input has affine rank {rank}")]
    DegenerateInput { rank: usize },
    #[error("{0} is not a simplex of the triangulation")]
    NotFound(SimplexKey),
    #[error("{0} lies on the convex hull")]
    OnHull(SimplexKey),
    #[error("flip precondition fails for {0}")]
    NotFlippable(SimplexKey),
    #[error("{0} triangles are not locally Delaunay after construction")]
    AuditFailed(usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Construction counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildCounters {
    pub insertions: u64,
    pub flips_two_three: u64,
    pub flips_three_two: u64,
    /// Suspect triangles that were not locally Delaunay but admitted no flip
    /// when examined.
    pub unflippable: u64,
    /// Insertions whose first visible facet was not adjacent to the previous
    /// point and required a scan of the hull.
    pub hull_scans: u64,
}

/// One finite tetrahedron with its positive orientation and whether it
/// survived flat-tetrahedron removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tetrahedron {
    pub key: SimplexKey,
    pub oriented: [u32; 4],
    pub retained: bool,
}

/// Simplices of the retained complex by dimension, each with its hull mark.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub simplices: [Vec<SimplexKey>; 4],
    pub hull: [Vec<bool>; 4],
}

impl Enumeration {
    pub fn counts(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|d| self.simplices[d].len())
    }
}

/// Delaunay triangulation of a labelled point set.
#[derive(Debug)]
pub struct Triangulation<T: ExactScalar = crate::Coord> {
    points: Vec<ExactPoint<T>>,
    store: TriStore,
    kernel: Kernel,
    flat_removed: HashSet<SimplexKey>,
    counters: BuildCounters,
    /// A hull triangle-edge leaving the most recently inserted point.
    anchor: Option<TriEdge>,
}

impl<T: ExactScalar> Triangulation<T> {
    /// Points must carry labels `1..=n` in slice order.
    pub fn build(points: Vec<ExactPoint<T>>) -> Result<Self, DelaunayError> {
        Self::build_with(points, Kernel::new())
    }

    pub fn build_with(points: Vec<ExactPoint<T>>, kernel: Kernel) -> Result<Self, DelaunayError> {
        if points.len() < 4 {
            return Err(DelaunayError::TooFewPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.index() as usize != i + 1 {
                return Err(DelaunayError::BadLabel { position: i, found: p.index() });
            }
        }
        let mut t = Self {
            points,
            store: TriStore::default(),
            kernel,
            flat_removed: HashSet::new(),
            counters: BuildCounters::default(),
            anchor: None,
        };
        t.construct()?;
        Ok(t)
    }

    pub fn points(&self) -> &[ExactPoint<T>] {
        &self.points
    }

    pub fn point(&self, label: u32) -> &ExactPoint<T> {
        &self.points[label as usize - 1]
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn counters(&self) -> BuildCounters {
        self.counters
    }

    /// Number of triangles in the structure, ghosts and flat ones included.
    pub fn triangle_count(&self) -> usize {
        self.store.len()
    }

    /// Size in bytes of one packed triangle record.
    pub fn triangle_record_size() -> usize {
        TriStore::record_size()
    }

    /// All finite tetrahedra, including those marked as flat and removed.
    pub fn tetrahedra(&self) -> Vec<Tetrahedron> {
        let mut out: Vec<Tetrahedron> = self
            .store
            .tetrahedra()
            .into_iter()
            .filter(|t| !t.contains(&INF))
            .map(|oriented| {
                let key = SimplexKey::new(&oriented);
                Tetrahedron { key, oriented, retained: !self.flat_removed.contains(&key) }
            })
            .collect();
        out.sort_by_key(|t| t.key);
        out
    }

    /// The two vertices opposite a triangle (0 stands for infinity).
    pub fn triangle_apexes(&self, tri: &SimplexKey) -> Result<[u32; 2], DelaunayError> {
        let e = self.triangle_edge(tri)?;
        Ok([self.store.apex(self.store.fnext(e)), self.store.apex(self.store.fnext(e.sym()))])
    }

    /// Apexes of the triangles around an edge, in ring order (0 stands for
    /// infinity).
    pub fn edge_ring(&self, edge: &SimplexKey) -> Result<Vec<u32>, DelaunayError> {
        let [p, q] = match *edge.vertices() {
            [p, q] => [p, q],
            _ => return Err(DelaunayError::NotFound(*edge)),
        };
        // Any triangle on the edge: look through the tetrahedra around p.
        let start = self
            .store
            .triangles()
            .map(|t| self.store.vertices(t))
            .find(|v| v.contains(&p) && v.contains(&q))
            .ok_or(DelaunayError::NotFound(*edge))?;
        let x = start.iter().copied().find(|&x| x != p && x != q).expect("third vertex");
        let e = self.store.te(p, q, x).expect("triangle exists");
        Ok(self.store.ring(e))
    }

    fn triangle_edge(&self, tri: &SimplexKey) -> Result<TriEdge, DelaunayError> {
        match *tri.vertices() {
            [a, b, c] => self.store.te(a, b, c).ok_or(DelaunayError::NotFound(*tri)),
            _ => Err(DelaunayError::NotFound(*tri)),
        }
    }

    /// Whether an interior triangle is locally Delaunay: the apex on one side
    /// lies outside the circumsphere of the tetrahedron on the other side.
    pub fn locally_delaunay(&self, tri: &SimplexKey) -> Result<bool, DelaunayError> {
        let e = self.triangle_edge(tri)?;
        let (a, b, c) = (self.store.org(e), self.store.dest(e), self.store.apex(e));
        let [s1, s2] = self.triangle_apexes(tri)?;
        if a == INF || b == INF || c == INF || s1 == INF || s2 == INF {
            return Err(DelaunayError::OnHull(*tri));
        }
        let p = |v| self.point(v);
        Ok(self.kernel.in_sphere(p(a), p(b), p(c), p(s1), p(s2))?.is_negative())
    }

    /// Number of interior triangles that are not locally Delaunay.
    pub fn audit(&self) -> Result<usize, DelaunayError> {
        let mut bad = 0;
        for t in self.store.triangles() {
            let key = SimplexKey::new(&self.store.vertices(t));
            match self.locally_delaunay(&key) {
                Ok(true) | Err(DelaunayError::OnHull(_)) => {}
                Ok(false) => bad += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(bad)
    }

    /// Checks ring closure and the three-per-edge-ring structure: every
    /// directed edge ring is closed, consecutive triangles share the edge and
    /// every triangle bounds exactly two tetrahedra.
    pub fn check_structure(&self) -> Result<(), String> {
        let s = &self.store;
        for t in s.triangles() {
            for ver in [0, 1, 2] {
                let e = s.edge_of(t, s.vertices(t)[ver], s.vertices(t)[(ver + 1) % 3]);
                let ring = s.ring(e);
                if ring.len() < 3 {
                    return Err(format!("edge ring of length {} at triangle {:?}", ring.len(), s.vertices(t)));
                }
                let mut f = e;
                for _ in 0..ring.len() {
                    let g = s.fnext(f);
                    if (s.org(g), s.dest(g)) != (s.org(e), s.dest(e)) {
                        return Err(format!("ring around {:?} leaves its edge", (s.org(e), s.dest(e))));
                    }
                    if s.fnext(g.sym()) != f.sym() {
                        return Err("reverse ring does not mirror forward ring".into());
                    }
                    f = g;
                }
            }
            // Both tetrahedra on a triangle must agree from each of its edges.
            let e = TriEdge::new(t, 0);
            let s1 = s.apex(s.fnext(e));
            for k in [e.enext(), e.enext().enext()] {
                if s.apex(s.fnext(k)) != s1 {
                    return Err(format!("triangle {:?} sees two different tetrahedra on one side", s.vertices(t)));
                }
            }
        }
        Ok(())
    }

    /// Lists the retained complex by dimension with hull marks. A triangle is
    /// on the hull when exactly one of its sides is a retained tetrahedron;
    /// lower simplices are on the hull when they are faces of a hull triangle.
    pub fn enumerate(&self) -> Enumeration {
        let tets: Vec<SimplexKey> = self.tetrahedra().into_iter().filter(|t| t.retained).map(|t| t.key).collect();
        let mut sides: std::collections::HashMap<SimplexKey, u8> = std::collections::HashMap::new();
        for t in &tets {
            for f in t.facets() {
                *sides.entry(f).or_default() += 1;
            }
        }
        let mut hull_set: HashSet<SimplexKey> = HashSet::new();
        let mut all: [HashSet<SimplexKey>; 3] = Default::default();
        for (f, &n) in &sides {
            let faces = f.faces();
            if n == 1 {
                hull_set.extend(faces.iter().copied());
            }
            for g in faces {
                if g.dim() > 0 {
                    all[g.dim()].insert(g);
                }
            }
        }
        let mut out = Enumeration::default();
        out.simplices[0] = (1..=self.points.len() as u32).map(SimplexKey::vertex).collect();
        for d in [1, 2] {
            let mut v: Vec<SimplexKey> = all[d].iter().copied().collect();
            v.sort_unstable();
            out.simplices[d] = v;
        }
        out.simplices[3] = tets;
        // Vertices outside every retained tetrahedron count as hull vertices.
        let covered: HashSet<u32> = out.simplices[3].iter().flat_map(|t| t.vertices().to_vec()).collect();
        for d in 0..4 {
            out.hull[d] = out.simplices[d]
                .iter()
                .map(|k| hull_set.contains(k) || (d == 0 && !covered.contains(&k.vertices()[0])))
                .collect();
        }
        out
    }
}
