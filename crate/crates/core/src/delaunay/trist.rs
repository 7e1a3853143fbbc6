//! Triangle-edge structure.
//!
//! Each triangle record stores its three vertices and, for each of its six
//! directed edges ("versions"), the next triangle around that edge. Around a
//! directed edge `p -> q` the triangles `(p, q, x_0), (p, q, x_1), ...` follow
//! each other so that every tetrahedron `(p, q, x_i, x_{i+1})` is positively
//! oriented. Tetrahedra are implicit: two consecutive triangles in a ring.
//!
//! Vertex 0 stands for the point at infinity; tetrahedra through it are the
//! ghosts that wrap the convex hull.

use std::collections::HashMap;

/// Label of the vertex at infinity.
pub(crate) const INF: u32 = 0;

const DEAD: u32 = u32::MAX;

// Version -> (org, dest, apex) slots.
const ORG: [usize; 6] = [0, 1, 2, 1, 2, 0];
const DEST: [usize; 6] = [1, 2, 0, 0, 1, 2];
const APEX: [usize; 6] = [2, 0, 1, 2, 0, 1];
const ENEXT: [u32; 6] = [1, 2, 0, 5, 3, 4];

/// Edge pairs of a tetrahedron `t`, each with the complementary pair ordered
/// so that `(t[i], t[j], t[k], t[l])` is an even permutation of `t`.
pub(crate) const TET_EDGES: [(usize, usize, usize, usize); 6] =
    [(0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 2, 0), (2, 3, 0, 1)];

/// A triangle together with one of its six directed edges, packed as
/// `triangle << 3 | version`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriEdge(u32);

impl TriEdge {
    pub(crate) fn new(tri: u32, ver: u32) -> Self {
        debug_assert!(ver < 6);
        Self(tri << 3 | ver)
    }

    pub fn tri(self) -> u32 {
        self.0 >> 3
    }

    pub fn version(self) -> u32 {
        self.0 & 7
    }

    /// Same triangle, reversed edge.
    pub fn sym(self) -> Self {
        Self::new(self.tri(), (self.version() + 3) % 6)
    }

    /// Next edge of the same triangle, keeping its orientation.
    pub fn enext(self) -> Self {
        Self::new(self.tri(), ENEXT[self.version() as usize])
    }
}

#[derive(Debug, Clone)]
#[repr(C)]
struct TriRecord {
    v: [u32; 3],
    next: [TriEdge; 6],
}

/// Sorted vertex triple, the lookup key of a triangle.
pub(crate) fn tri_key(a: u32, b: u32, c: u32) -> [u32; 3] {
    let mut k = [a, b, c];
    k.sort_unstable();
    k
}

#[derive(Debug, Clone, Default)]
pub(crate) struct TriStore {
    recs: Vec<TriRecord>,
    free: Vec<u32>,
    lookup: HashMap<[u32; 3], u32>,
}

impl TriStore {
    pub(crate) fn record_size() -> usize {
        std::mem::size_of::<TriRecord>()
    }

    pub(crate) fn org(&self, e: TriEdge) -> u32 {
        self.recs[e.tri() as usize].v[ORG[e.version() as usize]]
    }

    pub(crate) fn dest(&self, e: TriEdge) -> u32 {
        self.recs[e.tri() as usize].v[DEST[e.version() as usize]]
    }

    pub(crate) fn apex(&self, e: TriEdge) -> u32 {
        self.recs[e.tri() as usize].v[APEX[e.version() as usize]]
    }

    /// Next triangle around the directed edge of `e`.
    pub(crate) fn fnext(&self, e: TriEdge) -> TriEdge {
        self.recs[e.tri() as usize].next[e.version() as usize]
    }

    fn set_fnext(&mut self, e: TriEdge, f: TriEdge) {
        self.recs[e.tri() as usize].next[e.version() as usize] = f;
    }

    pub(crate) fn vertices(&self, tri: u32) -> [u32; 3] {
        self.recs[tri as usize].v
    }

    pub(crate) fn len(&self) -> usize {
        self.lookup.len()
    }

    pub(crate) fn find(&self, a: u32, b: u32, c: u32) -> Option<u32> {
        self.lookup.get(&tri_key(a, b, c)).copied()
    }

    /// The version of `tri` running from `p` to `q`.
    pub(crate) fn edge_of(&self, tri: u32, p: u32, q: u32) -> TriEdge {
        let v = &self.recs[tri as usize].v;
        (0..6)
            .map(|ver| TriEdge::new(tri, ver))
            .find(|e| v[ORG[e.version() as usize]] == p && v[DEST[e.version() as usize]] == q)
            .expect("edge belongs to triangle")
    }

    /// Triangle-edge `(p, q, x)`, if the triangle exists.
    pub(crate) fn te(&self, p: u32, q: u32, x: u32) -> Option<TriEdge> {
        self.find(p, q, x).map(|t| self.edge_of(t, p, q))
    }

    /// Live triangle ids.
    pub(crate) fn triangles(&self) -> impl Iterator<Item = u32> + '_ {
        self.recs.iter().enumerate().filter(|(_, r)| r.v[0] != DEAD).map(|(i, _)| i as u32)
    }

    /// Apexes around the edge of `e`, starting with `apex(e)`.
    pub(crate) fn ring(&self, e: TriEdge) -> Vec<u32> {
        let mut out = vec![self.apex(e)];
        let mut f = self.fnext(e);
        while f != e {
            out.push(self.apex(f));
            f = self.fnext(f);
            assert!(out.len() <= self.recs.len(), "open triangle ring");
        }
        out
    }

    /// Every tetrahedron, ghosts included, positively oriented.
    pub(crate) fn tetrahedra(&self) -> Vec<[u32; 4]> {
        let mut out = Vec::new();
        for t in self.triangles() {
            let [a, b, c] = self.vertices(t);
            let m = a.max(b).max(c);
            let e = TriEdge::new(t, 0);
            for side in [e, e.sym()] {
                let s = self.apex(self.fnext(side));
                if s > m {
                    out.push([self.org(side), self.dest(side), self.apex(side), s]);
                }
            }
        }
        out
    }

    fn alloc(&mut self, a: u32, b: u32, c: u32) -> u32 {
        let rec = TriRecord { v: [a, b, c], next: [TriEdge(0); 6] };
        let id = match self.free.pop() {
            Some(id) => {
                self.recs[id as usize] = rec;
                id
            }
            None => {
                self.recs.push(rec);
                (self.recs.len() - 1) as u32
            }
        };
        self.lookup.insert(tri_key(a, b, c), id);
        id
    }

    fn release(&mut self, id: u32) {
        let [a, b, c] = self.recs[id as usize].v;
        self.lookup.remove(&tri_key(a, b, c));
        self.recs[id as usize].v = [DEAD; 3];
        self.free.push(id);
    }

    /// Replaces the tetrahedra `removed` by `added` (both positively
    /// oriented). The two sets must cover the same region; triangles are
    /// created and deleted as needed and every affected ring is relinked.
    pub(crate) fn retetrahedralize(&mut self, removed: &[[u32; 4]], added: &[[u32; 4]]) {
        let mut edges: Vec<(u32, u32)> = removed
            .iter()
            .chain(added)
            .flat_map(|t| TET_EDGES.iter().map(move |&(i, j, _, _)| (t[i].min(t[j]), t[i].max(t[j]))))
            .collect();
        edges.sort_unstable();
        edges.dedup();

        // Current links x -> y around each affected edge p < q.
        let mut links: HashMap<(u32, u32), Vec<(u32, u32)>> = HashMap::with_capacity(edges.len());
        for &(p, q) in &edges {
            let start = removed
                .iter()
                .chain(added)
                .filter(|t| t.contains(&p) && t.contains(&q))
                .flat_map(|t| t.iter().copied().filter(|&x| x != p && x != q))
                .find_map(|x| self.te(p, q, x));
            let mut ring = Vec::new();
            if let Some(e0) = start {
                let mut e = e0;
                loop {
                    let f = self.fnext(e);
                    ring.push((self.apex(e), self.apex(f)));
                    e = f;
                    if e == e0 {
                        break;
                    }
                }
            }
            links.insert((p, q), ring);
        }
        let oriented = |t: &[u32; 4], (i, j, k, l): (usize, usize, usize, usize)| {
            if t[i] < t[j] {
                ((t[i], t[j]), (t[k], t[l]))
            } else {
                ((t[j], t[i]), (t[l], t[k]))
            }
        };
        for t in removed {
            for &pair in &TET_EDGES {
                let (edge, link) = oriented(t, pair);
                let ring = links.get_mut(&edge).expect("affected edge");
                let pos = ring.iter().position(|&l| l == link).expect("removed tetrahedron is present");
                ring.swap_remove(pos);
            }
        }
        for t in added {
            for &pair in &TET_EDGES {
                let (edge, link) = oriented(t, pair);
                links.get_mut(&edge).expect("affected edge").push(link);
            }
        }

        let faces = |ts: &[[u32; 4]]| -> Vec<[u32; 3]> {
            let mut f: Vec<[u32; 3]> = ts
                .iter()
                .flat_map(|t| (0..4).map(move |s| {
                    let r: Vec<u32> = (0..4).filter(|&i| i != s).map(|i| t[i]).collect();
                    tri_key(r[0], r[1], r[2])
                }))
                .collect();
            f.sort_unstable();
            f.dedup();
            f
        };
        let new_faces = faces(added);
        for f in faces(removed) {
            if new_faces.binary_search(&f).is_err() {
                let id = self.lookup[&f];
                self.release(id);
            }
        }
        for f in &new_faces {
            if !self.lookup.contains_key(f) {
                self.alloc(f[0], f[1], f[2]);
            }
        }

        for (&(p, q), ring) in &links {
            debug_assert!(ring_is_cycle(ring), "ring around ({p},{q}) is not a single cycle: {ring:?}");
            for &(x, y) in ring {
                let ex = self.te(p, q, x).expect("ring triangle exists");
                let ey = self.te(p, q, y).expect("ring triangle exists");
                self.set_fnext(ex, ey);
                self.set_fnext(ey.sym(), ex.sym());
            }
        }
    }
}

fn ring_is_cycle(ring: &[(u32, u32)]) -> bool {
    if ring.is_empty() {
        return true;
    }
    let next: HashMap<u32, u32> = ring.iter().copied().collect();
    if next.len() != ring.len() {
        return false;
    }
    let start = ring[0].0;
    let mut x = start;
    for _ in 0..ring.len() {
        match next.get(&x) {
            Some(&y) => x = y,
            None => return false,
        }
    }
    x == start
}
