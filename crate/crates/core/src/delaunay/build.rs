use super::trist::{tri_key, TriEdge, INF};
use super::{DelaunayError, SimplexKey, Triangulation};
use crate::kernel::{ExactPoint, Polarity};
use crate::scalar::ExactScalar;

/// Ghost tetrahedra wrapping a positively oriented tetrahedron.
fn ghosts(t: [u32; 4]) -> [[u32; 4]; 4] {
    [0, 1, 2, 3].map(|k| {
        let mut g = t;
        g[k] = INF;
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        g.swap(i, j);
        g
    })
}

impl<T: ExactScalar> Triangulation<T> {
    fn p(&self, v: u32) -> &ExactPoint<T> {
        self.point(v)
    }

    fn orient(&self, a: u32, b: u32, c: u32, d: u32) -> Result<Polarity, DelaunayError> {
        Ok(self.kernel.orientation(self.p(a), self.p(b), self.p(c), self.p(d))?.value)
    }

    pub(super) fn construct(&mut self) -> Result<(), DelaunayError> {
        let mut order: Vec<u32> = (1..=self.points.len() as u32).collect();
        order.sort_by(|&a, &b| self.p(a).coords().cmp(self.p(b).coords()).then(a.cmp(&b)));
        for w in order.windows(2) {
            if self.p(w[0]).coords() == self.p(w[1]).coords() {
                return Err(DelaunayError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let mut seed = [order[0], order[1], order[2], order[3]];
        if self.orient(seed[0], seed[1], seed[2], seed[3])? == Polarity::Negative {
            seed.swap(0, 1);
        }
        let mut added = vec![seed];
        added.extend(ghosts(seed));
        self.store.retetrahedralize(&[], &added);
        self.counters.insertions = 4;

        let mut prev = seed[3];
        for &q in &order[4..] {
            self.insert(q, prev)?;
            prev = q;
        }

        let bad = self.repair()?;
        if bad > 0 {
            return Err(DelaunayError::AuditFailed(bad));
        }
        Ok(())
    }

    /// Hull facets `(x, y, z)` whose outer side is a ghost, as triangle-edges
    /// around vertex `v`.
    fn hull_facets_at(&self, v: u32) -> Vec<TriEdge> {
        let s = &self.store;
        // Any hull triangle (v, INF, x): its ring gives the hull neighbours.
        let Some(start) = s.triangles().find_map(|t| {
            let vs = s.vertices(t);
            (vs.contains(&v) && vs.contains(&INF)).then(|| {
                let x = vs.iter().copied().find(|&x| x != v && x != INF).expect("third vertex");
                s.te(v, INF, x).expect("triangle exists")
            })
        }) else {
            return Vec::new();
        };
        self.hull_facets_from(start)
    }

    fn hull_facets_from(&self, start: TriEdge) -> Vec<TriEdge> {
        let s = &self.store;
        let v = s.org(start);
        let ring = s.ring(start);
        (0..ring.len())
            .map(|i| {
                let (x, y) = (ring[i], ring[(i + 1) % ring.len()]);
                // Ghost (v, INF, x, y) is even with (x, y, v, INF).
                s.te(x, y, v).expect("hull facet exists")
            })
            .collect()
    }

    fn visible(&self, f: TriEdge, q: u32) -> Result<bool, DelaunayError> {
        let s = &self.store;
        Ok(self.orient(s.org(f), s.dest(f), s.apex(f), q)? == Polarity::Positive)
    }

    fn insert(&mut self, q: u32, prev: u32) -> Result<(), DelaunayError> {
        self.counters.insertions += 1;
        let mut start = None;
        if let Some(anchor) = self.anchor.take().filter(|&e| self.store.org(e) == prev) {
            for f in self.hull_facets_from(anchor) {
                if self.visible(f, q)? {
                    start = Some(f);
                    break;
                }
            }
        } else {
            for f in self.hull_facets_at(prev) {
                if self.visible(f, q)? {
                    start = Some(f);
                    break;
                }
            }
        }
        let start = match start {
            Some(f) => f,
            None => {
                self.counters.hull_scans += 1;
                self.scan_hull(q)?
            }
        };

        // Flood-fill the visible facets.
        let s = &self.store;
        let mut visible: Vec<TriEdge> = vec![start];
        let mut seen = std::collections::HashSet::new();
        seen.insert(start.tri());
        let mut horizon: Vec<(u32, u32)> = Vec::new();
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            for e in [f, f.enext(), f.enext().enext()] {
                let nb = s.fnext(s.fnext(e)).sym();
                if seen.contains(&nb.tri()) {
                    continue;
                }
                if self.visible(nb, q)? {
                    seen.insert(nb.tri());
                    visible.push(nb);
                } else {
                    horizon.push((s.org(e), s.dest(e)));
                }
            }
        }
        let facets: Vec<[u32; 3]> = visible.iter().map(|&f| [s.org(f), s.dest(f), s.apex(f)]).collect();

        let removed: Vec<[u32; 4]> = facets.iter().map(|&[x, y, z]| [x, y, z, INF]).collect();
        let mut added: Vec<[u32; 4]> = facets.iter().map(|&[x, y, z]| [x, y, z, q]).collect();
        added.extend(horizon.iter().map(|&(x, y)| [x, y, q, INF]));
        self.store.retetrahedralize(&removed, &added);
        let &(hx, _) = horizon.first().expect("a visible region has a horizon");
        self.anchor = Some(self.store.te(q, INF, hx).expect("new hull triangle"));

        let mut stack: Vec<[u32; 3]> = facets.iter().map(|&[x, y, z]| tri_key(x, y, z)).collect();
        self.flip_loop(&mut stack, q)?;
        Ok(())
    }

    fn scan_hull(&self, q: u32) -> Result<TriEdge, DelaunayError> {
        let s = &self.store;
        for t in s.triangles() {
            let [a, b, c] = s.vertices(t);
            if a == INF || b == INF || c == INF {
                continue;
            }
            let e = TriEdge::new(t, 0);
            for side in [e, e.sym()] {
                if s.apex(s.fnext(side)) == INF && self.visible(side, q)? {
                    return Ok(side);
                }
            }
        }
        unreachable!("a point outside the hull sees some facet")
    }

    /// Processes suspect triangles until none is left. Triangles containing
    /// `q` are not pushed; pass `INF` to push every boundary triangle.
    fn flip_loop(&mut self, stack: &mut Vec<[u32; 3]>, q: u32) -> Result<(), DelaunayError> {
        while let Some(key) = stack.pop() {
            if key.contains(&INF) {
                continue;
            }
            let Some(e) = self.store.te(key[0], key[1], key[2]) else {
                continue;
            };
            let s = &self.store;
            let (a, b, c) = (s.org(e), s.dest(e), s.apex(e));
            let s1 = s.apex(s.fnext(e));
            let s2 = s.apex(s.fnext(e.sym()));
            if s1 == INF || s2 == INF {
                continue;
            }
            if self.kernel.in_sphere(self.p(a), self.p(b), self.p(c), self.p(s1), self.p(s2))?.is_negative() {
                continue;
            }
            let boundary = match self.try_flip(a, b, c, s1, s2)? {
                Some(b) => b,
                None => {
                    self.counters.unflippable += 1;
                    continue;
                }
            };
            stack.extend(boundary.into_iter().filter(|f| !f.contains(&q)));
        }
        Ok(())
    }

    /// Flips the triangle `(a, b, c)` between tetrahedra `(a, b, c, s1)` and
    /// `(b, a, c, s2)` if some flip applies. Returns the boundary triangles of
    /// the flipped region.
    fn try_flip(&mut self, a: u32, b: u32, c: u32, s1: u32, s2: u32) -> Result<Option<Vec<[u32; 3]>>, DelaunayError> {
        // Edge x -> y of the triangle is reflex when s2 lies on the far side
        // of the plane (x, y, s1) from the triangle's third vertex.
        let cyc = [(a, b, c), (b, c, a), (c, a, b)];
        let mut reflex = [false; 3];
        for (k, &(x, y, _)) in cyc.iter().enumerate() {
            reflex[k] = self.orient(x, y, s1, s2)? == Polarity::Positive;
        }
        if reflex.iter().all(|r| !r) {
            let removed = [[a, b, c, s1], [b, a, c, s2]];
            let added: Vec<[u32; 4]> = cyc.iter().map(|&(x, y, _)| [y, x, s1, s2]).collect();
            self.store.retetrahedralize(&removed, &added);
            self.counters.flips_two_three += 1;
            let boundary = cyc.iter().flat_map(|&(x, y, _)| [tri_key(x, y, s1), tri_key(x, y, s2)]).collect();
            return Ok(Some(boundary));
        }
        for (k, &(x, y, z)) in cyc.iter().enumerate() {
            if !reflex[k] {
                continue;
            }
            if let Some(boundary) = self.flip_three_two(x, y, z, s1, s2)? {
                return Ok(Some(boundary));
            }
        }
        Ok(None)
    }

    /// Replaces the three tetrahedra around edge `x y` (whose ring must be
    /// exactly `z, s1, s2`) by two tetrahedra sharing triangle `(z, s1, s2)`.
    fn flip_three_two(&mut self, x: u32, y: u32, z: u32, s1: u32, s2: u32) -> Result<Option<Vec<[u32; 3]>>, DelaunayError> {
        let s = &self.store;
        let e = s.te(x, y, z).expect("triangle exists");
        let ring = s.ring(e);
        if ring != [z, s1, s2] || s.find(z, s1, s2).is_some() || [z, s1, s2].contains(&INF) {
            return Ok(None);
        }
        let removed = [[x, y, z, s1], [y, x, z, s2], [x, y, s1, s2]];
        let added = if self.orient(z, s1, s2, x)? == Polarity::Positive {
            [[z, s1, s2, x], [s1, z, s2, y]]
        } else {
            [[s1, z, s2, x], [z, s1, s2, y]]
        };
        self.store.retetrahedralize(&removed, &added);
        self.counters.flips_three_two += 1;
        let mut boundary = Vec::with_capacity(6);
        for apex in [x, y] {
            for (u, v) in [(z, s1), (s1, s2), (s2, z)] {
                boundary.push(tri_key(u, v, apex));
            }
        }
        Ok(Some(boundary))
    }

    /// Runs the flip loop over every triangle that fails the local test, until
    /// no further flip applies. Returns the number of remaining failures.
    fn repair(&mut self) -> Result<usize, DelaunayError> {
        loop {
            let bad = self.failing_triangles()?;
            if bad.is_empty() {
                return Ok(0);
            }
            let before = self.counters.flips_two_three + self.counters.flips_three_two;
            let mut stack = bad.clone();
            self.flip_loop(&mut stack, INF)?;
            if self.counters.flips_two_three + self.counters.flips_three_two == before {
                return Ok(bad.len());
            }
        }
    }

    fn failing_triangles(&self) -> Result<Vec<[u32; 3]>, DelaunayError> {
        let mut bad = Vec::new();
        let tris: Vec<u32> = self.store.triangles().collect();
        for t in tris {
            let v = self.store.vertices(t);
            match self.locally_delaunay(&SimplexKey::new(&v)) {
                Ok(false) => bad.push(tri_key(v[0], v[1], v[2])),
                Ok(true) | Err(DelaunayError::OnHull(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(bad)
    }

    /// Flips an interior triangle whose two tetrahedra form a convex region
    /// into three tetrahedra around the edge joining the opposite vertices.
    /// The triangle must not be locally Delaunay.
    pub fn flip_triangle_to_edge(&mut self, tri: &SimplexKey) -> Result<(), DelaunayError> {
        if self.locally_delaunay(tri)? {
            return Err(DelaunayError::NotFlippable(*tri));
        }
        let e = self.triangle_edge(tri)?;
        let s = &self.store;
        let (a, b, c) = (s.org(e), s.dest(e), s.apex(e));
        let [s1, s2] = self.triangle_apexes(tri)?;
        for (x, y) in [(a, b), (b, c), (c, a)] {
            if self.orient(x, y, s1, s2)? == Polarity::Positive {
                return Err(DelaunayError::NotFlippable(*tri));
            }
        }
        let done = self.try_flip(a, b, c, s1, s2)?;
        debug_assert!(done.is_some());
        Ok(())
    }

    /// Flips an edge of degree three into the triangle spanned by the three
    /// vertices around it, replacing three tetrahedra by two. The edge must
    /// pierce that triangle.
    pub fn flip_edge_to_triangle(&mut self, edge: &SimplexKey) -> Result<(), DelaunayError> {
        let ring = self.edge_ring(edge)?;
        let &[x, y] = edge.vertices() else {
            return Err(DelaunayError::NotFound(*edge));
        };
        if ring.len() != 3 || ring.contains(&INF) {
            return Err(DelaunayError::NotFlippable(*edge));
        }
        // Ring of x -> y, whatever direction edge_ring walked.
        let e = self.store.te(x, y, ring[0]).expect("ring triangle");
        let r = self.store.ring(e);
        let (z, s1, s2) = (r[0], r[1], r[2]);
        // Segment x y must cross the interior of triangle (z, s1, s2).
        let side = [(z, s1), (s1, s2), (s2, z)].map(|(u, v)| self.orient(x, y, u, v));
        let side: Vec<Polarity> = side.into_iter().collect::<Result<_, _>>()?;
        let opposite = self.orient(z, s1, s2, x)? != self.orient(z, s1, s2, y)?;
        if !opposite || side.iter().any(|&p| p != side[0]) {
            return Err(DelaunayError::NotFlippable(*edge));
        }
        // In the ring of x -> y, tetrahedron (x, y, z, s1) is positive, which
        // is the orientation flip_three_two expects of (x, y, z, s1).
        match self.flip_three_two(x, y, z, s1, s2)? {
            Some(_) => Ok(()),
            None => Err(DelaunayError::NotFlippable(*edge)),
        }
    }
}
