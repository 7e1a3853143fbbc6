use std::fmt;

use serde::{Deserialize, Serialize};

/// A simplex of the triangulation as its strictly increasing vertex labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexKey {
    len: u8,
    verts: [u32; 4],
}

impl SimplexKey {
    /// Sorts `verts`. Panics on an empty or oversized slice or on repeats.
    pub fn new(verts: &[u32]) -> Self {
        assert!((1..=4).contains(&verts.len()), "a simplex has 1 to 4 vertices");
        let mut v = [0u32; 4];
        v[..verts.len()].copy_from_slice(verts);
        v[..verts.len()].sort_unstable();
        assert!(v[..verts.len()].windows(2).all(|w| w[0] < w[1]), "repeated vertex in simplex");
        Self { len: verts.len() as u8, verts: v }
    }

    pub fn vertex(v: u32) -> Self {
        Self::new(&[v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices().contains(&v)
    }

    /// Facets (codimension one faces); empty for a vertex.
    pub fn facets(&self) -> Vec<SimplexKey> {
        let v = self.vertices();
        if v.len() == 1 {
            return Vec::new();
        }
        (0..v.len())
            .map(|skip| {
                let rest: Vec<u32> = v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                SimplexKey::new(&rest)
            })
            .collect()
    }

    /// The vertex of `self` not in `facet`.
    pub fn opposite(&self, facet: &SimplexKey) -> Option<u32> {
        let mut it = self.vertices().iter().copied().filter(|v| !facet.contains(*v));
        let v = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(v)
    }

    /// Every nonempty face including `self`.
    pub fn faces(&self) -> Vec<SimplexKey> {
        let v = self.vertices();
        (1u32..(1 << v.len()))
            .map(|mask| {
                let sub: Vec<u32> = (0..v.len()).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).collect();
                SimplexKey::new(&sub)
            })
            .collect()
    }
}

impl fmt::Debug for SimplexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

impl fmt::Display for SimplexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_faces() {
        let k = SimplexKey::new(&[4, 1, 3]);
        assert_eq!(k.vertices(), &[1, 3, 4]);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.facets().len(), 3);
        assert_eq!(k.faces().len(), 7);
        assert_eq!(k.opposite(&SimplexKey::new(&[1, 4])), Some(3));
        assert!(SimplexKey::new(&[1, 2]) < SimplexKey::new(&[1, 3]));
    }

    #[test]
    #[should_panic]
    fn rejects_repeats() {
        SimplexKey::new(&[2, 2]);
    }
}
