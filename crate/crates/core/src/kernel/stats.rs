use std::sync::atomic::{AtomicU64, Ordering::Relaxed};

use serde::{Deserialize, Serialize};

use super::det::OpCount;

/// Depth histogram buckets; the last bucket collects every deeper evaluation.
pub const DEPTH_BUCKETS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateKind {
    Orientation,
    InSphere,
    EdgeAttached,
    TriangleAttached,
}

/// Running predicate and arithmetic counters. Relaxed atomics, so a kernel can
/// be shared between threads; totals are only read after the work is done.
#[derive(Debug)]
pub struct KernelStats {
    orientation: AtomicU64,
    in_sphere: AtomicU64,
    edge_attached: AtomicU64,
    triangle_attached: AtomicU64,
    radius: AtomicU64,
    depth: [AtomicU64; DEPTH_BUCKETS],
    max_depth: AtomicU64,
    mul: AtomicU64,
    add: AtomicU64,
}

impl Default for KernelStats {
    fn default() -> Self {
        Self {
            orientation: AtomicU64::new(0),
            in_sphere: AtomicU64::new(0),
            edge_attached: AtomicU64::new(0),
            triangle_attached: AtomicU64::new(0),
            radius: AtomicU64::new(0),
            depth: std::array::from_fn(|_| AtomicU64::new(0)),
            max_depth: AtomicU64::new(0),
            mul: AtomicU64::new(0),
            add: AtomicU64::new(0),
        }
    }
}

impl KernelStats {
    pub(crate) fn predicate(&self, kind: PredicateKind, depth: u32, ops: OpCount) {
        let counter = match kind {
            PredicateKind::Orientation => &self.orientation,
            PredicateKind::InSphere => &self.in_sphere,
            PredicateKind::EdgeAttached => &self.edge_attached,
            PredicateKind::TriangleAttached => &self.triangle_attached,
        };
        counter.fetch_add(1, Relaxed);
        let bucket = (depth as usize).min(DEPTH_BUCKETS - 1);
        self.depth[bucket].fetch_add(1, Relaxed);
        self.max_depth.fetch_max(u64::from(depth), Relaxed);
        self.arith(ops);
    }

    pub(crate) fn radius(&self, ops: OpCount) {
        self.radius.fetch_add(1, Relaxed);
        self.arith(ops);
    }

    fn arith(&self, ops: OpCount) {
        self.mul.fetch_add(ops.mul, Relaxed);
        self.add.fetch_add(ops.add, Relaxed);
    }

    pub fn snapshot(&self) -> KernelCounters {
        KernelCounters {
            orientation: self.orientation.load(Relaxed),
            in_sphere: self.in_sphere.load(Relaxed),
            edge_attached: self.edge_attached.load(Relaxed),
            triangle_attached: self.triangle_attached.load(Relaxed),
            radius: self.radius.load(Relaxed),
            depth_histogram: self.depth.iter().map(|d| d.load(Relaxed)).collect(),
            max_depth: self.max_depth.load(Relaxed),
            long_mul: self.mul.load(Relaxed),
            long_add: self.add.load(Relaxed),
        }
    }
}

/// Plain copy of [`KernelStats`] for reporting and serialization.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCounters {
    pub orientation: u64,
    pub in_sphere: u64,
    pub edge_attached: u64,
    pub triangle_attached: u64,
    pub radius: u64,
    /// Evaluations per depth; index `DEPTH_BUCKETS - 1` is "that deep or more".
    pub depth_histogram: Vec<u64>,
    pub max_depth: u64,
    pub long_mul: u64,
    pub long_add: u64,
}

impl KernelCounters {
    pub fn predicates(&self) -> u64 {
        self.orientation + self.in_sphere + self.edge_attached + self.triangle_attached
    }

    /// Mean depth over all predicate evaluations (the last bucket counts at
    /// its lower bound).
    pub fn mean_depth(&self) -> f64 {
        let total: u64 = self.depth_histogram.iter().sum();
        if total == 0 {
            return 0.0;
        }
        let weighted: u64 = self.depth_histogram.iter().enumerate().map(|(d, &c)| d as u64 * c).sum();
        weighted as f64 / total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_accumulate() {
        let s = KernelStats::default();
        s.predicate(PredicateKind::InSphere, 0, OpCount { mul: 10, add: 4 });
        s.predicate(PredicateKind::InSphere, 3, OpCount { mul: 1, add: 1 });
        s.predicate(PredicateKind::Orientation, 40, OpCount::default());
        let c = s.snapshot();
        assert_eq!(c.in_sphere, 2);
        assert_eq!(c.orientation, 1);
        assert_eq!(c.depth_histogram[0], 1);
        assert_eq!(c.depth_histogram[3], 1);
        assert_eq!(c.depth_histogram[DEPTH_BUCKETS - 1], 1);
        assert_eq!(c.max_depth, 40);
        assert_eq!(c.long_mul, 11);
        assert_eq!(c.predicates(), 3);
    }
}
