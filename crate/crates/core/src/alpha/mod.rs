//! Alpha intervals, the alpha spectrum and alpha complexes.
//!
//! Every simplex of the Delaunay triangulation belongs to the alpha complex
//! for a single interval of alpha values, split into a singular, a regular and
//! an interior part. [`classify_all`] computes the endpoints of those parts
//! for every simplex, [`spectrum`] collects the distinct endpoints, and a
//! [`Family`] answers queries for the complex at any open interval between
//! consecutive endpoints. All comparisons use exact squared radii.

mod classify;
mod complex;
mod spectrum;

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delaunay::{DelaunayError, SimplexKey};
use crate::kernel::{KernelError, RadiusSq, Threshold};
use crate::scalar::ExactScalar;

pub use classify::classify_all;
pub use complex::{shape_boundary, Boundary, ComplexView};
pub use spectrum::{spectrum, Spectrum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaError {
    #[error("alpha equals the threshold at spectrum entry {entry}; pick an interval index instead")]
    OnThreshold { entry: usize },
    #[error("interval index {index} out of range: the spectrum has {intervals} intervals")]
    IndexOutOfRange { index: usize, intervals: usize },
    #[error("alpha must be a non-negative number, got {0}")]
    BadAlpha(String),
    #[error("{0} has no cofaces to define its mu value")]
    UndefinedMu(SimplexKey),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
}

/// Role of a simplex in an alpha complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Interior,
    Regular,
    Singular,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::Interior, Class::Regular, Class::Singular];

    pub fn name(self) -> &'static str {
        match self {
            Class::Interior => "interior",
            Class::Regular => "regular",
            Class::Singular => "singular",
        }
    }
}

/// The alpha interval data of one simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRecord<T: ExactScalar> {
    pub key: SimplexKey,
    /// Squared radius of the smallest circumsphere; absent for vertices.
    pub rho_sq: Option<RadiusSq<T>>,
    /// Whether the smallest circumsphere encloses a vertex of a coface.
    /// Always false for vertices and tetrahedra.
    pub attached: bool,
    pub on_hull: bool,
    /// Squared alpha at which the simplex stops being singular.
    pub mu_lo_sq: RadiusSq<T>,
    /// Squared alpha at which the simplex becomes interior.
    pub mu_hi_sq: Threshold<T>,
}

impl<T: ExactScalar> IntervalRecord<T> {
    pub fn dim(&self) -> usize {
        self.key.dim()
    }

    /// Whether the simplex can be singular for some alpha.
    pub fn has_singular_part(&self) -> bool {
        self.dim() < 3 && !self.attached
    }
}

/// Interval records of every simplex of the retained triangulation, grouped
/// by dimension and sorted by key within each group.
#[derive(Debug, Clone)]
pub struct Records<T: ExactScalar> {
    by_dim: [Vec<IntervalRecord<T>>; 4],
    lookup: HashMap<SimplexKey, usize>,
}

impl<T: ExactScalar> Records<T> {
    pub(crate) fn new(by_dim: [Vec<IntervalRecord<T>>; 4]) -> Self {
        let lookup = by_dim.iter().flat_map(|v| v.iter().enumerate().map(|(i, r)| (r.key, i))).collect();
        Self { by_dim, lookup }
    }

    pub fn dim(&self, d: usize) -> &[IntervalRecord<T>] {
        &self.by_dim[d]
    }

    pub fn get(&self, key: &SimplexKey) -> Option<&IntervalRecord<T>> {
        self.lookup.get(key).map(|&i| &self.by_dim[key.dim()][i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &IntervalRecord<T>> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn counts(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|d| self.by_dim[d].len())
    }
}

/// Spectrum positions of a record's interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positions {
    /// Entry of `rho_sq`; only for unattached edges, triangles and tetrahedra.
    pub rho: Option<usize>,
    pub mu_lo: usize,
    pub mu_hi: usize,
}

impl Positions {
    /// Class of the simplex in open interval `i` (between spectrum entries `i`
    /// and `i + 1`), or `None` when it is not in the complex.
    pub fn class_at(&self, dim: usize, i: usize) -> Option<Class> {
        if i >= self.mu_hi {
            return Some(Class::Interior);
        }
        if dim == 3 {
            return None;
        }
        if i >= self.mu_lo {
            return Some(Class::Regular);
        }
        match (dim, self.rho) {
            (0, _) => Some(Class::Singular),
            (_, Some(r)) if i >= r => Some(Class::Singular),
            _ => None,
        }
    }

    /// First interval in which the simplex is in the complex.
    pub fn birth(&self, dim: usize) -> usize {
        match dim {
            0 => 0,
            3 => self.mu_hi,
            _ => self.rho.unwrap_or(self.mu_lo),
        }
    }
}

/// A query for one alpha complex.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaQuery<T: ExactScalar> {
    /// Open interval index, from 0 to the number of intervals minus one.
    Index(usize),
    /// Exact squared alpha.
    AlphaSq(Ratio<T>),
    /// Alpha as a float; converted exactly before comparison.
    Alpha(f64),
}

/// The records, the spectrum and the record positions in the spectrum: the
/// whole family of alpha complexes.
#[derive(Debug, Clone)]
pub struct Family<T: ExactScalar> {
    records: Records<T>,
    spectrum: Spectrum<T>,
    positions: [Vec<Positions>; 4],
}

impl<T: ExactScalar> Family<T> {
    pub fn new(records: Records<T>) -> Self {
        let spectrum = spectrum(&records);
        let mut positions: [Vec<Positions>; 4] = Default::default();
        for d in 0..4 {
            // Every mu value is the radius of an unattached coface, so it is
            // in the spectrum by construction.
            positions[d] = records
                .dim(d)
                .iter()
                .map(|r| spectrum.positions(r).expect("interval endpoints are spectrum entries"))
                .collect();
        }
        Self { records, spectrum, positions }
    }

    pub fn records(&self) -> &Records<T> {
        &self.records
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.spectrum
    }

    pub fn positions(&self, d: usize) -> &[Positions] {
        &self.positions[d]
    }

    /// Number of open intervals, `|spectrum| - 1`.
    pub fn intervals(&self) -> usize {
        self.spectrum.intervals()
    }

    /// Resolves a query to an interval index.
    pub fn interval(&self, q: &AlphaQuery<T>) -> Result<usize, AlphaError> {
        match q {
            AlphaQuery::Index(i) => self.spectrum.check_index(*i),
            AlphaQuery::AlphaSq(a) => self.spectrum.locate(a),
            AlphaQuery::Alpha(a) => self.spectrum.locate_f64(*a),
        }
    }

    /// Class of every record of dimension `d` in interval `i`.
    pub fn classes(&self, d: usize, i: usize) -> impl Iterator<Item = (&IntervalRecord<T>, Option<Class>)> + '_ {
        self.records.dim(d).iter().zip(&self.positions[d]).map(move |(r, p)| (r, p.class_at(d, i)))
    }

    pub fn complex_at(&self, q: &AlphaQuery<T>) -> Result<ComplexView, AlphaError> {
        let i = self.interval(q)?;
        let mut view = ComplexView { interval: i, simplices: Default::default() };
        for d in 0..4 {
            view.simplices[d] = self.classes(d, i).filter_map(|(r, c)| c.map(|c| (r.key, c))).collect();
        }
        Ok(view)
    }
}

#[cfg(test)]
mod tests;
