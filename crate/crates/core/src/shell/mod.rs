//! Point input, the serialized family bundle, mesh export and CSV output.

mod bundle;
mod export;
mod points;

use thiserror::Error;

use crate::alpha::AlphaError;
use crate::delaunay::DelaunayError;

pub use bundle::{
    build_bundle, BundleOptions, BundleStats, CountSeries, FamilyBundle, SignatureSet, SimplexRecord, SpectrumEntry,
    Timings, BUNDLE_FORMAT, BUNDLE_VERSION,
};
pub use export::{
    export_mesh, parse_classes, select_mesh, signatures_csv, spectrum_csv, ExportOptions, Mesh, MeshFormat, DIM_NAMES,
};
pub use points::{parse_points, PointSet};

#[derive(Debug, Error)]
pub enum ShellError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate of the point on line {first}")]
    DuplicatePoint { line: usize, first: usize },
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("interval index {index} out of range: the spectrum has {intervals} intervals (0 to {})", intervals - 1)]
    IndexOutOfRange { index: usize, intervals: usize },
    #[error("unknown mesh format {0:?}; use off or obj")]
    UnknownFormat(String),
    #[error("unknown simplex class {0:?}; use interior, regular or singular")]
    UnknownClass(String),
    #[error("invalid bundle: {0}")]
    BadBundle(String),
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl PartialEq for ShellError {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}
