use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{PointSet, ShellError};
use crate::alpha::{classify_all, Class, Family, Positions};
use crate::delaunay::{BuildCounters, FlatReport, SimplexKey, Triangulation};
use crate::kernel::{KernelCounters, Threshold};
use crate::scalar::ExactScalar;
use crate::signatures::Signatures;

pub const BUNDLE_FORMAT: &str = "alphashape-family";
pub const BUNDLE_VERSION: u32 = 1;

/// The serialized alpha family: everything needed to list the complex at any
/// spectrum interval without further geometry.
///
/// Lengths, areas and volumes are in the integer units of the parsed points;
/// divide by `10^scale` (per dimension) for input units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyBundle {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub scale: u32,
    pub points: Vec<[f64; 3]>,
    /// Entries in increasing order: 0, the thresholds, infinity.
    pub spectrum: Vec<SpectrumEntry>,
    /// Vertices, then edges, triangles and tetrahedra, each sorted.
    pub simplices: Vec<SimplexRecord>,
    pub signatures: SignatureSet,
    pub stats: BundleStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// Exact squared alpha as `"p/q"`, `"p"` or `"inf"`.
    pub alpha_sq: String,
    /// Alpha as a float; `null` in JSON for infinity.
    #[serde(with = "float_or_inf")]
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexRecord {
    pub vertices: Vec<u32>,
    pub dim: usize,
    pub hull: bool,
    pub attached: bool,
    /// Exact squared radius of the smallest circumsphere; absent for vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_sq: Option<String>,
    /// Spectrum entry of `rho_sq`; only for unattached simplices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    /// Spectrum entry where the simplex stops being singular.
    pub mu_lo: usize,
    /// Spectrum entry where it becomes interior; the last entry stands for
    /// infinity.
    pub mu_hi: usize,
    /// For tetrahedra, the vertices in positive orientation order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oriented: Option<[u32; 4]>,
}

impl SimplexRecord {
    pub fn positions(&self) -> Positions {
        Positions { rho: self.rho, mu_lo: self.mu_lo, mu_hi: self.mu_hi }
    }

    pub fn class_at(&self, i: usize) -> Option<Class> {
        self.positions().class_at(self.dim, i)
    }

    pub fn key(&self) -> SimplexKey {
        SimplexKey::new(&self.vertices)
    }
}

/// One count series: simplices of a dimension and class per interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub dim: usize,
    pub class: Class,
    pub values: Vec<usize>,
}

/// Signature series, one value per open spectrum interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureSet {
    pub components: Vec<usize>,
    /// Exact volumes as `"p/q"` strings.
    pub volume: Vec<String>,
    pub volume_float: Vec<f64>,
    pub area: Vec<f64>,
    pub counts: Vec<CountSeries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleStats {
    /// Simplex counts by dimension.
    pub simplices: [usize; 4],
    pub build: BuildCounters,
    pub flat_tetrahedra: usize,
    pub flat_removed: usize,
    pub kernel: KernelCounters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Wall-clock seconds per pipeline stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub delaunay: f64,
    pub postprocess: f64,
    pub classify: f64,
    pub signatures: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BundleOptions {
    /// Record stage timings; the bundle is then no longer byte-for-byte
    /// reproducible.
    pub timings: bool,
}

/// Runs the whole pipeline on a point set.
pub fn build_bundle<T: ExactScalar>(points: &PointSet<T>, options: BundleOptions) -> Result<FamilyBundle, ShellError> {
    let start = Instant::now();
    let mut t = Triangulation::build(points.points.clone())?;
    let built = start.elapsed().as_secs_f64();
    let flat: FlatReport = t.postprocess_flat_tets()?;
    let postprocessed = start.elapsed().as_secs_f64();
    let family = Family::new(classify_all(&t)?);
    let classified = start.elapsed().as_secs_f64();
    let sig = Signatures::compute(&family, &t);
    let done = start.elapsed().as_secs_f64();
    let timings = options.timings.then_some(Timings {
        delaunay: built,
        postprocess: postprocessed - built,
        classify: classified - postprocessed,
        signatures: done - classified,
        total: done,
    });
    Ok(assemble(points, &t, &family, &sig, &flat, timings))
}

fn assemble<T: ExactScalar>(
    points: &PointSet<T>,
    t: &Triangulation<T>,
    family: &Family<T>,
    sig: &Signatures<T>,
    flat: &FlatReport,
    timings: Option<Timings>,
) -> FamilyBundle {
    let spectrum = family
        .spectrum()
        .entries()
        .iter()
        .zip(family.spectrum().alpha())
        .map(|(e, &alpha)| SpectrumEntry {
            alpha_sq: match e {
                Threshold::Finite(r) => r.to_string(),
                Threshold::Infinite => "inf".into(),
            },
            alpha,
        })
        .collect();
    let oriented: HashMap<SimplexKey, [u32; 4]> = t.tetrahedra().into_iter().map(|x| (x.key, x.oriented)).collect();
    let mut simplices = Vec::with_capacity(family.records().len());
    for d in 0..4 {
        for (r, p) in family.records().dim(d).iter().zip(family.positions(d)) {
            simplices.push(SimplexRecord {
                vertices: r.key.vertices().to_vec(),
                dim: d,
                hull: r.on_hull,
                attached: r.attached,
                rho_sq: r.rho_sq.as_ref().map(ToString::to_string),
                rho: p.rho,
                mu_lo: p.mu_lo,
                mu_hi: p.mu_hi,
                oriented: (d == 3).then(|| oriented[&r.key]),
            });
        }
    }
    let mut counts = Vec::new();
    for d in 0..4 {
        for c in Class::ALL {
            counts.push(CountSeries { dim: d, class: c, values: sig.counts.get(d, c).to_vec() });
        }
    }
    FamilyBundle {
        format: BUNDLE_FORMAT.into(),
        version: BUNDLE_VERSION,
        n: points.len(),
        scale: points.scale,
        points: points.points.iter().map(|p| p.to_f64()).collect(),
        spectrum,
        simplices,
        signatures: SignatureSet {
            components: sig.components.clone(),
            volume: sig.volume.iter().map(ToString::to_string).collect(),
            volume_float: sig.volume_f64(),
            area: sig.area.clone(),
            counts,
        },
        stats: BundleStats {
            simplices: family.records().counts(),
            build: t.counters(),
            flat_tetrahedra: flat.flat,
            flat_removed: flat.removed.len(),
            kernel: t.kernel().stats().snapshot(),
            timings,
        },
    }
}

impl FamilyBundle {
    pub fn to_json(&self) -> Result<String, ShellError> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses and validates a bundle.
    pub fn from_json(text: &str) -> Result<Self, ShellError> {
        let b: FamilyBundle = serde_json::from_str(text)?;
        b.validate()?;
        Ok(b)
    }

    /// Number of open spectrum intervals.
    pub fn intervals(&self) -> usize {
        self.spectrum.len() - 1
    }

    /// Checks the format tag, version and every index.
    pub fn validate(&self) -> Result<(), ShellError> {
        let bad = |m: String| Err(ShellError::BadBundle(m));
        if self.format != BUNDLE_FORMAT || self.version != BUNDLE_VERSION {
            return bad(format!("unsupported bundle {} version {}", self.format, self.version));
        }
        if self.spectrum.len() < 2 || self.points.len() != self.n {
            return bad("spectrum or point list is truncated".into());
        }
        let k = self.spectrum.len();
        for s in &self.simplices {
            let idx_ok = s.mu_lo < k && s.mu_hi < k && s.rho.map_or(true, |r| r < k);
            let verts_ok = s.vertices.len() == s.dim + 1 && s.vertices.iter().all(|&v| v >= 1 && v as usize <= self.n);
            if !idx_ok || !verts_ok || s.dim > 3 {
                return bad(format!("invalid simplex record {:?}", s.vertices));
            }
        }
        let series = [self.signatures.components.len(), self.signatures.volume.len(), self.signatures.area.len()];
        if series.iter().any(|&l| l != k - 1) {
            return bad("signature series length does not match the spectrum".into());
        }
        Ok(())
    }

    /// Interval index for an index given on the command line; the entry
    /// index of infinity is accepted as the last interval.
    pub fn check_index(&self, i: usize) -> Result<usize, ShellError> {
        let k = self.intervals();
        match i {
            _ if i < k => Ok(i),
            _ if i == k => Ok(k - 1),
            _ => Err(ShellError::IndexOutOfRange { index: i, intervals: k }),
        }
    }

    /// Records in the complex at interval `i`, with their classes.
    pub fn complex(&self, i: usize) -> Vec<(&SimplexRecord, Class)> {
        self.simplices.iter().filter_map(|s| s.class_at(i).map(|c| (s, c))).collect()
    }
}

mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}
