use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use super::{FamilyBundle, ShellError};
use crate::alpha::Class;
use crate::delaunay::SimplexKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl FromStr for MeshFormat {
    type Err = ShellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(MeshFormat::Off),
            "obj" => Ok(MeshFormat::Obj),
            _ => Err(ShellError::UnknownFormat(s.into())),
        }
    }
}

/// Parses a comma-separated class list such as `regular,singular`.
pub fn parse_classes(s: &str) -> Result<Vec<Class>, ShellError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| Class::ALL.into_iter().find(|c| c.name() == x).ok_or_else(|| ShellError::UnknownClass(x.into())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportOptions {
    pub classes: Vec<Class>,
    /// Emit singular triangles once per side, with opposite orientations.
    pub double_singular: bool,
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self { classes: vec![Class::Regular, Class::Singular], double_singular: false }
    }
}

/// The selected part of the complex at one interval, as mesh elements over
/// point labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Mesh {
    /// Regular triangles are counterclockwise seen from outside.
    pub triangles: Vec<[u32; 3]>,
    pub edges: Vec<[u32; 2]>,
    pub points: Vec<u32>,
}

impl Mesh {
    /// Labels referenced by any element, ascending.
    pub fn vertices(&self) -> Vec<u32> {
        let mut v: BTreeSet<u32> = self.triangles.iter().flatten().copied().collect();
        v.extend(self.edges.iter().flatten().copied());
        v.extend(self.points.iter().copied());
        v.into_iter().collect()
    }
}

/// Faces of a positively oriented tetrahedron, each counterclockwise seen
/// from outside, with the opposite vertex.
fn outward_faces(t: [u32; 4]) -> [([u32; 3], u32); 4] {
    let [a, b, c, d] = t;
    [([a, b, c], d), ([a, d, b], c), ([a, c, d], b), ([c, b, d], a)]
}

pub fn select_mesh(bundle: &FamilyBundle, index: usize, opts: &ExportOptions) -> Result<Mesh, ShellError> {
    let i = bundle.check_index(index)?;
    let complex = bundle.complex(i);
    let mut outward: HashMap<SimplexKey, [u32; 3]> = HashMap::new();
    for (s, _) in complex.iter().filter(|(s, _)| s.dim == 3) {
        let o = s.oriented.ok_or_else(|| ShellError::BadBundle("tetrahedron without orientation".into()))?;
        for (f, _) in outward_faces(o) {
            outward.insert(SimplexKey::new(&f), f);
        }
    }
    let mut mesh = Mesh::default();
    for (s, c) in complex.into_iter().filter(|(_, c)| opts.classes.contains(c)) {
        let v = &s.vertices;
        match (s.dim, c) {
            (2, Class::Singular) => {
                mesh.triangles.push([v[0], v[1], v[2]]);
                if opts.double_singular {
                    mesh.triangles.push([v[0], v[2], v[1]]);
                }
            }
            (2, _) => mesh.triangles.push(outward.get(&s.key()).copied().unwrap_or([v[0], v[1], v[2]])),
            (1, Class::Singular) => mesh.edges.push([v[0], v[1]]),
            (0, Class::Singular) => mesh.points.push(v[0]),
            _ => {}
        }
    }
    Ok(mesh)
}

/// Writes the selected simplices of interval `index` as OFF or OBJ, with
/// coordinates in input units. OFF carries triangles only; OBJ adds singular
/// edges as lines and singular vertices as points.
pub fn export_mesh(
    bundle: &FamilyBundle,
    index: usize,
    format: MeshFormat,
    opts: &ExportOptions,
) -> Result<String, ShellError> {
    let mesh = select_mesh(bundle, index, opts)?;
    let verts = mesh.vertices();
    let slot: HashMap<u32, usize> = verts.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let unit = 10f64.powi(bundle.scale as i32);
    let coord = |v: u32| bundle.points[v as usize - 1].map(|x| x / unit);
    let mut out = String::new();
    match format {
        MeshFormat::Off => {
            let _ = writeln!(out, "OFF\n{} {} 0", verts.len(), mesh.triangles.len());
            for &v in &verts {
                let [x, y, z] = coord(v);
                let _ = writeln!(out, "{x} {y} {z}");
            }
            for t in &mesh.triangles {
                let _ = writeln!(out, "3 {} {} {}", slot[&t[0]], slot[&t[1]], slot[&t[2]]);
            }
        }
        MeshFormat::Obj => {
            let _ = writeln!(out, "# alpha shape interval {index}");
            for &v in &verts {
                let [x, y, z] = coord(v);
                let _ = writeln!(out, "v {x} {y} {z}");
            }
            let one = |v: &u32| slot[v] + 1;
            for t in &mesh.triangles {
                let _ = writeln!(out, "f {} {} {}", one(&t[0]), one(&t[1]), one(&t[2]));
            }
            for e in &mesh.edges {
                let _ = writeln!(out, "l {} {}", one(&e[0]), one(&e[1]));
            }
            for p in &mesh.points {
                let _ = writeln!(out, "p {}", one(p));
            }
        }
    }
    Ok(out)
}

/// One row per spectrum entry: index, exact squared alpha, float alpha.
pub fn spectrum_csv(bundle: &FamilyBundle) -> String {
    let mut out = String::from("index,alpha_sq,alpha\n");
    for (i, e) in bundle.spectrum.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{}", e.alpha_sq, fmt_float(e.alpha));
    }
    out
}

/// One row per interval with its bounds and every signature value.
pub fn signatures_csv(bundle: &FamilyBundle) -> String {
    let s = &bundle.signatures;
    let mut out = String::from("interval,alpha_lo,alpha_hi,components,volume,volume_float,area");
    for c in &s.counts {
        let _ = write!(out, ",{}_{}", DIM_NAMES[c.dim], c.class.name());
    }
    out.push('\n');
    for i in 0..bundle.intervals() {
        let _ = write!(
            out,
            "{i},{},{},{},{},{},{}",
            fmt_float(bundle.spectrum[i].alpha),
            fmt_float(bundle.spectrum[i + 1].alpha),
            s.components[i],
            s.volume[i],
            s.volume_float[i],
            s.area[i]
        );
        for c in &s.counts {
            let _ = write!(out, ",{}", c.values[i]);
        }
        out.push('\n');
    }
    out
}

pub const DIM_NAMES: [&str; 4] = ["vertex", "edge", "triangle", "tetrahedron"];

fn fmt_float(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        x.to_string()
    }
}
