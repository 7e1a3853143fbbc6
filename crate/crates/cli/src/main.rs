use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alphashape::shell::{
    build_bundle, export_mesh, parse_classes, parse_points, signatures_csv, spectrum_csv, BundleOptions, ExportOptions,
    FamilyBundle, MeshFormat, PointSet, DIM_NAMES,
};
use alphashape::Coord;
use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

/// Exact alpha shapes of 3D point sets.
#[derive(Parser)]
#[command(name = "alphashape", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the alpha-shape family of a point file and write it as a bundle.
    Build {
        input: PathBuf,
        /// Decimal places kept from each coordinate.
        #[arg(long, default_value_t = 0)]
        scale: u32,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Record stage timings in the bundle.
        #[arg(long)]
        timings: bool,
    },
    /// Print the alpha spectrum of a bundle.
    Spectrum {
        bundle: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Print the per-interval signatures of a bundle.
    Signatures {
        bundle: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Write one alpha shape of a bundle as a mesh.
    Export {
        bundle: PathBuf,
        /// Interval index; the last index selects alpha = infinity.
        #[arg(long)]
        index: usize,
        /// off or obj.
        #[arg(long, default_value = "off")]
        format: String,
        /// Comma-separated classes to include.
        #[arg(long, default_value = "regular,singular")]
        classes: String,
        /// Emit singular triangles with both orientations.
        #[arg(long)]
        double_singular: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print kernel counters, the depth histogram and simplex counts.
    Stats { bundle: PathBuf },
}

fn read_bundle(path: &Path) -> Result<FamilyBundle> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FamilyBundle::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing to standard output"),
    }
}

fn spectrum_table(b: &FamilyBundle) -> String {
    let mut out = format!("{} entries, {} intervals\n", b.spectrum.len(), b.intervals());
    for (i, e) in b.spectrum.iter().enumerate() {
        out += &format!("{i:>6}  {:<24} {}\n", e.alpha_sq, e.alpha);
    }
    out
}

fn signatures_table(b: &FamilyBundle) -> String {
    let s = &b.signatures;
    let mut out = format!("{:>6} {:>6} {:>16} {:>16}\n", "index", "c", "volume", "area");
    for i in 0..b.intervals() {
        out += &format!("{i:>6} {:>6} {:>16} {:>16.6}\n", s.components[i], s.volume[i], s.area[i]);
    }
    out
}

fn stats_report(b: &FamilyBundle) -> String {
    let st = &b.stats;
    let k = &st.kernel;
    let mut out = format!("points        {}\n", b.n);
    for (d, name) in DIM_NAMES.iter().enumerate() {
        out += &format!("{name:<13} {}\n", st.simplices[d]);
    }
    out += &format!("thresholds    {}\n", b.spectrum.len().saturating_sub(2));
    out += &format!("flat tets     {} found, {} removed\n", st.flat_tetrahedra, st.flat_removed);
    let bc = &st.build;
    out += &format!(
        "build         {} insertions, {} 2-3 flips, {} 3-2 flips, {} unflippable, {} hull scans\n",
        bc.insertions, bc.flips_two_three, bc.flips_three_two, bc.unflippable, bc.hull_scans
    );
    out += &format!(
        "predicates    orientation {}, in-sphere {}, edge attached {}, triangle attached {}, radius {}\n",
        k.orientation, k.in_sphere, k.edge_attached, k.triangle_attached, k.radius
    );
    out += &format!("long ops      {} mul, {} add\n", k.long_mul, k.long_add);
    out += &format!("max depth     {}\n", k.max_depth);
    out += "depth histogram\n";
    let last = k.depth_histogram.len().saturating_sub(1);
    for (d, n) in k.depth_histogram.iter().enumerate().filter(|(_, &n)| n > 0) {
        let label = if d == last { format!("{d}+") } else { d.to_string() };
        out += &format!("  {label:>4}  {n}\n");
    }
    if let Some(t) = &st.timings {
        out += &format!(
            "timings (s)   delaunay {:.3}, postprocess {:.3}, classify {:.3}, signatures {:.3}, total {:.3}\n",
            t.delaunay, t.postprocess, t.classify, t.signatures, t.total
        );
    }
    out
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build { input, scale, output, timings } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let mut points: PointSet<Coord> =
                parse_points(&text, scale).with_context(|| format!("parsing {}", input.display()))?;
            points.source = Some(input.display().to_string());
            let bundle = build_bundle(&points, BundleOptions { timings })?;
            emit(output.as_deref(), &(bundle.to_json()? + "\n"))
        }
        Command::Spectrum { bundle, csv } => {
            let b = read_bundle(&bundle)?;
            emit(None, &if csv { spectrum_csv(&b) } else { spectrum_table(&b) })
        }
        Command::Signatures { bundle, csv } => {
            let b = read_bundle(&bundle)?;
            emit(None, &if csv { signatures_csv(&b) } else { signatures_table(&b) })
        }
        Command::Export { bundle, index, format, classes, double_singular, output } => {
            let format: MeshFormat = format.parse()?;
            let opts = ExportOptions { classes: parse_classes(&classes)?, double_singular };
            let b = read_bundle(&bundle)?;
            emit(output.as_deref(), &export_mesh(&b, index, format, &opts)?)
        }
        Command::Stats { bundle } => emit(None, &stats_report(&read_bundle(&bundle)?)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("alphashape: {e:#}");
            ExitCode::FAILURE
        }
    }
}
