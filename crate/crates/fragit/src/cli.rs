//! Command-line parsing and the end-to-end run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::error::{Error, Result};
use crate::fragmenter::{fragment, Fragmentation};
use crate::io::{read_structure, Format, InputDocument};
use crate::molecule::Molecule;
use crate::regions::{assign_fd_regions, assign_layers, RegionAssignment};
use crate::settings::JobSettings;
use crate::writers::{read_config, write_config, write_gamess_fmo, write_jmol_script, write_pymol_script};

pub const EXIT_USAGE: i32 = 2;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  unexpected failure
  2  usage error
  3  file not found or not readable/writable
  4  structure parse error or unsupported element
  5  bond/charge perception failure
  6  invalid SMARTS pattern
  7  invalid configuration, explicit pair or index";

#[derive(Debug, Parser)]
#[command(
    name = "fragit",
    version,
    about = "Fragment a molecular structure and write a GAMESS FMO input file",
    after_help = EXIT_CODES
)]
pub struct Args {
    /// Structure file (.pdb, .xyz, .sdf, .mol).
    pub input: Option<PathBuf>,

    /// Output deck path (default: input stem + .inp in the working directory).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,

    /// Input format, overriding the file extension.
    #[arg(long = "format")]
    pub format: Option<Format>,

    /// Model to read from a multi-model PDB file.
    #[arg(long = "model")]
    pub model: Option<usize>,

    #[arg(long = "disable-protection")]
    pub disable_protection: bool,

    /// Write the effective settings to FILE and exit.
    #[arg(long = "make-config", value_name = "FILE")]
    pub make_config: Option<PathBuf>,

    /// Read settings from FILE; command-line flags take precedence.
    #[arg(long = "use-config", value_name = "FILE")]
    pub use_config: Option<PathBuf>,

    #[arg(long = "output-central-fragment", value_name = "N")]
    pub central_fragment: Option<usize>,

    /// Fragments within this distance (Å) of the central one form layer 2.
    #[arg(long = "output-boundaries", value_name = "DIST")]
    pub boundaries: Option<f64>,

    #[arg(long = "output-active-distance", value_name = "DIST")]
    pub active_distance: Option<f64>,

    #[arg(long = "output-buffer-distance", value_name = "DIST")]
    pub buffer_distance: Option<f64>,

    /// Group N consecutive fragments into one.
    #[arg(short = 'g', long = "g", value_name = "N")]
    pub group: Option<usize>,

    #[arg(long = "merge-glycine")]
    pub merge_glycine: bool,

    /// Explicit fragmentation points, e.g. "1,2;7,9;".
    #[arg(long = "pairs", value_name = "PAIRS")]
    pub pairs: Option<String>,

    /// Also write a PyMOL script (.pml).
    #[arg(long = "pymol")]
    pub pymol: bool,

    /// Also write a Jmol script (.spt).
    #[arg(long = "jmol")]
    pub jmol: bool,
}

/// Why argument handling stopped.
#[derive(Debug)]
pub enum ArgsError {
    Usage(String),
    Settings(Error),
}

/// Builds settings as defaults < config file < flags.
pub fn settings_from_args(args: &Args) -> std::result::Result<JobSettings, ArgsError> {
    let mut s = match &args.use_config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| {
                ArgsError::Settings(Error::Io {
                    path: path.clone(),
                    source,
                })
            })?;
            read_config(&text).map_err(ArgsError::Settings)?
        }
        None => JobSettings::default(),
    };
    s.config_in = args.use_config.clone();
    s.config_out = args.make_config.clone();
    s.input_path = args.input.clone();
    s.output_path = args.output.clone();
    if let Some(f) = args.format {
        s.format = Some(f);
    }
    if let Some(m) = args.model {
        s.model_index = m;
    }
    if args.disable_protection {
        s.use_protection = false;
    }
    if let Some(n) = args.group {
        if n < 1 {
            return Err(ArgsError::Usage("--g needs a positive group size".into()));
        }
        s.group_size = n;
    }
    if args.merge_glycine {
        s.merge_glycine = true;
    }
    if let Some(c) = args.central_fragment {
        s.central_fragment = Some(c);
    }
    if let Some(d) = args.boundaries {
        s.boundary_distance = Some(d);
    }
    if let Some(d) = args.active_distance {
        s.active_distance = Some(d);
    }
    if let Some(d) = args.buffer_distance {
        s.buffer_distance = Some(d);
    }
    if let Some(text) = &args.pairs {
        let doc = format!("[explicitfragmentpairs]\npairs = {text}\n");
        s.explicit_pairs = read_config(&doc).map_err(ArgsError::Settings)?.explicit_pairs;
    }
    if args.pymol {
        s.emit_pymol = true;
    }
    if args.jmol {
        s.emit_jmol = true;
    }

    let has_fd = s.active_distance.is_some() || s.buffer_distance.is_some();
    if (has_fd || s.boundary_distance.is_some()) && s.central_fragment.is_none() {
        return Err(ArgsError::Usage(
            "--output-boundaries, --output-active-distance and --output-buffer-distance \
             require --output-central-fragment"
                .into(),
        ));
    }
    if has_fd && s.boundary_distance.is_none() {
        return Err(ArgsError::Usage(
            "--output-active-distance/--output-buffer-distance require --output-boundaries".into(),
        ));
    }
    if s.config_out.is_none() && s.input_path.is_none() {
        return Err(ArgsError::Usage("no input file given".into()));
    }
    s.validate().map_err(ArgsError::Settings)?;
    Ok(s)
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => 3,
        Error::Parse { .. } | Error::UnsupportedElement { .. } => 4,
        Error::Perception { .. } => 5,
        Error::Pattern { .. } | Error::PatternShape { .. } => 6,
        Error::Config(_)
        | Error::ConfigSyntax { .. }
        | Error::InvalidPair { .. }
        | Error::AtomIndex { .. }
        | Error::FragmentIndex { .. } => 7,
    }
}

#[derive(Debug)]
pub struct RunReport {
    pub molecule: Molecule,
    pub fragmentation: Fragmentation,
    pub regions: Option<RegionAssignment>,
    pub written: Vec<PathBuf>,
    pub summary: String,
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Regions for the settings, if a central fragment was requested.
pub fn regions_for(mol: &Molecule, f: &Fragmentation, s: &JobSettings) -> Result<Option<RegionAssignment>> {
    let Some(central) = s.central_fragment else {
        return Ok(None);
    };
    let boundary = s.boundary_distance.unwrap_or(f64::MIN_POSITIVE);
    let base = assign_layers(mol, f, central, boundary)?;
    match (s.active_distance, s.buffer_distance) {
        (Some(a), Some(b)) => Ok(Some(assign_fd_regions(mol, f, central, a, b, &base)?)),
        _ => Ok(Some(base)),
    }
}

pub fn summary(mol: &Molecule, f: &Fragmentation, regions: Option<&RegionAssignment>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "structure {} : {} atoms, {} bonds, charge {}",
        mol.name(),
        mol.len(),
        mol.bonds().len(),
        mol.total_formal_charge()
    );
    let _ = writeln!(out, "{:>8} {:>9} {:>9} {:>7}", "nfrag", "natom_min", "natom_max", "charge");
    let _ = writeln!(
        out,
        "{:>8} {:>9} {:>9} {:>7}",
        f.len(),
        f.min_size(),
        f.max_size(),
        f.charges.iter().sum::<i32>()
    );
    out.push('\n');
    let _ = writeln!(out, "{:>8} {:>6} {:>7} {:>6} {:>7}", "fragment", "atoms", "charge", "layer", "region");
    for (k, frag) in f.fragments.iter().enumerate() {
        let (layer, region) = match regions {
            Some(r) => (r.layer[k].to_string(), r.fd[k].name()),
            None => ("1".to_string(), "-"),
        };
        let _ = writeln!(
            out,
            "{:>8} {:>6} {:>7} {:>6} {:>7}",
            k + 1,
            frag.len(),
            f.charges[k],
            layer,
            region
        );
    }
    for w in &f.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Reads, fragments and writes the deck and any requested scripts.
pub fn run(s: &JobSettings) -> Result<RunReport> {
    s.validate()?;
    let input = s
        .input_path
        .as_ref()
        .ok_or_else(|| Error::Config("no input file given".into()))?;
    let mut doc = match s.format {
        Some(format) => InputDocument {
            format,
            source_path: input.clone(),
            model_index: 1,
        },
        None => InputDocument::from_path(input.clone())?,
    };
    doc.model_index = s.model_index;
    let mol = read_structure(&doc)?;
    let f = fragment(&mol, s)?;
    let regions = regions_for(&mol, &f, s)?;

    let deck_path = match &s.output_path {
        Some(p) => p.clone(),
        None => {
            let stem = input.file_stem().map(PathBuf::from).unwrap_or_else(|| "fragit".into());
            stem.with_extension("inp")
        }
    };
    let deck = write_gamess_fmo(&mol, &f, regions.as_ref(), &s.gamess);
    let source = input.display().to_string();
    let mut outputs = vec![(deck_path.clone(), deck)];
    if s.emit_pymol {
        outputs.push((
            deck_path.with_extension("pml"),
            write_pymol_script(&source, &f, regions.as_ref()),
        ));
    }
    if s.emit_jmol {
        outputs.push((
            deck_path.with_extension("spt"),
            write_jmol_script(&source, &f, regions.as_ref()),
        ));
    }
    let mut written = Vec::new();
    for (path, text) in &outputs {
        write_file(path, text)?;
        written.push(path.clone());
    }
    let mut text = summary(&mol, &f, regions.as_ref());
    for path in &written {
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(RunReport {
        molecule: mol,
        fragmentation: f,
        regions,
        written,
        summary: text,
    })
}

/// Writes the settings file requested by `--make-config`.
pub fn make_config(s: &JobSettings, path: &Path) -> Result<()> {
    write_file(path, &write_config(s))
}
