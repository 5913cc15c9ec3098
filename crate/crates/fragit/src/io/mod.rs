//! Structure readers for PDB, XYZ and SDF/MOL.

mod pdb;
mod sdf;
mod xyz;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::molecule::Molecule;

pub use pdb::parse_pdb;
pub use sdf::parse_sdf;
pub use xyz::parse_xyz;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pdb,
    Xyz,
    Sdf,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "pdb" | "ent" => Some(Format::Pdb),
            "xyz" => Some(Format::Xyz),
            "sdf" | "sd" | "mol" => Some(Format::Sdf),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pdb" => Ok(Format::Pdb),
            "xyz" => Ok(Format::Xyz),
            "sdf" | "mol" => Ok(Format::Sdf),
            other => Err(format!("unknown format '{other}' (expected pdb, xyz or sdf)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Pdb => "pdb",
            Format::Xyz => "xyz",
            Format::Sdf => "sdf",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub format: Format,
    pub source_path: PathBuf,
    /// 1-based model ordinal for multi-model PDB files.
    pub model_index: usize,
}

impl InputDocument {
    /// Document with the format inferred from the file extension.
    pub fn from_path(path: impl Into<PathBuf>) -> Result<Self> {
        let source_path = path.into();
        let format = Format::from_path(&source_path).ok_or_else(|| {
            Error::parse(
                &source_path.display().to_string(),
                0,
                "cannot infer format from extension (use pdb, xyz, sdf or mol)",
            )
        })?;
        Ok(InputDocument {
            format,
            source_path,
            model_index: 1,
        })
    }
}

/// Reads and, for PDB/XYZ, perceives bonds, orders and charges.
pub fn read_structure(doc: &InputDocument) -> Result<Molecule> {
    let text = std::fs::read_to_string(&doc.source_path).map_err(|source| Error::Io {
        path: doc.source_path.clone(),
        source,
    })?;
    let label = doc.source_path.display().to_string();
    let name = doc
        .source_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match doc.format {
        Format::Pdb => parse_pdb(&text, &label, &name, doc.model_index),
        Format::Xyz => parse_xyz(&text, &label, &name),
        Format::Sdf => parse_sdf(&text, &label, &name),
    }
}
