//! Distance-based layers and FMO/FD active, buffer and frozen regions.

use crate::error::{Error, Result};
use crate::fragmenter::Fragmentation;
use crate::molecule::{euclid, Molecule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdRegion {
    Active,
    Buffer,
    Frozen,
    None,
}

impl FdRegion {
    pub fn name(self) -> &'static str {
        match self {
            FdRegion::Active => "active",
            FdRegion::Buffer => "buffer",
            FdRegion::Frozen => "frozen",
            FdRegion::None => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionAssignment {
    /// Per fragment; 2 is the higher layer.
    pub layer: Vec<u8>,
    pub fd: Vec<FdRegion>,
    /// 1-based fragment ordinal.
    pub central_fragment: usize,
    pub boundary_distance: f64,
    pub active_distance: Option<f64>,
    pub buffer_distance: Option<f64>,
}

impl RegionAssignment {
    pub fn nlayer(&self) -> u8 {
        self.layer.iter().copied().max().unwrap_or(1)
    }

    pub fn has_fd(&self) -> bool {
        self.fd.iter().any(|r| *r != FdRegion::None)
    }

    /// 1-based ordinals of the fragments in `region`.
    pub fn members(&self, region: FdRegion) -> Vec<usize> {
        self.fd
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == region)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

fn check_ordinal(f: &Fragmentation, i: usize) -> Result<usize> {
    if i == 0 || i > f.len() {
        Err(Error::FragmentIndex {
            index: i,
            len: f.len(),
        })
    } else {
        Ok(i - 1)
    }
}

fn check_distance(what: &str, d: f64) -> Result<()> {
    if d > 0.0 && !d.is_nan() {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} distance must be positive, got {d}")))
    }
}

/// Smallest atom-atom distance between fragments `i` and `j` (1-based).
pub fn fragment_min_distance(mol: &Molecule, f: &Fragmentation, i: usize, j: usize) -> Result<f64> {
    let a = check_ordinal(f, i)?;
    let b = check_ordinal(f, j)?;
    Ok(min_distance(mol, &f.fragments[a], &f.fragments[b]))
}

fn min_distance(mol: &Molecule, x: &[usize], y: &[usize]) -> f64 {
    let atoms = mol.atoms();
    let mut best = f64::INFINITY;
    for &p in x {
        for &q in y {
            best = best.min(euclid(atoms[p - 1].position, atoms[q - 1].position));
        }
    }
    best
}

/// Layer 2 for the central fragment and everything within `boundary` of it.
pub fn assign_layers(
    mol: &Molecule,
    f: &Fragmentation,
    central: usize,
    boundary: f64,
) -> Result<RegionAssignment> {
    check_distance("boundary", boundary)?;
    let c = check_ordinal(f, central)?;
    let layer = (0..f.len())
        .map(|k| {
            if k == c || min_distance(mol, &f.fragments[c], &f.fragments[k]) <= boundary {
                2
            } else {
                1
            }
        })
        .collect();
    Ok(RegionAssignment {
        layer,
        fd: vec![FdRegion::None; f.len()],
        central_fragment: central,
        boundary_distance: boundary,
        active_distance: None,
        buffer_distance: None,
    })
}

/// Active: within `active_d` of the central fragment. Buffer: within
/// `buffer_d` of any active fragment. Both are lifted to the top layer.
pub fn assign_fd_regions(
    mol: &Molecule,
    f: &Fragmentation,
    central: usize,
    active_d: f64,
    buffer_d: f64,
    base: &RegionAssignment,
) -> Result<RegionAssignment> {
    check_distance("active", active_d)?;
    check_distance("buffer", buffer_d)?;
    let c = check_ordinal(f, central)?;
    if base.layer.len() != f.len() {
        return Err(Error::Config("layer assignment does not match fragmentation".into()));
    }
    let n = f.len();
    let active: Vec<bool> = (0..n)
        .map(|k| k == c || min_distance(mol, &f.fragments[c], &f.fragments[k]) <= active_d)
        .collect();
    let active_list: Vec<usize> = (0..n).filter(|&k| active[k]).collect();
    let fd: Vec<FdRegion> = (0..n)
        .map(|k| {
            if active[k] {
                FdRegion::Active
            } else if active_list
                .iter()
                .any(|&a| min_distance(mol, &f.fragments[a], &f.fragments[k]) <= buffer_d)
            {
                FdRegion::Buffer
            } else {
                FdRegion::Frozen
            }
        })
        .collect();
    let top = base.nlayer().max(2);
    let layer = base
        .layer
        .iter()
        .zip(&fd)
        .map(|(&l, r)| match r {
            FdRegion::Active | FdRegion::Buffer => top,
            _ => l,
        })
        .collect();
    Ok(RegionAssignment {
        layer,
        fd,
        central_fragment: central,
        boundary_distance: base.boundary_distance,
        active_distance: Some(active_d),
        buffer_distance: Some(buffer_d),
    })
}
