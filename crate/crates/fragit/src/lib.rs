//! Fragmentation of molecular systems with SMARTS patterns, and GAMESS FMO
//! input generation.
//!
//! The pipeline is: read a structure ([`io`]), perceive bonds and charges
//! ([`perception`]), cut it into fragments ([`fragmenter`]), optionally
//! assign layers and FD regions ([`regions`]) and write the deck and
//! visualization scripts ([`writers`]).

pub mod cli;
pub mod element;
pub mod error;
pub mod fragmenter;
pub mod io;
pub mod molecule;
pub mod patterns;
pub mod perception;
pub mod regions;
pub mod settings;
pub mod smarts;
pub mod writers;

pub use error::{Error, Result};
pub use fragmenter::{fragment, CutBond, Fragmentation, Provenance};
pub use molecule::{Atom, Bond, Molecule};
pub use patterns::{builtin_patterns, PatternSet};
pub use regions::{FdRegion, RegionAssignment};
pub use settings::{GamessSettings, JobSettings};
