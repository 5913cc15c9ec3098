use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::io::Format;
use crate::patterns::PatternSet;

#[derive(Debug, Clone, PartialEq)]
pub struct GamessSettings {
    pub scf_type: String,
    pub basis: String,
    /// Megabytes per core.
    pub memory_per_core: u32,
    pub run_type: String,
}

impl Default for GamessSettings {
    fn default() -> Self {
        GamessSettings {
            scf_type: "RHF".into(),
            basis: "3-21G".into(),
            memory_per_core: 1000,
            run_type: "energy".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSettings {
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub model_index: usize,
    pub use_protection: bool,
    pub group_size: usize,
    pub merge_glycine: bool,
    pub central_fragment: Option<usize>,
    pub boundary_distance: Option<f64>,
    pub active_distance: Option<f64>,
    pub buffer_distance: Option<f64>,
    pub patterns: PatternSet,
    pub explicit_pairs: Vec<(usize, usize)>,
    pub emit_pymol: bool,
    pub emit_jmol: bool,
    pub gamess: GamessSettings,
    pub config_in: Option<PathBuf>,
    pub config_out: Option<PathBuf>,
}

impl Default for JobSettings {
    fn default() -> Self {
        JobSettings {
            input_path: None,
            output_path: None,
            format: None,
            model_index: 1,
            use_protection: true,
            group_size: 1,
            merge_glycine: false,
            central_fragment: None,
            boundary_distance: None,
            active_distance: None,
            buffer_distance: None,
            patterns: PatternSet::default(),
            explicit_pairs: Vec::new(),
            emit_pymol: false,
            emit_jmol: false,
            gamess: GamessSettings::default(),
            config_in: None,
            config_out: None,
        }
    }
}

impl JobSettings {
    pub fn validate(&self) -> Result<()> {
        if self.group_size < 1 {
            return Err(Error::Config("group size must be at least 1".into()));
        }
        if self.model_index < 1 {
            return Err(Error::Config("model index starts at 1".into()));
        }
        let needs_central = self.boundary_distance.is_some()
            || self.active_distance.is_some()
            || self.buffer_distance.is_some();
        if needs_central && self.central_fragment.is_none() {
            return Err(Error::Config(
                "distances require a central fragment (--output-central-fragment)".into(),
            ));
        }
        if (self.active_distance.is_some() || self.buffer_distance.is_some())
            && self.boundary_distance.is_none()
        {
            return Err(Error::Config(
                "active/buffer distances require --output-boundaries".into(),
            ));
        }
        if self.active_distance.is_some() != self.buffer_distance.is_some() {
            return Err(Error::Config(
                "active and buffer distances must be given together".into(),
            ));
        }
        for (what, d) in [
            ("boundary", self.boundary_distance),
            ("active", self.active_distance),
            ("buffer", self.buffer_distance),
        ] {
            if let Some(d) = d {
                if d <= 0.0 || !d.is_finite() {
                    return Err(Error::Config(format!("{what} distance must be positive")));
                }
            }
        }
        if self.central_fragment == Some(0) {
            return Err(Error::Config("fragment ordinals start at 1".into()));
        }
        for &(a, b) in &self.explicit_pairs {
            if a == b || a == 0 || b == 0 {
                return Err(Error::InvalidPair { a, b });
            }
        }
        Ok(())
    }
}
