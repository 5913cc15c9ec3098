//! Named pattern sets and the built-in defaults.

use std::fmt;

use crate::error::{Error, Result};
use crate::smarts::{self, SmartsPattern};

pub const PEPTIDE: &str = "[$(CN)][$(C(=O)NCC(=O))]";
pub const SUGAR: &str = "[$(C1C(CO)OC(O)C(O)C1(O))][$(OC1C(O)C(O)CC(CO)O1)]";
pub const DNA: &str = "[$(CCOP)][$(CC1OCCC1)]";
pub const PROTECT_NH2: &str = "[$(NH2)]CC(=O)[$(NCC=O)]";
pub const PROTECT_NH3: &str = "[$(NH3)]CC(=O)[$(NCC=O)]";
/// Alpha CH2 between an acylated amide N and a carbonyl C; atom 2 is the
/// carbonyl carbon of the preceding residue.
pub const GLYCINE: &str = "[CH2](NC=O)C=O";

#[derive(Clone)]
pub struct NamedPattern {
    pub name: String,
    pub text: String,
    pub pattern: SmartsPattern,
}

impl NamedPattern {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let text = text.into();
        let pattern = smarts::parse(&text).map_err(|source| Error::Pattern {
            name: name.clone(),
            source,
        })?;
        Ok(NamedPattern {
            name,
            text,
            pattern,
        })
    }
}

impl PartialEq for NamedPattern {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.text == other.text
    }
}

impl fmt::Debug for NamedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternSet {
    pub fragmentation: Vec<NamedPattern>,
    pub protection: Vec<NamedPattern>,
    pub glycine: NamedPattern,
}

impl PatternSet {
    /// Parses and checks every pattern. Fragmentation patterns need their
    /// first two atoms bonded.
    pub fn new(
        fragmentation: &[(String, String)],
        protection: &[(String, String)],
        glycine: &str,
    ) -> Result<Self> {
        let mut frag = Vec::with_capacity(fragmentation.len());
        for (name, text) in fragmentation {
            let p = NamedPattern::new(name.as_str(), text.as_str())?;
            if p.pattern.len() < 2 || p.pattern.bond(0, 1).is_none() {
                return Err(Error::PatternShape {
                    name: name.clone(),
                    message: "fragmentation pattern must start with two bonded atoms".into(),
                });
            }
            frag.push(p);
        }
        let mut prot = Vec::with_capacity(protection.len());
        for (name, text) in protection {
            prot.push(NamedPattern::new(name.as_str(), text.as_str())?);
        }
        let glycine = NamedPattern::new("glycine", glycine)?;
        if glycine.pattern.len() < 3 {
            return Err(Error::PatternShape {
                name: "glycine".into(),
                message: "glycine pattern needs alpha C, amide N and acyl C as atoms 1-3".into(),
            });
        }
        for names in [&frag, &prot] {
            for (k, p) in names.iter().enumerate() {
                if names[..k].iter().any(|q| q.name == p.name) {
                    return Err(Error::PatternShape {
                        name: p.name.clone(),
                        message: "duplicate pattern name".into(),
                    });
                }
            }
        }
        Ok(PatternSet {
            fragmentation: frag,
            protection: prot,
            glycine,
        })
    }
}

impl Default for PatternSet {
    fn default() -> Self {
        builtin_patterns()
    }
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter()
        .map(|(n, t)| (n.to_string(), t.to_string()))
        .collect()
}

/// Peptide, sugar and DNA fragmentation with N-terminal protection.
pub fn builtin_patterns() -> PatternSet {
    PatternSet::new(
        &pairs(&[("peptide", PEPTIDE), ("sugar", SUGAR), ("dna", DNA)]),
        &pairs(&[("nh2", PROTECT_NH2), ("nh3", PROTECT_NH3)]),
        GLYCINE,
    )
    .expect("built-in patterns are valid")
}
