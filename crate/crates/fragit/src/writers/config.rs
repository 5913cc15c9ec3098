use std::fmt::Write;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::settings::JobSettings;

const SECTIONS: [&str; 4] = ["fragmentation", "protection", "output", "explicitfragmentpairs"];
const PATTERN_PREFIX: &str = "pattern.";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(a, b)| format!("{a},{b};")).collect()
}

/// INI text for every setting that lives in a config file (paths, model
/// and format are command-line only).
pub fn write_config(s: &JobSettings) -> String {
    let mut out = String::new();
    out.push_str("[fragmentation]\n");
    let _ = writeln!(out, "groupsize = {}", s.group_size);
    let _ = writeln!(out, "mergeglycine = {}", s.merge_glycine);
    let _ = writeln!(out, "glycinepattern = {}", s.patterns.glycine.text);
    for p in &s.patterns.fragmentation {
        let _ = writeln!(out, "{PATTERN_PREFIX}{} = {}", p.name, p.text);
    }
    out.push_str("\n[protection]\n");
    let _ = writeln!(out, "enabled = {}", s.use_protection);
    for p in &s.patterns.protection {
        let _ = writeln!(out, "{PATTERN_PREFIX}{} = {}", p.name, p.text);
    }
    out.push_str("\n[output]\n");
    let _ = writeln!(out, "centralfragment = {}", opt(s.central_fragment));
    let _ = writeln!(out, "boundaries = {}", opt(s.boundary_distance));
    let _ = writeln!(out, "activedistance = {}", opt(s.active_distance));
    let _ = writeln!(out, "bufferdistance = {}", opt(s.buffer_distance));
    let _ = writeln!(out, "pymol = {}", s.emit_pymol);
    let _ = writeln!(out, "jmol = {}", s.emit_jmol);
    let _ = writeln!(out, "scftype = {}", s.gamess.scf_type);
    let _ = writeln!(out, "basis = {}", s.gamess.basis);
    let _ = writeln!(out, "memory = {}", s.gamess.memory_per_core);
    let _ = writeln!(out, "runtype = {}", s.gamess.run_type);
    out.push_str("\n[explicitfragmentpairs]\n");
    let _ = writeln!(out, "pairs = {}", pairs_text(&s.explicit_pairs));
    out
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

fn err(e: &Entry, message: impl Into<String>) -> Error {
    Error::ConfigSyntax {
        line: e.line,
        key: e.key.to_string(),
        message: message.into(),
    }
}

fn boolean(e: &Entry) -> Result<bool> {
    match e.value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(err(e, "expected true or false")),
    }
}

fn number<T: std::str::FromStr>(e: &Entry) -> Result<T> {
    e.value.parse().map_err(|_| err(e, format!("bad number '{}'", e.value)))
}

fn optional<T: std::str::FromStr>(e: &Entry) -> Result<Option<T>> {
    if e.value.is_empty() {
        Ok(None)
    } else {
        number(e).map(Some)
    }
}

fn text(e: &Entry) -> Result<String> {
    if e.value.is_empty() {
        Err(err(e, "value must not be empty"))
    } else {
        Ok(e.value.to_string())
    }
}

/// Parses `A,B;C,D;` (trailing semicolon optional).
fn parse_pairs(e: &Entry) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for item in e.value.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (a, b) = item
            .split_once(',')
            .ok_or_else(|| err(e, format!("pair '{item}' needs a comma")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| err(e, format!("'{a}' is not an atom index")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| err(e, format!("'{b}' is not an atom index")))?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// Settings from INI text; keys not present keep their defaults.
pub fn read_config(doc: &str) -> Result<JobSettings> {
    let mut s = JobSettings::default();
    let mut section: Option<&str> = None;
    let mut seen: Vec<(String, String)> = Vec::new();
    let mut fragmentation: Option<Vec<(String, String)>> = None;
    let mut protection: Option<Vec<(String, String)>> = None;
    let mut glycine = s.patterns.glycine.text.clone();

    for (k, raw) in doc.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::ConfigSyntax {
                    line: k + 1,
                    key: line.to_string(),
                    message: "unterminated section header".into(),
                })?
                .trim();
            let known = SECTIONS.iter().find(|s| s.eq_ignore_ascii_case(name)).ok_or_else(|| {
                Error::Config(format!("unknown section [{name}] on line {}", k + 1))
            })?;
            section = Some(known);
            match *known {
                "fragmentation" => {
                    fragmentation.get_or_insert_with(Vec::new);
                }
                "protection" => {
                    protection.get_or_insert_with(Vec::new);
                }
                _ => {}
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigSyntax {
            line: k + 1,
            key: line.to_string(),
            message: "expected 'key = value'".into(),
        })?;
        let e = Entry {
            line: k + 1,
            key: key.trim(),
            value: value.trim(),
        };
        let Some(sec) = section else {
            return Err(err(&e, "key outside of any section"));
        };
        let lower = e.key.to_ascii_lowercase();
        if seen.iter().any(|(s2, k2)| s2 == sec && *k2 == lower) {
            return Err(err(&e, "duplicate key"));
        }
        seen.push((sec.to_string(), lower.clone()));

        if let Some(name) = e.key.strip_prefix(PATTERN_PREFIX) {
            if name.is_empty() {
                return Err(err(&e, "pattern name missing"));
            }
            let entry = (name.to_string(), text(&e)?);
            match sec {
                "fragmentation" => fragmentation.get_or_insert_with(Vec::new).push(entry),
                "protection" => protection.get_or_insert_with(Vec::new).push(entry),
                _ => return Err(err(&e, format!("unknown key in [{sec}]"))),
            }
            continue;
        }
        match (sec, lower.as_str()) {
            ("fragmentation", "groupsize") => s.group_size = number(&e)?,
            ("fragmentation", "mergeglycine") => s.merge_glycine = boolean(&e)?,
            ("fragmentation", "glycinepattern") => glycine = text(&e)?,
            ("protection", "enabled") => s.use_protection = boolean(&e)?,
            ("output", "centralfragment") => s.central_fragment = optional(&e)?,
            ("output", "boundaries") => s.boundary_distance = optional(&e)?,
            ("output", "activedistance") => s.active_distance = optional(&e)?,
            ("output", "bufferdistance") => s.buffer_distance = optional(&e)?,
            ("output", "pymol") => s.emit_pymol = boolean(&e)?,
            ("output", "jmol") => s.emit_jmol = boolean(&e)?,
            ("output", "scftype") => s.gamess.scf_type = text(&e)?,
            ("output", "basis") => s.gamess.basis = text(&e)?,
            ("output", "memory") => s.gamess.memory_per_core = number(&e)?,
            ("output", "runtype") => s.gamess.run_type = text(&e)?,
            ("explicitfragmentpairs", "pairs") => s.explicit_pairs = parse_pairs(&e)?,
            _ => return Err(err(&e, format!("unknown key in [{sec}]"))),
        }
    }

    let defaults = PatternSet::default();
    let as_pairs = |list: &[crate::patterns::NamedPattern]| -> Vec<(String, String)> {
        list.iter().map(|p| (p.name.clone(), p.text.clone())).collect()
    };
    let fragmentation = fragmentation.unwrap_or_else(|| as_pairs(&defaults.fragmentation));
    let protection = protection.unwrap_or_else(|| as_pairs(&defaults.protection));
    s.patterns = PatternSet::new(&fragmentation, &protection, &glycine)?;
    Ok(s)
}
