use std::collections::HashMap;

use crate::element;
use crate::error::{Error, Result};
use crate::molecule::{Atom, Molecule};
use crate::perception;

fn columns(line: &str, start: usize, end: usize) -> &str {
    let end = end.min(line.len());
    if start >= end {
        ""
    } else {
        line.get(start..end).unwrap_or("")
    }
}

fn number(line: &str, start: usize, end: usize, what: &str, path: &str, lineno: usize) -> Result<f64> {
    columns(line, start, end)
        .trim()
        .parse()
        .map_err(|_| Error::parse(path, lineno, format!("bad {what} in columns {}-{}", start + 1, end)))
}

/// Element from columns 77-78, else from the atom-name field.
fn element_of(line: &str, serial: usize, path: &str, lineno: usize) -> Result<u8> {
    let explicit = columns(line, 76, 78).trim();
    if !explicit.is_empty() {
        return element::atomic_number(explicit).ok_or_else(|| Error::UnsupportedElement {
            symbol: explicit.to_string(),
            atom: serial,
        });
    }
    // Element symbols are right-justified in columns 13-14; a letter in
    // column 13 means a two-letter element, except for 4-character H names.
    let name = columns(line, 12, 16);
    let chars: Vec<char> = name.chars().collect();
    let symbol = match chars.first() {
        Some(c) if c.is_ascii_alphabetic() => {
            let two: String = chars.iter().take(2).filter(|c| c.is_ascii_alphabetic()).collect();
            let hydrogen_name = *c == 'H' && name.trim_end().len() == 4;
            if two.len() == 2 && !hydrogen_name && element::atomic_number(&two).is_some() {
                two
            } else {
                c.to_string()
            }
        }
        _ => chars
            .get(1)
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| c.to_string())
            .ok_or_else(|| Error::parse(path, lineno, "cannot determine element"))?,
    };
    element::atomic_number(&symbol).ok_or(Error::UnsupportedElement {
        symbol,
        atom: serial,
    })
}

pub fn parse_pdb(text: &str, path: &str, name: &str, model_index: usize) -> Result<Molecule> {
    if model_index == 0 {
        return Err(Error::parse(path, 0, "model index starts at 1"));
    }
    let mut model = 0usize;
    let mut saw_model = false;
    let mut atoms = Vec::new();
    let mut serials: HashMap<usize, usize> = HashMap::new();
    let mut conect: Vec<(usize, usize, usize)> = Vec::new();

    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let record = columns(line, 0, 6);
        if record.starts_with("MODEL") {
            saw_model = true;
            model += 1;
            continue;
        }
        if record.starts_with("ENDMDL") {
            if model >= model_index {
                break;
            }
            continue;
        }
        let in_model = !saw_model || model == model_index;
        if record == "ATOM  " || record == "HETATM" {
            if !in_model {
                continue;
            }
            if line.len() < 54 {
                return Err(Error::parse(path, lineno, "coordinate record shorter than 54 columns"));
            }
            let serial: usize = columns(line, 6, 11)
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, lineno, "bad atom serial in columns 7-11"))?;
            let x = number(line, 30, 38, "x coordinate", path, lineno)?;
            let y = number(line, 38, 46, "y coordinate", path, lineno)?;
            let z = number(line, 46, 54, "z coordinate", path, lineno)?;
            let el = element_of(line, serial, path, lineno)?;
            let mut atom = Atom::new(el, [x, y, z]);
            atom.name = Some(columns(line, 12, 16).trim().to_string());
            let res_name = columns(line, 17, 20).trim();
            let res_seq = columns(line, 22, 26).trim();
            let insertion = columns(line, 26, 27).trim();
            atom.residue_label = Some(format!("{res_name}{res_seq}{insertion}"));
            let chain = columns(line, 21, 22).trim();
            if !chain.is_empty() {
                atom.chain_label = Some(chain.to_string());
            }
            serials.insert(serial, atoms.len() + 1);
            atoms.push(atom);
        } else if record == "CONECT" {
            let from: usize = columns(line, 6, 11)
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, lineno, "bad CONECT serial"))?;
            for start in [11, 16, 21, 26] {
                let field = columns(line, start, start + 5).trim();
                if field.is_empty() {
                    continue;
                }
                let to: usize = field
                    .parse()
                    .map_err(|_| Error::parse(path, lineno, "bad CONECT partner"))?;
                conect.push((from, to, lineno));
            }
        }
    }

    if saw_model && model < model_index {
        return Err(Error::parse(
            path,
            0,
            format!("model {model_index} requested but file has {model}"),
        ));
    }
    if atoms.is_empty() {
        return Err(Error::parse(path, 0, "no ATOM/HETATM records"));
    }

    let mut extra = Vec::new();
    for (from, to, _) in conect {
        if let (Some(&i), Some(&j)) = (serials.get(&from), serials.get(&to)) {
            if i != j {
                extra.push((i, j));
            }
        }
    }
    perception::perceive(name, atoms, &extra)
}
