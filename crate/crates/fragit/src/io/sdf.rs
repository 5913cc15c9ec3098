use crate::element;
use crate::error::{Error, Result};
use crate::molecule::{Atom, Bond, Molecule};

fn field(line: &str, start: usize, end: usize) -> &str {
    line.get(start..end.min(line.len())).unwrap_or("").trim()
}

fn int(line: &str, start: usize, end: usize, path: &str, lineno: usize, what: &str) -> Result<i64> {
    field(line, start, end)
        .parse()
        .map_err(|_| Error::parse(path, lineno, format!("bad {what}")))
}

/// First record of a V2000 molfile/SD file. Bonds and charges are taken as given.
pub fn parse_sdf(text: &str, path: &str, name: &str) -> Result<Molecule> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < 4 {
        return Err(Error::parse(path, lines.len().max(1), "missing header or counts line"));
    }
    let counts = lines[3];
    if counts.contains("V3000") {
        return Err(Error::parse(path, 4, "V3000 molfiles are not supported"));
    }
    let n_atoms = int(counts, 0, 3, path, 4, "atom count")? as usize;
    let n_bonds = int(counts, 3, 6, path, 4, "bond count")? as usize;
    if n_atoms == 0 {
        return Err(Error::parse(path, 4, "atom count is zero"));
    }
    let title = lines[0].trim();
    let mol_name = if title.is_empty() { name } else { title };

    let mut atoms = Vec::with_capacity(n_atoms);
    for k in 0..n_atoms {
        let lineno = 5 + k;
        let line = lines
            .get(4 + k)
            .ok_or_else(|| Error::parse(path, lineno, "atom block truncated"))?;
        let mut position = [0.0; 3];
        for (c, slot) in position.iter_mut().enumerate() {
            *slot = field(line, c * 10, c * 10 + 10)
                .parse()
                .map_err(|_| Error::parse(path, lineno, "bad coordinate"))?;
        }
        let symbol = field(line, 31, 34);
        let z = element::atomic_number(symbol).ok_or_else(|| Error::UnsupportedElement {
            symbol: symbol.to_string(),
            atom: k + 1,
        })?;
        let mut atom = Atom::new(z, position);
        let code = field(line, 36, 39);
        if !code.is_empty() {
            atom.formal_charge = match code.parse::<i32>() {
                Ok(0) => 0,
                Ok(c @ 1..=7) if c != 4 => 4 - c,
                _ => return Err(Error::parse(path, lineno, "bad charge code")),
            };
        }
        atoms.push(atom);
    }

    let mut bonds = Vec::with_capacity(n_bonds);
    for k in 0..n_bonds {
        let lineno = 5 + n_atoms + k;
        let line = lines
            .get(4 + n_atoms + k)
            .ok_or_else(|| Error::parse(path, lineno, "bond block truncated"))?;
        let a = int(line, 0, 3, path, lineno, "bond atom")? as usize;
        let b = int(line, 3, 6, path, lineno, "bond atom")? as usize;
        let order = int(line, 6, 9, path, lineno, "bond order")?;
        if !(1..=3).contains(&order) {
            return Err(Error::parse(
                path,
                lineno,
                format!("bond order {order} unsupported (Kekulé form required)"),
            ));
        }
        if a == 0 || b == 0 || a > n_atoms || b > n_atoms || a == b {
            return Err(Error::parse(path, lineno, "bond references an invalid atom"));
        }
        bonds.push(Bond::new(a, b, order as u8));
    }

    let mut charge_block_seen = false;
    for (k, line) in lines.iter().enumerate().skip(4 + n_atoms + n_bonds) {
        let lineno = k + 1;
        if line.starts_with("M  END") || line.starts_with("$$$$") {
            break;
        }
        if !line.starts_with("M  CHG") {
            continue;
        }
        if !charge_block_seen {
            // Properties block charges supersede atom-block charge codes.
            for atom in &mut atoms {
                atom.formal_charge = 0;
            }
            charge_block_seen = true;
        }
        let tokens: Vec<&str> = line[6..].split_whitespace().collect();
        let count: usize = tokens
            .first()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(path, lineno, "bad M  CHG count"))?;
        if tokens.len() < 1 + 2 * count {
            return Err(Error::parse(path, lineno, "M  CHG entry truncated"));
        }
        for pair in tokens[1..1 + 2 * count].chunks(2) {
            let idx: usize = pair[0]
                .parse()
                .map_err(|_| Error::parse(path, lineno, "bad M  CHG atom"))?;
            let q: i32 = pair[1]
                .parse()
                .map_err(|_| Error::parse(path, lineno, "bad M  CHG value"))?;
            let atom = atoms
                .get_mut(idx.wrapping_sub(1))
                .ok_or_else(|| Error::parse(path, lineno, "M  CHG atom out of range"))?;
            atom.formal_charge = q;
        }
    }

    Molecule::new(mol_name, atoms, bonds)
}
