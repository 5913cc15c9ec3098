use crate::element;
use crate::error::{Error, Result};
use crate::molecule::{Atom, Molecule};
use crate::perception;

pub fn parse_xyz(text: &str, path: &str, name: &str) -> Result<Molecule> {
    let mut lines = text.lines();
    let count: usize = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty file"))?
        .trim()
        .parse()
        .map_err(|_| Error::parse(path, 1, "first line must be the atom count"))?;
    if count == 0 {
        return Err(Error::parse(path, 1, "atom count is zero"));
    }
    lines
        .next()
        .ok_or_else(|| Error::parse(path, 2, "missing comment line"))?;

    let mut atoms = Vec::with_capacity(count);
    for k in 0..count {
        let lineno = k + 3;
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(path, lineno, format!("expected {count} atoms, found {k}")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(Error::parse(path, lineno, "expected element and three coordinates"));
        }
        let symbol = fields[0];
        let z = element::atomic_number(symbol).ok_or_else(|| Error::UnsupportedElement {
            symbol: symbol.to_string(),
            atom: k + 1,
        })?;
        let mut position = [0.0; 3];
        for (c, field) in position.iter_mut().zip(&fields[1..4]) {
            *c = field
                .parse()
                .map_err(|_| Error::parse(path, lineno, format!("bad coordinate '{field}'")))?;
        }
        atoms.push(Atom::new(z, position));
    }
    perception::perceive(name, atoms, &[])
}
