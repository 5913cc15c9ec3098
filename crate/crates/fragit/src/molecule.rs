//! Immutable molecular graph.

use std::collections::{BTreeSet, HashMap};

use crate::element;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    /// 1-based ordinal, equal to file order.
    pub index: usize,
    /// Atomic number.
    pub element: u8,
    pub position: [f64; 3],
    pub formal_charge: i32,
    /// Number of bonded hydrogen neighbours (maintained by [`Molecule`]).
    pub attached_hydrogens: usize,
    pub name: Option<String>,
    pub residue_label: Option<String>,
    pub chain_label: Option<String>,
}

impl Atom {
    pub fn new(element: u8, position: [f64; 3]) -> Self {
        Atom {
            index: 0,
            element,
            position,
            formal_charge: 0,
            attached_hydrogens: 0,
            name: None,
            residue_label: None,
            chain_label: None,
        }
    }

    pub fn symbol(&self) -> &'static str {
        element::symbol(self.element)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: u8,
}

impl Bond {
    /// Bond with endpoints sorted so that `a < b`.
    pub fn new(i: usize, j: usize, order: u8) -> Self {
        Bond {
            a: i.min(j),
            b: i.max(j),
            order,
        }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn other(&self, i: usize) -> usize {
        if i == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Unordered pair key used for bond lookups.
pub fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    name: String,
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    adjacency: Vec<Vec<usize>>,
    bond_lookup: HashMap<(usize, usize), usize>,
}

impl Molecule {
    /// Builds a molecule, renumbering atoms 1..N in the given order.
    ///
    /// Bonds are normalized and sorted; a repeated pair keeps its first order.
    pub fn new(name: impl Into<String>, mut atoms: Vec<Atom>, bonds: Vec<Bond>) -> Result<Self> {
        let n = atoms.len();
        for (k, atom) in atoms.iter_mut().enumerate() {
            atom.index = k + 1;
        }
        let mut seen = HashMap::new();
        let mut normalized = Vec::with_capacity(bonds.len());
        for bond in bonds {
            let bond = Bond::new(bond.a, bond.b, bond.order);
            for end in [bond.a, bond.b] {
                if end == 0 || end > n {
                    return Err(Error::AtomIndex { index: end, len: n });
                }
            }
            if bond.a == bond.b {
                return Err(Error::Perception {
                    atom: bond.a,
                    message: "bond to itself".into(),
                });
            }
            if !(1..=3).contains(&bond.order) {
                return Err(Error::Perception {
                    atom: bond.a,
                    message: format!("bond order {} outside 1..3", bond.order),
                });
            }
            if seen.insert(bond.key(), ()).is_none() {
                normalized.push(bond);
            }
        }
        normalized.sort();

        let mut adjacency = vec![Vec::new(); n];
        let mut bond_lookup = HashMap::with_capacity(normalized.len());
        for (k, bond) in normalized.iter().enumerate() {
            adjacency[bond.a - 1].push(bond.b);
            adjacency[bond.b - 1].push(bond.a);
            bond_lookup.insert(bond.key(), k);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let elements: Vec<u8> = atoms.iter().map(|a| a.element).collect();
        for (k, atom) in atoms.iter_mut().enumerate() {
            atom.attached_hydrogens = adjacency[k]
                .iter()
                .filter(|&&j| elements[j - 1] == element::HYDROGEN)
                .count();
        }

        Ok(Molecule {
            name: name.into(),
            atoms,
            bonds: normalized,
            adjacency,
            bond_lookup,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    fn check(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.atoms.len() {
            Err(Error::AtomIndex {
                index: i,
                len: self.atoms.len(),
            })
        } else {
            Ok(i - 1)
        }
    }

    pub fn atom(&self, i: usize) -> Result<&Atom> {
        Ok(&self.atoms[self.check(i)?])
    }

    /// Bonded neighbours of atom `i`, ascending.
    pub fn neighbors(&self, i: usize) -> Result<&[usize]> {
        Ok(&self.adjacency[self.check(i)?])
    }

    pub fn bond_between(&self, i: usize, j: usize) -> Option<&Bond> {
        self.bond_lookup
            .get(&pair_key(i, j))
            .map(|&k| &self.bonds[k])
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        let p = self.atoms[self.check(i)?].position;
        let q = self.atoms[self.check(j)?].position;
        Ok(euclid(p, q))
    }

    pub fn total_formal_charge(&self) -> i32 {
        self.atoms.iter().map(|a| a.formal_charge).sum()
    }

    /// Sum of bond orders at atom `i` (1-based, unchecked).
    pub(crate) fn valence_sum(&self, i: usize) -> u32 {
        self.adjacency[i - 1]
            .iter()
            .map(|&j| self.bond_between(i, j).map_or(0, |b| b.order as u32))
            .sum()
    }

    /// Connected components, each sorted, ordered by minimum atom index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_excluding(&BTreeSet::new())
    }

    /// Connected components after removing the given bonds (as `(a, b)` with `a < b`).
    pub fn components_excluding(&self, removed: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut label = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 1..=n {
            if label[start - 1] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            label[start - 1] = id;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &j in &self.adjacency[i - 1] {
                    if label[j - 1] == usize::MAX && !removed.contains(&pair_key(i, j)) {
                        label[j - 1] = id;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Copy with a new bond list.
    pub fn with_bonds(&self, bonds: Vec<Bond>) -> Result<Self> {
        Molecule::new(self.name.clone(), self.atoms.clone(), bonds)
    }

    /// Copy with new per-atom formal charges (in atom order).
    pub fn with_formal_charges(&self, charges: &[i32]) -> Self {
        let mut copy = self.clone();
        for (atom, &q) in copy.atoms.iter_mut().zip(charges) {
            atom.formal_charge = q;
        }
        copy
    }
}

pub fn euclid(p: [f64; 3], q: [f64; 3]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}
