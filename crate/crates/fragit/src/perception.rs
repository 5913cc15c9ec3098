//! Bonds, bond orders and formal charges from coordinates.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::element::{self, CARBON, HYDROGEN, NITROGEN, OXYGEN};
use crate::error::{Error, Result};
use crate::molecule::{euclid, Atom, Bond, Molecule};

/// Distance-based connectivity with covalent radii, all orders 1.
///
/// Atoms are binned on a grid whose spacing is the largest possible cutoff,
/// so only the 27 surrounding cells are searched for each atom.
pub fn perceive_bonds(atoms: &[Atom]) -> Result<Vec<Bond>> {
    let mut radii = Vec::with_capacity(atoms.len());
    for (k, atom) in atoms.iter().enumerate() {
        match element::covalent_radius(atom.element) {
            Some(r) => radii.push(r),
            None => {
                return Err(Error::UnsupportedElement {
                    symbol: element::symbol(atom.element).to_string(),
                    atom: k + 1,
                })
            }
        }
    }
    let max_r = radii.iter().cloned().fold(0.0, f64::max);
    let cell = 2.0 * max_r + element::RADIUS_TOLERANCE;
    let key = |p: [f64; 3]| {
        (
            (p[0] / cell).floor() as i64,
            (p[1] / cell).floor() as i64,
            (p[2] / cell).floor() as i64,
        )
    };

    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (k, atom) in atoms.iter().enumerate() {
        grid.entry(key(atom.position)).or_default().push(k);
    }

    let mut bonds = Vec::new();
    for (i, atom) in atoms.iter().enumerate() {
        let (cx, cy, cz) = key(atom.position);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(bucket) = grid.get(&(cx + dx, cy + dy, cz + dz)) else {
                        continue;
                    };
                    for &j in bucket {
                        if j <= i {
                            continue;
                        }
                        let d = euclid(atom.position, atoms[j].position);
                        if d > element::MIN_BOND_LENGTH
                            && d <= radii[i] + radii[j] + element::RADIUS_TOLERANCE
                        {
                            bonds.push(Bond::new(i + 1, j + 1, 1));
                        }
                    }
                }
            }
        }
    }
    bonds.sort();
    Ok(bonds)
}

struct OrderState<'a> {
    mol: &'a Molecule,
    orders: Vec<u8>,
    index: HashMap<(usize, usize), usize>,
    sums: Vec<u32>,
}

impl<'a> OrderState<'a> {
    fn new(mol: &'a Molecule) -> Self {
        let orders: Vec<u8> = mol.bonds().iter().map(|b| b.order).collect();
        let index = mol
            .bonds()
            .iter()
            .enumerate()
            .map(|(k, b)| (b.key(), k))
            .collect();
        let sums = (1..=mol.len()).map(|i| mol.valence_sum(i)).collect();
        OrderState {
            mol,
            orders,
            index,
            sums,
        }
    }

    fn deficit(&self, i: usize) -> u32 {
        let z = self.mol.atoms()[i - 1].element;
        let sum = self.sums[i - 1];
        element::allowed_valences(z)
            .iter()
            .find(|&&v| v >= sum)
            .map_or(0, |v| v - sum)
    }

    fn bond_id(&self, i: usize, j: usize) -> usize {
        self.index[&crate::molecule::pair_key(i, j)]
    }

    fn shift(&mut self, k: usize, up: bool) {
        let bond = self.mol.bonds()[k];
        if up {
            self.orders[k] += 1;
            self.sums[bond.a - 1] += 1;
            self.sums[bond.b - 1] += 1;
        } else {
            self.orders[k] -= 1;
            self.sums[bond.a - 1] -= 1;
            self.sums[bond.b - 1] -= 1;
        }
    }

    fn length(&self, k: usize) -> f64 {
        let b = self.mol.bonds()[k];
        self.mol.distance(b.a, b.b).unwrap_or(f64::INFINITY)
    }

    /// Shortest alternating path from `start` to another deficit atom:
    /// raise, lower, raise, ... along a simple path.
    fn augmenting_path(&self, start: usize) -> Option<Vec<usize>> {
        const MAX_DEPTH: usize = 24;
        let mut queue = VecDeque::new();
        queue.push_back(vec![start]);
        while let Some(path) = queue.pop_front() {
            if path.len() > MAX_DEPTH {
                continue;
            }
            let tail = *path.last().unwrap();
            let raise = path.len() % 2 == 1;
            for &next in self.mol.neighbors(tail).unwrap_or(&[]) {
                if path.contains(&next) {
                    continue;
                }
                let k = self.bond_id(tail, next);
                let original = self.mol.bonds()[k].order;
                if raise {
                    if self.orders[k] >= 3 {
                        continue;
                    }
                    if self.deficit(next) > 0 {
                        let mut done = path.clone();
                        done.push(next);
                        return Some(done);
                    }
                } else if self.orders[k] <= original {
                    continue;
                }
                let mut extended = path.clone();
                extended.push(next);
                queue.push_back(extended);
            }
        }
        None
    }
}

/// Raises bond orders until element valence rules are met where possible.
///
/// 1. Bonds are visited shortest first (ties by atom pair) and promoted while
///    both ends have a valence deficit.
/// 2. Leftover deficit pairs are joined by flipping alternating paths, which
///    fixes Kekulé structures the greedy pass gets wrong.
/// 3. A carbon still short of valence takes a double bond to a saturated
///    trivalent nitrogen neighbour (e.g. guanidinium), leaving that N at +1.
pub fn perceive_bond_orders(mol: &Molecule) -> Molecule {
    let mut state = OrderState::new(mol);

    let mut by_length: Vec<usize> = (0..mol.bonds().len()).collect();
    let lengths: Vec<f64> = by_length.iter().map(|&k| state.length(k)).collect();
    by_length.sort_by(|&x, &y| {
        lengths[x]
            .total_cmp(&lengths[y])
            .then(mol.bonds()[x].key().cmp(&mol.bonds()[y].key()))
    });
    for &k in &by_length {
        let b = mol.bonds()[k];
        while state.orders[k] < 3 && state.deficit(b.a) > 0 && state.deficit(b.b) > 0 {
            state.shift(k, true);
        }
    }

    loop {
        let mut changed = false;
        for start in 1..=mol.len() {
            if state.deficit(start) == 0 {
                continue;
            }
            if let Some(path) = state.augmenting_path(start) {
                for (step, pair) in path.windows(2).enumerate() {
                    let k = state.bond_id(pair[0], pair[1]);
                    state.shift(k, step % 2 == 0);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    for i in 1..=mol.len() {
        if mol.atoms()[i - 1].element != CARBON || state.deficit(i) == 0 {
            continue;
        }
        let target = mol
            .neighbors(i)
            .unwrap_or(&[])
            .iter()
            .copied()
            .filter(|&j| {
                mol.atoms()[j - 1].element == NITROGEN
                    && state.sums[j - 1] == 3
                    && state.orders[state.bond_id(i, j)] < 3
            })
            .min_by(|&x, &y| {
                let dx = mol.distance(i, x).unwrap_or(f64::INFINITY);
                let dy = mol.distance(i, y).unwrap_or(f64::INFINITY);
                dx.total_cmp(&dy).then(x.cmp(&y))
            });
        if let Some(j) = target {
            let k = state.bond_id(i, j);
            state.shift(k, true);
        }
    }

    let bonds = mol
        .bonds()
        .iter()
        .zip(&state.orders)
        .map(|(b, &o)| Bond::new(b.a, b.b, o))
        .collect();
    mol.with_bonds(bonds)
        .expect("bond set unchanged, only orders differ")
}

/// Formal charges for N and O from their bond-order sums; other atoms keep
/// whatever charge they already carry.
pub fn assign_formal_charges(mol: &Molecule) -> Result<Molecule> {
    let mut charges = Vec::with_capacity(mol.len());
    for atom in mol.atoms() {
        let standard = match atom.element {
            NITROGEN => 3,
            OXYGEN => 2,
            _ => {
                charges.push(atom.formal_charge);
                continue;
            }
        };
        let q = mol.valence_sum(atom.index) as i32 - standard;
        if q.abs() > 1 {
            return Err(Error::Perception {
                atom: atom.index,
                message: format!(
                    "{} with bond-order sum {} would carry charge {q}",
                    atom.symbol(),
                    mol.valence_sum(atom.index)
                ),
            });
        }
        charges.push(q);
    }
    Ok(mol.with_formal_charges(&charges))
}

/// Connectivity, orders and charges for a coordinate-only structure.
/// `extra` bonds (e.g. PDB CONECT records) are added to the perceived set.
pub fn perceive(name: &str, atoms: Vec<Atom>, extra: &[(usize, usize)]) -> Result<Molecule> {
    let mut bonds = perceive_bonds(&atoms)?;
    let known: BTreeSet<(usize, usize)> = bonds.iter().map(|b| b.key()).collect();
    for &(i, j) in extra {
        let b = Bond::new(i, j, 1);
        if !known.contains(&b.key()) {
            bonds.push(b);
        }
    }
    let mol = Molecule::new(name, atoms, bonds)?;
    let mol = perceive_bond_orders(&mol);
    assign_formal_charges(&mol)
}

/// Atoms left with a valence deficit, for diagnostics.
pub fn residual_deficits(mol: &Molecule) -> Vec<usize> {
    let state = OrderState::new(mol);
    (1..=mol.len())
        .filter(|&i| {
            let z = mol.atoms()[i - 1].element;
            (z == HYDROGEN || z == CARBON) && state.deficit(i) > 0
        })
        .collect()
}
