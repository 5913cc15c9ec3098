//! Element symbols, covalent radii and valence rules.

const SYMBOLS: [&str; 54] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe",
];

pub const HYDROGEN: u8 = 1;
pub const CARBON: u8 = 6;
pub const NITROGEN: u8 = 7;
pub const OXYGEN: u8 = 8;

/// Atomic number for a symbol, case-insensitive on the second letter.
pub fn atomic_number(symbol: &str) -> Option<u8> {
    let mut chars = symbol.trim().chars();
    let first = chars.next()?.to_ascii_uppercase();
    let rest: String = chars.map(|c| c.to_ascii_lowercase()).collect();
    let normalized = format!("{first}{rest}");
    SYMBOLS
        .iter()
        .position(|s| *s == normalized)
        .map(|p| (p + 1) as u8)
}

pub fn symbol(z: u8) -> &'static str {
    SYMBOLS.get(z as usize - 1).copied().unwrap_or("X")
}

/// Single-bond covalent radius in Å (Cordero et al. 2008).
pub fn covalent_radius(z: u8) -> Option<f64> {
    let r = match z {
        1 => 0.31,
        5 => 0.84,
        6 => 0.76,
        7 => 0.71,
        8 => 0.66,
        9 => 0.57,
        11 => 1.66,
        12 => 1.41,
        15 => 1.07,
        16 => 1.05,
        17 => 1.02,
        19 => 2.03,
        20 => 1.76,
        26 => 1.32,
        30 => 1.22,
        35 => 1.20,
        53 => 1.39,
        _ => return None,
    };
    Some(r)
}

/// Allowed total bond-order sums, ascending. Empty for elements without rules.
pub fn allowed_valences(z: u8) -> &'static [u32] {
    match z {
        1 => &[1],
        5 => &[3],
        6 => &[4],
        7 => &[3],
        8 => &[2],
        9 | 17 | 35 | 53 => &[1],
        15 => &[3, 5],
        16 => &[2, 4, 6],
        _ => &[],
    }
}

pub const RADIUS_TOLERANCE: f64 = 0.45;
pub const MIN_BOND_LENGTH: f64 = 0.4;
