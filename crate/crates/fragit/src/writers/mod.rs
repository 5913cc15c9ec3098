//! GAMESS FMO decks, visualization scripts and configuration files.

mod config;
mod gamess;
mod scripts;

pub use config::{read_config, write_config};
pub use gamess::{basis_keywords, write_gamess_fmo};
pub use scripts::{write_jmol_script, write_pymol_script, PALETTE};

/// Collapses a sorted index list into inclusive `(start, end)` runs.
pub(crate) fn runs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in sorted {
        match out.last_mut() {
            Some((_, end)) if *end + 1 == i => *end = i,
            _ => out.push((i, i)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::runs;

    #[test]
    fn run_compression() {
        assert_eq!(runs(&[1, 2, 3, 5, 7, 8]), vec![(1, 3), (5, 5), (7, 8)]);
        assert!(runs(&[]).is_empty());
    }
}
