use std::fmt::Write;

use super::runs;
use crate::fragmenter::Fragmentation;
use crate::regions::{FdRegion, RegionAssignment};

pub const PALETTE: [&str; 6] = ["red", "green", "blue", "orange", "yellow", "magenta"];

const REGION_COLORS: [(FdRegion, &str); 3] = [
    (FdRegion::Active, "red"),
    (FdRegion::Buffer, "blue"),
    (FdRegion::Frozen, "green"),
];

/// Color per fragment when no FD regions are set: palette cycling, or the
/// higher layer red and the lower green when layers exist.
fn fragment_color(k: usize, regions: Option<&RegionAssignment>) -> &'static str {
    match regions {
        Some(r) if r.layer[k] >= 2 => "red",
        Some(_) => "green",
        None => PALETTE[k % PALETTE.len()],
    }
}

fn pymol_ids(atoms: &[usize]) -> String {
    runs(atoms)
        .into_iter()
        .map(|(a, b)| if a == b { a.to_string() } else { format!("{a}-{b}") })
        .collect::<Vec<_>>()
        .join("+")
}

pub fn write_pymol_script(source: &str, f: &Fragmentation, regions: Option<&RegionAssignment>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "load {source}, fragit");
    out.push_str("hide everything, fragit\nshow sticks, fragit\n");
    let fd = regions.filter(|r| r.has_fd());
    for (k, frag) in f.fragments.iter().enumerate() {
        let _ = writeln!(out, "select fragment{}, fragit and id {}", k + 1, pymol_ids(frag));
        if fd.is_none() {
            let _ = writeln!(out, "color {}, fragment{}", fragment_color(k, regions), k + 1);
        }
    }
    if let Some(r) = fd {
        for (region, color) in REGION_COLORS {
            let members: Vec<String> = r
                .members(region)
                .iter()
                .map(|k| format!("fragment{k}"))
                .collect();
            let expr = if members.is_empty() {
                "none".to_string()
            } else {
                members.join(" or ")
            };
            let _ = writeln!(out, "select {}, {expr}", region.name());
            let _ = writeln!(out, "color {color}, {}", region.name());
        }
    }
    out.push_str("deselect\n");
    out
}

fn jmol_ids(atoms: &[usize]) -> String {
    runs(atoms)
        .into_iter()
        .map(|(a, b)| {
            if a == b {
                format!("atomno={a}")
            } else {
                format!("(atomno>={a} and atomno<={b})")
            }
        })
        .collect::<Vec<_>>()
        .join(" or ")
}

pub fn write_jmol_script(source: &str, f: &Fragmentation, regions: Option<&RegionAssignment>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "load \"{source}\"");
    out.push_str("wireframe 0.15; spacefill off\n");
    let fd = regions.filter(|r| r.has_fd());
    for (k, frag) in f.fragments.iter().enumerate() {
        let _ = writeln!(out, "define fragment{} {}", k + 1, jmol_ids(frag));
        if fd.is_none() {
            let _ = writeln!(
                out,
                "select fragment{}; color atoms {}",
                k + 1,
                fragment_color(k, regions)
            );
        }
    }
    if let Some(r) = fd {
        for (region, color) in REGION_COLORS {
            let members: Vec<String> = r
                .members(region)
                .iter()
                .map(|k| format!("fragment{k}"))
                .collect();
            let expr = if members.is_empty() {
                "none".to_string()
            } else {
                members.join(" or ")
            };
            let _ = writeln!(out, "define {} {expr}", region.name());
            let _ = writeln!(out, "select {}; color atoms {color}", region.name());
        }
    }
    out.push_str("select all\n");
    out
}
