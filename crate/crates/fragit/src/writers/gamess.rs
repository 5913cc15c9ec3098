use std::collections::BTreeSet;
use std::fmt::Write;

use super::runs;
use crate::element;
use crate::fragmenter::Fragmentation;
use crate::molecule::Molecule;
use crate::regions::{FdRegion, RegionAssignment};
use crate::settings::GamessSettings;

/// `$BASIS` keywords and the `$DATA` basis line for a basis name.
pub fn basis_keywords(basis: &str) -> (String, String) {
    let upper = basis.to_ascii_uppercase();
    let (group, data) = match upper.as_str() {
        "STO-3G" => ("GBASIS=STO NGAUSS=3", "STO 3"),
        "3-21G" => ("GBASIS=N21 NGAUSS=3", "N21 3"),
        "6-31G" => ("GBASIS=N31 NGAUSS=6", "N31 6"),
        "6-31G*" | "6-31G(D)" => ("GBASIS=N31 NGAUSS=6 NDFUNC=1", "N31 6 1"),
        _ => return (format!("GBASIS={upper}"), upper),
    };
    (group.to_string(), data.to_string())
}

fn array<T: std::fmt::Display>(out: &mut String, name: &str, values: &[T], per_line: usize) {
    let lead = format!("      {name}(1)=");
    let pad = " ".repeat(lead.len());
    for (k, chunk) in values.chunks(per_line).enumerate() {
        out.push_str(if k == 0 { &lead } else { &pad });
        let items: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        out.push_str(&items.join(","));
        if (k + 1) * per_line < values.len() {
            out.push(',');
        }
        out.push('\n');
    }
}

/// GAMESS `atom -end` range list, e.g. `1,-7,9`.
fn range_list(atoms: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for (a, b) in runs(atoms) {
        out.push(a.to_string());
        if b > a {
            out.push(format!("-{b}"));
        }
    }
    out
}

/// FMO input deck using the AFO boundary treatment.
pub fn write_gamess_fmo(
    mol: &Molecule,
    f: &Fragmentation,
    regions: Option<&RegionAssignment>,
    s: &GamessSettings,
) -> String {
    assert_eq!(f.charges.len(), f.len(), "every fragment needs a charge");
    assert!(f.fragments.iter().all(|x| !x.is_empty()), "empty fragment");

    let fd = regions.filter(|r| r.has_fd());
    let run_type = if fd.is_some() {
        "OPTIMIZE".to_string()
    } else {
        s.run_type.to_ascii_uppercase()
    };
    let mwords = (s.memory_per_core / 8).max(1);
    let (basis_group, basis_data) = basis_keywords(&s.basis);

    let mut out = String::new();
    let _ = writeln!(out, " $CONTRL RUNTYP={run_type} SCFTYP={} NPRINT=-5 ISPHER=-1 $END", s.scf_type.to_ascii_uppercase());
    let _ = writeln!(out, " $SYSTEM MWORDS={mwords} $END");
    out.push_str(" $GDDI NGROUP=1 $END\n");
    out.push_str(" $SCF DIRSCF=.TRUE. NPUNCH=0 $END\n");
    let _ = writeln!(out, " $BASIS {basis_group} $END");

    out.push_str(" $FMO\n");
    let _ = writeln!(out, "      NFRAG={}", f.len());
    array(&mut out, "ICHARG", &f.charges, 10);
    let names: Vec<String> = (1..=f.len()).map(|k| format!("FRAG{k:03}")).collect();
    array(&mut out, "FRGNAM", &names, 6);
    out.push_str("      INDAT(1)=0\n");
    for frag in &f.fragments {
        let mut line = String::from("            ");
        for (a, b) in runs(frag) {
            if b > a {
                let _ = write!(line, "{a} -{b} ");
            } else {
                let _ = write!(line, "{a} ");
            }
        }
        line.push('0');
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(r) = regions {
        let _ = writeln!(out, "      NLAYER={}", r.nlayer());
        array(&mut out, "LAYER", &r.layer, 20);
    }
    if fd.is_some() {
        out.push_str("      MODFD=3\n");
    }
    out.push_str(" $END\n");
    out.push_str(" $FMOPRP NPRINT=9 $END\n");

    if let Some(r) = fd {
        let atoms_of = |region: FdRegion| -> Vec<usize> {
            let mut atoms: Vec<usize> = r
                .members(region)
                .iter()
                .flat_map(|&k| f.fragments[k - 1].iter().copied())
                .collect();
            atoms.sort_unstable();
            atoms
        };
        let active = atoms_of(FdRegion::Active);
        let frozen = atoms_of(FdRegion::Frozen);
        out.push_str(" $STATPT NSTEP=1000\n");
        array(&mut out, "IACTAT", &range_list(&active), 16);
        if !frozen.is_empty() {
            array(&mut out, "IFREEZ", &range_list(&frozen), 16);
        }
        out.push_str(" $END\n");
    }

    out.push_str(" $FMOBND\n");
    for cut in &f.cut_bonds {
        let _ = writeln!(out, "      -{} {}", cut.first, cut.second);
    }
    out.push_str(" $END\n");

    out.push_str(" $DATA\n");
    let title = if mol.name().is_empty() { "fragit" } else { mol.name() };
    let _ = writeln!(out, "{title}");
    out.push_str("C1\n");
    let elements: BTreeSet<u8> = mol.atoms().iter().map(|a| a.element).collect();
    for z in elements {
        let _ = writeln!(out, "{}-1 {z}", element::symbol(z));
        let _ = writeln!(out, " {basis_data}");
        out.push('\n');
    }
    out.push_str(" $END\n");

    out.push_str(" $FMOXYZ\n");
    for atom in mol.atoms() {
        let [x, y, z] = atom.position;
        let _ = writeln!(
            out,
            "{:<3}{:>6.1}{:>15.8}{:>15.8}{:>15.8}",
            atom.symbol(),
            atom.element as f64,
            x,
            y,
            z
        );
    }
    out.push_str(" $END\n");
    out
}
