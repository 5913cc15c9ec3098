//! Randomized properties shared by the invariant suite and the acceptance
//! report. Each property checks one generated case.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use fragit::fragmenter::{group_fragments, merge_glycine};
use fragit::patterns::{self, builtin_patterns, PatternSet};
use fragit::regions::{assign_fd_regions, assign_layers};
use fragit::writers::{read_config, write_config, write_gamess_fmo, write_jmol_script, write_pymol_script};
use fragit::{fragment, FdRegion, Fragmentation, GamessSettings, JobSettings, Molecule, Provenance};
use proptest::prelude::*;

use super::{load, parse_deck};

pub const CASES: u32 = 1000;

const SYSTEMS: &[&str] = &[
    "chignolin.pdb",
    "ala10_alpha.pdb",
    "ala10_beta.pdb",
    "beta_cyclodextrin.pdb",
    "leucoemeraldine.xyz",
    "water_trimer.xyz",
    "cyclohexane.xyz",
];

pub fn systems() -> &'static Vec<Molecule> {
    static CACHE: OnceLock<Vec<Molecule>> = OnceLock::new();
    CACHE.get_or_init(|| SYSTEMS.iter().map(|n| load(n)).collect())
}

/// Chignolin fragmented with defaults, shared by the region properties.
fn chignolin() -> &'static (Molecule, Fragmentation) {
    static CACHE: OnceLock<(Molecule, Fragmentation)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mol = load("chignolin.pdb");
        let f = fragment(&mol, &JobSettings::default()).unwrap();
        (mol, f)
    })
}

#[derive(Debug, Clone)]
pub struct Job {
    pub system: usize,
    pub protect: bool,
    pub merge: bool,
    pub group: usize,
    /// Positions into the bond list, turned into explicit pairs.
    pub extra: Vec<usize>,
}

pub fn job() -> impl Strategy<Value = Job> {
    (0..SYSTEMS.len(), any::<bool>(), any::<bool>(), 1usize..5, prop::collection::vec(any::<usize>(), 0..4))
        .prop_map(|(system, protect, merge, group, extra)| Job { system, protect, merge, group, extra })
}

pub fn settings_for(mol: &Molecule, j: &Job) -> JobSettings {
    let bonds = mol.bonds();
    let mut pairs: Vec<(usize, usize)> = j.extra.iter().map(|&k| {
        let b = &bonds[k % bonds.len()];
        (b.a, b.b)
    }).collect();
    pairs.dedup();
    JobSettings {
        use_protection: j.protect,
        merge_glycine: j.merge,
        group_size: j.group,
        explicit_pairs: pairs,
        ..JobSettings::default()
    }
}

pub fn assert_valid(mol: &Molecule, f: &Fragmentation) -> Result<(), TestCaseError> {
    let mut all: Vec<usize> = f.fragments.iter().flatten().copied().collect();
    all.sort_unstable();
    prop_assert_eq!(all, (1..=mol.len()).collect::<Vec<_>>());
    prop_assert_eq!(f.charges.len(), f.len());
    prop_assert_eq!(f.charges.iter().sum::<i32>(), mol.total_formal_charge());
    for (frag, &q) in f.fragments.iter().zip(&f.charges) {
        prop_assert!(!frag.is_empty());
        prop_assert_eq!(q, frag.iter().map(|&a| mol.atoms()[a - 1].formal_charge).sum::<i32>());
    }
    for w in f.fragments.windows(2) {
        prop_assert!(w[0][0] < w[1][0]);
    }
    let owner = f.owner();
    for c in &f.cut_bonds {
        prop_assert!(mol.bond_between(c.first, c.second).is_some());
        prop_assert_ne!(owner[c.first], owner[c.second]);
        if c.provenance != Provenance::Explicit {
            prop_assert!(!f.protected_atoms.contains(&c.first));
            prop_assert!(!f.protected_atoms.contains(&c.second));
        }
    }
    // every fragment is a connected component once cuts are removed
    let removed: BTreeSet<_> = f.cut_bonds.iter().map(|c| c.key()).collect();
    let mut comps = mol.components_excluding(&removed);
    comps.sort_by_key(|c| c[0]);
    prop_assert_eq!(&comps, &f.fragments);
    Ok(())
}

pub fn gamess() -> impl Strategy<Value = GamessSettings> {
    (
        prop::sample::select(vec!["RHF", "ROHF", "UHF"]),
        prop::sample::select(vec!["3-21G", "6-31G", "6-31G*", "STO-3G", "CCD"]),
        1u32..100_000,
        prop::sample::select(vec!["energy", "gradient", "optimize"]),
    )
        .prop_map(|(scf, basis, mem, run)| GamessSettings {
            scf_type: scf.into(),
            basis: basis.into(),
            memory_per_core: mem,
            run_type: run.into(),
        })
}

pub fn patterns() -> impl Strategy<Value = PatternSet> {
    let frag = prop::sample::subsequence(
        vec![
            ("peptide", patterns::PEPTIDE),
            ("sugar", patterns::SUGAR),
            ("dna", patterns::DNA),
            ("CO", "[$(C)]O"),
            ("amide", "C(=O)N"),
        ],
        0..=5,
    );
    let prot = prop::sample::subsequence(
        vec![("nh2", patterns::PROTECT_NH2), ("nh3", patterns::PROTECT_NH3), ("Sx", "SS")],
        0..=3,
    );
    let gly = prop::sample::select(vec![patterns::GLYCINE, "[CH2](N)C=O"]);
    (frag, prot, gly).prop_map(|(f, p, g)| {
        let own = |v: Vec<(&str, &str)>| -> Vec<(String, String)> {
            v.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        PatternSet::new(&own(f), &own(p), g).unwrap()
    })
}

pub fn distance() -> impl Strategy<Value = f64> {
    prop_oneof![0.01f64..20.0, (1u32..400).prop_map(|k| k as f64 / 8.0)]
}

pub fn config_settings() -> impl Strategy<Value = JobSettings> {
    (
        (1usize..20, any::<bool>(), any::<bool>(), any::<bool>(), any::<bool>()),
        (prop::option::of(1usize..50), prop::option::of(distance()), prop::option::of((distance(), distance()))),
        prop::collection::vec((1usize..5000, 1usize..5000), 0..6),
        gamess(),
        patterns(),
    )
        .prop_map(|((group, merge, protect, pymol, jmol), (central, boundary, fd), pairs, gamess, patterns)| {
            JobSettings {
                group_size: group,
                merge_glycine: merge,
                use_protection: protect,
                emit_pymol: pymol,
                emit_jmol: jmol,
                central_fragment: central,
                boundary_distance: boundary,
                active_distance: fd.map(|x| x.0),
                buffer_distance: fd.map(|x| x.1),
                explicit_pairs: pairs,
                gamess,
                patterns,
                ..JobSettings::default()
            }
        })
}

pub type Outcome = Result<(), TestCaseError>;

pub fn partition(j: Job) -> Outcome {
    let mol = &systems()[j.system];
    let s = settings_for(mol, &j);
    let f = fragment(mol, &s).unwrap();
    assert_valid(mol, &f)?;
    prop_assert_eq!(&f, &fragment(mol, &s).unwrap());
    Ok(())
}

pub fn monotone_grouping(j: Job) -> Outcome {
    let mol = &systems()[j.system];
    let base = JobSettings { group_size: 1, merge_glycine: false, ..settings_for(mol, &j) };
    let f = fragment(mol, &base).unwrap();
    let g = group_fragments(&f, j.group).unwrap();
    assert_valid(mol, &g)?;
    prop_assert!(g.len() <= f.len());
    prop_assert!(g.len() >= f.len().div_ceil(j.group));
    let m = merge_glycine(mol, &f, &builtin_patterns());
    assert_valid(mol, &m)?;
    prop_assert!(m.len() <= f.len());
    let gm = group_fragments(&m, j.group).unwrap();
    prop_assert!(gm.len() <= m.len());
    Ok(())
}

/// (boundary, extra boundary, active, extra active, buffer, extra buffer, central)
pub type RegionCase = (f64, f64, f64, f64, f64, f64, usize);

pub fn region_case() -> impl Strategy<Value = RegionCase> {
    (0.5f64..12.0, 0.0f64..4.0, 0.1f64..8.0, 0.0f64..4.0, 0.1f64..8.0, 0.0f64..4.0, 1usize..10)
}

pub fn nesting((boundary, dl, a1, da, b1, db, central): RegionCase) -> Outcome {
    let (mol, f) = chignolin();
    let small = assign_layers(mol, f, central, boundary).unwrap();
    let big = assign_layers(mol, f, central, boundary + dl).unwrap();
    prop_assert_eq!(small.layer[central - 1], 2);
    for k in 0..f.len() {
        prop_assert!(big.layer[k] >= small.layer[k]);
    }
    let r = assign_fd_regions(mol, f, central, a1, b1, &small).unwrap();
    let wider_active = assign_fd_regions(mol, f, central, a1 + da, b1, &small).unwrap();
    let wider_buffer = assign_fd_regions(mol, f, central, a1, b1 + db, &small).unwrap();
    let active: BTreeSet<usize> = r.members(FdRegion::Active).into_iter().collect();
    let moving: BTreeSet<usize> = active.iter().copied().chain(r.members(FdRegion::Buffer)).collect();
    prop_assert!(active.contains(&central));
    prop_assert!(r.fd.iter().all(|x| *x != FdRegion::None));
    let a2: BTreeSet<usize> = wider_active.members(FdRegion::Active).into_iter().collect();
    prop_assert!(active.is_subset(&a2));
    let m2: BTreeSet<usize> = wider_buffer
        .members(FdRegion::Active)
        .into_iter()
        .chain(wider_buffer.members(FdRegion::Buffer))
        .collect();
    prop_assert!(moving.is_subset(&m2));
    for &k in &moving {
        prop_assert_eq!(r.layer[k - 1], 2);
    }
    for k in 0..f.len() {
        prop_assert!(r.layer[k] >= small.layer[k]);
    }
    Ok(())
}

pub fn config_round_trip(s: JobSettings) -> Outcome {
    let text = write_config(&s);
    let back = read_config(&text).unwrap();
    prop_assert_eq!(&back, &s);
    prop_assert_eq!(write_config(&back), text);
    Ok(())
}

pub fn deck_case() -> impl Strategy<Value = (Job, bool, GamessSettings)> {
    (job(), any::<bool>(), gamess())
}

pub fn deck_membership((j, layered, g): (Job, bool, GamessSettings)) -> Outcome {
    let mol = &systems()[j.system];
    let f = fragment(mol, &settings_for(mol, &j)).unwrap();
    let regions = if layered { Some(assign_layers(mol, &f, 1, 3.0).unwrap()) } else { None };
    let text = write_gamess_fmo(mol, &f, regions.as_ref(), &g);
    let deck = parse_deck(&text);
    prop_assert_eq!(deck.nfrag, f.len());
    let mut all: Vec<usize> = deck.indat.iter().flatten().copied().collect();
    all.sort_unstable();
    prop_assert_eq!(all, (1..=mol.len()).collect::<Vec<_>>());
    prop_assert_eq!(&deck.indat, &f.fragments);
    prop_assert_eq!(deck.icharg.iter().sum::<i32>(), mol.total_formal_charge());
    prop_assert_eq!(deck.fmobnd.len(), f.cut_bonds.len());
    let mut listed = BTreeSet::new();
    for &(a, b) in &deck.fmobnd {
        prop_assert!(a < 0 && b > 0);
        let (a, b) = ((-a) as usize, b as usize);
        listed.insert((a.min(b), a.max(b)));
    }
    let cut: BTreeSet<(usize, usize)> = f.cut_bonds.iter().map(|c| c.key()).collect();
    prop_assert_eq!(listed, cut);
    prop_assert_eq!(deck.xyz.len(), mol.len());
    if let Some(r) = &regions {
        prop_assert_eq!(&deck.layer, &r.layer);
    }
    Ok(())
}

pub fn determinism_case() -> impl Strategy<Value = (Job, bool)> {
    (job(), any::<bool>())
}

pub fn writer_determinism((j, fd): (Job, bool)) -> Outcome {
    let mol = &systems()[j.system];
    let s = settings_for(mol, &j);
    let f = fragment(mol, &s).unwrap();
    let f2 = fragment(mol, &s).unwrap();
    let regions = |f: &Fragmentation| {
        let base = assign_layers(mol, f, 1, 3.0).unwrap();
        if fd {
            assign_fd_regions(mol, f, 1, 2.0, 3.0, &base).unwrap()
        } else {
            base
        }
    };
    let (r, r2) = (regions(&f), regions(&f2));
    let g = GamessSettings::default();
    prop_assert_eq!(write_gamess_fmo(mol, &f, Some(&r), &g), write_gamess_fmo(mol, &f2, Some(&r2), &g));
    prop_assert_eq!(write_gamess_fmo(mol, &f, None, &g), write_gamess_fmo(mol, &f2, None, &g));
    prop_assert_eq!(write_pymol_script("in.pdb", &f, Some(&r)), write_pymol_script("in.pdb", &f2, Some(&r2)));
    prop_assert_eq!(write_pymol_script("in.pdb", &f, None), write_pymol_script("in.pdb", &f2, None));
    prop_assert_eq!(write_jmol_script("in.pdb", &f, Some(&r)), write_jmol_script("in.pdb", &f2, Some(&r2)));
    prop_assert_eq!(write_jmol_script("in.pdb", &f, None), write_jmol_script("in.pdb", &f2, None));
    prop_assert_eq!(write_config(&s), write_config(&s.clone()));
    Ok(())
}
