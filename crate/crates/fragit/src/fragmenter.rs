//! Protection, cut location, partitioning, charges, glycine merging and grouping.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use log::warn;

use crate::error::{Error, Result};
use crate::molecule::{pair_key, Molecule};
use crate::patterns::PatternSet;
use crate::settings::JobSettings;
use crate::smarts::Matcher;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Pattern(String),
    Explicit,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Pattern(name) => f.write_str(name),
            Provenance::Explicit => f.write_str("explicit"),
        }
    }
}

/// A fragmented bond. `first` is the image of the pattern's first atom
/// (or `A` of an explicit pair); it is written negated in the deck.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutBond {
    pub first: usize,
    pub second: usize,
    pub provenance: Provenance,
}

impl CutBond {
    pub fn key(&self) -> (usize, usize) {
        pair_key(self.first, self.second)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fragmentation {
    /// Sorted atom lists, ordered by their smallest atom index.
    pub fragments: Vec<Vec<usize>>,
    pub charges: Vec<i32>,
    pub cut_bonds: Vec<CutBond>,
    pub protected_atoms: BTreeSet<usize>,
    pub warnings: Vec<String>,
}

impl Fragmentation {
    pub fn len(&self) -> usize {
        self.fragments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty()
    }

    /// 0-based fragment position of every atom (index 0 unused).
    pub fn owner(&self) -> Vec<usize> {
        let n = self.fragments.iter().map(|f| f.len()).sum::<usize>();
        let mut owner = vec![usize::MAX; n + 1];
        for (k, frag) in self.fragments.iter().enumerate() {
            for &a in frag {
                owner[a] = k;
            }
        }
        owner
    }

    pub fn min_size(&self) -> usize {
        self.fragments.iter().map(|f| f.len()).min().unwrap_or(0)
    }

    pub fn max_size(&self) -> usize {
        self.fragments.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Fragments joined by cut bonds, as 0-based adjacency lists.
    fn cut_graph(&self) -> Vec<BTreeSet<usize>> {
        let owner = self.owner();
        let mut graph = vec![BTreeSet::new(); self.fragments.len()];
        for cut in &self.cut_bonds {
            let (x, y) = (owner[cut.first], owner[cut.second]);
            if x != y {
                graph[x].insert(y);
                graph[y].insert(x);
            }
        }
        graph
    }

    /// Unites fragments per `groups` (lists of 0-based positions covering
    /// every fragment once) and re-derives order, charges and cuts.
    fn regroup(&self, groups: Vec<Vec<usize>>) -> Fragmentation {
        let mut merged: Vec<(Vec<usize>, i32)> = groups
            .into_iter()
            .map(|members| {
                let mut atoms: Vec<usize> = members
                    .iter()
                    .flat_map(|&k| self.fragments[k].iter().copied())
                    .collect();
                atoms.sort_unstable();
                let charge = members.iter().map(|&k| self.charges[k]).sum();
                (atoms, charge)
            })
            .collect();
        merged.sort_by_key(|(atoms, _)| atoms[0]);
        let (fragments, charges): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
        let mut result = Fragmentation {
            fragments,
            charges,
            cut_bonds: Vec::new(),
            protected_atoms: self.protected_atoms.clone(),
            warnings: self.warnings.clone(),
        };
        let owner = result.owner();
        result.cut_bonds = self
            .cut_bonds
            .iter()
            .filter(|c| owner[c.first] != owner[c.second])
            .cloned()
            .collect();
        result
    }
}

/// Atoms matched by any protection pattern; empty when disabled.
pub fn locate_protected_atoms(mol: &Molecule, pats: &PatternSet, enabled: bool) -> BTreeSet<usize> {
    let mut protected = BTreeSet::new();
    if !enabled {
        return protected;
    }
    let mut matcher = Matcher::new(mol);
    for p in &pats.protection {
        for m in matcher.match_all(&p.pattern) {
            protected.extend(m.mapping);
        }
    }
    protected
}

/// Candidate cuts from every fragmentation pattern (first two atom images),
/// minus protected and duplicate bonds, followed by the explicit pairs.
pub fn locate_cut_bonds(
    mol: &Molecule,
    pats: &PatternSet,
    protected: &BTreeSet<usize>,
    explicit: &[(usize, usize)],
) -> Result<Vec<CutBond>> {
    let mut seen = HashSet::new();
    let mut cuts = Vec::new();
    let mut matcher = Matcher::new(mol);
    for p in &pats.fragmentation {
        let mut pairs: Vec<(usize, usize)> = matcher
            .match_all(&p.pattern)
            .into_iter()
            .map(|m| (m.mapping[0], m.mapping[1]))
            .filter(|(a, b)| !protected.contains(a) && !protected.contains(b))
            .collect();
        pairs.sort_by_key(|&(a, b)| (pair_key(a, b), a));
        for (a, b) in pairs {
            if seen.insert(pair_key(a, b)) {
                cuts.push(CutBond {
                    first: a,
                    second: b,
                    provenance: Provenance::Pattern(p.name.clone()),
                });
            }
        }
    }
    for &(a, b) in explicit {
        if a == b || a == 0 || b == 0 || a > mol.len() || b > mol.len() {
            return Err(Error::InvalidPair { a, b });
        }
        if mol.bond_between(a, b).is_none() {
            return Err(Error::InvalidPair { a, b });
        }
        if seen.insert(pair_key(a, b)) {
            cuts.push(CutBond {
                first: a,
                second: b,
                provenance: Provenance::Explicit,
            });
        }
    }
    Ok(cuts)
}

/// Exact per-fragment sums of atomic formal charges.
pub fn assign_fragment_charges(mol: &Molecule, fragments: &[Vec<usize>]) -> Vec<i32> {
    fragments
        .iter()
        .map(|f| f.iter().map(|&a| mol.atoms()[a - 1].formal_charge).sum())
        .collect()
}

/// Removes all cuts at once and takes connected components. Cuts that do
/// not separate anything are dropped with a warning.
pub fn build_fragments(
    mol: &Molecule,
    cuts: &[CutBond],
    protected: &BTreeSet<usize>,
) -> Fragmentation {
    let removed: BTreeSet<(usize, usize)> = cuts.iter().map(|c| c.key()).collect();
    let fragments = mol.components_excluding(&removed);
    let mut owner = vec![0; mol.len() + 1];
    for (k, frag) in fragments.iter().enumerate() {
        for &a in frag {
            owner[a] = k;
        }
    }
    let mut warnings = Vec::new();
    let mut kept = Vec::new();
    for cut in cuts {
        if owner[cut.first] == owner[cut.second] {
            let message = format!(
                "cut {}-{} ({}) does not separate the structure and was discarded",
                cut.first, cut.second, cut.provenance
            );
            warn!("{message}");
            warnings.push(message);
        } else {
            kept.push(cut.clone());
        }
    }
    let charges = assign_fragment_charges(mol, &fragments);
    Fragmentation {
        fragments,
        charges,
        cut_bonds: kept,
        protected_atoms: protected.clone(),
        warnings,
    }
}

/// Merges runs of `n` consecutive fragments along every chain.
///
/// Chains come from a depth-first walk of the cut-bond graph starting at
/// the lowest fragment and preferring lower neighbours; the walk is split
/// wherever two consecutive fragments are not directly bonded.
pub fn group_fragments(f: &Fragmentation, n: usize) -> Result<Fragmentation> {
    if n < 1 {
        return Err(Error::Config("group size must be at least 1".into()));
    }
    if n == 1 {
        return Ok(f.clone());
    }
    let graph = f.cut_graph();
    let mut visited = vec![false; f.len()];
    let mut groups = Vec::new();
    for start in 0..f.len() {
        if visited[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            if visited[k] {
                continue;
            }
            visited[k] = true;
            walk.push(k);
            for &next in graph[k].iter().rev() {
                if !visited[next] {
                    stack.push(next);
                }
            }
        }
        let mut chain: Vec<usize> = Vec::new();
        let mut flush = |chain: &mut Vec<usize>| {
            for run in chain.chunks(n) {
                groups.push(run.to_vec());
            }
            chain.clear();
        };
        for k in walk {
            if let Some(&last) = chain.last() {
                if !graph[last].contains(&k) {
                    flush(&mut chain);
                }
            }
            chain.push(k);
        }
        flush(&mut chain);
    }
    Ok(f.regroup(groups))
}

/// Joins every glycine fragment to the fragment across the cut at the
/// acyl carbon of its amide N.
pub fn merge_glycine(mol: &Molecule, f: &Fragmentation, pats: &PatternSet) -> Fragmentation {
    let owner = f.owner();
    let mut parent: Vec<usize> = (0..f.len()).collect();
    fn root(parent: &mut [usize], mut k: usize) -> usize {
        while parent[k] != k {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        k
    }
    let mut merged_any = false;
    for m in Matcher::new(mol).match_all(&pats.glycine.pattern) {
        let (alpha, acyl) = (m.mapping[0], m.mapping[2]);
        let home = owner[alpha];
        if owner[acyl] != home {
            continue;
        }
        for cut in &f.cut_bonds {
            let other = if cut.first == acyl {
                cut.second
            } else if cut.second == acyl {
                cut.first
            } else {
                continue;
            };
            if owner[other] != home {
                let (x, y) = (root(&mut parent, home), root(&mut parent, owner[other]));
                parent[x.max(y)] = x.min(y);
                merged_any = true;
            }
        }
    }
    if !merged_any {
        return f.clone();
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..f.len() {
        let r = root(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    f.regroup(groups.into_values().collect())
}

/// The full pipeline for one molecule.
pub fn fragment(mol: &Molecule, settings: &JobSettings) -> Result<Fragmentation> {
    settings.validate()?;
    let pats = &settings.patterns;
    let protected = locate_protected_atoms(mol, pats, settings.use_protection);
    let cuts = locate_cut_bonds(mol, pats, &protected, &settings.explicit_pairs)?;
    let mut f = build_fragments(mol, &cuts, &protected);
    if settings.merge_glycine {
        f = merge_glycine(mol, &f, pats);
    }
    if settings.group_size > 1 {
        f = group_fragments(&f, settings.group_size)?;
    }
    Ok(f)
}
