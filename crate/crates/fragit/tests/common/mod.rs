//! Fixture access and independent reference implementations used as
//! oracles by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use fragit::io::{read_structure, InputDocument};
pub mod props;

use fragit::smarts::{AtomPrimitive, BondExpr, SmartsPattern};
use fragit::{Atom, Molecule};

/// Hand-written patterns exercising every supported construct.
pub const SYNTHETIC: &[&str] = &[
    "C", "O", "N", "H", "[H]", "*", "[OH]", "[O-]", "[N+]", "[NH3+]", "C=O", "C-O", "C#N",
    "[CH3]", "CH2", "CC", "CCC", "C(C)C", "C(C)(C)C", "C(=O)O", "C(=O)[O-]", "NC=O", "N(C)C=O",
    "C1CCCCC1", "C1=CC=CC=C1", "C=1C=CC=CC1", "[$(CO)]", "[$(C=O)]C", "[$([OH])]C",
    "[$(*N)]*", "**", "*=*", "S", "SS", "CS", "P(=O)(O)O", "OP(O)(=O)O", "OP", "C1OCCC1",
    "OCCO", "[NH2]C", "[H]O", "O[H]", "CH3C", "[CH2]([$(NC=O)])C=O", "[$([CH2](N)C=O)]",
    "[$(C1CCCC1)]", "[*H1]", "[C+0]", "N=C", "C=C", "[$(C(=O)[O-])]", "O=C(N)N",
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn data(name: &str) -> PathBuf {
    data_dir().join(name)
}

pub fn load(name: &str) -> Molecule {
    let doc = InputDocument::from_path(data(name)).expect("known extension");
    read_structure(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn corpus() -> Vec<(String, Molecule)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(data("corpus"))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sdf"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let doc = InputDocument::from_path(&p).unwrap();
            (name, read_structure(&doc).unwrap())
        })
        .collect()
}

pub fn leucoemeraldine_pairs() -> Vec<(usize, usize)> {
    let text = std::fs::read_to_string(data("leucoemeraldine.pairs")).unwrap();
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s.trim().split_once(',').unwrap();
            (a.trim().parse().unwrap(), b.trim().parse().unwrap())
        })
        .collect()
}

/// Covalent radii used by the bond oracle, written out independently.
fn oracle_radius(z: u8) -> f64 {
    match z {
        1 => 0.31,
        6 => 0.76,
        7 => 0.71,
        8 => 0.66,
        15 => 1.07,
        16 => 1.05,
        _ => panic!("oracle has no radius for Z={z}"),
    }
}

/// O(N^2) bond perception.
pub fn all_pairs_bonds(atoms: &[Atom]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let d = dist(atoms[i].position, atoms[j].position);
            let cutoff = oracle_radius(atoms[i].element) + oracle_radius(atoms[j].element) + 0.45;
            if d > 0.4 && d <= cutoff {
                out.insert((i + 1, j + 1));
            }
        }
    }
    out
}

pub fn dist(p: [f64; 3], q: [f64; 3]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
}

/// Minimum inter-fragment distance over all atom pairs.
pub fn brute_min_distance(mol: &Molecule, x: &[usize], y: &[usize]) -> f64 {
    let mut best = f64::MAX;
    for &a in x {
        for &b in y {
            best = best.min(dist(mol.atoms()[a - 1].position, mol.atoms()[b - 1].position));
        }
    }
    best
}

/// Union-find connected components over an explicit edge list.
pub fn union_find_components(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for i in 1..=n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().insert(i);
    }
    let mut out: Vec<BTreeSet<usize>> = groups.into_values().collect();
    out.sort_by_key(|s| *s.iter().next().unwrap());
    out
}

/// Exhaustive SMARTS oracle: tries every molecule atom for every pattern
/// atom in pattern order, checking each constraint directly.
pub struct Oracle<'m> {
    mol: &'m Molecule,
    /// Keyed by the structural debug form of the nested pattern.
    memo: HashMap<(String, usize), bool>,
}

impl<'m> Oracle<'m> {
    pub fn new(mol: &'m Molecule) -> Self {
        Oracle {
            mol,
            memo: HashMap::new(),
        }
    }

    fn order_ok(kind: BondExpr, order: u8) -> bool {
        match kind {
            BondExpr::Default | BondExpr::Single => order == 1,
            BondExpr::Double => order == 2,
            BondExpr::Triple => order == 3,
        }
    }

    fn atom_ok(&mut self, prims: &[AtomPrimitive], a: usize) -> bool {
        let atom = &self.mol.atoms()[a - 1];
        let hydrogens = self
            .mol
            .bonds()
            .iter()
            .filter(|b| b.a == a || b.b == a)
            .filter(|b| self.mol.atoms()[b.other(a) - 1].element == 1)
            .count();
        for p in prims {
            let ok = match p {
                AtomPrimitive::Element(z) => atom.element == *z,
                AtomPrimitive::Wildcard => true,
                AtomPrimitive::HydrogenCount(n) => hydrogens == *n as usize,
                AtomPrimitive::Charge(q) => atom.formal_charge == *q,
                AtomPrimitive::Recursive(inner) => {
                    let key = (format!("{:?}", inner.atoms) + &format!("{:?}", inner.bonds), a);
                    if let Some(&v) = self.memo.get(&key) {
                        v
                    } else {
                        let v = !self.enumerate(inner, Some(a), true).is_empty();
                        self.memo.insert(key, v);
                        v
                    }
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn enumerate(&mut self, pat: &SmartsPattern, anchor: Option<usize>, first_only: bool) -> Vec<Vec<usize>> {
        let mut results = Vec::new();
        let mut mapping = Vec::new();
        self.step(pat, anchor, first_only, &mut mapping, &mut results);
        results
    }

    fn step(
        &mut self,
        pat: &SmartsPattern,
        anchor: Option<usize>,
        first_only: bool,
        mapping: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
    ) {
        if first_only && !results.is_empty() {
            return;
        }
        let k = mapping.len();
        if k == pat.atoms.len() {
            results.push(mapping.clone());
            return;
        }
        for a in 1..=self.mol.len() {
            if k == 0 && anchor.is_some_and(|x| x != a) {
                continue;
            }
            if mapping.contains(&a) {
                continue;
            }
            if !self.atom_ok(&pat.atoms[k].primitives, a) {
                continue;
            }
            let bonds_ok = pat.bonds.iter().all(|pb| {
                let (lo, hi) = (pb.a.min(pb.b), pb.a.max(pb.b));
                if hi != k {
                    return true;
                }
                let other = mapping[lo];
                self.mol
                    .bonds()
                    .iter()
                    .find(|b| (b.a == a && b.b == other) || (b.b == a && b.a == other))
                    .is_some_and(|b| Self::order_ok(pb.kind, b.order))
            });
            if !bonds_ok {
                continue;
            }
            mapping.push(a);
            self.step(pat, anchor, first_only, mapping, results);
            mapping.pop();
        }
    }

    /// All matches, sorted.
    pub fn matches(&mut self, pat: &SmartsPattern) -> Vec<Vec<usize>> {
        let mut all = self.enumerate(pat, None, false);
        all.sort();
        all
    }
}

/// Parses the summary table printed by the command-line tool.
pub fn scrape_summary(stdout: &str) -> Option<(usize, usize, usize, i32)> {
    let mut lines = stdout.lines();
    while let Some(line) = lines.next() {
        if line.split_whitespace().next() == Some("nfrag") {
            let v: Vec<&str> = lines.next()?.split_whitespace().collect();
            return Some((
                v[0].parse().ok()?,
                v[1].parse().ok()?,
                v[2].parse().ok()?,
                v[3].parse().ok()?,
            ));
        }
    }
    None
}

/// FD region sets (1-based ordinals) from a full fragment distance matrix,
/// built by scanning every atom pair once.
pub fn oracle_regions(
    mol: &Molecule,
    fragments: &[Vec<usize>],
    central: usize,
    active_d: f64,
    buffer_d: f64,
) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let n = fragments.len();
    let mut owner = vec![0; mol.len() + 1];
    for (k, f) in fragments.iter().enumerate() {
        for &a in f {
            owner[a] = k;
        }
    }
    let mut d = vec![vec![f64::MAX; n]; n];
    for i in 1..=mol.len() {
        for j in i + 1..=mol.len() {
            let (x, y) = (owner[i], owner[j]);
            let r = dist(mol.atoms()[i - 1].position, mol.atoms()[j - 1].position);
            if r < d[x][y] {
                d[x][y] = r;
                d[y][x] = r;
            }
        }
    }
    let c = central - 1;
    let active: BTreeSet<usize> = (0..n).filter(|&k| k == c || d[c][k] <= active_d).collect();
    let buffer: BTreeSet<usize> = (0..n)
        .filter(|k| !active.contains(k) && active.iter().any(|&a| d[a][*k] <= buffer_d))
        .collect();
    let frozen = (0..n).filter(|k| !active.contains(k) && !buffer.contains(k)).map(|k| k + 1).collect();
    (
        active.into_iter().map(|k| k + 1).collect(),
        buffer.into_iter().map(|k| k + 1).collect(),
        frozen,
    )
}

/// Fields recovered from a GAMESS FMO deck by a line-oriented reader.
#[derive(Debug, Default)]
pub struct Deck {
    pub nfrag: usize,
    pub icharg: Vec<i32>,
    pub indat: Vec<Vec<usize>>,
    pub nlayer: Option<usize>,
    pub layer: Vec<u8>,
    pub fmobnd: Vec<(i64, i64)>,
    pub xyz: Vec<(String, f64, [f64; 3])>,
    pub iactat: Vec<usize>,
    pub ifreez: Vec<usize>,
    pub runtyp: String,
}

fn group<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    let start = text.find(&format!(" ${name}"))? + name.len() + 2;
    let end = start + text[start..].find("$END")?;
    Some(&text[start..end])
}

/// `key(1)=` values, possibly continued over several lines.
fn array<'a>(body: &'a str, key: &str) -> Vec<&'a str> {
    let Some(pos) = body.find(&format!("{key}(1)=")) else {
        return Vec::new();
    };
    let rest = &body[pos + key.len() + 4..];
    let mut out = Vec::new();
    for (k, line) in rest.lines().enumerate() {
        let line = line.trim();
        if k > 0 && (line.contains('=') || line.is_empty()) {
            break;
        }
        out.extend(line.split(',').map(str::trim).filter(|s| !s.is_empty()));
    }
    out
}

/// Expands GAMESS `a -b` range notation into atom lists.
fn expand(tokens: &[i64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        let a = tokens[k];
        if k + 1 < tokens.len() && tokens[k + 1] < 0 {
            out.extend(a as usize..=(-tokens[k + 1]) as usize);
            k += 2;
        } else {
            out.push(a as usize);
            k += 1;
        }
    }
    out
}

fn ranges(values: &[&str]) -> Vec<usize> {
    expand(&values.iter().map(|v| v.parse().unwrap()).collect::<Vec<i64>>())
}

pub fn parse_deck(text: &str) -> Deck {
    let mut deck = Deck::default();
    let contrl = group(text, "CONTRL").expect("CONTRL group");
    deck.runtyp = contrl
        .split_whitespace()
        .find_map(|t| t.strip_prefix("RUNTYP="))
        .unwrap()
        .to_string();
    let fmo = group(text, "FMO").expect("FMO group");
    for line in fmo.lines() {
        let line = line.trim();
        if let Some(v) = line.strip_prefix("NFRAG=") {
            deck.nfrag = v.parse().unwrap();
        }
        if let Some(v) = line.strip_prefix("NLAYER=") {
            deck.nlayer = Some(v.parse().unwrap());
        }
    }
    deck.icharg = array(fmo, "ICHARG").iter().map(|v| v.parse().unwrap()).collect();
    deck.layer = array(fmo, "LAYER").iter().map(|v| v.parse().unwrap()).collect();
    let indat = &fmo[fmo.find("INDAT(1)=0").expect("INDAT") + 10..];
    for line in indat.lines().skip(1) {
        let tokens: Vec<i64> = match line.split_whitespace().map(str::parse).collect() {
            Ok(t) => t,
            Err(_) => break,
        };
        if tokens.last() != Some(&0) {
            break;
        }
        deck.indat.push(expand(&tokens[..tokens.len() - 1]));
    }
    if let Some(statpt) = group(text, "STATPT") {
        deck.iactat = ranges(&array(statpt, "IACTAT"));
        deck.ifreez = ranges(&array(statpt, "IFREEZ"));
    }
    for line in group(text, "FMOBND").expect("FMOBND group").lines() {
        let t: Vec<i64> = line.split_whitespace().map(|x| x.parse().unwrap()).collect();
        if t.len() == 2 {
            deck.fmobnd.push((t[0], t[1]));
        }
    }
    for line in group(text, "FMOXYZ").expect("FMOXYZ group").lines() {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() == 5 {
            let p = |k: usize| t[k].parse::<f64>().unwrap();
            deck.xyz.push((t[0].to_string(), p(1), [p(2), p(3), p(4)]));
        }
    }
    deck
}

/// Compares `actual` with the golden file `name`, or rewrites the golden
/// file when `FRAGIT_BLESS=1`.
pub fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("FRAGIT_BLESS").is_ok_and(|v| v == "1") {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {name}; run with FRAGIT_BLESS=1"));
    assert!(want == actual, "{name} differs from golden file");
}
