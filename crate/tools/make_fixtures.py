#!/usr/bin/env python3
"""Regenerate the structure fixtures under data/.

Requires RDKit. Coordinates come from ETKDG embedding followed by MMFF
relaxation, so the files are deterministic for a fixed RDKit version and
seed but are not experimental structures. Every fixture is checked so that
distance-based bond perception (covalent radii + 0.45 A) reproduces the
RDKit connectivity exactly.

    python3 tools/make_fixtures.py
"""

import itertools
import math
import os
import sys

from rdkit import Chem
from rdkit.Chem import AllChem, rdMolTransforms

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

RADII = {
    "H": 0.31, "B": 0.84, "C": 0.76, "N": 0.71, "O": 0.66, "F": 0.57,
    "Na": 1.66, "Mg": 1.41, "P": 1.07, "S": 1.05, "Cl": 1.02, "K": 2.03,
    "Ca": 1.76, "Fe": 1.32, "Zn": 1.22, "Br": 1.20, "I": 1.39,
}
TOLERANCE = 0.45


def perceived_bonds(mol, conf_id=-1):
    conf = mol.GetConformer(conf_id)
    pos = [conf.GetAtomPosition(i) for i in range(mol.GetNumAtoms())]
    sym = [a.GetSymbol() for a in mol.GetAtoms()]
    out = set()
    # cell list keeps this usable for the larger proteins
    cell = 2 * max(RADII.values()) + TOLERANCE
    cells = {}
    for i, p in enumerate(pos):
        key = (math.floor(p.x / cell), math.floor(p.y / cell), math.floor(p.z / cell))
        cells.setdefault(key, []).append(i)
    for key, members in cells.items():
        for dx, dy, dz in itertools.product((-1, 0, 1), repeat=3):
            other = cells.get((key[0] + dx, key[1] + dy, key[2] + dz), [])
            for i in members:
                for j in other:
                    if j <= i:
                        continue
                    d = (pos[i] - pos[j]).Length()
                    if 0.4 < d <= RADII[sym[i]] + RADII[sym[j]] + TOLERANCE:
                        out.add((i, j))
    return out


def rdkit_bonds(mol):
    return {tuple(sorted((b.GetBeginAtomIdx(), b.GetEndAtomIdx()))) for b in mol.GetBonds()}


def embed(mol, seed, confs=1):
    params = AllChem.ETKDGv3()
    params.randomSeed = seed
    params.useRandomCoords = True
    params.maxIterations = 2000
    ids = list(AllChem.EmbedMultipleConfs(mol, numConfs=confs, params=params))
    if len(ids) < confs:
        raise RuntimeError("embedding failed")
    props = AllChem.MMFFGetMoleculeProperties(mol)
    # screened electrostatics, otherwise salt bridges collapse in vacuo
    props.SetMMFFDielectricModel(2)
    props.SetMMFFDielectricConstant(4.0)
    for cid in ids:
        ff = AllChem.MMFFGetMoleculeForceField(mol, props, confId=cid)
        ff.Minimize(maxIts=2000)
    return ids


def embed_checked(mol, seed, confs=1):
    want = rdkit_bonds(mol)
    for attempt in range(20):
        ids = embed(mol, seed + attempt, confs)
        if all(perceived_bonds(mol, cid) == want for cid in ids):
            return ids
        mol.RemoveAllConformers()
    raise RuntimeError("no embedding reproduces connectivity")


def embed_linked(mol, links, seed):
    """Embed with the S-S bonds removed, pull the SG pairs together, then
    relax the bonded molecule. Plain ETKDG on the cyclised chain stalls."""
    open_ = Chem.RWMol(mol)
    for i, j in links:
        open_.RemoveBond(i, j)
    open_ = open_.GetMol()
    Chem.SanitizeMol(open_)
    params = AllChem.ETKDGv3()
    params.randomSeed = seed
    params.useRandomCoords = True
    if AllChem.EmbedMolecule(open_, params) < 0:
        raise RuntimeError("embedding failed")
    props = AllChem.MMFFGetMoleculeProperties(open_)
    props.SetMMFFDielectricConstant(4.0)
    ff = AllChem.MMFFGetMoleculeForceField(open_, props)
    for i, j in links:
        ff.MMFFAddDistanceConstraint(i, j, False, 2.0, 2.1, 50.0)
    for _ in range(20):
        if ff.Minimize(maxIts=1000) == 0:
            break
    mol.RemoveAllConformers()
    cid = mol.AddConformer(Chem.Conformer(open_.GetConformer()), assignId=True)
    props = AllChem.MMFFGetMoleculeProperties(mol)
    props.SetMMFFDielectricConstant(4.0)
    AllChem.MMFFGetMoleculeForceField(mol, props).Minimize(maxIts=5000)
    return [cid]


def linked_checked(mol, seed):
    want = rdkit_bonds(mol)
    links = [(b.GetBeginAtomIdx(), b.GetEndAtomIdx()) for b in mol.GetBonds()
             if b.GetBeginAtom().GetSymbol() == "S" and b.GetEndAtom().GetSymbol() == "S"]
    for attempt in range(5):
        ids = embed_linked(mol, links, seed + attempt)
        if perceived_bonds(mol, ids[0]) == want:
            return ids
    raise RuntimeError("no embedding reproduces connectivity")


# ---------------------------------------------------------------------------
# writers


def atom_name(atom, counters):
    info = atom.GetPDBResidueInfo()
    if info is not None and info.GetName().strip() and atom.GetSymbol() != "H":
        return info.GetName().strip()
    sym = atom.GetSymbol().upper()
    counters[sym] = counters.get(sym, 0) + 1
    return f"{sym}{counters[sym]}"


def pdb_line(serial, name, resname, chain, resseq, x, y, z, element):
    if len(name) < 4 and len(element) == 1:
        name = " " + name
    return (
        f"ATOM  {serial:5d} {name:<4} {resname:>3} {chain:1}{resseq:4d}    "
        f"{x:8.3f}{y:8.3f}{z:8.3f}{1.0:6.2f}{0.0:6.2f}          {element:>2}"
    )


def write_pdb(path, models, header):
    """models: list of [(name, resname, chain, resseq, element, (x,y,z)), ...]"""
    lines = [f"REMARK   1 {h}" for h in header]
    multi = len(models) > 1
    for m, atoms in enumerate(models, start=1):
        if multi:
            lines.append(f"MODEL     {m:4d}")
        prev_chain = None
        serial = 0
        for name, resname, chain, resseq, element, (x, y, z) in atoms:
            if prev_chain is not None and chain != prev_chain:
                lines.append("TER")
            prev_chain = chain
            serial += 1
            lines.append(pdb_line(serial, name, resname, chain, resseq, x, y, z, element))
        lines.append("TER")
        if multi:
            lines.append("ENDMDL")
    lines.append("END")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_xyz(path, mol, comment, order=None):
    conf = mol.GetConformer()
    order = order or list(range(mol.GetNumAtoms()))
    lines = [str(len(order)), comment]
    for i in order:
        p = conf.GetAtomPosition(i)
        lines.append(f"{mol.GetAtomWithIdx(i).GetSymbol():<2} {p.x:12.6f} {p.y:12.6f} {p.z:12.6f}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def residue_records(mol, residue_of, order, conf_id=-1):
    """Build PDB atom tuples; residue_of maps atom idx -> (resname, chain, resseq)."""
    conf = mol.GetConformer(conf_id)
    counters = {}
    current = None
    out = []
    for i in order:
        atom = mol.GetAtomWithIdx(i)
        res = residue_of[i]
        if res != current:
            counters = {}
            current = res
        name = atom_name(atom, counters)
        p = conf.GetAtomPosition(i)
        out.append((name, res[0], res[1], res[2], atom.GetSymbol(), (p.x, p.y, p.z)))
    return out


def hydrogen_residues(mol, residue_of):
    for atom in mol.GetAtoms():
        if atom.GetIdx() not in residue_of:
            heavy = atom.GetNeighbors()[0].GetIdx()
            residue_of[atom.GetIdx()] = residue_of[heavy]
    return residue_of


def residue_order(mol, residue_of, residues):
    """Atom order grouped by residue (in the order given), heavy atoms first."""
    by_res = {r: [] for r in residues}
    for i in range(mol.GetNumAtoms()):
        by_res[residue_of[i]].append(i)
    order = []
    for r in residues:
        members = by_res[r]
        members.sort(key=lambda i: (mol.GetAtomWithIdx(i).GetAtomicNum() == 1, i))
        order.extend(members)
    return order


# ---------------------------------------------------------------------------
# proteins


def protein(seq, disulfides=(), chain="A"):
    mol = Chem.RWMol(Chem.MolFromSequence(seq))
    residues = {}
    for atom in mol.GetAtoms():
        info = atom.GetPDBResidueInfo()
        residues.setdefault(info.GetResidueNumber(), {})[info.GetName().strip()] = atom.GetIdx()
    last = max(residues)
    mol.GetAtomWithIdx(residues[1]["N"]).SetFormalCharge(1)
    mol.GetAtomWithIdx(residues[last]["OXT"]).SetFormalCharge(-1)
    for num, names in residues.items():
        resname = mol.GetAtomWithIdx(names["CA"]).GetPDBResidueInfo().GetResidueName()
        if resname == "ASP":
            mol.GetAtomWithIdx(names["OD2"]).SetFormalCharge(-1)
        elif resname == "GLU":
            mol.GetAtomWithIdx(names["OE2"]).SetFormalCharge(-1)
        elif resname == "LYS":
            mol.GetAtomWithIdx(names["NZ"]).SetFormalCharge(1)
        elif resname == "ARG":
            for key in ("NH1", "NH2", "NE"):
                b = mol.GetBondBetweenAtoms(names[key], names["CZ"])
                if b.GetBondType() == Chem.BondType.DOUBLE:
                    mol.GetAtomWithIdx(names[key]).SetFormalCharge(1)
    for a, b in disulfides:
        mol.AddBond(residues[a]["SG"], residues[b]["SG"], Chem.BondType.SINGLE)
    for atom in mol.GetAtoms():
        if atom.GetFormalCharge() != 0 or atom.GetSymbol() == "S":
            atom.SetNoImplicit(False)
            atom.SetNumExplicitHs(0)
    mol = mol.GetMol()
    Chem.SanitizeMol(mol)
    mol = Chem.AddHs(mol)
    residue_of = {}
    for atom in mol.GetAtoms():
        if atom.GetAtomicNum() == 1:
            continue
        info = atom.GetPDBResidueInfo()
        residue_of[atom.GetIdx()] = (info.GetResidueName(), chain, info.GetResidueNumber())
    hydrogen_residues(mol, residue_of)
    order_keys = sorted(set(residue_of.values()), key=lambda r: r[2])
    return mol, residue_of, order_keys


def write_protein(name, seq, seed, models=1, disulfides=(), header=()):
    mol, residue_of, keys = protein(seq, disulfides)
    if disulfides:
        ids = linked_checked(mol, seed)
    else:
        ids = embed_checked(mol, seed, confs=models)
    order = residue_order(mol, residue_of, keys)
    recs = [residue_records(mol, residue_of, order, cid) for cid in ids]
    write_pdb(os.path.join(ROOT, name), recs, list(header))
    return mol


def capped_alanine(n, phi, psi, seed):
    smi = "CC(=O)" + "N[C@@H](C)C(=O)" * n + "NC"
    mol = Chem.AddHs(Chem.MolFromSmiles(smi))
    residue_of = {}
    heavy = [a.GetIdx() for a in mol.GetAtoms() if a.GetAtomicNum() > 1]
    residue_of.update({i: ("ACE", "A", 1) for i in heavy[:3]})
    backbone = []
    for k in range(n):
        base = 3 + 5 * k
        for off in range(5):
            residue_of[heavy[base + off]] = ("ALA", "A", k + 2)
        backbone.append((heavy[base], heavy[base + 1], heavy[base + 3]))  # N, CA, C
    residue_of.update({i: ("NME", "A", n + 2) for i in heavy[3 + 5 * n:]})
    hydrogen_residues(mol, residue_of)
    embed_checked(mol, seed)
    conf = mol.GetConformer()
    prev_c = heavy[1]
    for k, (n_at, ca, c) in enumerate(backbone):
        next_n = heavy[3 + 5 * (k + 1)]
        rdMolTransforms.SetDihedralDeg(conf, prev_c, n_at, ca, c, phi)
        rdMolTransforms.SetDihedralDeg(conf, n_at, ca, c, next_n, psi)
        nxt_ca = heavy[3 + 5 * (k + 1) + 1] if k + 1 < n else heavy[3 + 5 * n + 1]
        rdMolTransforms.SetDihedralDeg(conf, ca, c, next_n, nxt_ca, 180.0)
        prev_c = c
    if perceived_bonds(mol) != rdkit_bonds(mol):
        raise RuntimeError(f"clash in capped alanine n={n}")
    keys = sorted(set(residue_of.values()), key=lambda r: r[2])
    order = residue_order(mol, residue_of, keys)
    return mol, residue_of, order


# ---------------------------------------------------------------------------
# nucleic acid

BASES = {
    "A": "n1cnc2c(N)ncnc21",
    "G": "n1cnc2c1nc(N)[nH]c2=O",
    "C": "N1C=CC(N)=NC1=O",
    "T": "N1C=C(C)C(=O)NC1=O",
}


def strand(seq, chain):
    pieces = []
    for k, base in enumerate(seq):
        head = "OP(=O)([O-])" if k == 0 else "P(=O)([O-])"
        pieces.append(f"{head}OCC9OC({BASES[base]})CC9O")
    smi = "".join(pieces)
    mol = Chem.MolFromSmiles(smi)
    residue_of = {}
    start = 0
    for k, piece in enumerate(pieces):
        count = Chem.MolFromSmiles(piece).GetNumAtoms()
        for i in range(start, start + count):
            residue_of[i] = ("D" + seq[k], chain, k + 1)
        start += count
    mol = Chem.AddHs(mol)
    hydrogen_residues(mol, residue_of)
    return mol, residue_of


def write_dna(path, seq1, seq2, seed):
    records = []
    right = None
    for chain, seq in (("A", seq1), ("B", seq2)):
        mol, residue_of = strand(seq, chain)
        embed_checked(mol, seed)
        conf = mol.GetConformer()
        xs = [conf.GetAtomPosition(i).x for i in range(mol.GetNumAtoms())]
        # place each strand 6 A clear of the previous one along x
        shift = 0.0 if right is None else right + 6.0 - min(xs)
        right = max(xs) + shift
        for i in range(mol.GetNumAtoms()):
            p = conf.GetAtomPosition(i)
            conf.SetAtomPosition(i, (p.x + shift, p.y, p.z))
        # strands are listed 3' -> 5'
        keys = sorted(set(residue_of.values()), key=lambda r: -r[2])
        order = residue_order(mol, residue_of, keys)
        records.extend(residue_records(mol, residue_of, order))
    write_pdb(path, [records], [
        "two complementary 12-nt DNA strands, residues listed 3' to 5'",
        "5'-monophosphate termini, anionic phosphodiesters, 3'-OH termini",
        "coordinates: RDKit ETKDG + MMFF (not a helical model)",
    ])


# ---------------------------------------------------------------------------
# small systems


def beta_cyclodextrin():
    # seven alpha-1,4 linked glucose units closed into a ring
    glc = Chem.MolFromSmiles("OCC1OC(O)C(O)C(O)C1O")
    # atom order: O6 C6 C5 O5 C1 O1 C2 O2 C3 O3 C4 O4
    rw = Chem.RWMol()
    maps = []
    for k in range(7):
        m = {}
        for atom in glc.GetAtoms():
            if atom.GetIdx() == 5:  # O1 replaced by the next unit's O4
                continue
            m[atom.GetIdx()] = rw.AddAtom(Chem.Atom(atom.GetAtomicNum()))
        for bond in glc.GetBonds():
            a, b = bond.GetBeginAtomIdx(), bond.GetEndAtomIdx()
            if a in m and b in m:
                rw.AddBond(m[a], m[b], Chem.BondType.SINGLE)
        maps.append(m)
    for k in range(7):
        rw.AddBond(maps[k][4], maps[(k + 1) % 7][11], Chem.BondType.SINGLE)
    mol = rw.GetMol()
    Chem.SanitizeMol(mol)
    mol = Chem.AddHs(mol)
    residue_of = {}
    for k, m in enumerate(maps):
        for idx in m.values():
            residue_of[idx] = ("GLC", "A", k + 1)
    hydrogen_residues(mol, residue_of)
    embed_checked(mol, 7)
    keys = [("GLC", "A", k + 1) for k in range(7)]
    order = residue_order(mol, residue_of, keys)
    recs = residue_records(mol, residue_of, order)
    write_pdb(os.path.join(ROOT, "beta_cyclodextrin.pdb"), [recs], [
        "beta-cyclodextrin connectivity (cyclic alpha-1,4 glucose heptamer)",
        "stereocentres not curated; coordinates: RDKit ETKDG + MMFF",
    ])


def leucoemeraldine():
    smi = "c1ccc(cc1)" + "Nc1ccc(cc1)" * 7 + "N"
    mol = Chem.AddHs(Chem.MolFromSmiles(smi))
    embed_checked(mol, 11)
    Chem.Kekulize(mol, clearAromaticFlags=True)
    # residue-like ordering: each aniline unit with its hydrogens
    unit_of = {}
    heavy = [a.GetIdx() for a in mol.GetAtoms() if a.GetAtomicNum() > 1]
    # first unit: phenyl (6) + N; middle: ring (6) + N; last unit: ring + NH2
    for k in range(8):
        for i in heavy[7 * k:7 * k + 7]:
            unit_of[i] = ("ANI", "A", k + 1)
    hydrogen_residues(mol, unit_of)
    keys = [("ANI", "A", k + 1) for k in range(8)]
    order = residue_order(mol, unit_of, keys)
    write_xyz(os.path.join(ROOT, "leucoemeraldine.xyz"), mol,
              "leucoemeraldine octamer Ph-(NH-C6H4)7-NH2, RDKit ETKDG + MMFF", order)
    # explicit pairs: N of unit k to the ipso carbon of unit k+1 (1-based file indices)
    pos = {atom: n + 1 for n, atom in enumerate(order)}
    pairs = []
    for k in range(7):
        n_atom = heavy[7 * k + 6]
        ipso = heavy[7 * (k + 1)]
        assert mol.GetBondBetweenAtoms(n_atom, ipso) is not None
        pairs.append((pos[n_atom], pos[ipso]))
    with open(os.path.join(ROOT, "leucoemeraldine.pairs"), "w") as fh:
        fh.write("".join(f"{a},{b};" for a, b in pairs) + "\n")


def water_trimer():
    # three waters, roughly a cyclic trimer
    lines = ["9", "water trimer"]
    centres = [(0.0, 0.0, 0.0), (2.85, 0.0, 0.0), (1.42, 2.47, 0.0)]
    for cx, cy, cz in centres:
        lines.append(f"O  {cx:12.6f} {cy:12.6f} {cz:12.6f}")
        lines.append(f"H  {cx + 0.9572:12.6f} {cy:12.6f} {cz + 0.05:12.6f}")
        lines.append(f"H  {cx - 0.2400:12.6f} {cy + 0.9266:12.6f} {cz - 0.05:12.6f}")
    with open(os.path.join(ROOT, "water_trimer.xyz"), "w") as fh:
        fh.write("\n".join(lines) + "\n")


CORPUS = [
    ("water", "O"),
    ("methane", "C"),
    ("ethane", "CC"),
    ("ethene", "C=C"),
    ("formaldehyde", "C=O"),
    ("methanol", "CO"),
    ("acetic_acid", "CC(=O)O"),
    ("acetate", "CC(=O)[O-]"),
    ("methylammonium", "C[NH3+]"),
    ("glycine", "[NH3+]CC(=O)[O-]"),
    ("alanine_dipeptide", "CC(=O)N[C@@H](C)C(=O)NC"),
    ("glycylglycine", "[NH3+]CC(=O)NCC(=O)[O-]"),
    ("alanylalanine", "C[C@H]([NH3+])C(=O)N[C@@H](C)C(=O)[O-]"),
    ("glucose", "OCC1OC(O)C(O)C(O)C1O"),
    ("benzene", "C1=CC=CC=C1"),
    ("phenol", "OC1=CC=CC=C1"),
    ("imidazole", "C1=CN=CN1"),
    ("dimethyl_phosphate", "COP(=O)([O-])OC"),
    ("oxolane_phosphate", "C1CCOC1COP(=O)([O-])OC"),
    ("ethanolamine", "NCCO"),
    ("cysteine", "[NH3+][C@@H](CS)C(=O)[O-]"),
    ("dimethyl_disulfide", "CSSC"),
    ("urea", "NC(N)=O"),
    ("cyclohexane", "C1CCCCC1"),
]


def corpus():
    for name, smi in CORPUS:
        mol = Chem.AddHs(Chem.MolFromSmiles(smi))
        assert mol.GetNumAtoms() <= 30, name
        if mol.GetNumAtoms() > 1:
            embed_checked(mol, 3)
        else:
            AllChem.Compute2DCoords(mol)
        Chem.Kekulize(mol, clearAromaticFlags=True)
        mol.SetProp("_Name", name)
        Chem.MolToMolFile(mol, os.path.join(ROOT, "corpus", f"{name}.sdf"), kekulize=True)


def cyclohexane_xyz():
    mol = Chem.AddHs(Chem.MolFromSmiles("C1CCCCC1"))
    embed_checked(mol, 5)
    write_xyz(os.path.join(ROOT, "cyclohexane.xyz"), mol, "cyclohexane")


def main():
    os.makedirs(os.path.join(ROOT, "corpus"), exist_ok=True)
    what = set(sys.argv[1:])

    def want(key):
        return not what or key in what

    if want("small"):
        water_trimer()
        cyclohexane_xyz()
        corpus()
    if want("ala"):
        for n in (10, 20, 40):
            for label, phi, psi in (("alpha", -57.0, -47.0), ("beta", -139.0, 135.0)):
                mol, residue_of, order = capped_alanine(n, phi, psi, 17 + n)
                recs = residue_records(mol, residue_of, order)
                write_pdb(os.path.join(ROOT, f"ala{n}_{label}.pdb"), [recs], [
                    f"ACE-(ALA){n}-NME, ideal {label} backbone torsions",
                ])
    if want("chignolin"):
        write_protein("chignolin.pdb", "GYDPETGTWG", 101, models=2, header=[
            "chignolin GYDPETGTWG, charged termini, ASP-/GLU- (pH 7 states)",
            "coordinates: RDKit ETKDG + MMFF (two models)",
        ])
    if want("trpcage"):
        write_protein("trpcage.pdb", "NLYIQWLKDGGPSSGRPPPS", 202, models=2, header=[
            "tryptophan cage NLYIQWLKDGGPSSGRPPPS, charged termini, LYS+ ARG+ ASP-",
            "coordinates: RDKit ETKDG + MMFF (two models)",
        ])
    if want("crambin"):
        write_protein(
            "crambin.pdb",
            "TTCCPSIVARSNFNVCRLPGTPEAICATYTGCIIIPGATCPGDYAN",
            11,
            disulfides=((3, 40), (4, 32), (16, 26)),
            header=[
                "crambin, disulfides 3-40 4-32 16-26, charged termini, ARG+ GLU- ASP-",
                "coordinates: RDKit ETKDG (open chain) + MMFF with S-S closure",
            ],
        )
    if want("bcd"):
        beta_cyclodextrin()
    if want("dna"):
        write_dna(os.path.join(ROOT, "bdna.pdb"), "CGCGAATTCGCG", "CGCGAATTCGCG", 404)
    if want("leuco"):
        leucoemeraldine()


if __name__ == "__main__":
    main()
