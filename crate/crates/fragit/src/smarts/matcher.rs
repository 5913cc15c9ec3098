use std::collections::HashMap;

use super::{AtomExpr, AtomPrimitive, BondExpr, SmartsPattern};
use crate::molecule::Molecule;

/// Images of the pattern atoms, indexed by pattern-atom ordinal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Match {
    pub mapping: Vec<usize>,
}

/// Every injective mapping of `pat` into `mol`, sorted lexicographically.
pub fn match_all(mol: &Molecule, pat: &SmartsPattern) -> Vec<Match> {
    Matcher::new(mol).match_all(pat)
}

/// Images of the top-level pattern atoms of every match, deduplicated.
pub fn match_first_atoms(mol: &Molecule, pat: &SmartsPattern) -> Vec<Vec<usize>> {
    let mut tuples: Vec<Vec<usize>> = match_all(mol, pat).into_iter().map(|m| m.mapping).collect();
    tuples.dedup();
    tuples
}

/// Matcher bound to one molecule; caches the anchor sets of recursive
/// primitives so a pattern set can share them.
pub struct Matcher<'m> {
    mol: &'m Molecule,
    anchors: HashMap<String, Vec<bool>>,
}

struct Plan {
    order: Vec<usize>,
    /// For each position in `order` after the first: the already-placed
    /// neighbour to extend from, and all placed neighbours to check.
    parent: Vec<Option<usize>>,
    checks: Vec<Vec<(usize, BondExpr)>>,
}

impl<'m> Matcher<'m> {
    pub fn new(mol: &'m Molecule) -> Self {
        Matcher {
            mol,
            anchors: HashMap::new(),
        }
    }

    pub fn match_all(&mut self, pat: &SmartsPattern) -> Vec<Match> {
        let candidates = self.candidates(pat);
        let mut found = Vec::new();
        self.search(pat, &candidates, None, &mut |m| {
            found.push(Match { mapping: m.to_vec() });
            true
        });
        found.sort();
        found
    }

    /// Per molecule atom: does some match put pattern atom 0 there?
    fn anchor_set(&mut self, pat: &SmartsPattern) -> Vec<bool> {
        let key = pat.to_string();
        if let Some(set) = self.anchors.get(&key) {
            return set.clone();
        }
        let candidates = self.candidates(pat);
        let mut set = vec![false; self.mol.len()];
        for &a in &candidates[0] {
            let mut hit = false;
            self.search(pat, &candidates, Some(a), &mut |_| {
                hit = true;
                false
            });
            set[a - 1] = hit;
        }
        self.anchors.insert(key, set.clone());
        set
    }

    fn candidates(&mut self, pat: &SmartsPattern) -> Vec<Vec<usize>> {
        pat.atoms
            .iter()
            .map(|expr| {
                let mask = self.atom_mask(expr);
                (1..=self.mol.len()).filter(|&i| mask[i - 1]).collect()
            })
            .collect()
    }

    fn atom_mask(&mut self, expr: &AtomExpr) -> Vec<bool> {
        let mut mask = vec![true; self.mol.len()];
        for prim in &expr.primitives {
            match prim {
                AtomPrimitive::Recursive(inner) => {
                    let set = self.anchor_set(inner);
                    for (m, s) in mask.iter_mut().zip(set) {
                        *m &= s;
                    }
                }
                other => {
                    for (m, atom) in mask.iter_mut().zip(self.mol.atoms()) {
                        *m &= match other {
                            AtomPrimitive::Element(z) => atom.element == *z,
                            AtomPrimitive::Wildcard => true,
                            AtomPrimitive::HydrogenCount(n) => atom.attached_hydrogens == *n as usize,
                            AtomPrimitive::Charge(q) => atom.formal_charge == *q,
                            AtomPrimitive::Recursive(_) => unreachable!(),
                        };
                    }
                }
            }
        }
        mask
    }

    fn plan(pat: &SmartsPattern, candidates: &[Vec<usize>], seed: Option<usize>) -> Plan {
        let n = pat.len();
        let first = seed.unwrap_or_else(|| {
            (0..n)
                .min_by_key(|&i| (candidates[i].len(), i))
                .expect("pattern has atoms")
        });
        let mut placed = vec![false; n];
        let mut order = vec![first];
        placed[first] = true;
        while order.len() < n {
            let next = (0..n)
                .filter(|&i| !placed[i])
                .filter(|&i| pat.neighbors(i).iter().any(|&(j, _)| placed[j]))
                .min_by_key(|&i| (candidates[i].len(), i))
                // disconnected pattern parts fall back to the tightest free atom
                .or_else(|| (0..n).filter(|&i| !placed[i]).min_by_key(|&i| (candidates[i].len(), i)))
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        let mut parent = Vec::with_capacity(n);
        let mut checks = Vec::with_capacity(n);
        for (k, &i) in order.iter().enumerate() {
            let earlier: Vec<(usize, BondExpr)> = pat
                .neighbors(i)
                .into_iter()
                .filter(|&(j, _)| position[j] < k)
                .collect();
            parent.push(earlier.iter().min_by_key(|&&(j, _)| position[j]).map(|&(j, _)| j));
            checks.push(earlier);
        }
        Plan {
            order,
            parent,
            checks,
        }
    }

    /// Backtracking search. `visit` returns false to stop early.
    fn search(
        &self,
        pat: &SmartsPattern,
        candidates: &[Vec<usize>],
        anchor: Option<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) {
        let n = pat.len();
        if n == 0 || candidates.iter().any(|c| c.is_empty()) {
            return;
        }
        let plan = Self::plan(pat, candidates, anchor.map(|_| 0));
        let mut allowed = vec![vec![false; self.mol.len()]; n];
        for (i, list) in candidates.iter().enumerate() {
            for &a in list {
                allowed[i][a - 1] = true;
            }
        }
        if let Some(a) = anchor {
            if !allowed[0][a - 1] {
                return;
            }
            allowed[0] = vec![false; self.mol.len()];
            allowed[0][a - 1] = true;
        }
        let mut mapping = vec![0usize; n];
        let mut used = vec![false; self.mol.len()];
        self.extend(&plan, &allowed, candidates, 0, &mut mapping, &mut used, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        plan: &Plan,
        allowed: &[Vec<bool>],
        candidates: &[Vec<usize>],
        depth: usize,
        mapping: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == plan.order.len() {
            return visit(mapping);
        }
        let p = plan.order[depth];
        let pool: Vec<usize> = match plan.parent[depth] {
            Some(parent) => self
                .mol
                .neighbors(mapping[parent])
                .map(|s| s.to_vec())
                .unwrap_or_default(),
            None => candidates[p].clone(),
        };
        for a in pool {
            if used[a - 1] || !allowed[p][a - 1] {
                continue;
            }
            let bonded_ok = plan.checks[depth].iter().all(|&(q, kind)| {
                self.mol
                    .bond_between(a, mapping[q])
                    .is_some_and(|b| kind.accepts(b.order))
            });
            if !bonded_ok {
                continue;
            }
            mapping[p] = a;
            used[a - 1] = true;
            let go_on = self.extend(plan, allowed, candidates, depth + 1, mapping, used, visit);
            used[a - 1] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}
