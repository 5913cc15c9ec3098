//! A SMARTS subset: element/wildcard atoms, bracket atoms with implicitly
//! AND-ed `Hn`, charge and recursive `$()` primitives, branches, ring
//! closures 1-9 and the bond symbols `-`, `=`, `#`.
//!
//! ```text
//! pattern  ::= atom ( bond? ( atom | digit ) | "(" bond? chain ")" )*
//! atom     ::= organic ( "H" digit* )? | "*" | "[" primitive+ "]"
//! organic  ::= "B" | "C" | "N" | "O" | "P" | "S" | "F" | "Cl" | "Br" | "I" | "H"
//! primitive::= element | "*" | "H" digit* | ("+" | "-") digit* | "$(" pattern ")"
//! bond     ::= "-" | "=" | "#"
//! ```
//!
//! An unwritten bond matches single bonds only, and `H` directly after an
//! unbracketed atom is a hydrogen count, so `NH3` means `[NH3]`.

mod matcher;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::element;

pub use matcher::{match_all, match_first_atoms, Match, Matcher};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmartsError {
    #[error("unsupported SMARTS feature '{token}' at offset {offset}")]
    Unsupported { token: String, offset: usize },
    #[error("SMARTS syntax error at offset {offset}: {message}")]
    Syntax { message: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum AtomPrimitive {
    Element(u8),
    Wildcard,
    HydrogenCount(u8),
    Charge(i32),
    Recursive(Box<SmartsPattern>),
}

/// Conjunction of primitives.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomExpr {
    pub primitives: Vec<AtomPrimitive>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BondExpr {
    Default,
    Single,
    Double,
    Triple,
}

impl BondExpr {
    pub fn accepts(self, order: u8) -> bool {
        match self {
            BondExpr::Default | BondExpr::Single => order == 1,
            BondExpr::Double => order == 2,
            BondExpr::Triple => order == 3,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BondExpr::Default => "",
            BondExpr::Single => "-",
            BondExpr::Double => "=",
            BondExpr::Triple => "#",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternBond {
    /// Lower pattern-atom ordinal (0-based).
    pub a: usize,
    pub b: usize,
    pub kind: BondExpr,
}

#[derive(Debug, Clone)]
pub struct SmartsPattern {
    pub atoms: Vec<AtomExpr>,
    /// Sorted by `(a, b)`.
    pub bonds: Vec<PatternBond>,
    /// Ring-closure digit and the atom pair it joined.
    pub ring_closures: Vec<(u8, usize, usize)>,
    pub source: String,
}

/// Structural equality: atoms and bonds; source text and digits are ignored.
impl PartialEq for SmartsPattern {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.bonds == other.bonds
    }
}

impl SmartsPattern {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn bond(&self, i: usize, j: usize) -> Option<&PatternBond> {
        let (a, b) = (i.min(j), i.max(j));
        self.bonds.iter().find(|bd| bd.a == a && bd.b == b)
    }

    pub(crate) fn neighbors(&self, i: usize) -> Vec<(usize, BondExpr)> {
        let mut out: Vec<(usize, BondExpr)> = self
            .bonds
            .iter()
            .filter_map(|b| {
                if b.a == i {
                    Some((b.b, b.kind))
                } else if b.b == i {
                    Some((b.a, b.kind))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|&(j, _)| j);
        out
    }
}

const ORGANIC: [u8; 10] = [5, 6, 7, 8, 9, 15, 16, 17, 35, 53];

impl fmt::Display for AtomPrimitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomPrimitive::Element(z) => f.write_str(element::symbol(*z)),
            AtomPrimitive::Wildcard => f.write_str("*"),
            AtomPrimitive::HydrogenCount(n) => write!(f, "H{n}"),
            AtomPrimitive::Charge(q) if *q >= 0 => write!(f, "+{q}"),
            AtomPrimitive::Charge(q) => write!(f, "-{}", -q),
            AtomPrimitive::Recursive(p) => write!(f, "$({p})"),
        }
    }
}

impl fmt::Display for AtomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.primitives.as_slice() {
            [AtomPrimitive::Element(z)] if ORGANIC.contains(z) => {
                f.write_str(element::symbol(*z))
            }
            [AtomPrimitive::Wildcard] => f.write_str("*"),
            prims => {
                f.write_str("[")?;
                for p in prims {
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Canonical text: depth-first from atom 0, lower neighbours first,
/// ring closures on non-tree bonds.
impl fmt::Display for SmartsPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return Ok(());
        }
        let n = self.atoms.len();
        let mut preorder = vec![usize::MAX; n];
        let mut children = vec![Vec::new(); n];
        let mut counter = 0;
        let mut stack = vec![(0usize, usize::MAX)];
        while let Some((atom, parent)) = stack.pop() {
            if preorder[atom] != usize::MAX {
                continue;
            }
            preorder[atom] = counter;
            counter += 1;
            if parent != usize::MAX {
                children[parent].push(atom);
            }
            for &(next, _) in self.neighbors(atom).iter().rev() {
                if preorder[next] == usize::MAX {
                    stack.push((next, atom));
                }
            }
        }
        let tree: std::collections::HashSet<(usize, usize)> = children
            .iter()
            .enumerate()
            .flat_map(|(p, cs)| cs.iter().map(move |&c| (p.min(c), p.max(c))))
            .collect();
        let mut writer = Writer {
            pattern: self,
            children: &children,
            preorder: &preorder,
            tree: &tree,
            open: BTreeMap::new(),
        };
        writer.atom(f, 0)
    }
}

struct Writer<'a> {
    pattern: &'a SmartsPattern,
    children: &'a [Vec<usize>],
    preorder: &'a [usize],
    tree: &'a std::collections::HashSet<(usize, usize)>,
    /// Open ring bonds keyed by (lower, higher) atom, with their digit.
    open: BTreeMap<(usize, usize), u8>,
}

impl Writer<'_> {
    fn atom(&mut self, f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
        write!(f, "{}", self.pattern.atoms[i])?;
        for (j, kind) in self.pattern.neighbors(i) {
            let key = (i.min(j), i.max(j));
            if self.tree.contains(&key) {
                continue;
            }
            if self.preorder[j] < self.preorder[i] {
                if let Some(digit) = self.open.remove(&key) {
                    write!(f, "{digit}")?;
                }
            } else {
                let used: Vec<u8> = self.open.values().copied().collect();
                let digit = (1..=9u8).find(|d| !used.contains(d)).ok_or(fmt::Error)?;
                self.open.insert(key, digit);
                write!(f, "{}{digit}", kind.symbol())?;
            }
        }
        let kids = &self.children[i];
        for (k, &c) in kids.iter().enumerate() {
            let kind = self.pattern.bond(i, c).map_or(BondExpr::Default, |b| b.kind);
            if k + 1 < kids.len() {
                write!(f, "({}", kind.symbol())?;
                self.atom(f, c)?;
                f.write_str(")")?;
            } else {
                f.write_str(kind.symbol())?;
                self.atom(f, c)?;
            }
        }
        Ok(())
    }
}
