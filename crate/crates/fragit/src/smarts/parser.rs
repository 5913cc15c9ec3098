use std::collections::BTreeMap;

use super::{AtomExpr, AtomPrimitive, BondExpr, PatternBond, SmartsError, SmartsPattern};
use crate::element;

type Result<T> = std::result::Result<T, SmartsError>;

pub fn parse(text: &str) -> Result<SmartsPattern> {
    let mut parser = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let pattern = parser.pattern(false)?;
    if parser.pos != parser.bytes.len() {
        return Err(parser.syntax("unexpected ')'"));
    }
    Ok(pattern)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

struct RingOpen {
    atom: usize,
    bond: Option<BondExpr>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> SmartsError {
        SmartsError::Syntax {
            message: message.into(),
            offset: self.pos,
        }
    }

    fn unsupported(&self, len: usize) -> SmartsError {
        let end = (self.pos + len).min(self.bytes.len());
        SmartsError::Unsupported {
            token: self.text.get(self.pos..end).unwrap_or("?").to_string(),
            offset: self.pos,
        }
    }

    fn digits(&mut self) -> Option<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.text[start..self.pos].parse().ok()
        }
    }

    /// Parses a pattern; when `nested`, stops before the `)` closing `$(`.
    fn pattern(&mut self, nested: bool) -> Result<SmartsPattern> {
        let start = self.pos;
        let mut atoms: Vec<AtomExpr> = Vec::new();
        let mut bonds: Vec<PatternBond> = Vec::new();
        let mut closures = Vec::new();
        let mut rings: BTreeMap<u8, RingOpen> = BTreeMap::new();
        let mut branches: Vec<(usize, usize)> = Vec::new();
        let mut prev: Option<usize> = None;
        let mut pending: Option<BondExpr> = None;

        loop {
            let Some(c) = self.peek() else {
                if nested {
                    return Err(self.syntax("unterminated '$('"));
                }
                break;
            };
            match c {
                b')' => {
                    if let Some((p, count)) = branches.pop() {
                        if count == atoms.len() {
                            return Err(self.syntax("empty branch"));
                        }
                        if pending.is_some() {
                            return Err(self.syntax("bond without a following atom"));
                        }
                        prev = Some(p);
                        self.pos += 1;
                    } else if nested {
                        break;
                    } else {
                        return Err(self.syntax("unbalanced ')'"));
                    }
                }
                b'(' => {
                    let Some(p) = prev else {
                        return Err(self.syntax("branch without a preceding atom"));
                    };
                    if pending.is_some() {
                        return Err(self.syntax("bond before '('"));
                    }
                    branches.push((p, atoms.len()));
                    self.pos += 1;
                }
                b'-' | b'=' | b'#' => {
                    if prev.is_none() {
                        return Err(self.syntax("bond without a preceding atom"));
                    }
                    if pending.is_some() {
                        return Err(self.syntax("two consecutive bonds"));
                    }
                    pending = Some(match c {
                        b'-' => BondExpr::Single,
                        b'=' => BondExpr::Double,
                        _ => BondExpr::Triple,
                    });
                    self.pos += 1;
                }
                b'1'..=b'9' => {
                    let Some(p) = prev else {
                        return Err(self.syntax("ring closure without a preceding atom"));
                    };
                    let digit = c - b'0';
                    if let Some(open) = rings.remove(&digit) {
                        let kind = match (open.bond, pending) {
                            (Some(x), Some(y)) if x != y => {
                                return Err(self.syntax("conflicting ring-closure bonds"))
                            }
                            (Some(x), _) | (None, Some(x)) => x,
                            (None, None) => BondExpr::Default,
                        };
                        if open.atom == p || bonds.iter().any(|b| b.a == open.atom && b.b == p) {
                            return Err(self.syntax("ring closure duplicates a bond"));
                        }
                        bonds.push(PatternBond {
                            a: open.atom.min(p),
                            b: open.atom.max(p),
                            kind,
                        });
                        closures.push((digit, open.atom, p));
                    } else {
                        rings.insert(
                            digit,
                            RingOpen {
                                atom: p,
                                bond: pending,
                            },
                        );
                    }
                    pending = None;
                    self.pos += 1;
                }
                b'0' | b'%' => return Err(self.unsupported(1)),
                b'[' => {
                    let expr = self.bracket_atom()?;
                    self.add_atom(expr, &mut atoms, &mut bonds, &mut prev, &mut pending);
                }
                b'*' => {
                    self.pos += 1;
                    let expr = AtomExpr {
                        primitives: vec![AtomPrimitive::Wildcard],
                    };
                    self.add_atom(expr, &mut atoms, &mut bonds, &mut prev, &mut pending);
                }
                b'A'..=b'Z' => {
                    let expr = self.organic_atom()?;
                    self.add_atom(expr, &mut atoms, &mut bonds, &mut prev, &mut pending);
                }
                b'a'..=b'z' | b'@' | b';' | b',' | b'!' | b'~' | b':' | b'&' | b'.' | b'/'
                | b'\\' | b'$' | b'+' => return Err(self.unsupported(1)),
                _ => return Err(self.syntax(format!("unexpected character '{}'", c as char))),
            }
        }

        if !branches.is_empty() {
            return Err(self.syntax("unbalanced '('"));
        }
        if let Some((digit, _)) = rings.iter().next() {
            return Err(self.syntax(format!("ring closure {digit} never closed")));
        }
        if pending.is_some() {
            return Err(self.syntax("dangling bond"));
        }
        if atoms.is_empty() {
            return Err(self.syntax("empty pattern"));
        }
        bonds.sort_by_key(|b| (b.a, b.b));
        Ok(SmartsPattern {
            atoms,
            bonds,
            ring_closures: closures,
            source: self.text[start..self.pos].to_string(),
        })
    }

    fn add_atom(
        &self,
        expr: AtomExpr,
        atoms: &mut Vec<AtomExpr>,
        bonds: &mut Vec<PatternBond>,
        prev: &mut Option<usize>,
        pending: &mut Option<BondExpr>,
    ) {
        let idx = atoms.len();
        atoms.push(expr);
        if let Some(p) = *prev {
            bonds.push(PatternBond {
                a: p,
                b: idx,
                kind: pending.take().unwrap_or(BondExpr::Default),
            });
        }
        *prev = Some(idx);
    }

    /// Unbracketed atom, with an optional `H`/`Hn` count suffix.
    fn organic_atom(&mut self) -> Result<AtomExpr> {
        let c = self.bytes[self.pos];
        let (symbol, len) = match (c, self.peek_at(1)) {
            (b'C', Some(b'l')) => ("Cl", 2),
            (b'B', Some(b'r')) => ("Br", 2),
            (b'B', _) => ("B", 1),
            (b'C', _) => ("C", 1),
            (b'N', _) => ("N", 1),
            (b'O', _) => ("O", 1),
            (b'P', _) => ("P", 1),
            (b'S', _) => ("S", 1),
            (b'F', _) => ("F", 1),
            (b'I', _) => ("I", 1),
            (b'H', _) => ("H", 1),
            _ => return Err(self.syntax(format!("'{}' must be bracketed", c as char))),
        };
        self.pos += len;
        let mut primitives = vec![AtomPrimitive::Element(
            element::atomic_number(symbol).expect("organic subset symbol"),
        )];
        if self.peek() == Some(b'H') && self.peek_at(1).is_none_or(|n| !n.is_ascii_lowercase()) {
            self.pos += 1;
            let count = self.digits().unwrap_or(1);
            primitives.push(AtomPrimitive::HydrogenCount(
                u8::try_from(count).map_err(|_| self.syntax("hydrogen count too large"))?,
            ));
        }
        Ok(AtomExpr { primitives })
    }

    fn bracket_atom(&mut self) -> Result<AtomExpr> {
        let open = self.pos;
        self.pos += 1;
        let mut primitives = Vec::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(SmartsError::Syntax {
                    message: "unclosed '['".into(),
                    offset: open,
                });
            };
            match c {
                b']' => {
                    self.pos += 1;
                    break;
                }
                b'$' => {
                    if self.peek_at(1) != Some(b'(') {
                        return Err(self.syntax("'$' must be followed by '('"));
                    }
                    self.pos += 2;
                    let inner = self.pattern(true)?;
                    if self.peek() != Some(b')') {
                        return Err(self.syntax("unterminated '$('"));
                    }
                    self.pos += 1;
                    primitives.push(AtomPrimitive::Recursive(Box::new(inner)));
                }
                b'*' => {
                    self.pos += 1;
                    primitives.push(AtomPrimitive::Wildcard);
                }
                b'+' | b'-' => {
                    let sign = if c == b'+' { 1 } else { -1 };
                    self.pos += 1;
                    let magnitude = match self.digits() {
                        Some(n) => n as i32,
                        None => {
                            let mut n = 1;
                            while self.peek() == Some(c) {
                                self.pos += 1;
                                n += 1;
                            }
                            n
                        }
                    };
                    primitives.push(AtomPrimitive::Charge(sign * magnitude));
                }
                b'H' if self.peek_at(1).is_none_or(|n| !n.is_ascii_lowercase()) => {
                    let first = primitives.is_empty();
                    self.pos += 1;
                    match self.digits() {
                        Some(n) => primitives.push(AtomPrimitive::HydrogenCount(
                            u8::try_from(n).map_err(|_| self.syntax("hydrogen count too large"))?,
                        )),
                        None if first => primitives.push(AtomPrimitive::Element(1)),
                        None => primitives.push(AtomPrimitive::HydrogenCount(1)),
                    }
                }
                b'A'..=b'Z' => {
                    let two = self
                        .text
                        .get(self.pos..self.pos + 2)
                        .filter(|s| s.as_bytes()[1].is_ascii_lowercase())
                        .and_then(element::atomic_number);
                    if let Some(z) = two {
                        self.pos += 2;
                        primitives.push(AtomPrimitive::Element(z));
                    } else {
                        let one = element::atomic_number(&self.text[self.pos..self.pos + 1])
                            .ok_or_else(|| self.syntax("unknown element"))?;
                        self.pos += 1;
                        primitives.push(AtomPrimitive::Element(one));
                    }
                }
                b'a'..=b'z' | b'0'..=b'9' | b'@' | b';' | b',' | b'!' | b'~' | b':' | b'&'
                | b'#' => {
                    let len = if c == b'#' {
                        1 + self.bytes[self.pos + 1..]
                            .iter()
                            .take_while(|b| b.is_ascii_digit())
                            .count()
                    } else {
                        1
                    };
                    return Err(self.unsupported(len));
                }
                _ => return Err(self.syntax(format!("unexpected '{}' in bracket atom", c as char))),
            }
        }
        if primitives.is_empty() {
            return Err(SmartsError::Syntax {
                message: "empty bracket atom".into(),
                offset: open,
            });
        }
        Ok(AtomExpr { primitives })
    }
}
