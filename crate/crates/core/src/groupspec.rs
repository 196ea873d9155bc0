//! A small language for naming groups.
//!
//! ```text
//! expr  := term ("x" term)*
//! term  := "C" INT | "D" INT | "Q" INT | "Ttilde" | "Otilde" | "Itilde"
//!        | "SL(2," INT ")"
//!        | "sd(C" INT ["^" INT] ", C" INT ", [[" INT, … "], …])"
//!        | "perm(" INT ";" gen ("," gen)* ")"
//!        | "(" expr ")"
//! gen   := "()" | ("(" INT INT* ")")+
//! ```
//!
//! Integer suffixes are group orders: `Q8` is the quaternion group of order
//! 8 and `D6` the dihedral group of order 6. Cycles in `perm` are 1-based.
//! Whitespace between tokens is ignored.

use std::fmt;
use std::str::FromStr;

use crate::catalog;
use crate::error::{Error, ParseError, Result};
use crate::perm::Permutation;
use crate::permgroup::PermutationGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    /// Cyclic group of the given order.
    Cyclic(u64),
    /// Dihedral group of the given (even) order.
    Dihedral(u64),
    /// Dicyclic group of the given order (a multiple of 4, at least 8).
    Dicyclic(u64),
    Ttilde,
    Otilde,
    Itilde,
    /// `SL(2, q)`.
    Sl2(u64),
    Product(Vec<GroupExpr>),
    /// `(C_modulus)^rank ⋊ C_acting` with the generator acting by `matrix`.
    Semidirect {
        modulus: u64,
        rank: u32,
        acting: u64,
        matrix: Vec<Vec<i64>>,
    },
    /// Permutation generators as 1-based disjoint cycles.
    RawPerm {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
}

impl GroupExpr {
    /// Order implied by the expression alone; `None` for raw permutation
    /// groups.
    pub fn order_hint(&self) -> Option<u128> {
        Some(match self {
            GroupExpr::Cyclic(n) | GroupExpr::Dihedral(n) | GroupExpr::Dicyclic(n) => *n as u128,
            GroupExpr::Ttilde => 24,
            GroupExpr::Otilde => 48,
            GroupExpr::Itilde => 120,
            GroupExpr::Sl2(q) => {
                let q = *q as u128;
                q * (q * q - 1)
            }
            GroupExpr::Product(parts) => parts
                .iter()
                .map(GroupExpr::order_hint)
                .try_fold(1u128, |acc, o| o.map(|o| acc.saturating_mul(o)))?,
            GroupExpr::Semidirect {
                modulus,
                rank,
                acting,
                ..
            } => catalog::semidirect_order(*modulus, *rank, *acting),
            GroupExpr::RawPerm { .. } => return None,
        })
    }

    /// Factors of a top-level direct product.
    pub fn product_factors(&self) -> Option<&[GroupExpr]> {
        match self {
            GroupExpr::Product(parts) => Some(parts),
            _ => None,
        }
    }

    /// Builds the permutation model; fails with `CapExceeded` before
    /// construction when the order is known to exceed `cap`.
    pub fn build(&self, cap: usize) -> Result<PermutationGroup> {
        if let Some(order) = self.order_hint() {
            if order > cap as u128 {
                return Err(Error::CapExceeded { order, cap });
            }
        }
        let g = match self {
            GroupExpr::Cyclic(n) => catalog::cyclic(*n)?,
            GroupExpr::Dihedral(n) => catalog::dihedral(*n)?,
            GroupExpr::Dicyclic(n) => catalog::dicyclic(n / 4)?,
            GroupExpr::Ttilde => catalog::binary_tetrahedral()?,
            GroupExpr::Otilde => catalog::binary_octahedral()?,
            GroupExpr::Itilde => catalog::binary_icosahedral()?,
            GroupExpr::Sl2(q) => catalog::sl2(*q as usize)?,
            GroupExpr::Product(parts) => {
                let factors = parts
                    .iter()
                    .map(|p| p.build(cap))
                    .collect::<Result<Vec<_>>>()?;
                catalog::direct_product(&factors)?
            }
            GroupExpr::Semidirect {
                modulus,
                rank,
                acting,
                matrix,
            } => catalog::semidirect(*modulus, *rank, *acting, matrix)?,
            GroupExpr::RawPerm { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|cycles| {
                        let zero_based: Vec<Vec<usize>> = cycles
                            .iter()
                            .map(|c| c.iter().map(|x| x - 1).collect())
                            .collect();
                        Permutation::from_cycles(*degree, &zero_based)
                    })
                    .collect::<Result<Vec<_>>>()?;
                PermutationGroup::new(*degree, perms)?
            }
        };
        Ok(g.with_cap(cap))
    }
}

/// Parses and builds in one step.
pub fn build(text: &str, cap: usize) -> Result<PermutationGroup> {
    parse(text)?.build(cap)
}

fn write_term(f: &mut fmt::Formatter<'_>, e: &GroupExpr, nested: bool) -> fmt::Result {
    match e {
        GroupExpr::Cyclic(n) => write!(f, "C{n}"),
        GroupExpr::Dihedral(n) => write!(f, "D{n}"),
        GroupExpr::Dicyclic(n) => write!(f, "Q{n}"),
        GroupExpr::Ttilde => f.write_str("Ttilde"),
        GroupExpr::Otilde => f.write_str("Otilde"),
        GroupExpr::Itilde => f.write_str("Itilde"),
        GroupExpr::Sl2(q) => write!(f, "SL(2,{q})"),
        GroupExpr::Product(parts) => {
            if nested {
                f.write_str("(")?;
            }
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    f.write_str(" x ")?;
                }
                write_term(f, p, true)?;
            }
            if nested {
                f.write_str(")")?;
            }
            Ok(())
        }
        GroupExpr::Semidirect {
            modulus,
            rank,
            acting,
            matrix,
        } => {
            write!(f, "sd(C{modulus}")?;
            if *rank != 1 {
                write!(f, "^{rank}")?;
            }
            write!(f, ", C{acting}, [")?;
            for (i, row) in matrix.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                write!(f, "[{}]", cells.join(","))?;
            }
            f.write_str("])")
        }
        GroupExpr::RawPerm { degree, generators } => {
            write!(f, "perm({degree}; ")?;
            for (i, g) in generators.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if g.is_empty() {
                    f.write_str("()")?;
                }
                for c in g {
                    let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                    write!(f, "({})", pts.join(" "))?;
                }
            }
            f.write_str(")")
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, false)
    }
}

impl FromStr for GroupExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(&'static str),
    Int(u64),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

/// Longer words first so that prefixes do not shadow them.
const WORDS: [&str; 10] = [
    "Ttilde", "Otilde", "Itilde", "perm", "SL", "sd", "x", "C", "D", "Q",
];

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = input[start..i]
                .parse()
                .map_err(|_| ParseError::new(input, start, "integer out of range"))?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let word = WORDS
                .iter()
                .find(|w| input[i..].starts_with(**w))
                .ok_or_else(|| ParseError::new(input, i, "unknown group name"))?;
            out.push((Tok::Word(word), i));
            i += word.len();
        } else if b"()[],;^-".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = input[i..].chars().next().unwrap();
            return Err(ParseError::new(
                input,
                i,
                format!("unexpected character '{ch}'"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.input.len(), |&(_, o)| o)
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.input, at, msg))
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(self.offset(), format!("expected {wanted}, found {t}")),
            None => self.err(
                self.offset(),
                format!("expected {wanted}, found end of input"),
            ),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Word(WORDS.iter().find(|x| **x == w).unwrap())) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&format!("'{w}'"))
        }
    }

    /// An integer and its offset.
    fn int(&mut self) -> Result<(u64, usize), ParseError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                let at = self.offset();
                self.pos += 1;
                Ok((n, at))
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let at = self.offset();
        let neg = self.eat_sym('-');
        let (n, _) = self.int()?;
        let n = i64::try_from(n).or_else(|_| self.err(at, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(&Tok::Word("x")) {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            GroupExpr::Product(parts)
        })
    }

    fn term(&mut self) -> Result<GroupExpr, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return self.unexpected("a group");
        };
        self.pos += 1;
        match tok {
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Word("C") => {
                let (n, at) = self.int()?;
                if n == 0 {
                    return self.err(at, "cyclic group order must be at least 1");
                }
                Ok(GroupExpr::Cyclic(n))
            }
            Tok::Word("D") => {
                let (n, at) = self.int()?;
                if n < 2 || n % 2 == 1 {
                    return self.err(
                        at,
                        format!("dihedral order {n} must be even and at least 2"),
                    );
                }
                Ok(GroupExpr::Dihedral(n))
            }
            Tok::Word("Q") => {
                let (n, at) = self.int()?;
                if n % 4 != 0 {
                    return self.err(at, format!("dicyclic order {n} is not a multiple of 4"));
                }
                if n < 8 {
                    return self.err(
                        at,
                        format!("dicyclic order {n} is below 8 (n >= 2 required)"),
                    );
                }
                Ok(GroupExpr::Dicyclic(n))
            }
            Tok::Word("Ttilde") => Ok(GroupExpr::Ttilde),
            Tok::Word("Otilde") => Ok(GroupExpr::Otilde),
            Tok::Word("Itilde") => Ok(GroupExpr::Itilde),
            Tok::Word("SL") => {
                self.expect_sym('(')?;
                let (two, at2) = self.int()?;
                if two != 2 {
                    return self.err(at2, "only SL(2,q) is supported");
                }
                self.expect_sym(',')?;
                let (q, atq) = self.int()?;
                if ![3, 5, 9].contains(&q) {
                    return self.err(
                        atq,
                        format!("SL(2,{q}) is not available; q must be 3, 5 or 9"),
                    );
                }
                self.expect_sym(')')?;
                Ok(GroupExpr::Sl2(q))
            }
            Tok::Word("sd") => self.semidirect(),
            Tok::Word("perm") => self.perm(),
            _ => self.err(at, format!("expected a group, found {tok}")),
        }
    }

    fn semidirect(&mut self) -> Result<GroupExpr, ParseError> {
        self.expect_sym('(')?;
        self.expect_word("C")?;
        let (modulus, at) = self.int()?;
        if modulus < 2 {
            return self.err(at, "base modulus must be at least 2");
        }
        let rank = if self.eat_sym('^') {
            let (k, at) = self.int()?;
            if k == 0 || k > 8 {
                return self.err(at, "base rank must be between 1 and 8");
            }
            k as u32
        } else {
            1
        };
        self.expect_sym(',')?;
        self.expect_word("C")?;
        let (acting, at) = self.int()?;
        if acting == 0 {
            return self.err(at, "acting group order must be at least 1");
        }
        self.expect_sym(',')?;
        let at = self.offset();
        self.expect_sym('[')?;
        let mut matrix = Vec::new();
        loop {
            self.expect_sym('[')?;
            let mut row = vec![self.signed()?];
            while self.eat_sym(',') {
                row.push(self.signed()?);
            }
            self.expect_sym(']')?;
            matrix.push(row);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        let k = rank as usize;
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return self.err(at, format!("action matrix must be {k}x{k}"));
        }
        self.expect_sym(')')?;
        Ok(GroupExpr::Semidirect {
            modulus,
            rank,
            acting,
            matrix,
        })
    }

    fn perm(&mut self) -> Result<GroupExpr, ParseError> {
        self.expect_sym('(')?;
        let (degree, at) = self.int()?;
        if degree == 0 {
            return self.err(at, "degree must be at least 1");
        }
        let degree = degree as usize;
        self.expect_sym(';')?;
        let mut generators = Vec::new();
        loop {
            generators.push(self.generator(degree)?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        Ok(GroupExpr::RawPerm { degree, generators })
    }

    /// One generator: `()` or a run of cycles.
    fn generator(&mut self, degree: usize) -> Result<Vec<Vec<usize>>, ParseError> {
        let mut cycles = Vec::new();
        let mut used = vec![false; degree + 1];
        let start = self.offset();
        if self.peek() != Some(&Tok::Sym('(')) {
            return self.unexpected("a cycle");
        }
        while self.eat_sym('(') {
            if self.eat_sym(')') {
                if cycles.is_empty() && self.peek() != Some(&Tok::Sym('(')) {
                    return Ok(cycles);
                }
                return self.err(start, "empty cycle");
            }
            let mut cycle = Vec::new();
            while !self.eat_sym(')') {
                let (x, at) = self.int()?;
                let x = x as usize;
                if x == 0 || x > degree {
                    return self.err(at, format!("point {x} is outside 1..={degree}"));
                }
                if used[x] {
                    return self.err(at, format!("point {x} appears twice in one generator"));
                }
                used[x] = true;
                cycle.push(x);
                self.eat_sym(',');
            }
            // 1-cycles are identities; keep them so formatting round-trips
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}

/// Parses a group expression.
pub fn parse(input: &str) -> Result<GroupExpr, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        input,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.unexpected("'x' or end of input");
    }
    Ok(e)
}
