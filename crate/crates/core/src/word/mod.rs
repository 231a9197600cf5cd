//! Rational transfinite words: letters, alphabets and expression trees.

mod compare;
mod parse;
mod slice;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

pub use compare::{compare, lex_cmp, word_equal, CompareOutcome};

use crate::error::{Error, Result};

/// A letter, identified by its rank in the alphabet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

/// An ordered alphabet. Word comparison uses the order of `letters`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Default for Alphabet {
    /// Lowercase ASCII letters in their natural order.
    fn default() -> Self {
        Alphabet {
            letters: ('a'..='z').collect(),
        }
    }
}

impl Alphabet {
    /// An alphabet ordered as the symbols appear in `symbols`.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = symbols.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::Precondition("alphabet must not be empty"));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::Precondition("alphabet symbols must be distinct"));
            }
            if matches!(c, '(' | ')' | '^' | '|' | '‖' | 'ω') || c.is_whitespace() {
                return Err(Error::Precondition(
                    "alphabet symbol is reserved by the grammar",
                ));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.letters
            .iter()
            .position(|&x| x == c)
            .map(|i| Letter(i as u32))
    }

    pub fn symbol(&self, l: Letter) -> Option<char> {
        self.letters.get(l.0 as usize).copied()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.letters
    }
}

/// Expression tree of a non-empty rational word.
///
/// Trees built through [`RatExpr::concat`] are flattened: a `Concat` never
/// has a `Concat` child and always has at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RatExpr {
    Letter(Letter),
    Concat(Vec<RatExpr>),
    Omega(Box<RatExpr>),
}

impl RatExpr {
    pub fn letter(l: Letter) -> Self {
        RatExpr::Letter(l)
    }

    pub fn omega(body: RatExpr) -> Self {
        RatExpr::Omega(Box::new(body))
    }

    /// Concatenation of `parts`, flattened. Fails on an empty iterator.
    pub fn concat(parts: impl IntoIterator<Item = RatExpr>) -> Result<Self> {
        let mut children = Vec::new();
        for p in parts {
            match p {
                RatExpr::Concat(inner) => children.extend(inner),
                other => children.push(other),
            }
        }
        match children.len() {
            0 => Err(Error::EmptyWord),
            1 => Ok(children.pop().unwrap()),
            _ => Ok(RatExpr::Concat(children)),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &RatExpr) -> RatExpr {
        RatExpr::concat([self.clone(), other.clone()]).expect("two non-empty parts")
    }

    /// A finite word spelled by `letters`.
    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        RatExpr::concat(letters.iter().map(|&l| RatExpr::Letter(l)))
    }

    /// Re-flattens a tree that may have been built by hand.
    pub fn normalize(&self) -> RatExpr {
        match self {
            RatExpr::Letter(_) => self.clone(),
            RatExpr::Omega(b) => RatExpr::omega(b.normalize()),
            RatExpr::Concat(cs) => {
                RatExpr::concat(cs.iter().map(RatExpr::normalize)).unwrap_or_else(|_| self.clone())
            }
        }
    }

    /// The letters of the word when it is finite.
    pub fn finite_letters(&self) -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        fn walk(e: &RatExpr, out: &mut Vec<Letter>) -> bool {
            match e {
                RatExpr::Letter(l) => {
                    out.push(*l);
                    true
                }
                RatExpr::Concat(cs) => cs.iter().all(|c| walk(c, out)),
                RatExpr::Omega(_) => false,
            }
        }
        walk(self, &mut out).then_some(out)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RatExpr::Letter(_) => true,
            RatExpr::Concat(cs) => cs.iter().all(RatExpr::is_finite),
            RatExpr::Omega(_) => false,
        }
    }

    /// The first letter of the word.
    pub fn first_letter(&self) -> Letter {
        match self {
            RatExpr::Letter(l) => *l,
            RatExpr::Concat(cs) => cs[0].first_letter(),
            RatExpr::Omega(b) => b.first_letter(),
        }
    }

    /// Renders the expression with the given alphabet.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ExprDisplay<'a> {
        ExprDisplay {
            expr: self,
            alphabet,
        }
    }

    /// Parses an expression over `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<RatExpr> {
        parse::parse_expr(text, alphabet)
    }
}

impl core::str::FromStr for RatExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RatExpr::parse(s, &Alphabet::default())
    }
}

/// Display adapter returned by [`RatExpr::display`].
pub struct ExprDisplay<'a> {
    expr: &'a RatExpr,
    alphabet: &'a Alphabet,
}

pub(crate) fn write_letter(f: &mut impl fmt::Write, alphabet: &Alphabet, l: Letter) -> fmt::Result {
    match alphabet.symbol(l) {
        Some(c) => f.write_char(c),
        None => write!(f, "<{}>", l.0),
    }
}

fn write_expr(f: &mut impl fmt::Write, alphabet: &Alphabet, e: &RatExpr) -> fmt::Result {
    match e {
        RatExpr::Letter(l) => write_letter(f, alphabet, *l),
        RatExpr::Concat(cs) => cs.iter().try_for_each(|c| write_expr(f, alphabet, c)),
        RatExpr::Omega(body) => {
            if matches!(**body, RatExpr::Letter(_)) {
                write_expr(f, alphabet, body)?;
            } else {
                f.write_char('(')?;
                write_expr(f, alphabet, body)?;
                f.write_char(')')?;
            }
            f.write_str("^w")
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self.alphabet, self.expr)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, &Alphabet::default(), self)
    }
}
