use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::ordinal::Ordinal;
use crate::word::{word_equal, Alphabet, RatExpr};

/// One prime power `prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub prime: RatExpr,
    pub exponent: Ordinal,
}

impl Factor {
    pub fn new(prime: RatExpr, exponent: Ordinal) -> Self {
        Factor { prime, exponent }
    }

    /// The word `prime^exponent`.
    pub fn expand(&self) -> Result<RatExpr> {
        self.prime.power(&self.exponent)
    }
}

/// A finite sequence of prime powers whose product is a word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn new(factors: Vec<Factor>) -> Self {
        Factorization { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product of all prime powers.
    pub fn product(&self) -> Result<RatExpr> {
        let parts = self
            .factors
            .iter()
            .map(Factor::expand)
            .collect::<Result<Vec<_>>>()?;
        RatExpr::concat(parts)
    }

    /// Same primes as words and same exponents, block by block.
    pub fn equivalent(&self, other: &Factorization) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.exponent == b.exponent && word_equal(&a.prime, &b.prime))
    }

    /// Renders as `u^[α] * v^[β]`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> FactorizationDisplay<'a> {
        FactorizationDisplay { f: self, alphabet }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        use alloc::string::ToString;
        self.display(alphabet).to_string()
    }
}

pub struct FactorizationDisplay<'a> {
    f: &'a Factorization,
    alphabet: &'a Alphabet,
}

impl fmt::Display for FactorizationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, factor) in self.f.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str(" * ")?;
            }
            let prime = factor.prime.display(self.alphabet);
            if matches!(factor.prime, RatExpr::Letter(_)) {
                write!(f, "{prime}")?;
            } else {
                write!(f, "({prime})")?;
            }
            write!(f, "^[{}]", factor.exponent)?;
        }
        Ok(())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&Alphabet::default()).fmt(f)
    }
}
