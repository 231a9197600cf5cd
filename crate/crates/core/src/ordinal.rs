//! Countable ordinals below ω^ω in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^k1·c1 + … + ω^km·cm` with strictly
//! decreasing exponents and positive coefficients. Exponents are machine
//! integers; coefficients are arbitrary precision.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One `ω^exponent · coefficient` summand of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: u32,
    pub coefficient: BigUint,
}

impl Term {
    pub fn new(exponent: u32, coefficient: impl Into<BigUint>) -> Self {
        Term {
            exponent,
            coefficient: coefficient.into(),
        }
    }
}

/// An ordinal strictly below ω^ω.
///
/// The term list is kept canonical, so structural equality is ordinal
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Coarse shape of an ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

/// Result of [`Ordinal::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: OrdinalKind,
    /// `true` iff the ordinal is `ω^k` for some `k ≥ 0` (so `1` counts).
    pub is_power_of_omega: bool,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// `ω^k`.
    pub fn omega_pow(k: u32) -> Self {
        Ordinal {
            terms: alloc::vec![Term::new(k, 1u32)],
        }
    }

    /// `ω^k · c`.
    pub fn monomial(k: u32, c: impl Into<BigUint>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: alloc::vec![Term {
                exponent: k,
                coefficient: c
            }],
        }
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        Self::monomial(0, n)
    }

    /// Builds an ordinal from terms, rejecting non-canonical input.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].exponent <= w[1].exponent {
                return Err(Error::Precondition("exponents must strictly decrease"));
            }
        }
        if terms.iter().any(|t| t.coefficient.is_zero()) {
            return Err(Error::Precondition("coefficients must be positive"));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent == 0)
    }

    /// The value as a machine integer, when finite and small enough.
    pub fn to_u64(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent == 0 => t.coefficient.to_u64(),
            _ => None,
        }
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn classify(&self) -> Classification {
        let kind = match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent == 0 => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        };
        let is_power_of_omega = self.terms.len() == 1 && self.terms[0].coefficient.is_one();
        Classification {
            kind,
            is_power_of_omega,
        }
    }

    /// Ordinal sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > head.exponent)
            .cloned()
            .collect();
        match self.terms.get(terms.len()) {
            Some(t) if t.exponent == head.exponent => {
                terms.push(Term {
                    exponent: head.exponent,
                    coefficient: &t.coefficient + &head.coefficient,
                });
                terms.extend(rhs.terms[1..].iter().cloned());
            }
            _ => terms.extend(rhs.terms.iter().cloned()),
        }
        Ordinal { terms }
    }

    /// Ordinal product `self · rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut acc = Ordinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent > 0 {
                Ordinal::monomial(lead.exponent + t.exponent, t.coefficient.clone())
            } else {
                let mut terms = self.terms.clone();
                terms[0].coefficient = &lead.coefficient * &t.coefficient;
                Ordinal { terms }
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// The unique `δ` with `self + δ = larger`.
    pub fn sub_left(&self, larger: &Ordinal) -> Result<Ordinal> {
        for (i, big) in larger.terms.iter().enumerate() {
            let Some(small) = self.terms.get(i) else {
                return Ok(Ordinal {
                    terms: larger.terms[i..].to_vec(),
                });
            };
            if small == big {
                continue;
            }
            if big.exponent > small.exponent {
                return Ok(Ordinal {
                    terms: larger.terms[i..].to_vec(),
                });
            }
            if big.exponent == small.exponent && big.coefficient > small.coefficient {
                let mut terms = Vec::with_capacity(larger.terms.len() - i);
                terms.push(Term {
                    exponent: big.exponent,
                    coefficient: &big.coefficient - &small.coefficient,
                });
                terms.extend(larger.terms[i + 1..].iter().cloned());
                return Ok(Ordinal { terms });
            }
            return Err(Error::Underflow);
        }
        if self.terms.len() > larger.terms.len() {
            Err(Error::Underflow)
        } else {
            Ok(Ordinal::zero())
        }
    }

    /// Left division: returns `(α, ρ)` with `self = divisor·α + ρ` and
    /// `ρ < divisor`.
    pub fn div_left(&self, divisor: &Ordinal) -> Result<(Ordinal, Ordinal)> {
        let Some(dlead) = divisor.terms.first() else {
            return Err(Error::DivisionByZero);
        };
        let m = dlead.exponent;
        let split = self.terms.iter().take_while(|t| t.exponent > m).count();
        let mut quotient: Vec<Term> = self.terms[..split]
            .iter()
            .map(|t| Term {
                exponent: t.exponent - m,
                coefficient: t.coefficient.clone(),
            })
            .collect();
        let low = Ordinal {
            terms: self.terms[split..].to_vec(),
        };
        let mut finite = BigUint::zero();
        if let Some(t) = low.terms.first() {
            if t.exponent == m {
                finite = t.coefficient.div_floor(&dlead.coefficient);
                if divisor.mul(&Ordinal::finite(finite.clone())) > low {
                    finite -= 1u32;
                }
            }
        }
        let used = divisor.mul(&Ordinal::finite(finite.clone()));
        let remainder = used.sub_left(&low)?;
        if !finite.is_zero() {
            quotient.push(Term {
                exponent: 0,
                coefficient: finite,
            });
        }
        Ok((Ordinal { terms: quotient }, remainder))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl core::ops::Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl core::ops::Mul for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::mul(self, rhs)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (t.exponent, t.coefficient.is_one()) {
                (0, _) => write!(f, "{}", t.coefficient)?,
                (1, true) => f.write_str("w")?,
                (1, false) => write!(f, "w*{}", t.coefficient)?,
                (k, true) => write!(f, "w^{k}")?,
                (k, false) => write!(f, "w^{k}*{}", t.coefficient)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        OrdinalParser { text, pos: 0 }.parse()
    }
}

struct OrdinalParser<'a> {
    text: &'a str,
    pos: usize,
}

impl OrdinalParser<'_> {
    fn err(&self, message: &'static str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.eat('w') || self.eat('ω')
    }

    fn number(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a decimal number"));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn coefficient(&mut self) -> Result<BigUint> {
        let start = self.pos;
        let digits = self.number()?;
        let c: BigUint = digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "bad number",
        })?;
        if c.is_zero() {
            return Err(Error::Syntax {
                offset: start,
                message: "coefficients must be at least 1",
            });
        }
        Ok(c)
    }

    fn term(&mut self) -> Result<Term> {
        if self.eat_omega() {
            let exponent = if self.eat('^') {
                let start = self.pos;
                self.number()?.parse::<u32>().map_err(|_| Error::Syntax {
                    offset: start,
                    message: "exponent too large",
                })?
            } else {
                1
            };
            let coefficient = if self.eat('*') {
                self.coefficient()?
            } else {
                BigUint::one()
            };
            Ok(Term {
                exponent,
                coefficient,
            })
        } else {
            Ok(Term {
                exponent: 0,
                coefficient: self.coefficient()?,
            })
        }
    }

    fn parse(mut self) -> Result<Ordinal> {
        self.skip_ws();
        if self.text[self.pos..].trim() == "0" {
            return Ok(Ordinal::zero());
        }
        let mut terms: Vec<Term> = Vec::new();
        loop {
            let start = self.pos;
            let term = self.term()?;
            if let Some(prev) = terms.last() {
                if prev.exponent <= term.exponent {
                    return Err(Error::Syntax {
                        offset: start,
                        message: "exponents must strictly decrease",
                    });
                }
            }
            terms.push(term);
            if !self.eat('+') {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(Ordinal { terms })
    }
}
