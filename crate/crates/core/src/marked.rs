//! The duplicated expression with its cut states written in.
//!
//! A main state is shown as `‖` (ASCII `||`), a secondary one as `|`. The
//! marker of state `s` sits right after the token entering `s`, so it falls
//! before any group opening there and inside a group whose ω closes next.
//! A single-letter ω-body whose end state is marked gets parentheses.

use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::factorizer::StateSets;
use crate::word::{write_letter, Alphabet, RatExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MarkerStyle {
    #[default]
    Unicode,
    Ascii,
}

impl MarkerStyle {
    fn main(self) -> &'static str {
        match self {
            MarkerStyle::Unicode => "‖",
            MarkerStyle::Ascii => "||",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedExpression {
    pub expr: RatExpr,
    pub main: BTreeSet<usize>,
    pub secondary: BTreeSet<usize>,
}

struct Writer<'a> {
    out: String,
    count: usize,
    marks: &'a MarkedExpression,
    alphabet: &'a Alphabet,
    style: MarkerStyle,
}

impl Writer<'_> {
    fn mark(&mut self) {
        if self.marks.main.contains(&self.count) {
            self.out.push_str(self.style.main());
        } else if self.marks.secondary.contains(&self.count) {
            self.out.push('|');
        }
    }

    fn marked(&self, s: usize) -> bool {
        self.marks.main.contains(&s) || self.marks.secondary.contains(&s)
    }

    fn emit(&mut self, e: &RatExpr) {
        match e {
            RatExpr::Letter(l) => {
                write_letter(&mut self.out, self.alphabet, *l).expect("writing to a string");
                self.count += 1;
                self.mark();
            }
            RatExpr::Concat(cs) => cs.iter().for_each(|c| self.emit(c)),
            RatExpr::Omega(body) => {
                let bare = matches!(**body, RatExpr::Letter(_)) && !self.marked(self.count + 1);
                if !bare {
                    self.out.push('(');
                }
                self.emit(body);
                if !bare {
                    self.out.push(')');
                }
                self.out.push_str("^w");
                self.count += 1;
                self.mark();
            }
        }
    }
}

impl MarkedExpression {
    pub fn new(expr: RatExpr, main: BTreeSet<usize>, secondary: BTreeSet<usize>) -> Self {
        MarkedExpression {
            expr,
            main,
            secondary,
        }
    }

    pub fn from_states(sets: &StateSets) -> Self {
        Self::new(
            sets.duplicated.clone(),
            sets.q_main.clone(),
            sets.q_secondary.clone(),
        )
    }

    pub fn render(&self, alphabet: &Alphabet, style: MarkerStyle) -> String {
        let mut w = Writer {
            out: String::new(),
            count: 0,
            marks: self,
            alphabet,
            style,
        };
        w.mark();
        w.emit(&self.expr);
        w.out
    }

    /// Reads a rendered marked expression back. Either marker style is
    /// accepted.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut plain = String::with_capacity(text.len());
        let mut main = BTreeSet::new();
        let mut secondary = BTreeSet::new();
        let mut tokens = 0usize;
        let mut chars = text.char_indices().peekable();
        let mut after_caret = false;
        while let Some((offset, c)) = chars.next() {
            let is_main = match c {
                '‖' => Some(true),
                '|' if chars.peek().map(|&(_, d)| d) == Some('|') => {
                    chars.next();
                    Some(true)
                }
                '|' => Some(false),
                _ => None,
            };
            if let Some(is_main) = is_main {
                if main.contains(&tokens) || secondary.contains(&tokens) {
                    return Err(Error::Syntax {
                        offset,
                        message: "two markers for one state",
                    });
                }
                if is_main {
                    main.insert(tokens);
                } else {
                    secondary.insert(tokens);
                }
                continue;
            }
            plain.push(c);
            if after_caret && !c.is_whitespace() {
                after_caret = false;
                tokens += 1;
            } else if c == '^' {
                after_caret = true;
            } else if alphabet.letter(c).is_some() {
                tokens += 1;
            }
        }
        let expr = RatExpr::parse(&plain, alphabet)?;
        let m = MarkedExpression::new(expr, main, secondary);
        let n = crate::duplication::size(&m.expr);
        if m.main.iter().chain(&m.secondary).any(|&s| s > n) {
            return Err(Error::OutOfRange);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::{factorize_states, Options};

    fn render(s: &str, style: MarkerStyle) -> String {
        let sets = factorize_states(&s.parse().unwrap(), Options::default()).unwrap();
        MarkedExpression::from_states(&sets).render(&Alphabet::default(), style)
    }

    #[test]
    fn rendering() {
        assert_eq!(render("(bba)^w", MarkerStyle::Unicode), "‖b|b‖a(bb|a)^w‖");
        assert_eq!(render("(bba)^w", MarkerStyle::Ascii), "||b|b||a(bb|a)^w||");
        assert_eq!(render("a", MarkerStyle::Unicode), "‖a‖");
        assert_eq!(render("abaab", MarkerStyle::Unicode), "‖ab‖aab‖");
    }

    #[test]
    fn single_letter_body_gets_parentheses() {
        let m = MarkedExpression::new(
            "aa^w".parse().unwrap(),
            BTreeSet::from([0, 3]),
            BTreeSet::from([1, 2]),
        );
        assert_eq!(
            m.render(&Alphabet::default(), MarkerStyle::Unicode),
            "‖a|(a|)^w‖"
        );
    }

    #[test]
    fn round_trip() {
        for s in ["(bba)^w", "(a^wb)^wa^w", "abaab", "((ab)^wc)^w"] {
            let sets = factorize_states(&s.parse().unwrap(), Options::default()).unwrap();
            let m = MarkedExpression::from_states(&sets);
            for style in [MarkerStyle::Unicode, MarkerStyle::Ascii] {
                let text = m.render(&Alphabet::default(), style);
                assert_eq!(
                    MarkedExpression::parse(&text, &Alphabet::default()).unwrap(),
                    m
                );
            }
        }
    }

    #[test]
    fn parse_errors() {
        let alpha = Alphabet::default();
        assert!(MarkedExpression::parse("a|‖b", &alpha).is_err());
        assert!(MarkedExpression::parse("a(|", &alpha).is_err());
    }
}
