use alloc::vec::Vec;

use super::{Alphabet, RatExpr};
use crate::error::{Error, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

pub(super) fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<RatExpr> {
    let mut p = Parser {
        text,
        pos: 0,
        alphabet,
    };
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(')') => Err(p.err("unbalanced ')'")),
        Some(_) => Err(p.err("unexpected character")),
    }
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message,
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expr(&mut self) -> Result<RatExpr> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => terms.push(self.term()?),
            }
        }
        if terms.is_empty() {
            return Err(self.err("expected a letter or '('"));
        }
        RatExpr::concat(terms)
    }

    fn term(&mut self) -> Result<RatExpr> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            match self.peek() {
                Some('w') | Some('ω') => self.bump(),
                _ => return Err(self.err("expected 'w' after '^'")),
            }
            Ok(RatExpr::omega(atom))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<RatExpr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some('^') => Err(self.err("'^w' must follow a letter or a parenthesized group")),
            Some(c) => match self.alphabet.letter(c) {
                Some(l) => {
                    self.bump();
                    Ok(RatExpr::Letter(l))
                }
                None => Err(Error::UnknownLetter(c)),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}
