use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{Letter, RatExpr};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Largest finite coefficient `power` will spell out as repetition.
const MAX_REPEAT: u64 = 1 << 16;

impl RatExpr {
    /// Ordinal length of the word.
    pub fn length(&self) -> Ordinal {
        match self {
            RatExpr::Letter(_) => Ordinal::one(),
            RatExpr::Concat(cs) => cs
                .iter()
                .fold(Ordinal::zero(), |acc, c| acc.add(&c.length())),
            RatExpr::Omega(b) => b.length().mul(&Ordinal::omega()),
        }
    }

    /// The word `self^alpha`. Fails when `alpha` is zero.
    pub fn power(&self, alpha: &Ordinal) -> Result<RatExpr> {
        if alpha.is_zero() {
            return Err(Error::EmptyWord);
        }
        let mut parts = Vec::new();
        for t in alpha.terms() {
            let mut base = self.clone();
            for _ in 0..t.exponent {
                base = RatExpr::omega(base);
            }
            let reps = t
                .coefficient
                .to_u64()
                .filter(|&c| c <= MAX_REPEAT)
                .ok_or_else(|| Error::ExponentTooLarge(alpha.to_string()))?;
            for _ in 0..reps {
                parts.push(base.clone());
            }
        }
        RatExpr::concat(parts)
    }

    /// The letter at position `gamma`.
    pub fn letter_at(&self, gamma: &Ordinal) -> Result<Letter> {
        match self {
            RatExpr::Letter(l) if gamma.is_zero() => Ok(*l),
            RatExpr::Letter(_) => Err(Error::OutOfRange),
            RatExpr::Concat(cs) => {
                let mut rest = gamma.clone();
                for c in cs {
                    let len = c.length();
                    if rest < len {
                        return c.letter_at(&rest);
                    }
                    rest = len.sub_left(&rest)?;
                }
                Err(Error::OutOfRange)
            }
            RatExpr::Omega(b) => {
                let (_, r) = gamma.div_left(&b.length())?;
                b.letter_at(&r)
            }
        }
    }

    /// The prefix of length `gamma`, for `0 < gamma ≤ |self|`.
    pub fn prefix_to(&self, gamma: &Ordinal) -> Result<RatExpr> {
        if gamma.is_zero() {
            return Err(Error::EmptyWord);
        }
        if *gamma > self.length() {
            return Err(Error::OutOfRange);
        }
        take(self, gamma).map(|e| e.expect("non-empty prefix"))
    }

    /// The suffix starting at position `gamma`, for `gamma < |self|`.
    pub fn suffix_from(&self, gamma: &Ordinal) -> Result<RatExpr> {
        let len = self.length();
        if *gamma == len {
            return Err(Error::EmptyWord);
        }
        if *gamma > len {
            return Err(Error::OutOfRange);
        }
        drop_prefix(self, gamma).map(|e| e.expect("non-empty suffix"))
    }
}

fn take(e: &RatExpr, gamma: &Ordinal) -> Result<Option<RatExpr>> {
    if gamma.is_zero() {
        return Ok(None);
    }
    let len = e.length();
    if *gamma >= len {
        return Ok(Some(e.clone()));
    }
    match e {
        RatExpr::Letter(_) => unreachable!("a letter has length one"),
        RatExpr::Concat(cs) => {
            let mut parts = Vec::new();
            let mut rest = gamma.clone();
            for c in cs {
                let l = c.length();
                if rest >= l {
                    parts.push(c.clone());
                    rest = l.sub_left(&rest)?;
                } else {
                    parts.extend(take(c, &rest)?);
                    break;
                }
            }
            Ok(Some(RatExpr::concat(parts)?))
        }
        RatExpr::Omega(b) => {
            let (q, r) = gamma.div_left(&b.length())?;
            let mut parts = Vec::new();
            if !q.is_zero() {
                parts.push(b.power(&q)?);
            }
            parts.extend(take(b, &r)?);
            Ok(Some(RatExpr::concat(parts)?))
        }
    }
}

fn drop_prefix(e: &RatExpr, gamma: &Ordinal) -> Result<Option<RatExpr>> {
    if gamma.is_zero() {
        return Ok(Some(e.clone()));
    }
    match e {
        RatExpr::Letter(_) => Ok(None),
        RatExpr::Concat(cs) => {
            let mut rest = gamma.clone();
            for (idx, c) in cs.iter().enumerate() {
                let l = c.length();
                if rest >= l {
                    rest = l.sub_left(&rest)?;
                    continue;
                }
                let mut parts: Vec<RatExpr> = drop_prefix(c, &rest)?.into_iter().collect();
                parts.extend(cs[idx + 1..].iter().cloned());
                return Ok(Some(RatExpr::concat(parts)?));
            }
            Ok(None)
        }
        RatExpr::Omega(b) => {
            let (_, r) = gamma.div_left(&b.length())?;
            if r.is_zero() {
                return Ok(Some(e.clone()));
            }
            let head = drop_prefix(b, &r)?.expect("remainder below body length");
            Ok(Some(head.then(e)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word_equal;
    use alloc::string::ToString;

    fn p(s: &str) -> RatExpr {
        s.parse().unwrap()
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(p("(a^wb^wb)^w(ab)^w").length(), o("w^2+w"));
        assert_eq!(p("(a^wb)^wa^w").length(), o("w^2+w"));
        assert_eq!(p("a").length(), o("1"));
        assert_eq!(p("a^wb").length(), o("w+1"));
    }

    #[test]
    fn powers() {
        assert_eq!(p("ab").power(&o("w")).unwrap(), p("(ab)^w"));
        assert_eq!(p("a").power(&o("w^2")).unwrap(), p("(a^w)^w"));
        assert_eq!(p("b").power(&o("3")).unwrap(), p("bbb"));
        assert_eq!(p("ab").power(&o("w+2")).unwrap(), p("(ab)^wabab"));
        assert_eq!(p("a").power(&Ordinal::zero()), Err(Error::EmptyWord));
    }

    #[test]
    fn letters() {
        let x = p("(ab)^w(bc)^w");
        assert_eq!(x.letter_at(&o("w")).unwrap(), Letter(1));
        assert_eq!(x.letter_at(&o("w+1")).unwrap(), Letter(2));
        assert_eq!(x.letter_at(&o("5")).unwrap(), Letter(1));
        assert_eq!(p("bba").letter_at(&o("2")).unwrap(), Letter(0));
        assert_eq!(p("a^wb").letter_at(&o("w")).unwrap(), Letter(1));
        assert_eq!(p("a^wb").letter_at(&o("w+1")), Err(Error::OutOfRange));
    }

    #[test]
    fn slicing() {
        let x = p("(ab)^w(bc)^w");
        assert!(word_equal(&x.suffix_from(&o("4")).unwrap(), &x));
        assert_eq!(x.prefix_to(&o("w")).unwrap(), p("(ab)^w"));
        assert!(word_equal(&x.suffix_from(&o("w")).unwrap(), &p("(bc)^w")));
        assert_eq!(p("bba").suffix_from(&o("2")).unwrap(), p("a"));
        assert_eq!(p("bba").suffix_from(&o("3")), Err(Error::EmptyWord));
        assert_eq!(p("bba").prefix_to(&o("4")), Err(Error::OutOfRange));
        let y = p("(a^wb)^wa^w");
        let pre = y.prefix_to(&o("w*2")).unwrap();
        assert_eq!(pre.to_string(), "a^wba^w");
        assert!(word_equal(
            &pre.then(&y.suffix_from(&o("w*2")).unwrap()),
            &y
        ));
        assert_eq!(y.prefix_to(&o("w*2+1")).unwrap().to_string(), "a^wba^wb");
    }
}
