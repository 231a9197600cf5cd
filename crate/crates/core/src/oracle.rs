//! Independent predicates and baseline algorithms: Duval's algorithm and
//! exhaustive search on finite words, primality and primitivity of
//! rational words, and a validity check for factorizations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::automaton::Automaton;
use crate::duplication::tau;
use crate::error::{Error, Result};
use crate::factorization::{Factor, Factorization};
use crate::ordinal::{Ordinal, Term};
use crate::word::{compare, lex_cmp, word_equal, CompareOutcome, Letter, RatExpr};

/// Longest finite word accepted by [`brute_force_factorize`].
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Duval's algorithm: the non-increasing sequence of Lyndon factors.
pub fn duval_factorize(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let n = w.len();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(w[i..i + j - k].to_vec());
            i += j - k;
        }
    }
    out
}

/// `true` iff `w` is strictly smaller than each of its proper suffixes.
pub fn is_prime_finite(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|s| w < &w[s..])
}

/// Exhaustive search over all non-increasing factorizations into primes.
/// Fails unless exactly one exists.
pub fn brute_force_factorize(w: &[Letter]) -> Result<Vec<Vec<Letter>>> {
    if w.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::Precondition("word too long for exhaustive search"));
    }
    fn search<'a>(
        w: &'a [Letter],
        prev: Option<&'a [Letter]>,
        acc: &mut Vec<&'a [Letter]>,
        found: &mut Vec<Vec<Vec<Letter>>>,
    ) {
        if w.is_empty() {
            found.push(acc.iter().map(|f| f.to_vec()).collect());
            return;
        }
        for cut in 1..=w.len() {
            let head = &w[..cut];
            if prev.is_some_and(|p| head > p) || !is_prime_finite(head) {
                continue;
            }
            acc.push(head);
            search(&w[cut..], Some(head), acc, found);
            acc.pop();
        }
    }
    let mut found = Vec::new();
    search(w, None, &mut Vec::new(), &mut found);
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        k => Err(Error::Invariant(format!("{k} prime factorizations found"))),
    }
}

/// The longest prefix of `w` that is prime.
pub fn longest_prime_prefix_finite(w: &[Letter]) -> Vec<Letter> {
    (1..=w.len())
        .rev()
        .map(|l| &w[..l])
        .find(|p| is_prime_finite(p))
        .unwrap_or_default()
        .to_vec()
}

/// Groups a list of primes into prime powers.
pub fn group_factors(primes: &[Vec<Letter>]) -> Result<Factorization> {
    let mut out: Vec<Factor> = Vec::new();
    let mut idx = 0;
    while idx < primes.len() {
        let run = primes[idx..]
            .iter()
            .take_while(|p| **p == primes[idx])
            .count();
        out.push(Factor::new(
            RatExpr::from_letters(&primes[idx])?,
            Ordinal::finite(run as u64),
        ));
        idx += run;
    }
    Ok(Factorization::new(out))
}

/// Outcome of a primality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeVerdict {
    Prime,
    /// The suffix read from `state` of the compiled automaton is smaller
    /// than the word.
    SmallerSuffix {
        state: usize,
        suffix: RatExpr,
    },
    /// The word is `root^exponent` with `exponent ≥ 2`.
    NotPrimitive {
        root: RatExpr,
        exponent: Ordinal,
    },
}

/// Decides primality: the word is primitive and no proper suffix is
/// smaller than it.
pub fn prime_verdict(e: &RatExpr) -> PrimeVerdict {
    let a = Automaton::compile(e);
    for q in 1..a.last() {
        let suffix = a
            .suffix_word(q)
            .expect("state in range")
            .expect("proper suffix is non-empty");
        match compare(e, &suffix) {
            CompareOutcome::StrictlyLess { .. } | CompareOutcome::Equal => {}
            _ => return PrimeVerdict::SmallerSuffix { state: q, suffix },
        }
    }
    let (root, exponent) = primitive_root(e);
    if exponent == Ordinal::one() {
        PrimeVerdict::Prime
    } else {
        PrimeVerdict::NotPrimitive { root, exponent }
    }
}

pub fn is_prime_rational(e: &RatExpr) -> bool {
    prime_verdict(e) == PrimeVerdict::Prime
}

/// Some `(y, α)` with `α ≥ 2` and `y^α = e`, with `y` as short as the
/// candidate set allows.
fn proper_root(e: &RatExpr) -> Option<(RatExpr, Ordinal)> {
    let len = e.length();
    let mut best: Option<(RatExpr, Ordinal)> = None;
    let mut consider = |y: RatExpr, alpha: Ordinal| {
        let shorter = best.as_ref().is_none_or(|(b, _)| y.length() < b.length());
        if shorter && y.power(&alpha).is_ok_and(|p| word_equal(&p, e)) {
            best = Some((y, alpha));
        }
    };

    // Finite exponents: |e| = |y|·d forces d to divide the leading
    // coefficient, with the lower terms unchanged.
    let lead = &len.terms()[0];
    if let Some(c) = lead.coefficient.to_u64().filter(|&c| c <= 4096) {
        for d in (2..=c).rev().filter(|d| c % d == 0) {
            let mut terms = alloc::vec![Term::new(lead.exponent, c / d)];
            terms.extend(len.terms()[1..].iter().cloned());
            let mu = Ordinal::from_terms(terms).expect("canonical");
            if let Ok(y) = e.prefix_to(&mu) {
                consider(y, Ordinal::finite(d));
            }
        }
    }

    // Transfinite exponents: try the prefixes read up to the first visit
    // of each state, in the automaton of e and of its duplication.
    for a in [Automaton::compile(e), Automaton::compile(&tau(e))] {
        for s in 1..a.last() {
            let Ok((pos, y)) = a.first_visit_prefix(s) else {
                continue;
            };
            let Ok((alpha, rest)) = len.div_left(&pos) else {
                continue;
            };
            if rest.is_zero() && alpha > Ordinal::one() {
                consider(y, alpha);
            }
        }
    }
    best
}

/// The primitive word `y` and the exponent `α` with `y^α = e`.
pub fn primitive_root(e: &RatExpr) -> (RatExpr, Ordinal) {
    let mut root = e.clone();
    let mut exponent = Ordinal::one();
    while let Some((y, beta)) = proper_root(&root) {
        exponent = beta.mul(&exponent);
        root = y;
    }
    (root, exponent)
}

/// Lists the ways in which `f` fails to be the prime factorization of
/// `input`. Primality of the factors is tested when `check_primes` is set.
pub fn check_factorization(input: &RatExpr, f: &Factorization, check_primes: bool) -> Vec<String> {
    let mut problems = Vec::new();
    if f.is_empty() {
        problems.push("empty factorization".into());
        return problems;
    }
    for (idx, w) in f.factors.windows(2).enumerate() {
        if lex_cmp(&w[0].prime, &w[1].prime) != Ordering::Greater {
            problems.push(format!(
                "factors {idx} and {} are not strictly decreasing",
                idx + 1
            ));
        }
    }
    for (idx, factor) in f.factors.iter().enumerate() {
        if factor.exponent.is_zero() {
            problems.push(format!("factor {idx} has exponent 0"));
        }
        if check_primes && !is_prime_rational(&factor.prime) {
            problems.push(format!("factor {idx} ({}) is not prime", factor.prime));
        }
    }
    match f.product() {
        Ok(p) if word_equal(&p, input) => {}
        Ok(p) => problems.push(format!("product {p} differs from the input")),
        Err(e) => problems.push(format!("product cannot be formed: {e}")),
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| Letter((b - b'a') as u32)).collect()
    }

    fn p(s: &str) -> RatExpr {
        s.parse().unwrap()
    }

    fn ws(list: &[&str]) -> Vec<Vec<Letter>> {
        list.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn finite_factorizations() {
        assert_eq!(duval_factorize(&w("aabab")), ws(&["aabab"]));
        assert_eq!(duval_factorize(&w("abaab")), ws(&["ab", "aab"]));
        assert_eq!(duval_factorize(&w("bbb")), ws(&["b", "b", "b"]));
        assert_eq!(brute_force_factorize(&w("aabab")).unwrap(), ws(&["aabab"]));
        assert_eq!(
            brute_force_factorize(&w("abab")).unwrap(),
            ws(&["ab", "ab"])
        );
        assert_eq!(brute_force_factorize(&w("a")).unwrap(), ws(&["a"]));
        assert!(brute_force_factorize(&[Letter(0); 15]).is_err());
    }

    #[test]
    fn finite_primes() {
        assert!(is_prime_finite(&w("aabab")));
        assert!(!is_prime_finite(&w("aba")));
        assert!(!is_prime_finite(&w("abab")));
        assert_eq!(longest_prime_prefix_finite(&w("abaab")), w("ab"));
        assert_eq!(longest_prime_prefix_finite(&w("aabab")), w("aabab"));
        assert_eq!(longest_prime_prefix_finite(&w("ba")), w("b"));
    }

    #[test]
    fn rational_primes() {
        for s in ["aab", "aabab", "ab^w", "a^wb", "(a^wb)^wb", "a"] {
            assert!(is_prime_rational(&p(s)), "{s}");
        }
        for s in ["aba", "abab", "ba^w", "(ab)^w", "a^w", "bb"] {
            assert!(!is_prime_rational(&p(s)), "{s}");
        }
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(&p("a^w")), (p("a"), Ordinal::omega()));
        let (y, alpha) = primitive_root(&p("(ab)^w"));
        assert!(word_equal(&y, &p("ab")));
        assert_eq!(alpha, Ordinal::omega());
        let (y, alpha) = primitive_root(&p("abab"));
        assert_eq!((y, alpha), (p("ab"), Ordinal::finite(2u32)));
        let (y, alpha) = primitive_root(&p("(a^w)^wa^w"));
        assert_eq!((y, alpha.to_string()), (p("a"), "w^2+w".into()));
        assert_eq!(primitive_root(&p("a^wb")).1, Ordinal::one());
    }

    #[test]
    fn factorization_check() {
        let f = group_factors(&ws(&["b", "b", "a"])).unwrap();
        assert!(check_factorization(&p("bba"), &f, true).is_empty());
        assert!(!check_factorization(&p("bbb"), &f, true).is_empty());
        let wrong = group_factors(&ws(&["a", "b"])).unwrap();
        assert!(!check_factorization(&p("ab"), &wrong, true).is_empty());
    }
}
