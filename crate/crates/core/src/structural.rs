//! Factorization by structural recursion on the expression.
//!
//! Letters are primes. The factorization of a product is obtained by
//! merging the two factor lists, and that of an ω-power by rotating the
//! factor list until it collapses into a single prime power.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::factorization::{Factor, Factorization};
use crate::ordinal::Ordinal;
use crate::word::{lex_cmp, word_equal, RatExpr};

/// Writes `u^α v^β` as a single prime power, for primes `u ≤ v`.
///
/// * `u = v` gives `(v, α+β)`;
/// * `u^α v = v` gives `(v, β)`;
/// * otherwise `u^α v^β` is itself prime.
pub fn concat_pp(u: &RatExpr, alpha: &Ordinal, v: &RatExpr, beta: &Ordinal) -> Result<Factor> {
    match lex_cmp(u, v) {
        Ordering::Equal => Ok(Factor::new(v.clone(), alpha.add(beta))),
        Ordering::Less => {
            let head = u.power(alpha)?;
            if word_equal(&head.then(v), v) {
                Ok(Factor::new(v.clone(), beta.clone()))
            } else {
                Ok(Factor::new(head.then(&v.power(beta)?), Ordinal::one()))
            }
        }
        Ordering::Greater => Err(Error::Precondition("concat_pp expects u ≤ v")),
    }
}

fn combine(x: &Factor, y: &Factor) -> Result<Factor> {
    concat_pp(&x.prime, &x.exponent, &y.prime, &y.exponent)
}

/// The factorization of the product of two factorized words.
pub fn fact_product(left: &Factorization, right: &Factorization) -> Result<Factorization> {
    let mut stack: Vec<Factor> = left.factors.clone();
    for f in &right.factors {
        stack.push(f.clone());
        while stack.len() >= 2 {
            let n = stack.len();
            if lex_cmp(&stack[n - 2].prime, &stack[n - 1].prime) == Ordering::Greater {
                break;
            }
            let y = stack.pop().unwrap();
            let x = stack.pop().unwrap();
            stack.push(combine(&x, &y)?);
        }
    }
    Ok(Factorization::new(stack))
}

/// Rotation of a factorization into one prime power.
///
/// Returns `(k, v, β)` with `k` 1-based such that
/// `u_{k+1}^{α_{k+1}} ⋯ u_n^{α_n} u_1^{α_1} ⋯ u_k^{α_k} = v^β` and
/// `v ≤ u_k`.
pub fn circular_fact(blocks: &[Factor]) -> Result<(usize, RatExpr, Ordinal)> {
    let n = blocks.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    // Each entry covers the original blocks start, start+1, ... cyclically;
    // `end` is the index of the last one.
    let mut ring: Vec<(Factor, usize)> = blocks.iter().cloned().zip(0..n).collect();
    while ring.len() > 1 {
        let m = ring.len();
        let pos = (0..m)
            .find(|&p| lex_cmp(&ring[p].0.prime, &ring[(p + 1) % m].0.prime) != Ordering::Greater)
            .ok_or_else(|| Error::Invariant("cyclically decreasing primes".into()))?;
        let next = (pos + 1) % m;
        let merged = combine(&ring[pos].0, &ring[next].0)?;
        let end = ring[next].1;
        ring[pos] = (merged, end);
        ring.remove(next);
    }
    let (Factor { prime, exponent }, end) = ring.pop().unwrap();
    let k = end + 1;
    if lex_cmp(&prime, &blocks[end].prime) == Ordering::Greater {
        return Err(Error::Invariant(format!(
            "rotation prime {prime} exceeds block {k}"
        )));
    }
    Ok((k, prime, exponent))
}

/// The factorization of `x^ω` from that of `x`.
pub fn fact_omega(fx: &Factorization) -> Result<Factorization> {
    let blocks = &fx.factors;
    match blocks.len() {
        0 => Err(Error::EmptyWord),
        1 => Ok(Factorization::new(alloc::vec![Factor::new(
            blocks[0].prime.clone(),
            blocks[0].exponent.mul(&Ordinal::omega()),
        )])),
        n => {
            let (k, v, beta) = circular_fact(blocks)?;
            if k >= n {
                return Err(Error::Invariant(
                    "a factorization with several blocks rotated onto itself".into(),
                ));
            }
            let tail = beta.mul(&Ordinal::omega());
            let mut out: Vec<Factor> = blocks[..k].to_vec();
            match lex_cmp(&v, &blocks[k - 1].prime) {
                Ordering::Less => out.push(Factor::new(v, tail)),
                Ordering::Equal => {
                    let last = out.pop().unwrap();
                    out.push(Factor::new(v, last.exponent.add(&tail)));
                }
                Ordering::Greater => unreachable!("checked by circular_fact"),
            }
            Ok(Factorization::new(out))
        }
    }
}

/// The prime factorization of `e` by recursion on its structure.
pub fn factorize_structural(e: &RatExpr) -> Result<Factorization> {
    match e {
        RatExpr::Letter(_) => Ok(Factorization::new(alloc::vec![Factor::new(
            e.clone(),
            Ordinal::one()
        )])),
        RatExpr::Concat(cs) => {
            let mut acc = factorize_structural(&cs[0])?;
            for c in &cs[1..] {
                acc = fact_product(&acc, &factorize_structural(c)?)?;
            }
            Ok(acc)
        }
        RatExpr::Omega(b) => fact_omega(&factorize_structural(b)?),
    }
}
