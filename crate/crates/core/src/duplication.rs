//! The duplication transform τ and expression size measures.
//!
//! τ unrolls one literal copy of every ω-body: `τ(e^ω) = τ(e)τ(e)^ω`. In the
//! automaton of τ(e) every loop is entered only after one full pass over
//! its body, which is what the cut markers rely on.

use alloc::vec::Vec;

use crate::word::RatExpr;

/// The duplicated expression. Denotes the same word as `e`.
pub fn tau(e: &RatExpr) -> RatExpr {
    match e {
        RatExpr::Letter(_) => e.clone(),
        RatExpr::Concat(cs) => RatExpr::concat(cs.iter().map(tau)).expect("non-empty"),
        RatExpr::Omega(body) => {
            let t = tau(body);
            t.then(&RatExpr::omega(t.clone()))
        }
    }
}

/// Number of tokens, counting letters and ω-powers.
pub fn size(e: &RatExpr) -> usize {
    match e {
        RatExpr::Letter(_) => 1,
        RatExpr::Concat(cs) => cs.iter().map(size).sum(),
        RatExpr::Omega(b) => 1 + size(b),
    }
}

/// Maximal nesting of ω-powers.
pub fn depth(e: &RatExpr) -> usize {
    match e {
        RatExpr::Letter(_) => 0,
        RatExpr::Concat(cs) => cs.iter().map(depth).max().unwrap_or(0),
        RatExpr::Omega(b) => 1 + depth(b),
    }
}

/// Removes literal copies of a body placed right before its ω-power
/// (`u u^ω → u^ω`), bottom up. Denotes the same word.
pub fn absorb(e: &RatExpr) -> RatExpr {
    match e {
        RatExpr::Letter(_) => e.clone(),
        RatExpr::Omega(b) => RatExpr::omega(absorb(b)),
        RatExpr::Concat(cs) => {
            let mut out: Vec<RatExpr> = Vec::with_capacity(cs.len());
            for c in cs.iter().map(absorb) {
                if let RatExpr::Omega(body) = &c {
                    let unit: Vec<RatExpr> = match &**body {
                        RatExpr::Concat(parts) => parts.clone(),
                        other => alloc::vec![other.clone()],
                    };
                    while out.len() >= unit.len() && out[out.len() - unit.len()..] == unit[..] {
                        out.truncate(out.len() - unit.len());
                    }
                }
                out.push(c);
            }
            RatExpr::concat(out).expect("non-empty")
        }
    }
}
