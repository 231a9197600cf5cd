//! Graphviz export of compiled automata.
//!
//! Successor transitions are solid edges labelled by their letter. A limit
//! transition `[lo, hi] → t` is drawn as one dashed edge from `hi` to `t`
//! labelled `{lo..hi}`.

use std::fmt::Write;

use tlyndon_core::{Alphabet, Automaton};

pub fn to_dot(a: &Automaton, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    writeln!(out, "digraph automaton {{").unwrap();
    writeln!(out, "    rankdir=LR;").unwrap();
    writeln!(out, "    node [shape=circle];").unwrap();
    writeln!(out, "    start [shape=point];").unwrap();
    for q in a.first()..=a.last() {
        let shape = if q == a.last() {
            " shape=doublecircle"
        } else {
            ""
        };
        writeln!(out, "    q{q} [label=\"{q}\"{shape}];").unwrap();
    }
    writeln!(out, "    start -> q{};", a.first()).unwrap();
    for (from, letter, to) in a.successors() {
        let label = alphabet
            .symbol(letter)
            .map(String::from)
            .unwrap_or_else(|| format!("<{}>", letter.0));
        writeln!(out, "    q{from} -> q{to} [label=\"{label}\"];").unwrap();
    }
    for l in a.limits() {
        writeln!(
            out,
            "    q{} -> q{} [style=dashed label=\"{{{}..{}}}\"];",
            l.hi, l.target, l.lo, l.hi
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_edges_are_dashed() {
        let a = Automaton::compile(&"a^wb".parse().unwrap());
        let dot = to_dot(&a, &Alphabet::default());
        assert!(dot.contains("q1 -> q1 [label=\"a\"];"));
        assert!(dot.contains("q1 -> q2 [style=dashed label=\"{1..1}\"];"));
        assert!(dot.contains("q3 [label=\"3\" shape=doublecircle];"));
        assert!(dot.starts_with("digraph automaton {"));
    }
}
