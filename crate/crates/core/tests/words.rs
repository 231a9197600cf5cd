//! Properties of words, automata and comparison on random expressions.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlyndon_core::duplication::{depth, size, tau};
use tlyndon_core::random::{self, Shape};
use tlyndon_core::{
    compare, lex_cmp, word_equal, Alphabet, Automaton, CompareOutcome, Ordinal, RatExpr,
};

const CASES: usize = 400;

fn corpus(seed: u64) -> Vec<RatExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CASES)
        .map(|_| random::expr(&mut rng, Shape::default()))
        .collect()
}

/// A position strictly inside the word, picked among the first visits of
/// the compiled automaton's states.
fn some_position(rng: &mut impl Rng, e: &RatExpr) -> Ordinal {
    let pos = Automaton::compile(e).first_visit_positions();
    pos[rng.gen_range(0..pos.len() - 1)].clone()
}

#[test]
fn display_parse_round_trip() {
    let alpha = Alphabet::default();
    for e in corpus(1) {
        let text = e.display(&alpha).to_string();
        let back = RatExpr::parse(&text, &alpha).unwrap();
        assert_eq!(back, e, "{text}");
    }
}

#[test]
fn prefix_and_suffix_rebuild_the_word() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for e in corpus(2) {
        let gamma = some_position(&mut rng, &e);
        let suffix = e.suffix_from(&gamma).unwrap();
        assert_eq!(gamma.add(&suffix.length()), e.length(), "{e} at {gamma}");
        if gamma.is_zero() {
            assert!(word_equal(&suffix, &e));
            continue;
        }
        let prefix = e.prefix_to(&gamma).unwrap();
        assert_eq!(prefix.length(), gamma);
        assert!(word_equal(&prefix.then(&suffix), &e), "{e} at {gamma}");
        assert_eq!(
            suffix.letter_at(&Ordinal::zero()).unwrap(),
            e.letter_at(&gamma).unwrap()
        );
    }
}

#[test]
fn compare_is_antisymmetric_and_consistent_with_letters() {
    let xs = corpus(3);
    let ys = corpus(4);
    for (x, y) in xs.iter().zip(&ys) {
        let fwd = compare(x, y);
        let back = compare(y, x);
        assert_eq!(fwd.ordering(), back.ordering().reverse(), "{x} vs {y}");
        match fwd {
            CompareOutcome::StrictlyLess {
                position,
                left,
                right,
            }
            | CompareOutcome::StrictlyGreater {
                position,
                left,
                right,
            } => {
                assert_eq!(x.letter_at(&position).unwrap(), left);
                assert_eq!(y.letter_at(&position).unwrap(), right);
                if !position.is_zero() {
                    let (px, py) = (
                        x.prefix_to(&position).unwrap(),
                        y.prefix_to(&position).unwrap(),
                    );
                    assert!(word_equal(&px, &py), "{x} vs {y}");
                }
            }
            CompareOutcome::LeftIsProperPrefix => {
                assert!(x.length() < y.length());
                assert!(word_equal(&y.prefix_to(&x.length()).unwrap(), x));
            }
            CompareOutcome::RightIsProperPrefix => {
                assert!(y.length() < x.length());
            }
            CompareOutcome::Equal => assert_eq!(x.length(), y.length()),
        }
        assert_eq!(compare(x, x), CompareOutcome::Equal);
    }
}

#[test]
fn compare_is_transitive() {
    let xs = corpus(5);
    for w in xs.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        if lex_cmp(a, b) != Ordering::Greater && lex_cmp(b, c) != Ordering::Greater {
            assert_ne!(lex_cmp(a, c), Ordering::Greater, "{a} {b} {c}");
        }
    }
}

#[test]
fn compiled_automata_are_valid_and_read_back() {
    for e in corpus(6) {
        let a = Automaton::compile(&e);
        assert_eq!(a.validate(), vec![], "{e}");
        assert_eq!(a.state_count(), size(&e) + 1);
        assert!(word_equal(&a.accepted_word().unwrap(), &e), "{e}");
        assert!(word_equal(&a.suffix_word(0).unwrap().unwrap(), &e));
        let pos = a.first_visit_positions();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{e}");
        assert_eq!(pos.last().unwrap(), &e.length());
        for (q, at) in pos.iter().enumerate().take(a.last()).skip(1) {
            let suffix = a.suffix_word(q).unwrap().unwrap();
            let expected = e.suffix_from(at).unwrap();
            assert!(word_equal(&suffix, &expected), "{e} state {q}");
            let (p, prefix) = a.first_visit_prefix(q).unwrap();
            assert_eq!(&p, at);
            assert!(word_equal(&prefix.then(&suffix), &e));
        }
    }
}

#[test]
fn loop_entries_are_smallest_cycle_states() {
    for e in corpus(7) {
        let a = Automaton::compile(&e);
        for l in a.limits() {
            let back = a.next(l.hi).unwrap().1;
            assert_eq!(back, l.lo, "{e}");
            assert_eq!(l.target, l.hi + 1);
        }
    }
}

#[test]
fn duplication_preserves_the_word_within_the_bound() {
    for e in corpus(8) {
        let t = tau(&e);
        assert!(word_equal(&t, &e), "{e}");
        assert!(size(&t) <= (1 << depth(&e)) * size(&e), "{e}");
        assert_eq!(depth(&t), depth(&e));
    }
}

#[test]
fn sub_and_sharp_automata_accept_the_factor_and_its_powers() {
    for e in corpus(9) {
        let a = Automaton::compile(&tau(&e));
        let pos = a.first_visit_positions();
        let cuts: Vec<usize> = (0..a.last()).filter(|&q| !a.in_loop(q)).collect();
        for &i in &cuts {
            let j = i + 1 + (a.last() - i - 1) / 2;
            let sub = a.sub_automaton(i, j).unwrap();
            let factor = sub.accepted_word().unwrap();
            assert_eq!(
                factor.length(),
                pos[i].sub_left(&pos[j]).unwrap(),
                "{e} [{i},{j}]"
            );
            let sharp = a.sharp_automaton(i, j).unwrap();
            assert!(sharp.is_sharp());
            assert_eq!(sharp.limit(i + 1, j), Some(j));
        }
    }
}
