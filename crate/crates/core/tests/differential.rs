//! The two engines against each other and against the finite-word oracles.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tlyndon_core::factorizer::{factorize_with, Options};
use tlyndon_core::oracle::{
    brute_force_factorize, check_factorization, duval_factorize, group_factors,
};
use tlyndon_core::random::{self, Shape};
use tlyndon_core::{factorize, factorize_structural, Letter, RatExpr};

#[test]
fn engines_agree_on_random_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let opts = Options {
        check_level: 2,
        record: false,
    };
    for _ in 0..300 {
        let e = random::expr(&mut rng, Shape::default());
        let (fa, sets) = factorize_with(&e, opts).unwrap_or_else(|err| panic!("{e}: {err}"));
        let fs = factorize_structural(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
        assert!(fa.equivalent(&fs), "{e}: {fa} vs {fs}");
        let problems = check_factorization(&e, &fa, true);
        assert!(problems.is_empty(), "{e}: {problems:?}");
        let n = sets.automaton.last();
        assert!(sets.steps <= n.pow(3), "{e}");
        assert!(sets.q_main.contains(&0) && sets.q_main.contains(&n));
    }
}

#[test]
fn deeper_expressions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let shape = Shape {
        max_size: 18,
        max_depth: 4,
        letters: 4,
    };
    for _ in 0..300 {
        let e = random::expr(&mut rng, shape);
        let fa = factorize(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
        let fs = factorize_structural(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
        assert!(fa.equivalent(&fs), "{e}: {fa} vs {fs}");
    }
}

fn all_words(len: usize) -> impl Iterator<Item = Vec<Letter>> {
    (0u32..1 << len).map(move |bits| (0..len).map(|i| Letter((bits >> i) & 1)).collect())
}

#[test]
fn finite_words_match_duval_and_brute_force() {
    for len in 1..=9 {
        for w in all_words(len) {
            let duval = duval_factorize(&w);
            assert_eq!(brute_force_factorize(&w).unwrap(), duval);
            let expected = group_factors(&duval).unwrap();
            let e = RatExpr::from_letters(&w).unwrap();
            assert_eq!(factorize(&e).unwrap(), expected, "{e}");
            assert_eq!(factorize_structural(&e).unwrap(), expected, "{e}");
        }
    }
}
