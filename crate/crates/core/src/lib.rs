//! Prime (Lyndon) factorization of rational transfinite words.
//!
//! Words are written as expressions over letters, concatenation and the
//! ω-power, e.g. `(a^w b)^w a^w`. The crate computes the unique
//! factorization into a strictly decreasing sequence of prime powers in two
//! independent ways: by running the marker algorithm over the automaton of
//! the duplicated expression ([`factorizer`]) and by structural recursion
//! on the expression ([`structural`]).
//!
//! ```
//! use tlyndon_core::{factorize, RatExpr};
//!
//! let x: RatExpr = "(bba)^w".parse().unwrap();
//! let f = factorize(&x).unwrap();
//! assert_eq!(f.to_string(), "b^[2] * (abb)^[w]");
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automaton;
pub mod duplication;
pub mod error;
pub mod factorization;
pub mod factorizer;
pub mod marked;
pub mod oracle;
pub mod ordinal;
#[cfg(feature = "random")]
pub mod random;
pub mod structural;
pub mod sync;
pub mod word;

pub use automaton::Automaton;
pub use error::{Error, Result};
pub use factorizer::{factorize, Factor, Factorization};
pub use ordinal::Ordinal;
pub use structural::factorize_structural;
pub use word::{compare, lex_cmp, word_equal, Alphabet, CompareOutcome, Letter, RatExpr};
