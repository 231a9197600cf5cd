use core::cmp::Ordering;

use super::{Letter, RatExpr};
use crate::automaton::Automaton;
use crate::ordinal::Ordinal;
use crate::sync::{run_to_divergence, PairState, StepOutcome};

/// Lexicographic relation between two words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareOutcome {
    /// The words first differ at `position`, where the left word has the
    /// smaller letter.
    StrictlyLess {
        position: Ordinal,
        left: Letter,
        right: Letter,
    },
    /// Mirror image of `StrictlyLess`.
    StrictlyGreater {
        position: Ordinal,
        left: Letter,
        right: Letter,
    },
    Equal,
    LeftIsProperPrefix,
    RightIsProperPrefix,
}

impl CompareOutcome {
    /// The order in which a proper prefix precedes its extensions.
    pub fn ordering(&self) -> Ordering {
        match self {
            CompareOutcome::StrictlyLess { .. } | CompareOutcome::LeftIsProperPrefix => {
                Ordering::Less
            }
            CompareOutcome::Equal => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Compares two words by running their automata side by side.
pub fn compare(x: &RatExpr, y: &RatExpr) -> CompareOutcome {
    let (ax, ay) = (Automaton::compile(x), Automaton::compile(y));
    let (trace, outcome) = run_to_divergence(&ax, &ay, PairState::new(0, 0))
        .expect("runs over compiled automata are well formed");
    match outcome {
        StepOutcome::Diverged { left, right } => {
            let position = trace.leading_position().clone();
            if left < right {
                CompareOutcome::StrictlyLess {
                    position,
                    left,
                    right,
                }
            } else {
                CompareOutcome::StrictlyGreater {
                    position,
                    left,
                    right,
                }
            }
        }
        StepOutcome::BothEnded => CompareOutcome::Equal,
        StepOutcome::LeftEnded => CompareOutcome::LeftIsProperPrefix,
        StepOutcome::RightEnded => CompareOutcome::RightIsProperPrefix,
        StepOutcome::Advanced(_) | StepOutcome::LoopClosed { .. } => {
            unreachable!("run_to_divergence stops only at an end or a divergence")
        }
    }
}

/// Lexicographic order, a proper prefix being smaller.
pub fn lex_cmp(x: &RatExpr, y: &RatExpr) -> Ordering {
    compare(x, y).ordering()
}

pub fn word_equal(x: &RatExpr, y: &RatExpr) -> bool {
    compare(x, y) == CompareOutcome::Equal
}
