//! Synchronized runs of two single-word automata.
//!
//! A run keeps a [`Trace`]: the pairs of states in order of first visit.
//! When a step leads back to a pair already in the trace, the run has
//! entered a loop that repeats ω times; each component then takes the limit
//! transition of the set of states it visited along the loop. A pair reached
//! by a limit stands for the whole inner loop, so it contributes the states
//! of that loop as well.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::word::Letter;

/// A state of the product automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairState {
    pub left: usize,
    pub right: usize,
}

impl PairState {
    pub fn new(left: usize, right: usize) -> Self {
        PairState { left, right }
    }
}

impl core::fmt::Display for PairState {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "⟨{},{}⟩", self.left, self.right)
    }
}

/// Repetition-free list of visited pairs with the position of each first
/// visit, counted from the first pair.
#[derive(Debug, Clone)]
pub struct Trace {
    pairs: Vec<PairState>,
    positions: Vec<Ordinal>,
    /// State intervals of each side covered by each entry.
    cover: Vec<[(usize, usize); 2]>,
    index: BTreeMap<PairState, usize>,
}

impl Trace {
    pub fn new(start: PairState) -> Self {
        let mut index = BTreeMap::new();
        index.insert(start, 0);
        Trace {
            pairs: alloc::vec![start],
            positions: alloc::vec![Ordinal::zero()],
            cover: alloc::vec![[(start.left, start.left), (start.right, start.right)]],
            index,
        }
    }

    pub fn pairs(&self) -> &[PairState] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn leading(&self) -> PairState {
        *self.pairs.last().expect("a trace is never empty")
    }

    /// Position of the leading pair.
    pub fn leading_position(&self) -> &Ordinal {
        self.positions.last().expect("a trace is never empty")
    }

    pub fn position(&self, idx: usize) -> &Ordinal {
        &self.positions[idx]
    }

    pub fn index_of(&self, p: PairState) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn contains(&self, p: PairState) -> bool {
        self.index.contains_key(&p)
    }

    /// `true` when some pair has `q` as left component.
    pub fn has_left(&self, q: usize) -> bool {
        self.pairs.iter().any(|p| p.left == q)
    }

    fn push(&mut self, p: PairState, pos: Ordinal) -> Result<()> {
        self.push_covering(p, pos, [(p.left, p.left), (p.right, p.right)])
    }

    fn push_covering(
        &mut self,
        p: PairState,
        pos: Ordinal,
        cover: [(usize, usize); 2],
    ) -> Result<()> {
        if self.index.insert(p, self.pairs.len()).is_some() {
            return Err(Error::Invariant(format!("pair {p} repeated in trace")));
        }
        self.pairs.push(p);
        self.positions.push(pos);
        self.cover.push(cover);
        Ok(())
    }
}

/// Result of one synchronized step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// Both sides read the same letter and reached a new pair.
    Advanced(PairState),
    /// A loop was detected and both sides took limit transitions. The
    /// cycles are the cofinal state sets `[lo, hi]` of each side. `levels`
    /// counts the nested loops closed at once: more than one when a limit
    /// pair was already in the trace.
    LoopClosed {
        pair: PairState,
        left_cycle: (usize, usize),
        right_cycle: (usize, usize),
        levels: usize,
    },
    /// The sides read different letters; the trace is unchanged.
    Diverged {
        left: Letter,
        right: Letter,
    },
    LeftEnded,
    RightEnded,
    BothEnded,
}

/// The union of the intervals, if it is an interval.
fn cycle_of(intervals: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = intervals.collect();
    v.sort_unstable();
    let (mut lo, mut hi) = *v.first()?;
    for &(a, b) in &v[1..] {
        if a > hi + 1 {
            return None;
        }
        lo = lo.min(a);
        hi = hi.max(b);
    }
    Some((lo, hi))
}

/// Performs one step of the synchronized run from the leading pair.
pub fn sync_step(left: &Automaton, right: &Automaton, trace: &mut Trace) -> Result<StepOutcome> {
    let cur = trace.leading();
    let (x, y) = match (left.next(cur.left), right.next(cur.right)) {
        (None, None) => return Ok(StepOutcome::BothEnded),
        (None, Some(_)) => return Ok(StepOutcome::LeftEnded),
        (Some(_), None) => return Ok(StepOutcome::RightEnded),
        (Some(x), Some(y)) => (x, y),
    };
    if x.0 != y.0 {
        return Ok(StepOutcome::Diverged {
            left: x.0,
            right: y.0,
        });
    }
    let next = PairState::new(x.1, y.1);
    let pos = trace.leading_position().add(&Ordinal::one());
    let Some(t) = trace.index_of(next) else {
        trace.push(next, pos)?;
        return Ok(StepOutcome::Advanced(next));
    };
    // Close the loop; if the limit pair was seen before, the run is inside
    // a loop one level up, so close that one as well.
    let corrupt = |side: &str| Error::Invariant(format!("{side} loop from {next} has no limit"));
    let (mut t, mut pos, mut extra) = (t, pos, None);
    let mut levels = 1;
    loop {
        let covers = trace.cover[t..].iter().chain(extra.as_ref());
        let left_cycle = cycle_of(covers.clone().map(|c| c[0])).ok_or_else(|| corrupt("left"))?;
        let right_cycle = cycle_of(covers.map(|c| c[1])).ok_or_else(|| corrupt("right"))?;
        let lt = left
            .limit(left_cycle.0, left_cycle.1)
            .ok_or_else(|| corrupt("left"))?;
        let rt = right
            .limit(right_cycle.0, right_cycle.1)
            .ok_or_else(|| corrupt("right"))?;
        let start = trace.position(t);
        let period = start.sub_left(&pos)?;
        let limit_pos = start.add(&period.mul(&Ordinal::omega()));
        let pair = PairState::new(lt, rt);
        let cover = [
            (left_cycle.0.min(lt), left_cycle.1.max(lt)),
            (right_cycle.0.min(rt), right_cycle.1.max(rt)),
        ];
        match trace.index_of(pair) {
            Some(seen) => {
                t = seen;
                pos = limit_pos;
                extra = Some(cover);
                levels += 1;
            }
            None => {
                trace.push_covering(pair, limit_pos, cover)?;
                return Ok(StepOutcome::LoopClosed {
                    pair,
                    left_cycle,
                    right_cycle,
                    levels,
                });
            }
        }
    }
}

/// Runs from `start` until the sides diverge or one of them ends.
pub fn run_to_divergence(
    left: &Automaton,
    right: &Automaton,
    start: PairState,
) -> Result<(Trace, StepOutcome)> {
    let mut trace = Trace::new(start);
    let budget = left.state_count() * right.state_count() + 1;
    for _ in 0..budget {
        match sync_step(left, right, &mut trace)? {
            StepOutcome::Advanced(_) | StepOutcome::LoopClosed { .. } => {}
            done => return Ok((trace, done)),
        }
    }
    Err(Error::Invariant(format!(
        "synchronized run exceeded {budget} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::RatExpr;

    fn compile(s: &str) -> Automaton {
        Automaton::compile(&s.parse::<RatExpr>().unwrap())
    }

    fn pairs(t: &Trace) -> Vec<(usize, usize)> {
        t.pairs().iter().map(|p| (p.left, p.right)).collect()
    }

    #[test]
    fn loop_through_sharp_entry() {
        let a = compile("aa^wb(aa^wb)^waa^w");
        let s = a.sharp_automaton(0, 1).unwrap();
        let mut t = Trace::new(PairState::new(1, 0));
        assert_eq!(
            sync_step(&a, &s, &mut t).unwrap(),
            StepOutcome::Advanced(PairState::new(2, 1))
        );
        let out = sync_step(&a, &s, &mut t).unwrap();
        assert_eq!(
            out,
            StepOutcome::LoopClosed {
                pair: PairState::new(3, 1),
                left_cycle: (2, 2),
                right_cycle: (1, 1),
                levels: 1,
            }
        );
        assert_eq!(pairs(&t), alloc::vec![(1, 0), (2, 1), (3, 1)]);
        assert_eq!(t.leading_position().to_string(), "w");
    }

    #[test]
    fn history_of_second_candidate() {
        let a = compile("aa^wb(aa^wb)^waa^w");
        let s = a.sharp_automaton(0, 4).unwrap();
        let (t, out) = run_to_divergence(&a, &s, PairState::new(4, 0)).unwrap();
        assert_eq!(
            pairs(&t),
            alloc::vec![
                (4, 0),
                (5, 1),
                (6, 2),
                (7, 3),
                (8, 4),
                (9, 4),
                (10, 1),
                (11, 2),
                (12, 3)
            ]
        );
        assert_eq!(out, StepOutcome::LeftEnded);
    }

    #[test]
    fn plain_products() {
        let (_, out) = run_to_divergence(
            &compile("(ab)^w"),
            &compile("ab(ab)^w"),
            PairState::new(0, 0),
        )
        .unwrap();
        assert_eq!(out, StepOutcome::BothEnded);
        let (_, out) =
            run_to_divergence(&compile("a^w"), &compile("a^wb"), PairState::new(0, 0)).unwrap();
        assert_eq!(out, StepOutcome::LeftEnded);
        let (t, out) =
            run_to_divergence(&compile("a^wab"), &compile("a^wb"), PairState::new(0, 0)).unwrap();
        assert_eq!(
            out,
            StepOutcome::Diverged {
                left: Letter(0),
                right: Letter(1)
            }
        );
        assert_eq!(t.leading_position().to_string(), "w");
    }

    #[test]
    fn limit_pair_seen_before_closes_outer_loop() {
        // Both words are (a^w b)^w; the inner loops have periods 3 and 3
        // but the outer bodies differ by a trailing letter.
        let (x, y) = (compile("((aaa)^wb)^w"), compile("((aaa)^wba)^w"));
        let mut t = Trace::new(PairState::new(0, 0));
        let mut closed = Vec::new();
        let end = loop {
            match sync_step(&x, &y, &mut t).unwrap() {
                StepOutcome::LoopClosed { pair, levels, .. } => closed.push((pair, levels)),
                StepOutcome::Advanced(_) => {}
                other => break other,
            }
        };
        assert_eq!(end, StepOutcome::BothEnded);
        assert_eq!(
            closed,
            alloc::vec![(PairState::new(4, 4), 1), (PairState::new(6, 7), 2)]
        );
        assert_eq!(t.leading_position().to_string(), "w^2");
    }

    #[test]
    fn inner_loop_started_before_the_repeat() {
        let (x, y) = (compile("a((ba)^w)^wb"), compile("((ab)^wb)^wb"));
        let (t, end) = run_to_divergence(&x, &y, PairState::new(0, 0)).unwrap();
        assert_eq!(end, StepOutcome::BothEnded);
        assert_eq!(t.leading_position().to_string(), "w^2+1");
    }
}
