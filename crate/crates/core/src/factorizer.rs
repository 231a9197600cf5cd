//! The marker algorithm over the automaton of the duplicated expression.
//!
//! The run compares the word read from the current cut `i` with the powers
//! of the current prime candidate `_i x_j`, the latter read by the sharp
//! automaton of `[i, j]`. The leading pair `(k, k')` holds the states of
//! both sides. Depending on the letters leaving `k` and `k'`:
//!
//! * equal letters: advance both sides, closing loops with limit
//!   transitions (cases 1a, 1b, 1c);
//! * the left letter is greater: the candidate grows (cases 2a, 2b);
//! * the left letter is smaller, or the word has ended: the candidate is
//!   the next prime and its copies give the next cuts (case 3).
//!
//! States whose first visit is a cut between two prime powers go to
//! `q_main`, states of cuts between copies of one prime to `q_secondary`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::Automaton;
use crate::duplication::{absorb, tau};
use crate::error::{Error, Result};
pub use crate::factorization::{Factor, Factorization};
use crate::oracle;
use crate::ordinal::Ordinal;
use crate::sync::{sync_step, PairState, StepOutcome, Trace};
use crate::word::{lex_cmp, word_equal, RatExpr};

/// Which branch of the algorithm produced a pair of the history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Init,
    C1a,
    C1b,
    C1c,
    C2a,
    C2b,
    C3,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Init => "init",
            Case::C1a => "1a",
            Case::C1b => "1b",
            Case::C1c => "1c",
            Case::C2a => "2a",
            Case::C2b => "2b",
            Case::C3 => "3",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A pair appended to the history, with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub pair: PairState,
    pub case: Case,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} case={}", self.pair, self.case)
    }
}

/// Run options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// 0: no checks; 1: cheap structural checks; 2: also the invariants
    /// that need word comparisons and primality tests.
    pub check_level: u8,
    /// Keep the event log and a snapshot of the history after each step.
    pub record: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            check_level: 1,
            record: false,
        }
    }
}

/// Output of [`factorize_states`].
#[derive(Debug, Clone)]
pub struct StateSets {
    pub duplicated: RatExpr,
    pub automaton: Automaton,
    pub q_main: BTreeSet<usize>,
    pub q_secondary: BTreeSet<usize>,
    pub steps: usize,
    pub events: Vec<TraceEvent>,
    pub histories: Vec<Vec<PairState>>,
}

struct Run<'a> {
    a: &'a Automaton,
    x: &'a RatExpr,
    opts: Options,
    pos: Vec<Ordinal>,
    i: usize,
    j: usize,
    sharp: Automaton,
    trace: Trace,
    candidate: Option<RatExpr>,
    events: Vec<TraceEvent>,
    histories: Vec<Vec<PairState>>,
    last_prime: Option<RatExpr>,
}

impl Run<'_> {
    fn reset(&mut self, j: usize, case: Case) -> Result<()> {
        self.j = j;
        self.sharp = self.a.sharp_automaton(self.i, j)?;
        self.trace = Trace::new(PairState::new(j, self.i));
        self.candidate = None;
        self.log(case);
        if self.opts.check_level >= 2 {
            let u = self.candidate()?.clone();
            if !oracle::is_prime_rational(&u) {
                return Err(Error::Invariant(format!(
                    "candidate {u} for [{}, {j}] is not prime",
                    self.i
                )));
            }
        }
        Ok(())
    }

    fn log(&mut self, case: Case) {
        if self.opts.record {
            self.events.push(TraceEvent {
                pair: self.trace.leading(),
                case,
            });
        }
    }

    fn snapshot(&mut self) {
        if self.opts.record {
            self.histories.push(self.trace.pairs().to_vec());
        }
    }

    fn candidate(&mut self) -> Result<&RatExpr> {
        if self.candidate.is_none() {
            self.candidate = Some(self.a.expr_range(self.i, self.j)?);
        }
        Ok(self.candidate.as_ref().unwrap())
    }

    /// The right side has read a prefix of a power of the candidate, and
    /// both sides agree with the letters of the words they read.
    fn check_reading(&mut self) -> Result<()> {
        let (k, k2) = {
            let p = self.trace.leading();
            (p.left, p.right)
        };
        let read = self.trace.leading_position().clone();
        let u = self.candidate()?.clone();
        let (_, rho) = read.div_left(&u.length())?;
        let expected = u.letter_at(&rho)?;
        let right = self.sharp.next(k2).map(|(l, _)| l);
        if right != Some(expected) {
            return Err(Error::Invariant(format!(
                "right side at {k2} does not read a power of {u}"
            )));
        }
        if let Some((l, _)) = self.a.next(k) {
            let at = self.pos[self.i].add(&u.length()).add(&read);
            if self.x.letter_at(&at)? != l {
                return Err(Error::Invariant(format!("left side at {k} is out of step")));
            }
        }
        Ok(())
    }
}

/// Computes the main and secondary cut states of `e` on the automaton of
/// its duplication.
pub fn factorize_states(e: &RatExpr, opts: Options) -> Result<StateSets> {
    let x = tau(e);
    let a = Automaton::compile(&x);
    let n = a.last();
    let mut q_main = BTreeSet::from([0]);
    let mut q_secondary = BTreeSet::new();
    let mut run = Run {
        a: &a,
        x: &x,
        opts,
        pos: if opts.check_level >= 2 {
            a.first_visit_positions()
        } else {
            Vec::new()
        },
        i: 0,
        j: 1,
        sharp: a.sharp_automaton(0, 1)?,
        trace: Trace::new(PairState::new(1, 0)),
        candidate: None,
        events: Vec::new(),
        histories: Vec::new(),
        last_prime: None,
    };
    run.reset(1, Case::Init)?;
    run.snapshot();
    let bound = n.saturating_pow(3).max(1);
    let mut steps = 0usize;
    while run.i < n {
        steps += 1;
        let mut changed = true;
        if steps > bound {
            return Err(Error::Invariant(format!(
                "step count exceeded n^3 = {bound}"
            )));
        }
        let lead = run.trace.leading();
        let right = run
            .sharp
            .next(lead.right)
            .ok_or_else(|| Error::Invariant("sharp automaton has no successor".into()))?;
        let left = a.next(lead.left);
        if opts.check_level >= 2 {
            run.check_reading()?;
        }
        match left {
            Some((b, _)) if b == right.0 => match sync_step(&a, &run.sharp, &mut run.trace)? {
                StepOutcome::Advanced(_) => run.log(Case::C1a),
                StepOutcome::LoopClosed {
                    right_cycle,
                    levels,
                    ..
                } => {
                    if opts.check_level >= 1 && levels > 1 {
                        return Err(Error::Invariant(format!(
                            "limit pair {} was already in the history",
                            run.trace.leading()
                        )));
                    }
                    let case = if right_cycle.1 == run.j {
                        Case::C1c
                    } else {
                        Case::C1b
                    };
                    run.log(case);
                }
                other => {
                    return Err(Error::Invariant(format!(
                        "unexpected step outcome {other:?}"
                    )))
                }
            },
            Some((b, target)) if b > right.0 => {
                // A target at or behind the furthest left state means the
                // left side is going round a loop again.
                let furthest = run.trace.pairs().iter().map(|p| p.left).max().unwrap();
                let (j, case) = if target <= furthest {
                    (furthest + 1, Case::C2b)
                } else {
                    (target, Case::C2a)
                };
                if opts.check_level >= 1 && j <= run.j {
                    return Err(Error::Invariant(format!(
                        "candidate end moved backwards from {} to {j}",
                        run.j
                    )));
                }
                run.reset(j, case)?;
            }
            _ => {
                // The left letter is smaller, or the word has ended.
                let j = run.j;
                let mut added: Vec<usize> = run
                    .trace
                    .pairs()
                    .iter()
                    .filter(|p| p.right == j)
                    .map(|p| p.left)
                    .collect();
                added.push(j);
                let new_i = *added.iter().max().unwrap();
                q_secondary.extend(added);
                q_secondary.remove(&new_i);
                q_main.insert(new_i);
                if opts.check_level >= 2 {
                    run.last_prime = Some(run.candidate()?.clone());
                }
                run.i = new_i;
                if opts.check_level >= 1 && a.in_loop(new_i) {
                    return Err(Error::Invariant(format!(
                        "main state {new_i} lies on a loop"
                    )));
                }
                if new_i < n {
                    if opts.check_level >= 2 {
                        let rest = a.suffix_word(new_i)?.expect("i < n");
                        let prime = run.last_prime.as_ref().unwrap();
                        if lex_cmp(&rest, prime) != core::cmp::Ordering::Less {
                            return Err(Error::Invariant(format!(
                                "remaining word {rest} is not below the prime {prime}"
                            )));
                        }
                    }
                    let (_, next) = a.next(new_i).expect("i < n has a successor");
                    run.reset(next, Case::C3)?;
                } else {
                    changed = false;
                }
            }
        }
        if changed {
            run.snapshot();
        }
    }
    if steps > bound {
        return Err(Error::Invariant("step bound violated".into()));
    }
    let Run {
        events, histories, ..
    } = run;
    Ok(StateSets {
        duplicated: x.clone(),
        automaton: a,
        q_main,
        q_secondary,
        steps,
        events,
        histories,
    })
}

/// Reads the prime powers off the cut states.
pub fn extract_factorization(sets: &StateSets, check_level: u8) -> Result<Factorization> {
    let a = &sets.automaton;
    let pos = a.first_visit_positions();
    let mains: Vec<usize> = sets.q_main.iter().copied().collect();
    let mut factors = Vec::with_capacity(mains.len().saturating_sub(1));
    for w in mains.windows(2) {
        let (m0, m1) = (w[0], w[1]);
        let end = sets
            .q_secondary
            .range(m0 + 1..m1)
            .next()
            .copied()
            .unwrap_or(m1);
        let prime = a.expr_range(m0, end)?;
        let block_len = pos[m0].sub_left(&pos[m1])?;
        let prime_len = pos[m0].sub_left(&pos[end])?;
        let (exponent, rest) = block_len.div_left(&prime_len)?;
        if !rest.is_zero() {
            return Err(Error::Invariant(format!(
                "block [{m0}, {m1}] is not a power of its first prime"
            )));
        }
        if check_level >= 2 {
            let block = a.expr_range(m0, m1)?;
            if !word_equal(&prime.power(&exponent)?, &block) {
                return Err(Error::Invariant(format!(
                    "block [{m0}, {m1}] differs from {prime}^{exponent}"
                )));
            }
        }
        factors.push(Factor::new(absorb(&prime), exponent));
    }
    Ok(Factorization::new(factors))
}

/// Factorizes with the given options.
pub fn factorize_with(e: &RatExpr, opts: Options) -> Result<(Factorization, StateSets)> {
    let sets = factorize_states(e, opts)?;
    let f = extract_factorization(&sets, opts.check_level)?;
    Ok((f, sets))
}

/// The prime factorization of `e`.
pub fn factorize(e: &RatExpr) -> Result<Factorization> {
    factorize_with(e, Options::default()).map(|(f, _)| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> RatExpr {
        s.parse().unwrap()
    }

    fn full() -> Options {
        Options {
            check_level: 2,
            record: true,
        }
    }

    #[test]
    fn nested_example_sets() {
        let sets = factorize_states(&p("(a^wb)^wa^w"), full()).unwrap();
        assert_eq!(sets.automaton.state_count(), 13);
        assert_eq!(sets.q_main, BTreeSet::from([0, 9, 12]));
        assert_eq!(sets.q_secondary, BTreeSet::from([4, 8, 10, 11]));
        let f = extract_factorization(&sets, 2).unwrap();
        assert_eq!(f.to_string(), "(a^wb)^[w] * a^[w]");
    }

    #[test]
    fn periodic_example_sets() {
        let sets = factorize_states(&p("(bba)^w"), full()).unwrap();
        assert_eq!(sets.q_main, BTreeSet::from([0, 2, 7]));
        assert_eq!(sets.q_secondary, BTreeSet::from([1, 5]));
        let f = extract_factorization(&sets, 2).unwrap();
        assert_eq!(f.to_string(), "b^[2] * (abb)^[w]");
    }

    #[test]
    fn single_letter() {
        let sets = factorize_states(&p("a"), full()).unwrap();
        assert_eq!(sets.q_main, BTreeSet::from([0, 1]));
        assert!(sets.q_secondary.is_empty());
        assert_eq!(sets.steps, 1);
        assert_eq!(factorize(&p("a")).unwrap().to_string(), "a^[1]");
    }

    #[test]
    fn finite_examples() {
        assert_eq!(factorize(&p("aabab")).unwrap().to_string(), "(aabab)^[1]");
        assert_eq!(
            factorize(&p("abaab")).unwrap().to_string(),
            "(ab)^[1] * (aab)^[1]"
        );
        assert_eq!(factorize(&p("bbb")).unwrap().to_string(), "b^[3]");
        assert_eq!(factorize(&p("abab")).unwrap().to_string(), "(ab)^[2]");
    }
}
