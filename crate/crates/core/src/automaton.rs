//! Single-word automata with successor and limit transitions.
//!
//! [`Automaton::compile`] numbers the tokens of an expression (letters and
//! ω markers) from 1 to n; state `s` is the boundary right after token `s`.
//! A letter token entering `s` yields the successor transition `s-1 → s`.
//! An ω token closing a body whose first token is `p+1` yields a backwards
//! successor transition from the body's last state to `p+1` and the limit
//! transition `[p+1, s-1] → s`.
//!
//! Sub-automata and sharp automata keep the global state numbering.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::word::{Letter, RatExpr};

/// Token of the expression that enters a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Letter(Letter),
    Omega,
}

/// A limit transition: the cofinal state set `[lo, hi]` leads to `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Limit {
    pub lo: usize,
    pub hi: usize,
    pub target: usize,
}

/// Strongly deterministic automaton accepting a single transfinite word
/// (or, for a sharp automaton, every power of one word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    first: usize,
    last: usize,
    /// Indexed by `state - first`.
    succ: Vec<Option<(Letter, usize)>>,
    limits: BTreeMap<(usize, usize), usize>,
    /// `tokens[s - first - 1]` is the token entering `s`.
    tokens: Vec<Token>,
    sharp: bool,
}

/// A structural property violated by an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingSuccessor(usize),
    SuccessorFromFinal,
    /// A backwards successor transition without the matching limit, or the
    /// converse.
    LoopWithoutLimit {
        from: usize,
        to: usize,
    },
    LimitWithoutLoop(Limit),
    MixedEntryLabels(usize),
    NotWellNested(Limit, Limit),
    /// A state entered both by a successor and by a limit transition, or
    /// by several limit transitions.
    MixedEntry(usize),
    Unreachable(usize),
    InitialReached,
    BadTarget {
        from: usize,
        to: usize,
    },
}

impl Automaton {
    /// Compiles a non-empty expression.
    pub fn compile(e: &RatExpr) -> Automaton {
        let mut b = Builder::default();
        b.emit(e);
        let n = b.tokens.len();
        let mut succ: Vec<Option<(Letter, usize)>> = b.succ.into_iter().map(Some).collect();
        succ.push(None);
        debug_assert_eq!(succ.len(), n + 1);
        Automaton {
            first: 0,
            last: n,
            succ,
            limits: b.limits,
            tokens: b.tokens,
            sharp: false,
        }
    }

    /// Builds an automaton over states `0..=n` from raw transitions without
    /// checking it; see [`Automaton::validate`].
    ///
    /// Tokens are inferred: a state that is the target of a limit is
    /// entered by ω, any other state by the label of its entering
    /// transitions.
    pub fn from_parts(
        n: usize,
        succ: &[(usize, Letter, usize)],
        limits: &[Limit],
    ) -> Result<Automaton> {
        let mut table = alloc::vec![None; n + 1];
        for &(from, l, to) in succ {
            if from > n || to > n {
                return Err(Error::OutOfRange);
            }
            table[from] = Some((l, to));
        }
        let mut lims = BTreeMap::new();
        for l in limits {
            if l.lo > l.hi || l.hi > n || l.target > n {
                return Err(Error::OutOfRange);
            }
            lims.insert((l.lo, l.hi), l.target);
        }
        let mut tokens = Vec::with_capacity(n);
        for s in 1..=n {
            let tok = if lims.values().any(|&t| t == s) {
                Token::Omega
            } else {
                let label = succ.iter().find(|&&(_, _, to)| to == s).map(|&(_, l, _)| l);
                Token::Letter(label.unwrap_or(Letter(0)))
            };
            tokens.push(tok);
        }
        Ok(Automaton {
            first: 0,
            last: n,
            succ: table,
            limits: lims,
            tokens,
            sharp: false,
        })
    }

    /// Initial state.
    pub fn first(&self) -> usize {
        self.first
    }

    /// Accepting state.
    pub fn last(&self) -> usize {
        self.last
    }

    pub fn state_count(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_sharp(&self) -> bool {
        self.sharp
    }

    pub fn contains(&self, q: usize) -> bool {
        (self.first..=self.last).contains(&q)
    }

    /// The successor transition leaving `q`.
    pub fn next(&self, q: usize) -> Option<(Letter, usize)> {
        if !self.contains(q) {
            return None;
        }
        self.succ[q - self.first]
    }

    /// Target of the limit transition whose state set is `[lo, hi]`.
    pub fn limit(&self, lo: usize, hi: usize) -> Option<usize> {
        self.limits.get(&(lo, hi)).copied()
    }

    pub fn limits(&self) -> impl Iterator<Item = Limit> + '_ {
        self.limits
            .iter()
            .map(|(&(lo, hi), &target)| Limit { lo, hi, target })
    }

    /// All successor transitions as `(from, letter, to)`.
    pub fn successors(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .filter_map(move |(i, t)| t.map(|(l, to)| (i + self.first, l, to)))
    }

    /// The token entering state `s`, for `first < s ≤ last`.
    pub fn token(&self, s: usize) -> Option<Token> {
        if s <= self.first || s > self.last {
            return None;
        }
        Some(self.tokens[s - self.first - 1])
    }

    /// `true` when `q` lies on a cycle, i.e. inside the state set of a
    /// limit transition of the compiled kind.
    pub fn in_loop(&self, q: usize) -> bool {
        self.limits
            .iter()
            .any(|(&(lo, hi), &t)| t == hi + 1 && lo <= q && q <= hi)
    }

    fn check_cut(&self, i: usize, j: usize) -> Result<()> {
        if self.sharp {
            return Err(Error::Precondition("cannot restrict a sharp automaton"));
        }
        if i >= j || i < self.first || j > self.last {
            return Err(Error::Precondition("expected first ≤ i < j ≤ last"));
        }
        if self.in_loop(i) {
            return Err(Error::Precondition("the start state lies on a loop"));
        }
        Ok(())
    }

    /// The automaton restricted to states `i..=j`, accepting the factor of
    /// the word between the first visits of `i` and `j`.
    pub fn sub_automaton(&self, i: usize, j: usize) -> Result<Automaton> {
        self.check_cut(i, j)?;
        let mut succ: Vec<Option<(Letter, usize)>> =
            self.succ[i - self.first..=j - self.first].to_vec();
        *succ.last_mut().unwrap() = None;
        let limits = self
            .limits
            .iter()
            .filter(|(&(lo, _), &t)| lo > i && t <= j)
            .map(|(&k, &t)| (k, t))
            .collect();
        Ok(Automaton {
            first: i,
            last: j,
            succ,
            limits,
            tokens: self.tokens[i - self.first..j - self.first].to_vec(),
            sharp: false,
        })
    }

    /// The sub-automaton on `i..=j` with a successor transition from `j`
    /// back to `i+1` and the limit `[i+1, j] → j`, accepting every power
    /// of the factor.
    pub fn sharp_automaton(&self, i: usize, j: usize) -> Result<Automaton> {
        let mut a = self.sub_automaton(i, j)?;
        let (label, to) = self.next(i).ok_or(Error::OutOfRange)?;
        if to != i + 1 {
            return Err(Error::Invariant(format!("state {i} does not move forward")));
        }
        let last = a.succ.len() - 1;
        a.succ[last] = Some((label, i + 1));
        a.limits.insert((i + 1, j), j);
        a.sharp = true;
        Ok(a)
    }

    /// Largest `hi` such that an ω-group with body `[s+1, hi]` closes
    /// at or before `bound`.
    fn group_starting_at(&self, s: usize, bound: usize) -> Option<usize> {
        self.limits
            .range((s + 1, 0)..(s + 2, 0))
            .filter(|(&(_, hi), &t)| t == hi + 1 && t <= bound)
            .map(|(&(_, hi), _)| hi)
            .next_back()
    }

    /// The word read along the first pass from `a` to `b`, with every
    /// ω-group lying wholly inside the range read as its full ω-power.
    pub fn expr_range(&self, a: usize, b: usize) -> Result<RatExpr> {
        if a >= b || a < self.first || b > self.last {
            return Err(Error::EmptyWord);
        }
        let mut parts = Vec::new();
        let mut s = a;
        while s < b {
            if let Some(hi) = self.group_starting_at(s, b) {
                parts.push(RatExpr::omega(self.expr_range(s, hi)?));
                s = hi + 1;
            } else {
                match self.tokens[s - self.first] {
                    Token::Letter(l) => parts.push(RatExpr::Letter(l)),
                    Token::Omega => {
                        return Err(Error::Invariant(format!("unmatched ω token at {}", s + 1)))
                    }
                }
                s += 1;
            }
        }
        RatExpr::concat(parts)
    }

    /// The word accepted by a non-sharp automaton.
    pub fn accepted_word(&self) -> Result<RatExpr> {
        self.expr_range(self.first, self.last)
    }

    /// The word labelling the run from state `q` to the accepting state;
    /// `None` when `q` is the accepting state.
    pub fn suffix_word(&self, q: usize) -> Result<Option<RatExpr>> {
        if !self.contains(q) {
            return Err(Error::OutOfRange);
        }
        if q == self.last {
            return Ok(None);
        }
        // Cycles through q, innermost first.
        let mut cycles: Vec<(usize, usize)> = self
            .limits
            .iter()
            .filter(|(&(lo, hi), &t)| t == hi + 1 && lo <= q && q <= hi)
            .map(|(&k, _)| k)
            .collect();
        cycles.sort_by_key(|&(_, hi)| hi);
        let mut parts = Vec::new();
        let mut cur = q;
        for (lo, hi) in cycles {
            if cur < hi {
                parts.push(self.expr_range(cur, hi)?);
            }
            parts.push(RatExpr::omega(self.expr_range(lo - 1, hi)?));
            cur = hi + 1;
        }
        if cur < self.last {
            parts.push(self.expr_range(cur, self.last)?);
        }
        RatExpr::concat(parts).map(Some)
    }

    /// Position of the first visit of every state, indexed by
    /// `state - first`.
    pub fn first_visit_positions(&self) -> Vec<Ordinal> {
        let mut pos = Vec::with_capacity(self.state_count());
        pos.push(Ordinal::zero());
        let mut opener = BTreeMap::new();
        for (&(lo, hi), &t) in &self.limits {
            if t == hi + 1 {
                opener.insert(t, lo);
            }
        }
        for s in self.first + 1..=self.last {
            let prev = &pos[s - 1 - self.first];
            let p = match self.tokens[s - self.first - 1] {
                Token::Letter(_) => prev.add(&Ordinal::one()),
                Token::Omega => {
                    let lo = opener[&s];
                    let start = &pos[lo - 1 - self.first];
                    let body = start.sub_left(prev).expect("positions increase");
                    start.add(&body.mul(&Ordinal::omega()))
                }
            };
            pos.push(p);
        }
        pos
    }

    /// Position of the first visit of `s` and the prefix read up to it.
    pub fn first_visit_prefix(&self, s: usize) -> Result<(Ordinal, RatExpr)> {
        if s <= self.first || s > self.last {
            return Err(Error::OutOfRange);
        }
        let prefix = self.expr_range(self.first, s)?;
        Ok((prefix.length(), prefix))
    }

    /// Checks the structural properties of a compiled automaton.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let range = self.first..=self.last;
        let mut entered_by_succ: BTreeMap<usize, Letter> = BTreeMap::new();
        let mut mixed_labels = Vec::new();
        for q in range.clone() {
            match self.next(q) {
                None if q != self.last => out.push(Violation::MissingSuccessor(q)),
                Some(_) if q == self.last && !self.sharp => out.push(Violation::SuccessorFromFinal),
                Some((l, to)) => {
                    if !self.contains(to) || (to > q + 1) || to == self.first {
                        out.push(Violation::BadTarget { from: q, to });
                        continue;
                    }
                    if let Some(prev) = entered_by_succ.insert(to, l) {
                        if prev != l && !mixed_labels.contains(&to) {
                            mixed_labels.push(to);
                        }
                    }
                    if to <= q {
                        let target = if self.sharp && q == self.last {
                            q
                        } else {
                            q + 1
                        };
                        if self.limit(to, q) != Some(target) {
                            out.push(Violation::LoopWithoutLimit { from: q, to });
                        }
                    }
                }
                None => {}
            }
        }
        out.extend(mixed_labels.into_iter().map(Violation::MixedEntryLabels));
        let limits: Vec<Limit> = self.limits().collect();
        let mut entered_by_limit: BTreeMap<usize, usize> = BTreeMap::new();
        for l in &limits {
            if self.next(l.hi).map(|(_, to)| to) != Some(l.lo) {
                out.push(Violation::LimitWithoutLoop(*l));
            }
            *entered_by_limit.entry(l.target).or_default() += 1;
        }
        for (x, a) in limits.iter().enumerate() {
            for b in &limits[x + 1..] {
                let disjoint = a.hi < b.lo || b.hi < a.lo;
                let nested = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
                if !disjoint && !nested {
                    out.push(Violation::NotWellNested(*a, *b));
                }
            }
        }
        for q in range {
            let by_succ = entered_by_succ.contains_key(&q);
            let by_limit = entered_by_limit.get(&q).copied().unwrap_or(0);
            if q == self.first {
                if by_succ || by_limit > 0 {
                    out.push(Violation::InitialReached);
                }
            } else if !self.sharp && ((by_succ && by_limit > 0) || by_limit > 1) {
                out.push(Violation::MixedEntry(q));
            } else if !by_succ && by_limit == 0 {
                out.push(Violation::Unreachable(q));
            }
        }
        out
    }

    /// The expression with the state number written before each token,
    /// e.g. `(0a1w2b)3w4a5w6`.
    pub fn numbered_word(&self, alphabet: &crate::word::Alphabet) -> Result<String> {
        let mut out = String::new();
        self.write_numbered(&mut out, alphabet, self.first, self.last)?;
        out.push_str(&format!("{}", self.last));
        Ok(out)
    }

    fn write_numbered(
        &self,
        out: &mut String,
        alphabet: &crate::word::Alphabet,
        a: usize,
        b: usize,
    ) -> Result<()> {
        let mut s = a;
        while s < b {
            if let Some(hi) = self.group_starting_at(s, b) {
                let single = hi == s + 1;
                if !single {
                    out.push('(');
                }
                self.write_numbered(out, alphabet, s, hi)?;
                if !single {
                    out.push(')');
                }
                out.push_str(&format!("{hi}w"));
                s = hi + 1;
            } else {
                match self.tokens[s - self.first] {
                    Token::Letter(l) => {
                        out.push_str(&format!("{s}"));
                        crate::word::write_letter(out, alphabet, l)
                            .map_err(|_| Error::Invariant("formatting failed".into()))?;
                    }
                    Token::Omega => return Err(Error::Invariant("unmatched ω token".into())),
                }
                s += 1;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Builder {
    tokens: Vec<Token>,
    succ: Vec<(Letter, usize)>,
    limits: BTreeMap<(usize, usize), usize>,
}

impl Builder {
    fn emit(&mut self, e: &RatExpr) {
        match e {
            RatExpr::Letter(l) => {
                let s = self.tokens.len();
                self.tokens.push(Token::Letter(*l));
                self.succ.push((*l, s + 1));
            }
            RatExpr::Concat(cs) => cs.iter().for_each(|c| self.emit(c)),
            RatExpr::Omega(body) => {
                let p = self.tokens.len();
                self.emit(body);
                let i = self.tokens.len();
                self.succ.push((body.first_letter(), p + 1));
                self.limits.insert((p + 1, i), i + 1);
                self.tokens.push(Token::Omega);
            }
        }
    }
}
