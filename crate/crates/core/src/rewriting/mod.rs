//! The presentation of `S`, elementary moves, traces and their verification.
//!
//! Every relator application in the crate goes through [`RewriteTable`]: a
//! [`Move::ApplyRelator`] carries a [`RuleId`] that can only be obtained
//! from the table, so an in-memory move is a table entry by construction
//! and a parsed move is looked up before it is accepted.

mod format;
mod rewriter;
mod verify;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::words::{Letter, Word};

pub use format::{read_trace, write_trace, TraceFileError, TraceReader, TraceWriter};
pub use rewriter::Rewriter;
pub use verify::{verify_trace, Replayer, TraceError, VerifyReport};

/// The hard-coded presentation
/// `<a,b,c,d,s | [a,c],[a,d],[b,c],[b,d], s^a=s^b=s^c=s^d>`.
#[derive(Debug, Clone)]
pub struct Presentation {
    relators: Vec<Word>,
}

impl Presentation {
    pub fn stallings() -> Presentation {
        // [x,y] = x^-1 y^-1 x y and s^x s^-y = x^-1 s x y^-1 s^-1 y.
        let texts = [
            "ACac", "ADad", "BCbc", "BDbd", "AsaBSb", "AsaCSc", "AsaDSd", "BsbCSc", "BsbDSd",
            "CscDSd",
        ];
        Presentation {
            relators: texts.iter().map(|t| Word::parse(t).unwrap()).collect(),
        }
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The four relators `[x,y]` with `x ∈ {a,b}`, `y ∈ {c,d}`.
    pub fn commutators(&self) -> &[Word] {
        &self.relators[..4]
    }
}

/// Index of a `(lhs, rhs)` pair in the global [`RewriteTable`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(u16);

impl RuleId {
    pub fn lhs(self) -> &'static Word {
        &RewriteTable::global().rules[self.0 as usize].0
    }

    pub fn rhs(self) -> &'static Word {
        &RewriteTable::global().rules[self.0 as usize].1
    }

    /// The rule rewriting `rhs` back to `lhs`.
    pub fn reversed(self) -> RuleId {
        RewriteTable::global().reversed[self.0 as usize]
    }
}

impl fmt::Debug for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}", self.lhs(), self.rhs())
    }
}

/// Longest side of a tabulated rewrite pair.
pub const MAX_RULE_SIDE: usize = 4;

type LetterGrid = [[Option<RuleId>; Letter::COUNT]; Letter::COUNT];

/// All pairs `(u, v)` of words with `ℓ(u), ℓ(v) ≤ 4` such that some cyclic
/// conjugate of `u v^-1` is a relator or the inverse of one.
pub struct RewriteTable {
    rules: Vec<(Word, Word)>,
    index: HashMap<(Word, Word), RuleId>,
    reversed: Vec<RuleId>,
    swap: LetterGrid,
    // Indexed by [s exponent is negative][x][y^-1].
    convey: [LetterGrid; 2],
}

impl RewriteTable {
    pub fn global() -> &'static RewriteTable {
        static TABLE: OnceLock<RewriteTable> = OnceLock::new();
        TABLE.get_or_init(|| RewriteTable::build(&Presentation::stallings()))
    }

    fn build(pres: &Presentation) -> RewriteTable {
        let mut pairs = BTreeSet::new();
        for r in pres.relators() {
            for rel in [r.clone(), r.inverse()] {
                let n = rel.len();
                for rot in 0..n {
                    let cyc: Vec<Letter> = rel[rot..].iter().chain(&rel[..rot]).copied().collect();
                    for k in 0..=n {
                        if k <= MAX_RULE_SIDE && n - k <= MAX_RULE_SIDE {
                            let u = Word::from_letters(&cyc[..k]);
                            let v = Word::from_letters(&cyc[k..]).inverse();
                            pairs.insert((u, v));
                        }
                    }
                }
            }
        }
        let rules: Vec<(Word, Word)> = pairs.into_iter().collect();
        let index: HashMap<(Word, Word), RuleId> = rules
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), RuleId(i as u16)))
            .collect();
        let reversed = rules
            .iter()
            .map(|(u, v)| index[&(v.clone(), u.clone())])
            .collect();
        let mut swap = [[None; Letter::COUNT]; Letter::COUNT];
        let mut convey = [[[None; Letter::COUNT]; Letter::COUNT]; 2];
        for (i, (u, v)) in rules.iter().enumerate() {
            let id = Some(RuleId(i as u16));
            if u.len() == 2 && v.len() == 2 && u[0] == v[1] && u[1] == v[0] {
                swap[u[0].code()][u[1].code()] = id;
            }
            if u.len() == 3 && v.len() == 3 && u[0].is_s() && v[2] == u[0] && v[..2] == u[1..] {
                convey[(!u[0].is_positive()) as usize][u[1].code()][u[2].code()] = id;
            }
        }
        RewriteTable {
            rules,
            index,
            reversed,
            swap,
            convey,
        }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.rules.iter().map(|(u, v)| (u, v))
    }

    pub fn ids(&self) -> impl Iterator<Item = RuleId> {
        (0..self.rules.len() as u16).map(RuleId)
    }

    pub fn lookup(&self, lhs: &Word, rhs: &Word) -> Option<RuleId> {
        self.index.get(&(lhs.clone(), rhs.clone())).copied()
    }

    pub fn contains(&self, lhs: &Word, rhs: &Word) -> bool {
        self.lookup(lhs, rhs).is_some()
    }

    /// `x y -> y x` for commuting letters `x`, `y`.
    pub fn swap_rule(&self, x: Letter, y: Letter) -> Option<RuleId> {
        self.swap[x.code()][y.code()]
    }

    /// `s^e x y^-1 -> x y^-1 s^e` for distinct base letters `x`, `y`.
    pub fn convey_rule(&self, s: Letter, x: Letter, y_inv: Letter) -> Option<RuleId> {
        debug_assert!(s.is_s());
        self.convey[(!s.is_positive()) as usize][x.code()][y_inv.code()]
    }
}

/// `rewrite_pairs()`: the whole table as owned pairs.
pub fn rewrite_pairs() -> Vec<(Word, Word)> {
    RewriteTable::global()
        .pairs()
        .map(|(u, v)| (u.clone(), v.clone()))
        .collect()
}

/// One elementary step. Positions index the word the move is applied to.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// `α x x^-1 β -> α β`, where `x` sits at `pos`.
    FreeReduce { pos: usize },
    /// `α β -> α x x^-1 β`, inserting at `pos`.
    FreeExpand { pos: usize, letter: Letter },
    /// `α u β -> α v β`, where `u` starts at `pos`.
    ApplyRelator { pos: usize, rule: RuleId },
}

impl Move {
    pub fn pos(&self) -> usize {
        match *self {
            Move::FreeReduce { pos } | Move::FreeExpand { pos, .. } | Move::ApplyRelator { pos, .. } => {
                pos
            }
        }
    }

    pub fn is_relator(&self) -> bool {
        matches!(self, Move::ApplyRelator { .. })
    }

    /// Change in word length when the move is applied.
    pub fn length_delta(&self) -> isize {
        match *self {
            Move::FreeReduce { .. } => -2,
            Move::FreeExpand { .. } => 2,
            Move::ApplyRelator { rule, .. } => rule.rhs().len() as isize - rule.lhs().len() as isize,
        }
    }

    /// Looks `(lhs, rhs)` up in the table.
    pub fn relator(pos: usize, lhs: &Word, rhs: &Word) -> Option<Move> {
        RewriteTable::global()
            .lookup(lhs, rhs)
            .map(|rule| Move::ApplyRelator { pos, rule })
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::FreeReduce { pos } => write!(f, "F {pos}"),
            Move::FreeExpand { pos, letter } => write!(f, "E {pos} {letter}"),
            Move::ApplyRelator { pos, rule } => write!(f, "R {pos} {} {}", rule.lhs(), rule.rhs()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IllegalReason {
    #[error("position out of range")]
    OutOfRange,
    #[error("no inverse pair at position")]
    NotInversePair,
    #[error("left-hand side does not occur at position")]
    LhsMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("illegal move at position {position}: {reason}")]
pub struct IllegalMove {
    pub position: usize,
    pub reason: IllegalReason,
}

pub(crate) fn apply_in_place(word: &mut Vec<Letter>, mv: &Move) -> Result<(), IllegalMove> {
    let illegal = |position, reason| Err(IllegalMove { position, reason });
    match *mv {
        Move::FreeReduce { pos } => {
            if pos + 1 >= word.len() {
                return illegal(pos, IllegalReason::OutOfRange);
            }
            if word[pos + 1] != word[pos].inverse() {
                return illegal(pos, IllegalReason::NotInversePair);
            }
            word.drain(pos..pos + 2);
        }
        Move::FreeExpand { pos, letter } => {
            if pos > word.len() {
                return illegal(pos, IllegalReason::OutOfRange);
            }
            word.splice(pos..pos, [letter, letter.inverse()]);
        }
        Move::ApplyRelator { pos, rule } => {
            let (lhs, rhs) = (rule.lhs(), rule.rhs());
            if pos + lhs.len() > word.len() {
                return illegal(pos, IllegalReason::OutOfRange);
            }
            if word[pos..pos + lhs.len()] != lhs[..] {
                return illegal(pos, IllegalReason::LhsMismatch);
            }
            if lhs.len() == rhs.len() {
                word[pos..pos + rhs.len()].copy_from_slice(rhs);
            } else {
                word.splice(pos..pos + lhs.len(), rhs.iter().copied());
            }
        }
    }
    Ok(())
}

/// Applies one move to `w`, returning the rewritten word.
pub fn apply_move(w: &Word, mv: &Move) -> Result<Word, IllegalMove> {
    let mut letters = w.letters().to_vec();
    apply_in_place(&mut letters, mv)?;
    Ok(Word::from_letters(letters))
}

/// Receives moves as they are produced.
pub trait MoveSink {
    fn record(&mut self, mv: &Move);
}

impl MoveSink for Vec<Move> {
    fn record(&mut self, mv: &Move) {
        self.push(*mv);
    }
}

/// Discards moves.
impl MoveSink for () {
    fn record(&mut self, _: &Move) {}
}

impl<A: MoveSink, B: MoveSink> MoveSink for (A, B) {
    fn record(&mut self, mv: &Move) {
        self.0.record(mv);
        self.1.record(mv);
    }
}

impl<T: MoveSink + ?Sized> MoveSink for &mut T {
    fn record(&mut self, mv: &Move) {
        (**self).record(mv);
    }
}

/// A start word and the moves applied to it, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub start: Word,
    pub moves: Vec<Move>,
}

impl Trace {
    pub fn new(start: Word) -> Trace {
        Trace {
            start,
            moves: Vec::new(),
        }
    }

    /// Number of relator applications.
    pub fn cost(&self) -> u64 {
        self.moves.iter().filter(|m| m.is_relator()).count() as u64
    }

    /// Appends `other`, whose start must be this trace's end word.
    pub fn concat(mut self, other: Trace) -> Trace {
        self.moves.extend(other.moves);
        self
    }
}
