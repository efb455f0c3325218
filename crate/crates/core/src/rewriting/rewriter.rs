use super::{apply_in_place, Move, MoveSink, RewriteTable, RuleId};
use crate::words::{Letter, Word};

/// A mutable word that forwards every move it applies to a sink.
///
/// All algorithms in the crate rewrite through this type, so the moves seen
/// by the sink are exactly the moves that turned the start word into
/// [`Rewriter::word`]. Moves are checked as they are applied; an illegal
/// move is a bug in the caller and panics.
pub struct Rewriter<S: MoveSink> {
    word: Vec<Letter>,
    sink: S,
    cost: u64,
    moves: u64,
}

impl<S: MoveSink> Rewriter<S> {
    pub fn new(start: &Word, sink: S) -> Rewriter<S> {
        Rewriter::from_letters(start.letters().to_vec(), sink)
    }

    pub fn from_letters(word: Vec<Letter>, sink: S) -> Rewriter<S> {
        Rewriter {
            word,
            sink,
            cost: 0,
            moves: 0,
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Relator applications so far.
    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }

    pub fn sink(&self) -> &S {
        &self.sink
    }

    pub fn sink_mut(&mut self) -> &mut S {
        &mut self.sink
    }

    pub fn into_parts(self) -> (Word, S) {
        (Word::from_letters(self.word), self.sink)
    }

    pub fn apply(&mut self, mv: Move) {
        if let Err(e) = apply_in_place(&mut self.word, &mv) {
            panic!("internal move {mv:?} is illegal: {e}");
        }
        self.note(&mv);
    }

    fn note(&mut self, mv: &Move) {
        self.sink.record(mv);
        self.moves += 1;
        if mv.is_relator() {
            self.cost += 1;
        }
    }

    pub fn reduce(&mut self, pos: usize) {
        self.apply(Move::FreeReduce { pos });
    }

    pub fn expand(&mut self, pos: usize, letter: Letter) {
        self.apply(Move::FreeExpand { pos, letter });
    }

    pub fn rule(&mut self, pos: usize, rule: RuleId) {
        self.apply(Move::ApplyRelator { pos, rule });
    }

    /// Swaps the commuting letters at `pos` and `pos + 1`.
    pub fn swap(&mut self, pos: usize) {
        let (x, y) = (self.word[pos], self.word[pos + 1]);
        let rule = RewriteTable::global()
            .swap_rule(x, y)
            .unwrap_or_else(|| panic!("{x:?} and {y:?} do not commute"));
        self.note(&Move::ApplyRelator { pos, rule });
        self.word.swap(pos, pos + 1);
    }

    /// Moves the `s^{±1}` at `pos` past the two letters after it, which
    /// must be `x y^-1` for distinct positive base letters.
    pub fn convey(&mut self, pos: usize) {
        let (s, x, y) = (self.word[pos], self.word[pos + 1], self.word[pos + 2]);
        let rule = RewriteTable::global()
            .convey_rule(s, x, y)
            .unwrap_or_else(|| panic!("cannot convey {s:?} past {x:?}{y:?}"));
        self.note(&Move::ApplyRelator { pos, rule });
        self.word[pos..pos + 3].rotate_left(1);
    }
}
