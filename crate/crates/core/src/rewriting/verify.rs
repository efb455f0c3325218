use thiserror::Error;

use super::{apply_in_place, IllegalMove, Move, MoveSink, Trace};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub end: Word,
    /// Number of relator applications.
    pub cost: u64,
    /// Longest intermediate word, the start word included.
    pub max_len: usize,
    pub moves: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index} ({mv:?}): {source}")]
pub struct TraceError {
    pub index: u64,
    pub mv: Move,
    pub source: IllegalMove,
}

/// Streaming verifier: replays each recorded move on its own copy of the
/// word. After the first illegal move it ignores everything that follows.
#[derive(Debug, Clone)]
pub struct Replayer {
    word: Vec<Letter>,
    cost: u64,
    max_len: usize,
    moves: u64,
    error: Option<TraceError>,
}

impl Replayer {
    pub fn new(start: &Word) -> Replayer {
        Replayer {
            word: start.letters().to_vec(),
            cost: 0,
            max_len: start.len(),
            moves: 0,
            error: None,
        }
    }

    pub fn step(&mut self, mv: &Move) -> Result<(), TraceError> {
        if let Some(err) = &self.error {
            return Err(err.clone());
        }
        if let Err(source) = apply_in_place(&mut self.word, mv) {
            let err = TraceError {
                index: self.moves,
                mv: *mv,
                source,
            };
            self.error = Some(err.clone());
            return Err(err);
        }
        self.moves += 1;
        if mv.is_relator() {
            self.cost += 1;
        }
        self.max_len = self.max_len.max(self.word.len());
        Ok(())
    }

    pub fn current(&self) -> &[Letter] {
        &self.word
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn finish(self) -> Result<VerifyReport, TraceError> {
        match self.error {
            Some(err) => Err(err),
            None => Ok(VerifyReport {
                end: Word::from_letters(self.word),
                cost: self.cost,
                max_len: self.max_len,
                moves: self.moves,
            }),
        }
    }
}

impl MoveSink for Replayer {
    fn record(&mut self, mv: &Move) {
        let _ = self.step(mv);
    }
}

/// Replays every move of `t` from its start word.
pub fn verify_trace(t: &Trace) -> Result<VerifyReport, TraceError> {
    let mut r = Replayer::new(&t.start);
    for mv in &t.moves {
        r.step(mv)?;
    }
    r.finish()
}
