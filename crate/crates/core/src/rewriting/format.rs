//! Line-oriented trace files.
//!
//! ```text
//! <start word>
//! R <pos> <lhs> <rhs>
//! F <pos>
//! E <pos> <letter>
//! ```
//!
//! Fields are separated by exactly one space. Words use the ASCII letter
//! encoding, so an empty side of a relator move is an empty field.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Move, MoveSink, RewriteTable, Trace};
use crate::words::{Letter, ParseError, Word};

#[derive(Debug, Error)]
pub enum TraceFileError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: missing start word")]
    MissingStart { line: usize },
    #[error("line {line}: bad word: {source}")]
    BadWord { line: usize, source: ParseError },
    #[error("line {line}: malformed move {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: ({lhs}, {rhs}) is not a relator rewrite pair")]
    UnknownRule { line: usize, lhs: String, rhs: String },
}

pub fn format_move(mv: &Move) -> String {
    match *mv {
        Move::FreeReduce { pos } => format!("F {pos}"),
        Move::FreeExpand { pos, letter } => format!("E {pos} {letter}"),
        Move::ApplyRelator { pos, rule } => format!("R {pos} {} {}", rule.lhs(), rule.rhs()),
    }
}

pub fn parse_move(text: &str, line: usize) -> Result<Move, TraceFileError> {
    let malformed = || TraceFileError::Malformed {
        line,
        text: text.to_string(),
    };
    let fields: Vec<&str> = text.split(' ').collect();
    let pos = |s: &str| -> Result<usize, TraceFileError> {
        // Reject signs and leading zeros so that formatting is the inverse.
        if s.is_empty() || (s.len() > 1 && s.starts_with('0')) || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse().map_err(|_| malformed())
    };
    let word = |s: &str| Word::parse(s).map_err(|source| TraceFileError::BadWord { line, source });
    match fields.as_slice() {
        ["F", p] => Ok(Move::FreeReduce { pos: pos(p)? }),
        ["E", p, l] => {
            let mut chars = l.chars();
            match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(letter), None) => Ok(Move::FreeExpand { pos: pos(p)?, letter }),
                _ => Err(malformed()),
            }
        }
        ["R", p, lhs, rhs] => {
            let (l, r) = (word(lhs)?, word(rhs)?);
            match RewriteTable::global().lookup(&l, &r) {
                Some(rule) => Ok(Move::ApplyRelator { pos: pos(p)?, rule }),
                None => Err(TraceFileError::UnknownRule {
                    line,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }),
            }
        }
        _ => Err(malformed()),
    }
}

/// Streams moves to a writer as they are recorded. I/O errors are held
/// until [`TraceWriter::finish`].
pub struct TraceWriter<W: Write> {
    out: W,
    error: Option<io::Error>,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(mut out: W, start: &Word) -> io::Result<TraceWriter<W>> {
        writeln!(out, "{start}")?;
        Ok(TraceWriter { out, error: None })
    }

    pub fn finish(mut self) -> io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> MoveSink for TraceWriter<W> {
    fn record(&mut self, mv: &Move) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{}", format_move(mv)) {
                self.error = Some(e);
            }
        }
    }
}

pub fn write_trace<W: Write>(out: W, trace: &Trace) -> io::Result<W> {
    let mut tw = TraceWriter::new(out, &trace.start)?;
    for mv in &trace.moves {
        tw.record(mv);
    }
    tw.finish()
}

/// Iterates over the moves of a trace file after reading its start word.
pub struct TraceReader<R: BufRead> {
    lines: io::Lines<R>,
    line: usize,
    start: Word,
}

impl<R: BufRead> TraceReader<R> {
    pub fn new(input: R) -> Result<TraceReader<R>, TraceFileError> {
        let mut lines = input.lines();
        let first = lines.next().ok_or(TraceFileError::MissingStart { line: 1 })??;
        let start = Word::parse(&first).map_err(|source| TraceFileError::BadWord { line: 1, source })?;
        Ok(TraceReader {
            lines,
            line: 1,
            start,
        })
    }

    pub fn start(&self) -> &Word {
        &self.start
    }
}

impl<R: BufRead> Iterator for TraceReader<R> {
    type Item = Result<Move, TraceFileError>;

    fn next(&mut self) -> Option<Self::Item> {
        let text = match self.lines.next()? {
            Ok(t) => t,
            Err(e) => return Some(Err(e.into())),
        };
        self.line += 1;
        Some(parse_move(&text, self.line))
    }
}

pub fn read_trace<R: BufRead>(input: R) -> Result<Trace, TraceFileError> {
    let mut reader = TraceReader::new(input)?;
    let moves = reader.by_ref().collect::<Result<Vec<_>, _>>()?;
    Ok(Trace {
        start: reader.start,
        moves,
    })
}
