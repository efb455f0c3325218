//! Letters and words over the generators `a, b, c, d, s`.
//!
//! The external encoding is one ASCII character per letter: lowercase for
//! exponent `+1`, uppercase for exponent `-1`. So `"aC"` is `a c^-1`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

/// One of the five generators of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
    D,
    S,
}

impl Gen {
    pub const ALL: [Gen; 5] = [Gen::A, Gen::B, Gen::C, Gen::D, Gen::S];
    /// The generators of the base group `F(a,b) x F(c,d)`.
    pub const BASE: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    fn from_index(i: u8) -> Gen {
        Gen::ALL[i as usize]
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
            Gen::S => 's',
        }
    }

    /// `a` or `b`.
    pub fn is_ab(self) -> bool {
        matches!(self, Gen::A | Gen::B)
    }

    /// `c` or `d`.
    pub fn is_cd(self) -> bool {
        matches!(self, Gen::C | Gen::D)
    }
}

/// A generator raised to the power `+1` or `-1`, packed into a byte.
///
/// The encoding is `2 * generator + (exponent == -1)`, so inversion is a
/// single bit flip and the ten letters map onto `0..10`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    /// Number of distinct letters.
    pub const COUNT: usize = 10;

    pub const fn new(gen: Gen, positive: bool) -> Letter {
        Letter((gen as u8) << 1 | (!positive) as u8)
    }

    pub const fn pos(gen: Gen) -> Letter {
        Letter::new(gen, true)
    }

    pub const fn neg(gen: Gen) -> Letter {
        Letter::new(gen, false)
    }

    /// All ten letters in code order.
    pub fn all() -> impl Iterator<Item = Letter> {
        (0..Self::COUNT as u8).map(Letter)
    }

    /// The eight letters of the base group.
    pub fn base() -> impl Iterator<Item = Letter> {
        (0..8u8).map(Letter)
    }

    pub fn gen(self) -> Gen {
        Gen::from_index(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn exponent(self) -> i64 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn is_s(self) -> bool {
        self.gen() == Gen::S
    }

    pub fn is_ab(self) -> bool {
        self.gen().is_ab()
    }

    pub fn is_cd(self) -> bool {
        self.gen().is_cd()
    }

    /// Dense index in `0..10`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Option<Letter> {
        (code < Self::COUNT).then_some(Letter(code as u8))
    }

    pub fn to_char(self) -> char {
        let c = self.gen().symbol();
        if self.is_positive() {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        let gen = match ch.to_ascii_lowercase() {
            'a' => Gen::A,
            'b' => Gen::B,
            'c' => Gen::C,
            'd' => Gen::D,
            's' => Gen::S,
            _ => return None,
        };
        Some(Letter::new(gen, ch.is_ascii_lowercase()))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

// Short names used throughout the crate and its tests.
pub const A: Letter = Letter::pos(Gen::A);
pub const B: Letter = Letter::pos(Gen::B);
pub const C: Letter = Letter::pos(Gen::C);
pub const D: Letter = Letter::pos(Gen::D);
pub const S: Letter = Letter::pos(Gen::S);
pub const A_INV: Letter = Letter::neg(Gen::A);
pub const B_INV: Letter = Letter::neg(Gen::B);
pub const C_INV: Letter = Letter::neg(Gen::C);
pub const D_INV: Letter = Letter::neg(Gen::D);
pub const S_INV: Letter = Letter::neg(Gen::S);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid character {ch:?} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub ch: char,
}

/// A finite sequence of letters. No reduction is ever applied implicitly.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Word {
        Word(letters.into())
    }

    pub fn parse(text: &str) -> Result<Word, ParseError> {
        text.chars()
            .enumerate()
            .map(|(position, ch)| Letter::from_char(ch).ok_or(ParseError { position, ch }))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `w^-1`: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn count_s(&self) -> usize {
        self.0.iter().filter(|l| l.is_s()).count()
    }

    pub fn is_s_free(&self) -> bool {
        self.0.iter().all(|l| !l.is_s())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Word, ParseError> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    Word::parse(text)
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(u: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(u.len());
    for &l in u {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

pub fn exponent_sum(u: &[Letter]) -> i64 {
    u.iter().map(|l| l.exponent()).sum()
}

/// Deletes every `s^{±1}`.
pub fn strip_s(u: &[Letter]) -> Word {
    u.iter().copied().filter(|l| !l.is_s()).collect()
}
