use thiserror::Error;

use crate::altform::is_balanced;
use crate::fxf::fxf_equal;
use crate::words::{Letter, Word};

/// Removes pinches `s^e p s^-e` (p s-free of exponent sum zero) until none
/// is left. Returns the s-free result, or `None` if s letters remain.
///
/// One left-to-right pass suffices: every pinch closes after its content,
/// so each unmatched `s` letter opens a frame that collects the base
/// letters after it, and a closing letter either pops a frame of exponent
/// sum zero or opens a new one.
pub fn pinch_reduce(u: &[Letter]) -> Option<Word> {
    struct Frame {
        opener: Option<Letter>,
        content: Vec<Letter>,
        xi: i64,
    }
    let mut frames = vec![Frame {
        opener: None,
        content: Vec::new(),
        xi: 0,
    }];
    for &l in u {
        let top = frames.last_mut().expect("root frame");
        if !l.is_s() {
            top.content.push(l);
            top.xi += l.exponent();
        } else if top.opener == Some(l.inverse()) && top.xi == 0 {
            let done = frames.pop().expect("non-root frame");
            frames.last_mut().expect("root frame").content.extend(done.content);
        } else {
            frames.push(Frame {
                opener: Some(l),
                content: Vec::new(),
                xi: 0,
            });
        }
    }
    if frames.len() == 1 {
        Some(Word::from_letters(frames.pop().expect("root frame").content))
    } else {
        None
    }
}

/// Whether `u` represents the identity of `S`.
pub fn decide_identity(u: &[Letter]) -> bool {
    match pinch_reduce(u) {
        Some(rest) => fxf_equal(&rest, &[]).expect("s-free"),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FindXyError {
    #[error("word has fewer than two letters")]
    TooShort,
    #[error("word is not balanced")]
    NotBalanced,
}

/// `s^e s^-e`, or two base letters of opposite exponents.
pub(crate) fn is_xy_pair(x: Letter, y: Letter) -> bool {
    if x.is_s() || y.is_s() {
        x.is_s() && y == x.inverse()
    } else {
        x.exponent() == -y.exponent()
    }
}

/// The 1-based positions of the leftmost adjacent pair `x y` of `u` that
/// is either `s^e s^-e` or two base letters of opposite exponents.
pub fn find_xy(u: &[Letter]) -> Result<(usize, usize), FindXyError> {
    if u.len() < 2 {
        return Err(FindXyError::TooShort);
    }
    if !is_balanced(u) {
        return Err(FindXyError::NotBalanced);
    }
    u.windows(2)
        .position(|p| is_xy_pair(p[0], p[1]))
        .map(|i| (i + 1, i + 2))
        .ok_or(FindXyError::NotBalanced)
}
