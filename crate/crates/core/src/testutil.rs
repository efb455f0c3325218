use proptest::prelude::*;

use crate::words::{Letter, Word};

pub(crate) fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

pub(crate) fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0usize..Letter::COUNT, 0..=max_len)
        .prop_map(|v| v.into_iter().map(|c| Letter::from_code(c).unwrap()).collect())
}

/// Words over `{a,b,c,d}^±`.
pub(crate) fn arb_base_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0usize..8, 0..=max_len)
        .prop_map(|v| v.into_iter().map(|c| Letter::from_code(c).unwrap()).collect())
}

/// s-free words with exponent sum zero: an even number of random letters,
/// with the earliest letters of the majority sign flipped until balanced.
pub(crate) fn arb_balanced(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..8, 0usize..8), 0..=max_len / 2).prop_map(|pairs| {
        let mut v: Vec<Letter> = pairs
            .into_iter()
            .flat_map(|(x, y)| [x, y])
            .map(|c| Letter::from_code(c).unwrap())
            .collect();
        balance(&mut v);
        Word::from_letters(v)
    })
}

/// Flips exponents of the earliest majority-sign letters until the
/// exponent sum of the even-length `v` is zero.
pub(crate) fn balance(v: &mut [Letter]) {
    let mut xi = crate::words::exponent_sum(v);
    for l in v.iter_mut() {
        if xi == 0 {
            break;
        }
        if (xi > 0) == l.is_positive() {
            xi -= 2 * l.exponent();
            *l = l.inverse();
        }
    }
    debug_assert_eq!(xi, 0);
}
