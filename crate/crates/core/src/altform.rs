//! Alternating and balanced words, partitioned alternating forms (PAF) and
//! dyadic alternating forms (DAF).
//!
//! A PAF is built piece by piece. Piece `i` of a partition `v_1 ... v_k`
//! contributes the block
//!
//! ```text
//! rho_i (c a^-1)^alpha_i sigma_i (a c^-1)^beta_i
//! ```
//!
//! where `rho_i`, `sigma_i` come from the `a,b` and `c,d` letters of `v_i`,
//! `alpha_i = xi(v_1 ... v_{i-1} lambda_i)` and `beta_i = xi(v_1 ... v_i)`.
//! The last `beta` is zero because the word is balanced.

use std::ops::Range;

use thiserror::Error;

use crate::dyadic::{mdc, DyadicError, DyadicInterval, Interval};
use crate::engine::pinch_reduce;
use crate::fxf::{shuffle_in, Front};
use crate::rewriting::{Rewriter, Trace};
use crate::words::{exponent_sum, strip_s, Letter, Word, A, A_INV, C, C_INV};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AltFormError {
    #[error("word contains s at position {position}")]
    ContainsS { position: usize },
    #[error("word is not balanced")]
    NotBalanced,
    #[error("partition does not split the word into nonempty pieces")]
    BadPartition,
    #[error("position range does not match the host word")]
    PositionMismatch,
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

/// Even length, positive base letters at odd (1-based) positions and
/// negative base letters at even positions.
pub fn is_alternating(u: &[Letter]) -> bool {
    u.len().is_multiple_of(2)
        && u
            .iter()
            .enumerate()
            .all(|(i, l)| !l.is_s() && l.is_positive() == (i % 2 == 0))
}

/// Exponent sum zero and representing an element of `<a,b,c,d>`.
pub fn is_balanced(u: &[Letter]) -> bool {
    exponent_sum(u) == 0 && pinch_reduce(u).is_some()
}

/// `a, b, a^-1, b^-1 -> a c^-1, b c^-1, c a^-1, c b^-1`.
fn push_rho(out: &mut Vec<Letter>, l: Letter) {
    if l.is_positive() {
        out.extend([l, C_INV]);
    } else {
        out.extend([C, l]);
    }
}

/// `c, d, c^-1, d^-1 -> c a^-1, d a^-1, a c^-1, a d^-1`.
fn push_sigma(out: &mut Vec<Letter>, l: Letter) {
    if l.is_positive() {
        out.extend([l, A_INV]);
    } else {
        out.extend([A, l]);
    }
}

pub fn rho(lambda: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(2 * lambda.len());
    for &l in lambda {
        debug_assert!(l.is_ab());
        push_rho(&mut out, l);
    }
    Word::from_letters(out)
}

pub fn sigma(mu: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(2 * mu.len());
    for &l in mu {
        debug_assert!(l.is_cd());
        push_sigma(&mut out, l);
    }
    Word::from_letters(out)
}

/// `(c a^-1)^m`.
fn push_ca(out: &mut Vec<Letter>, m: i64) {
    let pair = if m >= 0 { [C, A_INV] } else { [A, C_INV] };
    for _ in 0..m.unsigned_abs() {
        out.extend(pair);
    }
}

/// `(a c^-1)^m`.
fn push_ac(out: &mut Vec<Letter>, m: i64) {
    push_ca(out, -m);
}

pub fn power_ca(m: i64) -> Word {
    let mut out = Vec::new();
    push_ca(&mut out, m);
    Word::from_letters(out)
}

pub fn power_ac(m: i64) -> Word {
    let mut out = Vec::new();
    push_ac(&mut out, m);
    Word::from_letters(out)
}

/// One block `rho (c a^-1)^alpha sigma (a c^-1)^beta`, with `rho` and
/// `sigma` kept as the letters `lambda` and `mu` they are built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltPiece {
    pub lambda: Word,
    pub mu: Word,
    pub alpha: i64,
    pub beta: i64,
}

impl AltPiece {
    /// `l(v_i)`.
    pub fn piece_len(&self) -> usize {
        self.lambda.len() + self.mu.len()
    }

    pub fn flat_len(&self) -> usize {
        2 * self.piece_len() + 2 * (self.alpha.unsigned_abs() + self.beta.unsigned_abs()) as usize
    }

    pub fn rho_len(&self) -> usize {
        2 * self.lambda.len()
    }

    pub fn sigma_len(&self) -> usize {
        2 * self.mu.len()
    }

    pub fn write_flat(&self, out: &mut Vec<Letter>) {
        for &l in self.lambda.iter() {
            push_rho(out, l);
        }
        push_ca(out, self.alpha);
        for &l in self.mu.iter() {
            push_sigma(out, l);
        }
        push_ac(out, self.beta);
    }

    pub fn flatten(&self) -> Word {
        let mut out = Vec::with_capacity(self.flat_len());
        self.write_flat(&mut out);
        Word::from_letters(out)
    }

    /// `lambda` over `{a,b}` and `mu` over `{c,d}`.
    pub fn is_well_formed(&self) -> bool {
        self.lambda.iter().all(|l| l.is_ab()) && self.mu.iter().all(|l| l.is_cd())
    }
}

/// A sequence of blocks; the PAF of a word is one particular shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AltShape {
    pub pieces: Vec<AltPiece>,
}

impl AltShape {
    /// The PAF shape of the concatenation of `pieces`.
    pub fn paf<P: AsRef<[Letter]>>(pieces: &[P]) -> Result<AltShape, AltFormError> {
        let mut out = Vec::with_capacity(pieces.len());
        let mut xi = 0i64;
        let mut offset = 0;
        for p in pieces {
            let p = p.as_ref();
            if let Some(i) = p.iter().position(|l| l.is_s()) {
                return Err(AltFormError::ContainsS { position: offset + i });
            }
            offset += p.len();
            let lambda: Word = p.iter().copied().filter(|l| l.is_ab()).collect();
            let mu: Word = p.iter().copied().filter(|l| l.is_cd()).collect();
            let alpha = xi + exponent_sum(&lambda);
            let beta = alpha + exponent_sum(&mu);
            xi = beta;
            out.push(AltPiece {
                lambda,
                mu,
                alpha,
                beta,
            });
        }
        if xi != 0 {
            return Err(AltFormError::NotBalanced);
        }
        Ok(AltShape { pieces: out })
    }

    pub fn k(&self) -> usize {
        self.pieces.len()
    }

    pub fn flat_len(&self) -> usize {
        self.pieces.iter().map(AltPiece::flat_len).sum()
    }

    /// Offset of block `i` in the flattened word.
    pub fn offset_of(&self, i: usize) -> usize {
        self.pieces[..i].iter().map(AltPiece::flat_len).sum()
    }

    pub fn write_flat(&self, out: &mut Vec<Letter>) {
        for p in &self.pieces {
            p.write_flat(out);
        }
    }

    pub fn flatten(&self) -> Word {
        let mut out = Vec::with_capacity(self.flat_len());
        self.write_flat(&mut out);
        Word::from_letters(out)
    }

    pub fn is_well_formed(&self) -> bool {
        self.pieces.iter().all(AltPiece::is_well_formed)
    }

    /// The underlying word `v_1 ... v_k` with each piece written as
    /// `lambda_i mu_i`.
    pub fn underlying(&self) -> Word {
        self.pieces
            .iter()
            .flat_map(|p| p.lambda.iter().chain(p.mu.iter()).copied())
            .collect()
    }
}

fn split_by_lengths<'a>(v: &'a [Letter], partition: &[usize]) -> Result<Vec<&'a [Letter]>, AltFormError> {
    if partition.contains(&0) || partition.iter().sum::<usize>() != v.len() {
        return Err(AltFormError::BadPartition);
    }
    let mut out = Vec::with_capacity(partition.len());
    let mut at = 0;
    for &n in partition {
        out.push(&v[at..at + n]);
        at += n;
    }
    Ok(out)
}

/// The PAF of the s-free balanced `v` with respect to the partition into
/// consecutive pieces of the given lengths.
pub fn paf(v: &[Letter], partition: &[usize]) -> Result<Word, AltFormError> {
    Ok(paf_shape(v, partition)?.flatten())
}

pub fn paf_shape(v: &[Letter], partition: &[usize]) -> Result<AltShape, AltFormError> {
    if let Some(position) = v.iter().position(|l| l.is_s()) {
        return Err(AltFormError::ContainsS { position });
    }
    if exponent_sum(v) != 0 {
        return Err(AltFormError::NotBalanced);
    }
    AltShape::paf(&split_by_lengths(v, partition)?)
}

/// A trace from `v` to its PAF using commutators and free moves only.
///
/// Works left to right: with `c^m` carried in front of piece `i`, the
/// segment `c^m lambda_i mu_i` is shuffled into
/// `rho_i (c a^-1)^{m+xi(lambda_i)} sigma_i (a c^-1)^{m+xi(v_i)} c^{m+xi(v_i)}`.
pub fn paf_trace(v: &[Letter], partition: &[usize]) -> Result<Trace, AltFormError> {
    let shape = paf_shape(v, partition)?;
    let start = Word::from_letters(v);
    let mut rw = Rewriter::new(&start, Vec::new());
    let mut at = 0;
    let mut m = 0i64;
    for (piece, &n) in shape.pieces.iter().zip(partition) {
        let mut target = Vec::with_capacity(piece.flat_len() + piece.beta.unsigned_abs() as usize);
        piece.write_flat(&mut target);
        let c = if piece.beta >= 0 { C } else { C_INV };
        target.extend(std::iter::repeat_n(c, piece.beta.unsigned_abs() as usize));
        shuffle_in(&mut rw, at, m.unsigned_abs() as usize + n, &target, Front::Ab);
        at += piece.flat_len();
        m = piece.beta;
    }
    let (end, moves) = rw.into_parts();
    debug_assert_eq!(end, shape.flatten());
    Ok(Trace { start, moves })
}

/// Where a balanced subword sits in the s-free host word, and its DAF.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DafDescriptor {
    /// Positions of the letters of `v-hat` in `w-hat`; `None` when `v`
    /// consists of `s` letters only.
    pub host_positions: Option<Interval>,
    /// `mdc(host_positions)`, one interval per piece.
    pub partition: Vec<DyadicInterval>,
    pub shape: AltShape,
}

impl DafDescriptor {
    /// The DAF of the letters of `w_hat` at positions `v` (0-based).
    pub fn from_hat(w_hat: &[Letter], v: Option<Interval>) -> Result<DafDescriptor, AltFormError> {
        let Some(v) = v else {
            return Ok(DafDescriptor::default());
        };
        if v.lo() < 0 || v.hi() as usize >= w_hat.len() {
            return Err(AltFormError::PositionMismatch);
        }
        let partition = mdc(v);
        let pieces: Vec<&[Letter]> = partition
            .iter()
            .map(|d| &w_hat[d.lo() as usize..=d.hi() as usize])
            .collect();
        Ok(DafDescriptor {
            host_positions: Some(v),
            shape: AltShape::paf(&pieces)?,
            partition,
        })
    }

    pub fn word(&self) -> Word {
        self.shape.flatten()
    }
}

/// The DAF of the balanced subword `w[range]` of `w`.
pub fn daf(w: &[Letter], range: Range<usize>) -> Result<(Word, DafDescriptor), AltFormError> {
    if range.start > range.end || range.end > w.len() {
        return Err(AltFormError::PositionMismatch);
    }
    let v = &w[range.clone()];
    if !is_balanced(v) {
        return Err(AltFormError::NotBalanced);
    }
    let w_hat = strip_s(w);
    let first = w[..range.start].iter().filter(|l| !l.is_s()).count() as i64;
    let len = strip_s(v).len() as i64;
    let positions = if len == 0 {
        None
    } else {
        Some(Interval::new(first, first + len - 1)?)
    };
    let desc = DafDescriptor::from_hat(&w_hat, positions)?;
    Ok((desc.word(), desc))
}

/// Both exponent-sum estimates for the pieces of `shape`: for each piece
/// `|xi(v_1..v_i)| < 2 l(v_i)` and `|xi(v_1..v_{i-1} lambda_i)| < 2 l(v_i)`.
pub fn exponent_estimates_hold(shape: &AltShape) -> bool {
    shape.pieces.iter().all(|p| {
        let bound = 2 * p.piece_len() as u64;
        p.beta.unsigned_abs() < bound && p.alpha.unsigned_abs() < bound
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fxf::fxf_equal;
    use crate::rewriting::verify_trace;
    use crate::testutil::{arb_balanced, balance, w};
    use crate::words::B;
    use proptest::prelude::*;

    #[test]
    fn alternating_examples() {
        assert!(is_alternating(&w("aB")));
        assert!(is_alternating(&w("")));
        assert!(!is_alternating(&w("aBc")));
        assert!(!is_alternating(&w("Ab")));
        assert!(!is_alternating(&w("sS")));
    }

    #[test]
    fn balanced_examples() {
        assert!(is_balanced(&w("aB")));
        assert!(!is_balanced(&w("ab")));
        assert!(is_balanced(&w("saBS")));
        assert!(!is_balanced(&w("saS")));
        assert!(!is_balanced(&w("AsaS")));
    }

    #[test]
    fn substitution_tables() {
        assert_eq!(rho(&w("abAB")), w("aCbCcAcB"));
        assert_eq!(sigma(&w("cdCD")), w("cAdAaCaD"));
        assert_eq!(power_ca(2), w("cAcA"));
        assert_eq!(power_ca(-1), w("aC"));
        assert_eq!(power_ac(1), w("aC"));
        assert_eq!(power_ac(-2), w("cAcA"));
    }

    #[test]
    fn paf_examples() {
        assert_eq!(paf(&w(""), &[]).unwrap(), Word::empty());
        assert_eq!(paf(&w("bD"), &[2]).unwrap(), w("bCcAaD"));
        assert_eq!(paf(&w("aC"), &[2]).unwrap(), w("aCcAaC"));
        assert_eq!(paf(&w("ab"), &[2]), Err(AltFormError::NotBalanced));
        assert_eq!(paf(&w("aB"), &[1]), Err(AltFormError::BadPartition));
        assert_eq!(paf(&w("aB"), &[2, 0]), Err(AltFormError::BadPartition));
        assert_eq!(paf(&w("sS"), &[2]), Err(AltFormError::ContainsS { position: 0 }));
        // Two pieces: (a)(a^-1).
        assert_eq!(paf(&w("aA"), &[1, 1]).unwrap(), w("aCcAaCcA"));
    }

    #[test]
    fn paf_trace_examples() {
        for (v, part, end) in [("", vec![], ""), ("bD", vec![2], "bCcAaD"), ("aC", vec![2], "aCcAaC")] {
            let t = paf_trace(&w(v), &part).unwrap();
            let r = verify_trace(&t).unwrap();
            assert_eq!(r.end, w(end));
            if v.is_empty() {
                assert!(t.moves.is_empty());
            }
        }
    }

    #[test]
    fn daf_examples() {
        let (word, desc) = daf(&w("abAB"), 1..1).unwrap();
        assert_eq!(word, Word::empty());
        assert_eq!(desc.host_positions, None);
        let (word, desc) = daf(&w("bD"), 0..2).unwrap();
        assert_eq!(desc.partition, vec![DyadicInterval::new(1, 0)]);
        assert_eq!(word, paf(&w("bD"), &[2]).unwrap());
        // A word of 21 letters with the subword at positions 5..=20.
        let mut host = w("aaaaa").into_letters();
        let mut v: Vec<Letter> = "abcdabcdabcdabcd".chars().map(|c| Letter::from_char(c).unwrap()).collect();
        balance(&mut v);
        host.extend(&v);
        let (_, desc) = daf(&host, 5..21).unwrap();
        let sizes: Vec<u64> = desc.partition.iter().map(|d| d.len()).collect();
        assert_eq!(sizes, vec![1, 2, 8, 4, 1]);
        assert_eq!(daf(&w("ab"), 0..2).unwrap_err(), AltFormError::NotBalanced);
        assert_eq!(daf(&w("ab"), 1..3).unwrap_err(), AltFormError::PositionMismatch);
    }

    #[test]
    fn daf_positions_skip_s_letters() {
        let host = w("asaBSA");
        let (_, desc) = daf(&host, 1..5).unwrap();
        assert_eq!(desc.host_positions, Some(Interval::new(1, 2).unwrap()));
        assert_eq!(desc.shape.underlying(), w("aB"));
    }

    /// Every balanced s-free word of length <= `n` over `{a,b,c,d}^±`.
    fn all_balanced(n: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![];
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for len in 1..=n {
            let mut next = Vec::new();
            for u in &layer {
                for l in Letter::base() {
                    let mut v = u.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            if len % 2 == 0 {
                out.extend(next.iter().filter(|v| exponent_sum(v) == 0).cloned());
            }
            layer = next;
        }
        out.push(vec![]);
        out
    }

    #[test]
    fn daf_length_and_exponent_bounds_exhaustive_short() {
        for v in all_balanced(6) {
            for start in [0usize, 1, 3, 6] {
                let mut host = vec![A; start];
                host.extend(&v);
                let (word, desc) = daf(&host, start..start + v.len()).unwrap();
                assert!(word.len() <= 10 * v.len());
                assert!(is_alternating(&word));
                assert!(exponent_estimates_hold(&desc.shape));
                assert!(fxf_equal(&word, &v).unwrap());
            }
        }
    }

    fn arb_partition(len: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(1usize..6, 0..=len).prop_map(move |cuts| {
            let mut out = Vec::new();
            let mut left = len;
            for c in cuts {
                if left == 0 {
                    break;
                }
                let c = c.min(left);
                out.push(c);
                left -= c;
            }
            if left > 0 {
                out.push(left);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn paf_is_alternating_and_equal(
            (v, part) in arb_balanced(40).prop_flat_map(|v| { let n = v.len(); (Just(v), arb_partition(n)) })
        ) {
            let t = paf(&v, &part).unwrap();
            prop_assert!(is_alternating(&t));
            prop_assert!(fxf_equal(&t, &v).unwrap());
            let tr = paf_trace(&v, &part).unwrap();
            prop_assert_eq!(verify_trace(&tr).unwrap().end, t);
        }

        #[test]
        fn paf_prefix_depends_on_prefix_only(
            (v, part) in arb_balanced(30).prop_flat_map(|v| { let n = v.len(); (Just(v), arb_partition(n)) }),
            tail in arb_balanced(12),
            cut in 0usize..10,
        ) {
            // Replace everything after piece i by another balanced tail.
            let i = cut.min(part.len());
            let head_len: usize = part[..i].iter().sum();
            let head = &v[..head_len];
            let xi = exponent_sum(head);
            // The new tail must rebalance the head: append the old tail's
            // letters of the head's exponent compensation.
            let mut new_tail: Vec<Letter> = tail.letters().to_vec();
            new_tail.extend(v[head_len..].iter().copied());
            let mut v2 = head.to_vec();
            v2.extend(&new_tail);
            prop_assert_eq!(exponent_sum(&v2), 0);
            let mut part2 = part[..i].to_vec();
            if !new_tail.is_empty() {
                part2.push(new_tail.len());
            }
            let s1 = paf_shape(&v, &part).unwrap();
            let s2 = paf_shape(&v2, &part2).unwrap();
            // Prefix through piece i, with beta_i written out.
            let prefix = |s: &AltShape| {
                let mut out = Vec::new();
                for p in &s.pieces[..i] { p.write_flat(&mut out); }
                out
            };
            prop_assert_eq!(prefix(&s1), prefix(&s2));
            prop_assert_eq!(i == 0 || s1.pieces[i - 1].beta == xi, true);
        }

        #[test]
        fn daf_bounds_random(v in arb_balanced(200), start in 0usize..300) {
            let mut host = vec![B; start];
            host.extend(v.iter());
            let (word, desc) = daf(&host, start..start + v.len()).unwrap();
            prop_assert!(word.len() <= 10 * v.len());
            prop_assert!(exponent_estimates_hold(&desc.shape));
            prop_assert_eq!(desc.partition.len(), desc.shape.k());
        }
    }
}
