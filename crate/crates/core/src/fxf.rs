//! The base group `F(a,b) x F(c,d)`: normal forms, equality, and shuffling
//! one word into another with commutator relators.

use thiserror::Error;

use crate::audit::{Audit, AuditMode, Check};
use crate::rewriting::{Move, MoveSink, Rewriter, Trace};
use crate::words::{free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FxfError {
    #[error("word contains s at position {position}")]
    ContainsS { position: usize },
    #[error("words are not equal in F(a,b) x F(c,d)")]
    NotEqualInFxF,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FxFNormalForm {
    pub ab_part: Word,
    pub cd_part: Word,
}

fn check_s_free(u: &[Letter]) -> Result<(), FxfError> {
    match u.iter().position(|l| l.is_s()) {
        Some(position) => Err(FxfError::ContainsS { position }),
        None => Ok(()),
    }
}

pub fn fxf_normal_form(u: &[Letter]) -> Result<FxFNormalForm, FxfError> {
    check_s_free(u)?;
    let ab: Vec<Letter> = u.iter().copied().filter(|l| l.is_ab()).collect();
    let cd: Vec<Letter> = u.iter().copied().filter(|l| l.is_cd()).collect();
    Ok(FxFNormalForm {
        ab_part: free_reduce(&ab),
        cd_part: free_reduce(&cd),
    })
}

pub fn fxf_equal(u: &[Letter], v: &[Letter]) -> Result<bool, FxfError> {
    Ok(fxf_normal_form(u)? == fxf_normal_form(v)?)
}

/// Which factor is shuffled to the front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Front {
    Ab,
    Cd,
}

impl Front {
    fn wants(self, l: Letter) -> bool {
        match self {
            Front::Ab => l.is_ab(),
            Front::Cd => l.is_cd(),
        }
    }
}

/// Number of swaps the stable bubble pass performs on `u`.
pub(crate) fn sort_cost(u: &[Letter], front: Front) -> u64 {
    let mut back = 0u64;
    let mut total = 0u64;
    for &l in u {
        if front.wants(l) {
            total += back;
        } else {
            back += 1;
        }
    }
    total
}

/// Relator applications [`shuffle_in`] spends on its input `u`.
pub(crate) fn shuffle_cost(u: &[Letter], front: Front) -> u64 {
    sort_cost(&free_reduce(u), front)
}

/// Freely reduces `w[offset..offset+len]`, shuffles its `front` letters to
/// the front with a stable bubble pass, then freely reduces both halves.
/// Returns the new length of the segment.
fn to_middle<S: MoveSink>(rw: &mut Rewriter<S>, offset: usize, len: usize, front: Front) -> usize {
    let len = reduce_stack(rw, offset, len);
    let mut placed = 0;
    for i in 0..len {
        if front.wants(rw.word()[offset + i]) {
            let mut p = offset + i;
            while p > offset + placed {
                rw.swap(p - 1);
                p -= 1;
            }
            placed += 1;
        }
    }
    let head = reduce_stack(rw, offset, placed);
    let tail = reduce_stack(rw, offset + head, len - placed);
    head + tail
}

/// Stack-based free reduction of `w[offset..offset+len]` in place. The
/// stack is the already processed prefix of the segment.
fn reduce_stack<S: MoveSink>(rw: &mut Rewriter<S>, offset: usize, len: usize) -> usize {
    let mut top = 0;
    for _ in 0..len {
        let l = rw.word()[offset + top];
        if top > 0 && rw.word()[offset + top - 1] == l.inverse() {
            rw.reduce(offset + top - 1);
            top -= 1;
        } else {
            top += 1;
        }
    }
    top
}

/// Records the inverse of every move applied to its own copy of the word.
struct Inverter {
    word: Vec<Letter>,
    inverse: Vec<Move>,
}

impl MoveSink for Inverter {
    fn record(&mut self, mv: &Move) {
        let inv = match *mv {
            Move::FreeReduce { pos } => Move::FreeExpand {
                pos,
                letter: self.word[pos],
            },
            Move::FreeExpand { pos, .. } => Move::FreeReduce { pos },
            Move::ApplyRelator { pos, rule } => Move::ApplyRelator {
                pos,
                rule: rule.reversed(),
            },
        };
        crate::rewriting::apply_in_place(&mut self.word, mv).expect("simulated move is legal");
        self.inverse.push(inv);
    }
}

/// Rewrites `w[offset..offset+len]` into `target`, which must be equal to
/// it in `F(a,b) x F(c,d)`. Returns the cost.
pub(crate) fn shuffle_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    offset: usize,
    len: usize,
    target: &[Letter],
    front: Front,
) -> u64 {
    let before = rw.cost();
    let mid_len = to_middle(rw, offset, len, front);
    let mut sim = Rewriter::from_letters(
        target.to_vec(),
        Inverter {
            word: target.to_vec(),
            inverse: Vec::new(),
        },
    );
    let sim_len = to_middle(&mut sim, 0, target.len(), front);
    debug_assert_eq!(mid_len, sim_len);
    debug_assert_eq!(&rw.word()[offset..offset + mid_len], sim.word());
    let (_, inv) = sim.into_parts();
    for mv in inv.inverse.into_iter().rev() {
        let shifted = match mv {
            Move::FreeReduce { pos } => Move::FreeReduce { pos: pos + offset },
            Move::FreeExpand { pos, letter } => Move::FreeExpand {
                pos: pos + offset,
                letter,
            },
            Move::ApplyRelator { pos, rule } => Move::ApplyRelator {
                pos: pos + offset,
                rule,
            },
        };
        rw.apply(shifted);
    }
    rw.cost() - before
}

/// `l(u)^2 + l(v)^2`.
pub fn alg1_bound(u_len: usize, v_len: usize) -> u64 {
    (u_len as u64).pow(2) + (v_len as u64).pow(2)
}

/// [`shuffle_in`] with the `a,b` letters in front, audited.
pub(crate) fn alg1_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    offset: usize,
    len: usize,
    target: &[Letter],
) -> u64 {
    let cost = shuffle_in(rw, offset, len, target, Front::Ab);
    audit.check(Check::Alg1, cost, alg1_bound(len, target.len()));
    cost
}

/// Converts `u` to `v` by shuffling `a,b` letters to the front and freely
/// reducing, then undoing the same procedure for `v`.
pub fn alg1_shuffle(u: &Word, v: &Word) -> Result<Trace, FxfError> {
    if !fxf_equal(u, v)? {
        return Err(FxfError::NotEqualInFxF);
    }
    let mut rw = Rewriter::new(u, Vec::new());
    let mut audit = Audit::new(AuditMode::Full);
    alg1_in(&mut rw, &mut audit, 0, u.len(), v);
    debug_assert!(audit.is_clean());
    let (end, moves) = rw.into_parts();
    debug_assert_eq!(&end, v);
    Ok(Trace {
        start: u.clone(),
        moves,
    })
}
