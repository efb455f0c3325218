//! Dyadic intervals, minimal dyadic covers and merge schedules.
//!
//! Intervals are closed integer ranges `[lo, hi]`. The dyadic interval of
//! height `r` and index `j` is `[j 2^r, (j+1) 2^r - 1]`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: i64, hi: i64 },
    #[error("not an ascending dyadic cover of the interval")]
    NotDyadicCover,
    #[error("intervals are not adjacent")]
    NotAdjacent,
}

/// A nonempty closed interval of integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Interval, DyadicError> {
        if lo > hi {
            return Err(DyadicError::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(p: i64) -> Interval {
        Interval { lo: p, hi: p }
    }

    pub fn lo(self) -> i64 {
        self.lo
    }

    pub fn hi(self) -> i64 {
        self.hi
    }

    pub fn len(self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }

    /// Never true; present for API symmetry with `len`.
    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The union of `self` with an interval starting right after it.
    pub fn join(self, right: Interval) -> Result<Interval, DyadicError> {
        if right.lo != self.hi + 1 {
            return Err(DyadicError::NotAdjacent);
        }
        Ok(Interval {
            lo: self.lo,
            hi: right.hi,
        })
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `D(height, index)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicInterval {
    pub height: u32,
    pub index: i64,
}

impl DyadicInterval {
    pub fn new(height: u32, index: i64) -> DyadicInterval {
        DyadicInterval { height, index }
    }

    pub fn lo(self) -> i64 {
        self.index << self.height
    }

    pub fn hi(self) -> i64 {
        self.lo() + (1i64 << self.height) - 1
    }

    pub fn len(self) -> u64 {
        1u64 << self.height
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn interval(self) -> Interval {
        Interval {
            lo: self.lo(),
            hi: self.hi(),
        }
    }

    pub fn parent(self) -> DyadicInterval {
        DyadicInterval::new(self.height + 1, self.index.div_euclid(2))
    }

    pub fn is_left_child(self) -> bool {
        self.index.rem_euclid(2) == 0
    }

    pub fn sibling(self) -> DyadicInterval {
        DyadicInterval::new(self.height, self.index ^ 1)
    }

    /// Dyadic intervals are nested or disjoint.
    pub fn contains(self, other: DyadicInterval) -> bool {
        self.height >= other.height && other.index >> (self.height - other.height) == self.index
    }

    /// The dyadic interval `[p, p]`.
    pub fn unit(p: i64) -> DyadicInterval {
        DyadicInterval::new(0, p)
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{})", self.height, self.index)
    }
}

/// One merge of two adjacent equal-length siblings. `k` is the 0-based
/// position of `left` in the cover the step is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeStep {
    pub k: usize,
    pub left: DyadicInterval,
    pub right: DyadicInterval,
}

impl MergeStep {
    pub fn merged(&self) -> DyadicInterval {
        self.left.parent()
    }

    /// Applies the step to `cover`, checking that it matches.
    pub fn apply(&self, cover: &mut Vec<DyadicInterval>) -> Result<(), DyadicError> {
        if cover.get(self.k) != Some(&self.left)
            || cover.get(self.k + 1) != Some(&self.right)
            || !self.left.is_left_child()
            || self.left.sibling() != self.right
        {
            return Err(DyadicError::NotDyadicCover);
        }
        cover[self.k] = self.merged();
        cover.remove(self.k + 1);
        Ok(())
    }
}

/// The maximal dyadic intervals contained in `u`, ascending.
pub fn mdc(u: Interval) -> Vec<DyadicInterval> {
    let mut out = Vec::new();
    let mut p = u.lo;
    while p <= u.hi {
        let mut h = 0u32;
        // Grow while aligned and still inside u.
        while h < 62 && p.rem_euclid(1i64 << (h + 1)) == 0 && p + (1i64 << (h + 1)) - 1 <= u.hi {
            h += 1;
        }
        out.push(DyadicInterval::new(h, p >> h));
        p += 1i64 << h;
    }
    out
}

/// [`mdc`] on `[lo, hi]`, rejecting empty ranges.
pub fn mdc_of(lo: i64, hi: i64) -> Result<Vec<DyadicInterval>, DyadicError> {
    Ok(mdc(Interval::new(lo, hi)?))
}

/// Checks that `cover` is an ascending cover of `u` by dyadic intervals.
pub fn is_cover_of(cover: &[DyadicInterval], u: Interval) -> bool {
    let mut next = u.lo;
    for d in cover {
        if d.lo() != next {
            return false;
        }
        next = d.hi() + 1;
    }
    !cover.is_empty() && next == u.hi + 1
}

fn cover_span(cover: &[DyadicInterval]) -> Result<Interval, DyadicError> {
    match (cover.first(), cover.last()) {
        (Some(f), Some(l)) => Interval::new(f.lo(), l.hi()),
        _ => Err(DyadicError::NotDyadicCover),
    }
}

/// Merges turning the dyadic cover `x0` of `u` into `mdc(u)`.
///
/// Each step merges the leftmost adjacent sibling pair of minimal length.
pub fn dyadic_to_mdc(u: Interval, x0: &[DyadicInterval]) -> Result<Vec<MergeStep>, DyadicError> {
    if !is_cover_of(x0, u) {
        return Err(DyadicError::NotDyadicCover);
    }
    let mut cover = x0.to_vec();
    let mut steps = Vec::new();
    loop {
        let best = (0..cover.len().saturating_sub(1))
            .filter(|&k| cover[k].is_left_child() && cover[k].sibling() == cover[k + 1])
            .min_by_key(|&k| (cover[k].height, k));
        let Some(k) = best else { break };
        let step = MergeStep {
            k,
            left: cover[k],
            right: cover[k + 1],
        };
        step.apply(&mut cover)?;
        steps.push(step);
    }
    debug_assert_eq!(cover, mdc(u));
    Ok(steps)
}

/// Merges from `mdc(u) ∪ mdc(v)` to `mdc(u ∪ v)` for adjacent `u`, `v`.
pub fn merge_sequence_pair(u: Interval, v: Interval) -> Result<Vec<MergeStep>, DyadicError> {
    let whole = u.join(v)?;
    let mut x0 = mdc(u);
    x0.extend(mdc(v));
    dyadic_to_mdc(whole, &x0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Adds `min(U) - 1`.
    Left,
    /// Adds `max(U) + 1`.
    Right,
}

/// Merges from `{{p}} ∪ mdc(u)` to `mdc({p} ∪ u)` where `p` is the point
/// adjacent to `u` on `side`. Every step merges the two end pieces on that
/// side.
pub fn merge_sequence_point(u: Interval, side: Side) -> Vec<MergeStep> {
    let mut cover = mdc(u);
    let target = match side {
        Side::Left => {
            cover.insert(0, DyadicInterval::unit(u.lo - 1));
            Interval { lo: u.lo - 1, hi: u.hi }
        }
        Side::Right => {
            cover.push(DyadicInterval::unit(u.hi + 1));
            Interval { lo: u.lo, hi: u.hi + 1 }
        }
    };
    let mut steps = Vec::new();
    while cover.len() >= 2 {
        let k = match side {
            Side::Left => 0,
            Side::Right => cover.len() - 2,
        };
        let (l, r) = (cover[k], cover[k + 1]);
        if !(l.is_left_child() && l.sibling() == r) {
            break;
        }
        let step = MergeStep { k, left: l, right: r };
        cover[k] = step.merged();
        cover.remove(k + 1);
        steps.push(step);
    }
    debug_assert_eq!(cover, mdc(target));
    steps
}

/// Replays `steps` on `cover`, returning every intermediate cover
/// including the first and last.
pub fn replay(cover: &[DyadicInterval], steps: &[MergeStep]) -> Result<Vec<Vec<DyadicInterval>>, DyadicError> {
    let span = cover_span(cover)?;
    let mut cur = cover.to_vec();
    let mut out = vec![cur.clone()];
    for s in steps {
        s.apply(&mut cur)?;
        if !is_cover_of(&cur, span) {
            return Err(DyadicError::NotDyadicCover);
        }
        out.push(cur.clone());
    }
    Ok(out)
}
