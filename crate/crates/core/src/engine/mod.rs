//! The word-problem decider and the quadratic-cost reduction to the empty
//! word.
//!
//! The reduction absorbs the letters of `w` two at a time. At any moment
//! the current word is `u_1 tau_1 u_2 ... tau_{k-1} u_k` where the `u_j`
//! are runs of original letters not yet absorbed and each `tau_j` is the
//! dyadic alternating form of the balanced subword `v_j` of `w` it
//! replaced. Each iteration picks a pair `x y` of adjacent unabsorbed
//! letters (adjacent once the `v_j` are ignored) and absorbs it together
//! with the `tau_j` between them.

mod decide;

use thiserror::Error;

pub use decide::{decide_identity, find_xy, pinch_reduce, FindXyError};
use decide::is_xy_pair;

use crate::altform::DafDescriptor;
use crate::audit::{Audit, AuditMode, Check};
use crate::dyadic::{DyadicInterval, Interval};
use crate::fxf::{alg1_in, fxf_equal};
use crate::rewriting::{Move, MoveSink, Replayer, Rewriter, Trace};
use crate::subroutines::{alg3_in, alg5_in, alg6_in};
use crate::words::{strip_s, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("word does not represent the identity")]
    NotNullHomotopic,
    #[error("word has odd length {n}")]
    OddLength { n: usize },
    #[error("no absorbable pair at iteration {iteration}")]
    Stuck { iteration: usize },
    #[error("final word is not trivial in F(a,b) x F(c,d)")]
    NotTrivial,
}

/// `17643 n^2 / 2 - 2174 n`, or 0 for the empty word.
pub fn cost_bound(n: usize) -> u64 {
    let n = n as u128;
    if n == 0 {
        return 0;
    }
    (17643 * n * n / 2 - 2174 * n) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub audit: AuditMode,
    /// Recompute every alternating form from scratch after each iteration
    /// and compare it with the word being rewritten.
    pub check_forms: bool,
}

impl Default for EngineOptions {
    fn default() -> EngineOptions {
        EngineOptions {
            audit: AuditMode::default(),
            check_forms: cfg!(debug_assertions),
        }
    }
}

impl EngineOptions {
    /// Every bound checked, no form recomputation.
    pub fn checked() -> EngineOptions {
        EngineOptions {
            audit: AuditMode::Full,
            check_forms: false,
        }
    }

    /// Settings for timing runs.
    pub fn bench() -> EngineOptions {
        EngineOptions {
            audit: AuditMode::Sampled(64),
            check_forms: false,
        }
    }
}

/// Costs by phase, with their closed-form limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CostBuckets {
    /// Conveying `s` letters through alternating forms.
    pub s_shuffle: u64,
    /// Assimilating `x`, `y` into a block form.
    pub assimilate: u64,
    /// All scheduled merges.
    pub merges: u64,
    /// The final shuffle to the empty word.
    pub final_shuffle: u64,
}

impl CostBuckets {
    pub fn total(&self) -> u64 {
        self.s_shuffle + self.assimilate + self.merges + self.final_shuffle
    }

    /// `(measured, limit)` for each bucket, in field order.
    pub fn limits(&self, n: usize) -> [(u64, u64); 4] {
        let n = n as u64;
        [
            (self.s_shuffle, 5 * n * n / 2),
            (self.assimilate, 15 * n * n + 2 * n),
            (self.merges, 2176 * n * (4 * n).saturating_sub(1)),
            (self.final_shuffle, 100 * n * n),
        ]
    }

    pub fn within_limits(&self, n: usize) -> bool {
        self.limits(n).iter().all(|(m, l)| m <= l)
    }
}

#[derive(Debug, Clone)]
pub struct EngineReport {
    pub n: usize,
    pub cost: u64,
    pub bound: u64,
    pub iterations: usize,
    /// Longest word seen at an iteration boundary.
    pub max_boundary_len: usize,
    pub buckets: CostBuckets,
    pub audit: Audit,
    /// Alternating forms that did not match their recomputation. Always
    /// zero unless `check_forms` found a bug.
    pub form_mismatches: u64,
}

#[derive(Debug, Clone)]
enum Seg {
    /// An unabsorbed letter, by its position in `w`.
    Letter(usize),
    /// `tau_j`, standing for `w[lo..=hi]`.
    Daf { lo: usize, hi: usize, desc: DafDescriptor },
}

impl Seg {
    fn len(&self) -> usize {
        match self {
            Seg::Letter(_) => 1,
            Seg::Daf { desc, .. } => desc.shape.flat_len(),
        }
    }
}

struct Engine<'a, S: MoveSink> {
    w: &'a [Letter],
    w_hat: Word,
    /// Position in `w-hat` of each base letter of `w`.
    hat_pos: Vec<i64>,
    segs: Vec<Seg>,
    rw: Rewriter<S>,
    audit: Audit,
    buckets: CostBuckets,
    options: EngineOptions,
    form_mismatches: u64,
}

impl<'a, S: MoveSink> Engine<'a, S> {
    fn new(w: &'a [Letter], sink: S, options: EngineOptions) -> Engine<'a, S> {
        let mut hat_pos = Vec::with_capacity(w.len());
        let mut next = 0i64;
        for l in w {
            hat_pos.push(next);
            if !l.is_s() {
                next += 1;
            }
        }
        Engine {
            w,
            w_hat: strip_s(w),
            hat_pos,
            segs: (0..w.len()).map(Seg::Letter).collect(),
            rw: Rewriter::from_letters(w.to_vec(), sink),
            audit: Audit::new(options.audit),
            buckets: CostBuckets::default(),
            options,
            form_mismatches: 0,
        }
    }

    /// Index in `segs` of the leftmost absorbable pair and of the letter
    /// after it.
    fn find_pair(&self) -> Option<(usize, usize)> {
        let mut prev: Option<usize> = None;
        for (i, seg) in self.segs.iter().enumerate() {
            if let Seg::Letter(p) = *seg {
                if let Some(j) = prev {
                    let Seg::Letter(q) = self.segs[j] else { unreachable!() };
                    if is_xy_pair(self.w[q], self.w[p]) {
                        return Some((j, i));
                    }
                }
                prev = Some(i);
            }
        }
        None
    }

    fn offset_of(&self, seg: usize) -> usize {
        self.segs[..seg].iter().map(Seg::len).sum()
    }

    fn step(&mut self, iteration: usize) -> Result<(), EngineError> {
        let (i, j) = self.find_pair().ok_or(EngineError::Stuck { iteration })?;
        let (Seg::Letter(xp), Seg::Letter(yp)) = (&self.segs[i], &self.segs[j]) else {
            unreachable!()
        };
        let (xp, yp) = (*xp, *yp);
        let (x, y) = (self.w[xp], self.w[yp]);
        let middle = if j == i + 2 {
            match &self.segs[i + 1] {
                Seg::Daf { desc, .. } => Some(desc.clone()),
                Seg::Letter(_) => unreachable!(),
            }
        } else {
            None
        };
        let pos = self.offset_of(i);
        let before = self.rw.cost();
        let desc = if x.is_s() {
            let tau_len = middle.as_ref().map_or(0, |d| d.shape.flat_len());
            let mut at = pos;
            for _ in 0..tau_len / 2 {
                let (p, q) = (self.rw.word()[at + 1], self.rw.word()[at + 2]);
                if q == p.inverse() {
                    self.rw.reduce(at + 1);
                    self.rw.expand(at, p);
                } else {
                    self.rw.convey(at);
                }
                at += 2;
            }
            self.rw.reduce(at);
            self.buckets.s_shuffle += self.rw.cost() - before;
            middle.unwrap_or_default()
        } else {
            let tau = middle.unwrap_or_default();
            let bar = alg5_in(&mut self.rw, &mut self.audit, pos, x, &tau.shape, y);
            let mid = self.rw.cost();
            self.buckets.assimilate += mid - before;
            let x_hat = self.hat_pos[xp];
            let mut cover = vec![DyadicInterval::unit(x_hat)];
            cover.extend(tau.partition.iter().copied());
            cover.push(DyadicInterval::unit(self.hat_pos[yp]));
            let out = alg6_in(&mut self.rw, &mut self.audit, pos, bar, tau.host_positions, cover, x_hat);
            self.buckets.merges += self.rw.cost() - mid;
            out
        };
        self.audit.check(
            Check::DafLength,
            desc.shape.flat_len() as u64,
            10 * (yp - xp + 1) as u64,
        );
        self.segs.splice(i..=j, [Seg::Daf { lo: xp, hi: yp, desc }]);
        self.merge_neighbours(i);
        Ok(())
    }

    /// Merges the form at `segs[i]` with a form directly to its left, then
    /// with one directly to its right.
    fn merge_neighbours(&mut self, mut i: usize) {
        if i > 0 && matches!(self.segs[i - 1], Seg::Daf { .. }) {
            self.merge_pair(i - 1);
            i -= 1;
        }
        if i + 1 < self.segs.len() && matches!(self.segs[i + 1], Seg::Daf { .. }) {
            self.merge_pair(i);
        }
    }

    fn merge_pair(&mut self, i: usize) {
        let pos = self.offset_of(i);
        let right = self.segs.remove(i + 1);
        let (Seg::Daf { lo, desc: left, .. }, Seg::Daf { hi, desc: right, .. }) = (self.segs[i].clone(), right) else {
            unreachable!()
        };
        let before = self.rw.cost();
        let desc = alg3_in(&mut self.rw, &mut self.audit, pos, left, right);
        self.buckets.merges += self.rw.cost() - before;
        self.segs[i] = Seg::Daf { lo, hi, desc };
    }

    /// Compares every form with its recomputation from `w-hat`.
    fn check_forms(&mut self) {
        let mut at = 0;
        for seg in &self.segs {
            let len = seg.len();
            if let Seg::Daf { lo, hi, desc } = seg {
                let base = self.w[*lo..=*hi].iter().filter(|l| !l.is_s()).count() as i64;
                let expect_pos = (base > 0).then(|| {
                    Interval::new(self.hat_pos[*lo], self.hat_pos[*lo] + base - 1).expect("nonempty")
                });
                let ok = match DafDescriptor::from_hat(&self.w_hat, expect_pos) {
                    Ok(fresh) => fresh == *desc && self.rw.word()[at..at + len] == fresh.word()[..],
                    Err(_) => false,
                };
                if !ok {
                    self.form_mismatches += 1;
                }
            }
            at += len;
        }
    }

    fn run(mut self) -> Result<(EngineReport, S), EngineError> {
        let n = self.w.len();
        if n % 2 == 1 {
            return Err(EngineError::OddLength { n });
        }
        let mut max_boundary_len = n;
        for iteration in 0..n / 2 {
            self.step(iteration)?;
            let len = self.rw.len();
            max_boundary_len = max_boundary_len.max(len);
            self.audit.check(Check::IterationLength, len as u64, 10 * n as u64);
            if self.options.check_forms {
                self.check_forms();
            }
        }
        if !fxf_equal(self.rw.word(), &[]).expect("s-free") {
            return Err(EngineError::NotTrivial);
        }
        let before = self.rw.cost();
        let len = self.rw.len();
        alg1_in(&mut self.rw, &mut self.audit, 0, len, &[]);
        self.buckets.final_shuffle = self.rw.cost() - before;
        debug_assert!(self.rw.is_empty());
        let cost = self.rw.cost();
        let (_, sink) = self.rw.into_parts();
        Ok((
            EngineReport {
                n,
                cost,
                bound: cost_bound(n),
                iterations: n / 2,
                max_boundary_len,
                buckets: self.buckets,
                audit: self.audit,
                form_mismatches: self.form_mismatches,
            },
            sink,
        ))
    }
}

/// Reduces `w` to the empty word, sending every move to `sink`.
pub fn reduce_with<S: MoveSink>(w: &[Letter], sink: S, options: EngineOptions) -> Result<(EngineReport, S), EngineError> {
    if w.len() % 2 == 1 {
        return Err(EngineError::OddLength { n: w.len() });
    }
    if !decide_identity(w) {
        return Err(EngineError::NotNullHomotopic);
    }
    Engine::new(w, sink, options).run()
}

/// [`reduce_with`] without the up-front decision. On a word that is not
/// null-homotopic this fails with [`EngineError::Stuck`],
/// [`EngineError::NotTrivial`] or [`EngineError::OddLength`].
pub fn reduce_unchecked<S: MoveSink>(
    w: &[Letter],
    sink: S,
    options: EngineOptions,
) -> Result<(EngineReport, S), EngineError> {
    Engine::new(w, sink, options).run()
}

/// The full trace from `w` to the empty word.
pub fn reduce_to_empty(w: &Word) -> Result<Trace, EngineError> {
    let (_, moves) = reduce_with(w, Vec::<Move>::new(), EngineOptions::default())?;
    Ok(Trace {
        start: w.clone(),
        moves,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AreaReport {
    pub n: usize,
    pub cost: u64,
    pub bound: u64,
    /// Longest word anywhere in the trace.
    pub max_intermediate_length: usize,
}

/// Reduces `w` while replaying every move independently.
pub fn area_report(w: &Word) -> Result<AreaReport, EngineError> {
    let (report, replayer) = reduce_with(w, Replayer::new(w), EngineOptions::default())?;
    let verified = replayer.finish().expect("engine moves replay");
    assert!(verified.end.is_empty(), "engine trace ends at the empty word");
    assert_eq!(verified.cost, report.cost);
    Ok(AreaReport {
        n: w.len(),
        cost: verified.cost,
        bound: report.bound,
        max_intermediate_length: verified.max_len,
    })
}
