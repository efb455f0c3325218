//! Runtime checks of the per-call cost bounds.
//!
//! Every subroutine reports its measured cost next to the bound it is
//! guaranteed to meet. Violations are counted, never hidden: a nonzero
//! count means an implementation bug.

use std::collections::HashSet;
use std::fmt;

use crate::dyadic::DyadicInterval;

/// The bounded quantities that are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// Shuffle between words: `cost <= l(u)^2 + l(v)^2`.
    Alg1,
    /// Merge of two adjacent pieces: `cost <= 136 (l(v_i v_i+1) + |xi(v_1..v_i-1)|)^2`.
    Alg2,
    /// A merge scheduled from a dyadic cover: `cost <= 2176 l(theta)^2`.
    Alg2Charged,
    /// Passing `c^{±1}` through an alternating shape: `cost <= 2k + l(tau)`.
    Alg4,
    /// Rewriting one flanking letter into block form: `cost <= 2`.
    Alg5Letter,
    /// First assimilation step: `cost <= 3 l(tau) + 4`.
    Alg5,
    /// Word length at an iteration boundary of the main loop: `<= 10n`.
    IterationLength,
    /// Length of a dyadic alternating form: `<= 10 l(v)`.
    DafLength,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Alg1,
        Check::Alg2,
        Check::Alg2Charged,
        Check::Alg4,
        Check::Alg5Letter,
        Check::Alg5,
        Check::IterationLength,
        Check::DafLength,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Stat {
    pub checked: u64,
    pub violations: u64,
    /// Largest observed `measured / bound`.
    pub worst_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    /// Check every call.
    Full,
    /// Check one call in every `n` of each kind.
    Sampled(u32),
}

impl Default for AuditMode {
    fn default() -> AuditMode {
        if cfg!(debug_assertions) {
            AuditMode::Full
        } else {
            AuditMode::Sampled(64)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub measured: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Audit {
    mode: AuditMode,
    stats: [Stat; Check::ALL.len()],
    seen: [u64; Check::ALL.len()],
    charged: HashSet<DyadicInterval>,
    duplicate_charges: u64,
    violations: Vec<Violation>,
}

/// Only the first few violations are kept verbatim.
const KEPT_VIOLATIONS: usize = 16;

impl Audit {
    pub fn new(mode: AuditMode) -> Audit {
        Audit {
            mode,
            ..Audit::default()
        }
    }

    pub fn mode(&self) -> AuditMode {
        self.mode
    }

    /// Whether the next call of kind `check` is to be checked. Advances the
    /// sampling counter.
    pub fn sample(&mut self, check: Check) -> bool {
        let i = check.index();
        self.seen[i] += 1;
        match self.mode {
            AuditMode::Full => true,
            AuditMode::Sampled(n) => (self.seen[i] - 1).is_multiple_of(u64::from(n.max(1))),
        }
    }

    /// Records `measured <= bound` for a call already selected by
    /// [`Audit::sample`].
    pub fn record(&mut self, check: Check, measured: u64, bound: u64) {
        let stat = &mut self.stats[check.index()];
        stat.checked += 1;
        let ratio = if bound == 0 {
            if measured == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            measured as f64 / bound as f64
        };
        stat.worst_ratio = stat.worst_ratio.max(ratio);
        if measured > bound {
            stat.violations += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(Violation {
                    check,
                    measured,
                    bound,
                });
            }
        }
    }

    /// Samples and records in one step.
    pub fn check(&mut self, check: Check, measured: u64, bound: u64) {
        if self.sample(check) {
            self.record(check, measured, bound);
        }
    }

    /// Notes that `theta` was the left half of a scheduled merge. Each
    /// dyadic interval may be charged at most once.
    pub fn charge(&mut self, theta: DyadicInterval) {
        if !self.charged.insert(theta) {
            self.duplicate_charges += 1;
        }
    }

    pub fn stat(&self, check: Check) -> Stat {
        self.stats[check.index()]
    }

    pub fn duplicate_charges(&self) -> u64 {
        self.duplicate_charges
    }

    pub fn charges(&self) -> usize {
        self.charged.len()
    }

    /// Bound violations plus repeated charges.
    pub fn violation_count(&self) -> u64 {
        self.stats.iter().map(|s| s.violations).sum::<u64>() + self.duplicate_charges
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    /// Folds the statistics of `other` into `self`. Charges are not
    /// merged: they are only meaningful within one run.
    pub fn absorb(&mut self, other: &Audit) {
        for c in Check::ALL {
            let (a, b) = (&mut self.stats[c.index()], other.stats[c.index()]);
            a.checked += b.checked;
            a.violations += b.violations;
            a.worst_ratio = a.worst_ratio.max(b.worst_ratio);
        }
        self.duplicate_charges += other.duplicate_charges;
        for v in &other.violations {
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(v.clone());
            }
        }
    }
}

impl fmt::Display for Audit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in Check::ALL {
            let s = self.stat(c);
            writeln!(
                f,
                "{c:?}: checked {} violations {} worst ratio {:.4}",
                s.checked, s.violations, s.worst_ratio
            )?;
        }
        write!(f, "duplicate charges: {}", self.duplicate_charges)
    }
}
