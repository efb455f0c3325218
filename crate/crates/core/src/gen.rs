//! Random null-homotopic words.
//!
//! Every word is a freely reduced product of factors that are trivial in
//! `S` by construction. Factors are appended until the length lands in
//! `[n - 8, n]`; a factor that would overshoot is discarded and redrawn.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rewriting::Presentation;
use crate::words::{Gen, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("target length {n} is odd")]
    BadLength { n: usize },
    #[error("unknown generator mode {0:?}")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenMode {
    /// Products of conjugates `g r^{±1} g^-1` of relators.
    Conjugates,
    /// Products of commutators `[s^e, beta]` with `beta` balanced and
    /// itself containing nested conjugates `s^e beta' s^-e`.
    NestedPinches,
    /// Products of commutators `[u, v]` with `u` over `a,b` and `v` over
    /// `c,d`, each side up to `2 sqrt(n)` letters long.
    CommutatorHeavy,
}

impl GenMode {
    pub const ALL: [GenMode; 3] = [GenMode::Conjugates, GenMode::NestedPinches, GenMode::CommutatorHeavy];

    pub fn name(self) -> &'static str {
        match self {
            GenMode::Conjugates => "conjugates",
            GenMode::NestedPinches => "nested_pinches",
            GenMode::CommutatorHeavy => "commutator_heavy",
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenMode {
    type Err = GenError;

    fn from_str(s: &str) -> Result<GenMode, GenError> {
        let norm = s.replace('-', "_");
        GenMode::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| GenError::UnknownMode(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenProfile {
    pub mode: GenMode,
    /// Exact number of factors; `None` keeps adding factors until the
    /// target length is reached.
    pub num_factors: Option<usize>,
    pub max_conjugator_length: usize,
    pub seed: u64,
}

impl GenProfile {
    pub fn new(mode: GenMode, seed: u64) -> GenProfile {
        GenProfile {
            mode,
            num_factors: None,
            max_conjugator_length: 6,
            seed,
        }
    }
}

/// Appends `u` to the freely reduced `word`, keeping it freely reduced.
fn push_reduced(word: &mut Vec<Letter>, u: &[Letter]) {
    for &l in u {
        if word.last() == Some(&l.inverse()) {
            word.pop();
        } else {
            word.push(l);
        }
    }
}

fn random_letter(rng: &mut ChaCha8Rng, gens: &[Gen]) -> Letter {
    Letter::new(*gens.choose(rng).expect("nonempty"), rng.gen())
}

/// A freely reduced word of length `len` over `gens`.
fn random_reduced(rng: &mut ChaCha8Rng, len: usize, gens: &[Gen]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = random_letter(rng, gens);
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    out
}

fn inverse(u: &[Letter]) -> Vec<Letter> {
    u.iter().rev().map(|l| l.inverse()).collect()
}

fn conjugate(g: &[Letter], r: &[Letter]) -> Vec<Letter> {
    let mut out = g.to_vec();
    out.extend(r);
    out.extend(inverse(g));
    out
}

/// `u^-1 v^-1 u v`.
fn commutator(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut out = inverse(u);
    out.extend(inverse(v));
    out.extend(u);
    out.extend(v);
    out
}

/// A balanced word of length exactly `len` (even), built from pairs
/// `x^e y^-e` and nested conjugates `s^e beta s^-e` of balanced `beta`.
fn nested_balanced(rng: &mut ChaCha8Rng, len: usize, depth: u32) -> Vec<Letter> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let room = len - out.len();
        if depth < 5 && room >= 4 && rng.gen_bool(0.35) {
            let inner = 2 * rng.gen_range(1..=(room - 2) / 2);
            let s = Letter::new(Gen::S, rng.gen());
            out.push(s);
            out.extend(nested_balanced(rng, inner, depth + 1));
            out.push(s.inverse());
        } else {
            let x = random_letter(rng, &Gen::BASE);
            let y = Letter::new(*Gen::BASE.choose(rng).expect("nonempty"), !x.is_positive());
            out.extend([x, y]);
        }
    }
    out
}

struct Factory<'a> {
    profile: &'a GenProfile,
    relators: Vec<Word>,
    /// Longest side of a commutator `[u, v]`.
    max_side: usize,
}

impl Factory<'_> {
    /// One trivial factor of length at most `cap`, or `None` if `cap` is
    /// too small.
    fn factor(&self, rng: &mut ChaCha8Rng, cap: usize) -> Option<Vec<Letter>> {
        match self.profile.mode {
            GenMode::Conjugates => {
                let r = self.relators.choose(rng).expect("relators");
                if r.len() > cap {
                    let short: Vec<&Word> = self.relators.iter().filter(|r| r.len() <= cap).collect();
                    return short.choose(rng).map(|r| conjugate(&[], r));
                }
                let r = if rng.gen() { r.clone() } else { r.inverse() };
                let g_max = self.profile.max_conjugator_length.min((cap - r.len()) / 2);
                let g_len = rng.gen_range(0..=g_max);
                let g = random_reduced(rng, g_len, &Gen::ALL);
                Some(conjugate(&g, &r))
            }
            GenMode::NestedPinches => {
                // [s^e, beta] has length 2 |beta| + 2.
                if cap < 6 {
                    return None;
                }
                let max_beta = ((cap - 2) / 2).min(64) / 2;
                let beta_len = 2 * rng.gen_range(1..=max_beta.max(1));
                let beta = nested_balanced(rng, beta_len, 0);
                let s = Letter::new(Gen::S, rng.gen());
                let mut out = commutator(&[s], &beta);
                if rng.gen_bool(0.5) {
                    let g_max = self.profile.max_conjugator_length.min((cap - out.len()) / 2);
                    let g_len = rng.gen_range(0..=g_max);
                    let g = random_reduced(rng, g_len, &Gen::ALL);
                    out = conjugate(&g, &out);
                }
                Some(out)
            }
            GenMode::CommutatorHeavy => {
                if cap < 4 {
                    return None;
                }
                let side = (cap / 4).clamp(1, self.max_side);
                let (u_len, v_len) = (rng.gen_range(1..=side), rng.gen_range(1..=side));
                let u = random_reduced(rng, u_len, &[Gen::A, Gen::B]);
                let v = random_reduced(rng, v_len, &[Gen::C, Gen::D]);
                Some(commutator(&u, &v))
            }
        }
    }
}

/// A freely reduced null-homotopic word of length at most `n`,
/// deterministic in `(profile, n)`.
pub fn generate(profile: &GenProfile, n: usize) -> Result<Word, GenError> {
    if n % 2 == 1 {
        return Err(GenError::BadLength { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed ^ (n as u64).rotate_left(32));
    let factory = Factory {
        profile,
        relators: Presentation::stallings().relators().to_vec(),
        max_side: 2 * (n as f64).sqrt() as usize,
    };
    let mut word: Vec<Letter> = Vec::new();
    if n == 0 {
        return Ok(Word::empty());
    }
    let low = n.saturating_sub(8);
    let mut added = 0usize;
    let mut misses = 0usize;
    let wanted = profile.num_factors;
    loop {
        let done = match wanted {
            Some(m) => added >= m,
            None => word.len() >= low && !word.is_empty(),
        };
        if done || misses > 256 {
            break;
        }
        let cap = match wanted {
            Some(m) => (n / m.max(1)).max(4),
            None => n,
        };
        let Some(f) = factory.factor(&mut rng, cap) else {
            misses += 1;
            continue;
        };
        let mut next = word.clone();
        push_reduced(&mut next, &f);
        if next.len() <= n {
            word = next;
            added += 1;
        } else {
            misses += 1;
        }
    }
    debug_assert!(crate::engine::decide_identity(&word));
    Ok(Word::from_letters(word))
}
